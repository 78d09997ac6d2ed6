import pytest
from hypothesis import given, strategies as st

from dseq.orders import (FinOrder, NatOrder, OmegaPower, Order, OrderError,
                         fin_map, fin_subset_le, fin_subset_lt, identity_map,
                         iota, linearity_suite, omega_iter, restrict_below,
                         restrict_map)
from dseq.notations import PhiOrder, PHI_ZERO, mk_phi


NAT = NatOrder()


def test_fin_subset_empty_vacuous():
    assert fin_subset_lt(NAT, [], [])


def test_fin_subset_witness():
    assert fin_subset_lt(NAT, [1, 2], [3])
    assert not fin_subset_lt(NAT, [3], [1, 2])


def test_fin_subset_singleton_shorthand():
    assert fin_subset_lt(NAT, 2, [5])
    assert fin_subset_le(NAT, 2, 2)
    assert not fin_subset_lt(NAT, 2, 2)


def test_restrict_below_finite():
    sub = restrict_below(FinOrder(5), 3)
    assert isinstance(sub, FinOrder) and sub.n == 3


def test_restrict_below_minimum_is_empty():
    sub = restrict_below(FinOrder(4), 0)
    assert sub.enumerate(10) == []


def test_restrict_below_phi_terms():
    sub = restrict_below(PhiOrder(), mk_phi(0, PHI_ZERO))
    assert sub.enumerate(1) == [PHI_ZERO]


def test_restrict_map_identity():
    f = restrict_map(identity_map(FinOrder(4)), 2)
    assert [f(x) for x in f.dom.enumerate(9)] == [0, 1]


def test_restrict_map_inclusion():
    f = restrict_map(fin_map(FinOrder(2), FinOrder(5), [0, 1]), 1)
    assert f.dom.enumerate(9) == [0]
    assert f(0) == 0


def test_restrict_map_at_minimum_is_empty():
    f = restrict_map(fin_map(FinOrder(3), FinOrder(6), [1, 2, 4]), 0)
    assert f.dom.enumerate(9) == []


def test_restrict_map_composes():
    f = fin_map(FinOrder(3), FinOrder(5), [0, 2, 4])
    g = fin_map(FinOrder(5), FinOrder(7), [1, 2, 3, 5, 6])
    for x in range(3):
        lhs = restrict_map(g.compose(f), x)
        rhs = restrict_map(g, f(x)).compose(restrict_map(f, x))
        assert [lhs(y) for y in range(x)] == [rhs(y) for y in range(x)]


def test_omega_power_extension_clause():
    p = OmegaPower(NAT)
    assert p.cmp((), (5,)) < 0
    assert p.cmp((2, 1), (2, 1)) == 0
    assert p.cmp((3,), (2, 2, 2)) > 0


def test_omega_power_rejects_increasing():
    p = OmegaPower(NAT)
    with pytest.raises(OrderError):
        p.size((1, 2))


def test_omega_iter_zero_is_base():
    assert omega_iter(0, NAT) is NAT


def test_omega_iter_one_matches_brute_force():
    p = omega_iter(1, FinOrder(2))
    seqs = p.enumerate(7)
    brute = [()]
    for a in range(2):
        brute.append((a,))
        for b in range(a + 1):
            brute.append((a, b))
            for c in range(b + 1):
                brute.append((a, b, c))
    assert sorted(seqs) == sorted(t for t in brute if p.size(t) <= 7)
    for s in seqs:
        for t in seqs:
            assert p.cmp(s, t) == -p.cmp(t, s)


def test_omega_iter_twice_over_singleton():
    p = omega_iter(2, FinOrder(1))
    inner_empty = ()
    inner_one = (0,)
    assert p.cmp(((inner_empty,)), ((inner_one,))) != 0
    assert p.cmp((inner_empty,), (inner_one,)) < 0


def test_empty_sequence_below_singletons():
    for n in (1, 2):
        p = omega_iter(n, FinOrder(2))
        for t in p.enumerate(6):
            if t != ():
                assert p.cmp((), t) < 0


def test_linearity_fin():
    rep = linearity_suite(FinOrder(5), 10)
    assert rep.ok and rep.count == 5


def test_linearity_omega_square():
    rep = linearity_suite(omega_iter(2, FinOrder(2)), 7)
    assert rep.ok and rep.count > 3


class _Corrupted(Order):
    """Comparator fixture with a three-cycle."""

    name = "corrupted"

    def cmp(self, a, b):
        if (a, b) in ((0, 1), (1, 2), (2, 0)):
            return -1
        if (a, b) in ((1, 0), (2, 1), (0, 2)):
            return 1
        return (a > b) - (a < b)

    def size(self, t):
        return 1

    def elements(self, bound):
        return [0, 1, 2, 3]

    def show(self, t):
        return str(t)


def test_linearity_reports_corruption():
    rep = linearity_suite(_Corrupted(), 5)
    assert not rep.ok
    assert any("transitivity" in v for v in rep.violations)


@given(st.integers(0, 30), st.integers(0, 30))
def test_nat_order_matches_ints(a, b):
    assert (NAT.cmp(a, b) < 0) == (a < b)


@given(st.lists(st.integers(0, 6), max_size=5).map(
    lambda xs: tuple(sorted(xs, reverse=True))))
def test_omega_power_roundtrip(seq):
    p = OmegaPower(NAT)
    assert p.parse(p.show(seq)) == seq
