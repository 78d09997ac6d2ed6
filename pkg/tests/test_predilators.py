import pytest
from fractions import Fraction

from dseq.goodstein import GOODSTEIN, WEAK
from dseq.orders import FinOrder, QOrder, ZOrder, fin_map, identity_map, iota, ListOrder
from dseq.predilators import (BoundExhausted, BumpPredilator, ConstPredilator,
                              Exhausted, FiniteTree, IdPredilator,
                              OmegaPredilator, ShiftPredilator, SumPredilator,
                              TreePredilator, check_naturality,
                              check_support_condition, deflate)

SHIPPED = [
    IdPredilator(),
    ConstPredilator(FinOrder(3)),
    SumPredilator(ConstPredilator(FinOrder(2)), ConstPredilator(FinOrder(3))),
    OmegaPredilator(GOODSTEIN),
    BumpPredilator(GOODSTEIN),
    GOODSTEIN,
    WEAK,
    ShiftPredilator(GOODSTEIN, 1),
]


@pytest.mark.parametrize("d", SHIPPED, ids=lambda d: d.name)
def test_functor_laws(d):
    f = fin_map(FinOrder(2), FinOrder(3), [0, 2])
    g = fin_map(FinOrder(3), FinOrder(5), [1, 2, 4])
    ident = identity_map(FinOrder(2))
    for v in d.carrier(FinOrder(2)).enumerate(5):
        assert d.act(ident, v) == v
        assert d.act(g.compose(f), v) == d.act(g, d.act(f, v))


@pytest.mark.parametrize("d", SHIPPED, ids=lambda d: d.name)
def test_naturality_and_monotonicity(d):
    f = fin_map(FinOrder(2), FinOrder(4), [1, 3])
    rep = check_naturality(d, f, 5)
    assert rep.ok, rep.violations


@pytest.mark.parametrize("d", SHIPPED, ids=lambda d: d.name)
def test_support_condition(d):
    base = FinOrder(3)
    for v in d.carrier(base).enumerate(5):
        ok, witness = check_support_condition(d, base, v, 6)
        assert ok
        support = d.supp(base, v)
        assert d.rename(witness, lambda i: support[i]) == v


def test_support_condition_goodstein_example():
    # one summand with a single coefficient: the witness lives over it
    term = (((), 1),)
    ok, witness = check_support_condition(GOODSTEIN, FinOrder(2), term, 6)
    # the same digit read over the one-point order formed by the support
    assert ok and witness == (((), 0),)
    assert GOODSTEIN.supp(FinOrder(2), term) == [1]


def test_support_condition_const_is_empty():
    d = ConstPredilator(FinOrder(4))
    ok, witness = check_support_condition(d, FinOrder(3), 2, 4)
    assert ok and witness == 2
    assert d.supp(FinOrder(3), 2) == []


class _CorruptedSupp(IdPredilator):
    """Fixture reporting an empty support for every value."""

    name = "corrupted-supp"

    def supp(self, base, v):
        return []


def test_support_condition_corrupted_fixture():
    d = _CorruptedSupp()
    ok, witness = check_support_condition(d, FinOrder(3), 2, 5)
    assert not ok and witness is None


def test_const_action_is_identity():
    d = ConstPredilator(FinOrder(3))
    f = fin_map(FinOrder(0), FinOrder(5), [])
    assert d.act(f, 2) == 2


def test_const_over_integers_and_rationals():
    dz = ConstPredilator(ZOrder())
    assert dz.supp(FinOrder(2), -4) == []
    dq = ConstPredilator(QOrder())
    assert dq.carrier(FinOrder(0)).enumerate(3) == QOrder().enumerate(3)


def test_const_z_least_above():
    dz = ConstPredilator(ZOrder())
    assert dz.least_above(FinOrder(0), [-3, 5]) == 6


def test_sum_tagged_union_order():
    d = SumPredilator(ConstPredilator(FinOrder(2)), ConstPredilator(FinOrder(3)))
    car = d.carrier(FinOrder(0))
    elems = car.enumerate(4)
    assert len(elems) == 5
    assert car.cmp(("l", 1), ("r", 0)) < 0
    assert d.supp(FinOrder(0), ("r", 2)) == []


def test_omega_compose():
    d = OmegaPredilator(GOODSTEIN)
    base = FinOrder(2)
    sigma = (((), 1),)
    assert d.carrier(base).cmp((), (sigma,)) < 0
    assert d.supp(base, (sigma, sigma)) == GOODSTEIN.supp(base, sigma)
    f = fin_map(FinOrder(2), FinOrder(3), [0, 2])
    tau = (((), 0),)
    assert d.act(f, (sigma, tau)) == (GOODSTEIN.act(f, sigma), GOODSTEIN.act(f, tau))


def test_bump_tag_order_and_action():
    d = BumpPredilator(GOODSTEIN)
    base = FinOrder(2)
    sigma = (((), 0),)
    assert d.value_cmp(base, (0, sigma, 5), (1, None, 0)) < 0
    assert d.value_cmp(base, (1, None, 0), (2, sigma, 0)) < 0
    f = fin_map(FinOrder(2), FinOrder(3), [0, 2])
    assert d.act(f, (1, None, 7)) == (1, None, 7)
    assert d.value_cmp(base, (0, sigma, 3), (0, sigma, 4)) < 0
    assert d.supp(base, (0, sigma, 3)) == d.supp(base, (0, sigma, 4))


def test_tree_single_leaf_is_constant():
    t = FiniteTree.from_parent_list([(-1, True)])
    d = TreePredilator(t)
    assert d.carrier(FinOrder(5)).enumerate(9) == [("leaf", ())]
    assert d.supp(FinOrder(5), ("leaf", ())) == []


def test_tree_three_nodes():
    t = FiniteTree.from_parent_list([(-1, False), (0, True), (0, True)])
    d = TreePredilator(t)
    base = FinOrder(2)
    node_term = ("nd", (), 0, 1)
    leaf0, leaf1 = ("leaf", (0,)), ("leaf", (1,))
    # children extend the root, so both leaves sit below any root term
    assert d.value_cmp(base, leaf0, node_term) < 0
    assert d.value_cmp(base, leaf1, node_term) < 0
    assert (d.value_cmp(base, leaf0, node_term) < 0) == \
        (FiniteTree.node_cmp((0,), ()) < 0)
    f = fin_map(FinOrder(2), FinOrder(4), [0, 3])
    assert d.act(f, node_term) == ("nd", (), 0, 3)
    assert d.supp(base, node_term) == [0, 1]


def test_tree_rejects_single_child():
    with pytest.raises(Exception):
        FiniteTree.from_parent_list([(-1, False), (0, True)])


def test_shift_by_zero_matches():
    d = ShiftPredilator(GOODSTEIN, 0)
    base = FinOrder(2)
    assert sorted(map(str, d.values(base, 5))) == \
        sorted(map(str, GOODSTEIN.values(base, 5)))


def test_shift_carrier_is_shifted():
    d = ShiftPredilator(GOODSTEIN, 1)
    assert sorted(map(str, d.values(FinOrder(0), 5))) == \
        sorted(map(str, GOODSTEIN.values(FinOrder(1), 5)))


def test_shift_supp_drops_initial_segment():
    d = ShiftPredilator(GOODSTEIN, 2)
    term = (((), 1), ((), 0))
    # over the shifted base, elements 0 and 1 are the added constants
    sigma = GOODSTEIN.carrier(FinOrder(4)).parse("(+ (g (+ (g (+) 0)) 3) (g (+) 1))")
    assert GOODSTEIN.supp(FinOrder(4), sigma) == [0, 1, 3]
    assert d.supp(FinOrder(2), sigma) == [1]


@pytest.mark.parametrize("d", [GOODSTEIN, WEAK, IdPredilator(),
                               ConstPredilator(FinOrder(4)),
                               SumPredilator(IdPredilator(), ConstPredilator(FinOrder(3))),
                               OmegaPredilator(GOODSTEIN),
                               BumpPredilator(ConstPredilator(FinOrder(2)))],
                         ids=lambda d: d.name)
def test_least_above_minimal_against_enumeration(d):
    base = FinOrder(2)
    car = d.carrier(base)
    pool = car.enumerate(6)
    import itertools
    for r in (0, 1, 2):
        for vals in itertools.combinations(pool, r):
            try:
                nxt = d.least_above(base, list(vals))
            except Exhausted:
                assert all(any(car.cmp(u, v) <= 0 for v in vals) for u in pool)
                continue
            assert all(car.cmp(v, nxt) < 0 for v in vals)
            for u in pool:
                if all(car.cmp(v, u) < 0 for v in vals):
                    assert car.cmp(nxt, u) <= 0


def test_deflate_roundtrip():
    base = FinOrder(4)
    term = GOODSTEIN.carrier(base).parse("(+ (g (+ (g (+) 3)) 1))")
    support, small = deflate(GOODSTEIN, base, term)
    assert support == [1, 3]
    assert GOODSTEIN.rename(small, lambda i: support[i]) == term
