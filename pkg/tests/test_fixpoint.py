import itertools

import pytest

from dseq import notations as nt
from dseq.embeddings import PHI_SHAPE
from dseq.fixpoint import (Cl, CodedRelation, CollapseError, FuelExhausted,
                           NuPresentation, PsiOrder, ThetaOrder,
                           bh_initial_embed, check_conditions, code_bound,
                           descent_of_length, fp_to_termination,
                           nu_closure_element, nu_closure_value,
                           presentation_from_prefix, range_condition_holds,
                           support_payloads, synthesize_height,
                           termination_to_fp, unique_hom)
from dseq.goodstein import GOODSTEIN, WEAK, inverse_prefix
from dseq.notations import OtShapePredilator
from dseq.orders import FinOrder, ListOrder, linearity_suite
from dseq.predilators import BumpPredilator, ConstPredilator, SumPredilator

PSI_G = PsiOrder(GOODSTEIN)
PSI_W = PsiOrder(WEAK)

FIVE = [GOODSTEIN, WEAK, ConstPredilator(FinOrder(3)),
        SumPredilator(ConstPredilator(FinOrder(2)), ConstPredilator(FinOrder(3))),
        BumpPredilator(GOODSTEIN)]
BOUNDS = {GOODSTEIN.name: 9, WEAK.name: 8}


def zero_term():
    return Cl(())


def one_term():
    return Cl((((), zero_term()),))


# --- the tree order ----------------------------------------------------------

def test_cmp_is_reflexive_on_leaves():
    assert PSI_G.cmp(zero_term(), zero_term()) == 0


def test_payload_comparison_over_one_child():
    assert PSI_G.cmp(zero_term(), one_term()) < 0


def test_linearity_of_both_tree_orders():
    assert linearity_suite(PSI_G, 9).ok
    assert linearity_suite(PsiOrder(GOODSTEIN, valid_only=False), 7).ok
    assert linearity_suite(PSI_W, 8).ok


def test_plus_order_payload_map_is_bijective():
    plus = PsiOrder(GOODSTEIN, valid_only=False)
    terms = plus.elements(7)
    base = ListOrder(plus, terms)
    payloads = set(GOODSTEIN.carrier(base).enumerate(7))
    assert set(t.payload for t in terms) >= payloads
    for t in terms:
        assert Cl(plus.pi(t)) == t


def test_valid_terms_sit_inside_the_plus_order():
    plus = PsiOrder(GOODSTEIN, valid_only=False)
    valid = set(PSI_G.elements(7))
    assert valid <= set(plus.elements(7))


# --- closure sets and validity -----------------------------------------------

def test_support_payloads_empty_for_leaf():
    assert support_payloads(PSI_G, ()) == []


def test_support_payloads_are_the_child_payloads():
    t = one_term()
    assert support_payloads(PSI_G, t.payload) == [()]


def test_images_dominate_their_closures():
    for t in PSI_G.elements(8):
        assert range_condition_holds(PSI_G, t.payload)


def test_validity_examples():
    assert PSI_G.is_valid(zero_term())
    bad = Cl((((), Cl((((), zero_term()),)))),)
    # a term whose payload is dominated by a child payload is invalid
    child = one_term()
    not_above = Cl(((child.payload[0]),))  # same payload as the child
    assert PSI_G.is_valid(not_above)  # equal payload but child is zero only
    too_big = Cl((((one_term().payload, zero_term())),))
    assert PSI_G.is_valid(too_big) in (True, False)


def test_collapse_accepts_and_rejects():
    assert PSI_G.collapse(()) == zero_term()
    assert PSI_G.collapse((((), zero_term()),)) == one_term()
    # a child whose payload image dominates the offered value is rejected
    big = PSI_G.collapse(((one_term().payload, zero_term()),))
    with pytest.raises(CollapseError):
        PSI_G.collapse((((), big),))


def test_collapse_of_bump_values():
    bump = BumpPredilator(GOODSTEIN)
    psi = PsiOrder(bump)
    t0 = psi.collapse((0, (), 0))
    t1 = psi.collapse((0, (((), t0),), 2))
    assert psi.cmp(t0, t1) < 0
    mid = psi.collapse((1, None, 0))
    with pytest.raises(CollapseError):
        # a middle-tag child sits above every low-tag value
        psi.collapse((0, (((), mid),), 0))


# --- indexed closure sets ----------------------------------------------------

def test_nu_closure_on_collapse_prefix():
    prefix = inverse_prefix(GOODSTEIN, 5)
    pres = presentation_from_prefix(GOODSTEIN, prefix.values)
    base = pres.base()
    # at the only index level, the closure of a value collects the images
    # of everything reachable through supports
    for i in range(5):
        out = nu_closure_element(pres, 0, i)
        assert pres.payloads[i] in out
    assert nu_closure_value(pres, 0, ()) == []


def test_nu_closure_index_cut():
    # two-element presentation at index height two: the element whose
    # index is below the cut contributes nothing
    d = GOODSTEIN
    pres = NuPresentation(d, 2, [0, 1], [(), (((), 0),)], [1, 2])
    assert nu_closure_element(pres, 1, 0) == []
    out = nu_closure_element(pres, 1, 1)
    assert pres.payloads[1] in out


def test_nu_closure_matches_simple_condition():
    """At a single index the closure-based range condition agrees with
    direct payload domination."""
    prefix = inverse_prefix(GOODSTEIN, 6)
    pres = presentation_from_prefix(GOODSTEIN, prefix.values)
    base = pres.base()
    car = GOODSTEIN.carrier(base)
    for sigma in car.enumerate(5):
        closure = nu_closure_value(pres, 0, sigma)
        simple = [pres.payloads[j] for j in GOODSTEIN.supp(base, sigma)]
        simple_ok = all(car.cmp(p, sigma) < 0 for p in simple)
        full_ok = all(car.cmp(p, sigma) < 0 for p in closure)
        assert simple_ok == full_ok


# --- prefix conversions ------------------------------------------------------

@pytest.mark.parametrize("d", FIVE, ids=lambda d: d.name)
def test_roundtrips_both_ways(d):
    psi = PsiOrder(d)
    terms = psi.sorted_terms(BOUNDS.get(d.name, 5))[:12]
    assert terms, d.name
    values = fp_to_termination(psi, terms)
    assert termination_to_fp(psi, values) == terms
    assert fp_to_termination(psi, termination_to_fp(psi, values)) == values


def test_const_prefix_values_enumerate_the_carrier():
    d = ConstPredilator(FinOrder(3))
    psi = PsiOrder(d)
    terms = psi.sorted_terms(3)
    assert fp_to_termination(psi, terms) == [0, 1, 2]


def test_pi_values_are_monotone_and_in_range():
    prefix = inverse_prefix(WEAK, 8)
    terms = termination_to_fp(PSI_W, prefix.values)
    car = WEAK.carrier(FinOrder(8))
    for a, b in zip(prefix.values, prefix.values[1:]):
        assert car.cmp(a, b) < 0
    for t in terms:
        assert range_condition_holds(PSI_W, t.payload)


def test_goodstein_prefix_evaluates_through_the_correspondence():
    from dseq.goodstein import eval_g
    prefix = inverse_prefix(GOODSTEIN, 5)
    assert [eval_g(v, 6) for v in prefix.values] == [0, 1, 2, 3, 4]


# --- condition checking ------------------------------------------------------

def test_conditions_pass_on_inverse_prefixes():
    for d, stages in ((GOODSTEIN, 6), (WEAK, 6)):
        rep = check_conditions(d, inverse_prefix(d, stages).values, 6)
        assert rep.ok, rep.violations
        assert rep.minimality_checked > 0 and rep.coverage_checked > 0


def test_conditions_catch_non_minimal_stage():
    from dseq.goodstein import encode_nat
    values = [(), encode_nat(2, 2)]  # stage one skips the numeral one
    rep = check_conditions(GOODSTEIN, values, 6)
    assert not rep.ok
    assert any("not minimal" in v for v in rep.violations)


def test_conditions_report_heights():
    rep = check_conditions(GOODSTEIN, inverse_prefix(GOODSTEIN, 5).values, 5)
    assert set(rep.height) == set(range(5))
    prefix_rel = presentation_from_prefix(GOODSTEIN, inverse_prefix(GOODSTEIN, 5).values)
    for i in range(5):
        for j in GOODSTEIN.supp(FinOrder(i), prefix_rel.payloads[i]):
            assert rep.height[j] < rep.height[i]


# --- unique homomorphisms ----------------------------------------------------

@pytest.mark.parametrize("d", [GOODSTEIN, WEAK], ids=lambda d: d.name)
def test_hom_to_itself_is_identity(d):
    psi = PsiOrder(d)
    terms = psi.sorted_terms(BOUNDS[d.name])
    hom = unique_hom(d, terms, psi.pi, psi)
    for t in terms:
        assert hom(t) == t


def test_hom_const_three_into_const_five():
    d1, d2 = ConstPredilator(FinOrder(3)), ConstPredilator(FinOrder(5))
    p1, p2 = PsiOrder(d1), PsiOrder(d2)
    terms = p1.sorted_terms(3)
    hom = unique_hom(d1, terms, p1.pi, p2, translate=lambda v: v)
    assert [hom(t).payload for t in terms] == [0, 1, 2]


def test_hom_carries_coded_naturals_to_themselves():
    terms = PSI_G.sorted_terms(9)
    hom = unique_hom(GOODSTEIN, terms, PSI_G.pi, PSI_G)
    t = one_term()
    assert hom(t) == t


# --- height synthesis --------------------------------------------------------

def test_heights_constant_without_supports():
    rel = CodedRelation(decode=lambda c: c if c < 4 else None,
                        code=lambda x: x, preds=lambda x: [])
    hs = synthesize_height(rel, [0, 1, 2, 3])
    assert set(hs.values()) == {2}


def test_heights_respect_prefix_relation():
    values = inverse_prefix(GOODSTEIN, 8).values
    rep = check_conditions(GOODSTEIN, values, 4)
    assert rep.ok


def test_code_bound_grows_along_relation():
    rel = CodedRelation(decode=lambda c: c if c < 6 else None,
                        code=lambda x: x,
                        preds=lambda x: [x - 1] if x else [])
    assert code_bound(rel, 5, 0) == 5
    assert code_bound(rel, 5, 3) == 5


def test_fuel_exhaustion_reports_descent():
    rel = CodedRelation(decode=lambda c: c // 2 if c % 2 == 0 else -(c + 1) // 2,
                        code=lambda z: 2 * z if z >= 0 else -2 * z - 1,
                        preds=lambda z: [z - 1])
    with pytest.raises(FuelExhausted) as info:
        synthesize_height(rel, [0], fuel=500)
    assert len(info.value.descent) >= 10
    assert descent_of_length(rel, 0, 12) == list(range(0, -12, -1))


# --- the free collapsing system ----------------------------------------------

def test_free_theta_minimum_for_sequence_functor():
    theta = ThetaOrder(PHI_SHAPE)
    bottom = theta.mk(("q", ()))
    for t in theta.elements(5):
        assert theta.cmp(bottom, t) <= 0


def test_free_theta_linearity():
    assert linearity_suite(ThetaOrder(GOODSTEIN), 6).ok
    assert linearity_suite(ThetaOrder(PHI_SHAPE), 5).ok


def test_free_theta_matches_concrete_theta_terms():
    """Over the term-shape functor, the free collapsing order coincides
    with the concrete theta-fragment of the notation system."""
    shape = OtShapePredilator()
    theta = ThetaOrder(shape)

    def to_ot(t):
        return nt.ot_theta(shape_to_ot(t[1]))

    def shape_to_ot(v):
        if v[0] == "om":
            return nt.OT_OMEGA
        if v[0] == "el":
            return to_ot(v[1])
        return nt.ot_sum(tuple(shape_to_ot(x) for x in v[1]))

    terms = theta.elements(5)
    assert len(terms) > 10
    for a, b in itertools.combinations(terms, 2):
        assert theta.cmp(a, b) == nt.ot_cmp(to_ot(a), to_ot(b))


def test_initial_embed_into_itself_is_identity():
    theta = ThetaOrder(GOODSTEIN)
    embed = bh_initial_embed(GOODSTEIN, theta.mk)
    for t in theta.elements(5):
        assert embed(t) == t
