import itertools

import pytest

from dseq import notations as nt
from dseq.orders import OrderError, linearity_suite


OT = nt.OtOrder()
ZERO = nt.OT_ZERO
OM = nt.OT_OMEGA


def th(x):
    return nt.ot_theta(x)


# --- the base system ---------------------------------------------------------

def test_heights():
    assert nt.ot_height(OM) == 0
    assert nt.ot_height(th(ZERO)) == 1
    assert nt.ot_height(nt.ot_sum((th(ZERO), ZERO))) == 2


def test_theta_below_omega():
    assert nt.ot_cmp(th(ZERO), OM) < 0
    assert nt.ot_cmp(th(OM), OM) < 0


def test_theta_monotone_with_empty_supports():
    assert nt.ot_cmp(th(ZERO), th(OM)) < 0


def test_e_sets():
    assert nt.ot_e_set(OM) == ()
    assert nt.ot_e_set(th(OM)) == (th(OM),)
    s = nt.ot_sum((th(ZERO), ZERO))
    assert set(nt.ot_e_set(s)) == {th(ZERO)}


def test_sum_constructor_collapses_indecomposables():
    assert nt.ot_sum((OM,)) == OM
    assert nt.ot_sum((th(ZERO),)) == th(ZERO)
    assert nt.ot_sum((ZERO,)) == ("+", (ZERO,))


def test_linearity_to_bound_six():
    rep = linearity_suite(OT, 6)
    assert rep.ok, rep.violations


def test_parse_show_roundtrip():
    for t in nt.ot_terms(6):
        assert OT.parse(OT.show(t)) == t


# --- arithmetic --------------------------------------------------------------

def test_addition_neutral_both_sides():
    for t in nt.ot_terms(5):
        assert nt.ot_add(t, ZERO) == t
        assert nt.ot_add(ZERO, t) == t


def test_omega_scaling_of_one():
    one = nt.ot_sum((ZERO,))
    assert nt.ot_omega_mul(one) == OM


def test_addition_associative_exhaustive():
    terms = nt.ot_terms(5)
    for a, b, c in itertools.product(terms, repeat=3):
        assert nt.ot_add(nt.ot_add(a, b), c) == nt.ot_add(a, nt.ot_add(b, c))


def test_addition_matches_order():
    terms = nt.ot_terms(5)
    for a in terms:
        for b in terms:
            if nt.ot_cmp(ZERO, b) < 0:
                assert nt.ot_cmp(a, nt.ot_add(a, b)) < 0


# --- normal forms ------------------------------------------------------------

def test_normalize_zero_is_empty_sum():
    assert nt.omega_normalize(ZERO) == nt.NF_ZERO


def test_normalize_omega_shape():
    nf = nt.omega_normalize(OM)
    assert len(nf[1]) == 1
    exp, coef = nf[1][0]
    assert nt.eval_nf(exp) == nt.ot_sum((ZERO,))   # the exponent denotes one
    assert nt.eval_m(coef) == nt.ot_sum((ZERO,))   # and so does the coefficient
    assert nt.ot_cmp(nt.eval_nf(nf), OM) == 0


def test_eval_of_empty_form_is_zero():
    assert nt.eval_nf(nt.NF_ZERO) == ZERO


def test_normalize_faithful_monotone_idempotent():
    terms = nt.ot_terms(6)
    forms = [nt.omega_normalize(t) for t in terms]
    for t, f in zip(terms, forms):
        assert nt.ot_cmp(nt.eval_nf(f), t) == 0
        assert nt.omega_normalize(nt.eval_nf(f)) == f
    for (a, fa), (b, fb) in itertools.combinations(zip(terms, forms), 2):
        assert nt.ot_cmp(a, b) == nt.nf_cmp(fa, fb)


def test_normal_forms_are_hereditarily_normal():
    def check(nf):
        for e, c in nf[1]:
            check(e)
            check_m(c)

    def check_m(m):
        if m[0] == "mv":
            check(m[1])
        else:
            for x in m[1]:
                check_m(x)

    for t in nt.ot_terms(6):
        check(nt.omega_normalize(t))


def test_nf_linearity():
    assert linearity_suite(nt.NfOrder(), 9).ok
    assert linearity_suite(nt.NfOrder(True), 12).ok
    assert linearity_suite(nt.MOrder(), 7).ok


# --- collapsed coefficients --------------------------------------------------

def test_collapse_base_cases():
    f0 = nt.nf_collapse(nt.NF_ZERO)
    assert len(f0[1]) == 1
    exp, coef = f0[1][0]
    assert exp == nt.coded_natural(3)
    assert coef == ("mv", nt.NF_ZERO)
    assert nt.m_collapse(nt.M_ZERO) == nt.NF_ZERO


def test_collapsed_images_live_in_collapsed_forms():
    for t in nt.nf_terms(8):
        assert nt.nf_is_collapsed(nt.nf_collapse(t))
    for m in nt.m_terms(6):
        assert nt.nf_is_collapsed(nt.m_collapse(m))


def test_coded_naturals_strictly_increase():
    for n in range(10):
        assert nt.nf_cmp(nt.coded_natural(n), nt.coded_natural(n + 1)) < 0
        assert nt.nf_is_collapsed(nt.coded_natural(n))


def _e_of_nf(t):
    return nt.ot_e_set(nt.eval_nf(t))


def _e_of_m(m):
    return nt.ot_e_set(nt.eval_m(m))


def _theta_of_nf(t):
    return nt.ot_theta(nt.eval_nf(t))


def _lt_fin(items, bound):
    return all(nt.ot_cmp(e, bound) < 0 for e in items)


def _le_fin_elem(elem, items):
    return any(nt.ot_cmp(elem, e) <= 0 for e in items)


def test_collapse_property_chain():
    """The seven simultaneous facts about the collapsing pair, checked
    exhaustively on enumerated forms."""
    ms = nt.m_terms(6)
    nfs = nt.nf_terms(8)
    g = nt.m_collapse
    f = nt.nf_collapse
    # (a) the theta of the collapsed coefficient is monotone
    for s, t in itertools.permutations(ms, 2):
        if nt.m_cmp(s, t) < 0:
            assert nt.nf_cmp(nt.m_theta_collapse(s), nt.m_theta_collapse(t)) < 0
    # (b) the collapse of normal forms is monotone
    for s, t in itertools.permutations(nfs, 2):
        if nt.nf_cmp(s, t) < 0:
            assert nt.nf_cmp(f(s), f(t)) < 0
    # (c) subterm domination transfers from coefficients
    for s in ms:
        for t in nfs:
            if _lt_fin(_e_of_m(s), _theta_of_nf(t)):
                assert _lt_fin(_e_of_nf(g(s)), _theta_of_nf(f(t)))
    # (d) subterm domination transfers from forms
    for s in nfs:
        for t in nfs:
            if _lt_fin(_e_of_nf(s), _theta_of_nf(t)):
                assert _lt_fin(_e_of_nf(f(s)), _theta_of_nf(f(t)))
    # (e) subterm membership transfers into coefficients
    for s in nfs:
        for t in ms:
            if _le_fin_elem(_theta_of_nf(s), _e_of_m(t)):
                assert _le_fin_elem(_theta_of_nf(f(s)), _e_of_nf(g(t)))
    # (f) subterm membership transfers into forms
    for s in nfs:
        for t in nfs:
            if _le_fin_elem(_theta_of_nf(s), _e_of_nf(t)):
                assert _le_fin_elem(_theta_of_nf(f(s)), _e_of_nf(f(t)))
    # (g) the theta comparison transfers through the collapse
    for s, t in itertools.permutations(nfs, 2):
        if nt.ot_cmp(_theta_of_nf(s), _theta_of_nf(t)) < 0:
            assert nt.ot_cmp(_theta_of_nf(f(s)), _theta_of_nf(f(t))) < 0


def test_collapse_inverse_reading_of_omega_sums():
    # a coefficient with a lone theta power is represented by the theta
    # term itself, so the two-summand clause never sees that case
    m = nt.mk_m_sum((nt.mk_m_theta(nt.NF_ZERO),))
    assert m == ("mv", nt.NF_ZERO)


# --- phi(omega, 0) -----------------------------------------------------------

PHI = nt.PhiOrder()


def test_phi_zero_below_everything():
    one = nt.mk_phi(0, nt.PHI_ZERO)
    assert nt.phi_cmp(nt.PHI_ZERO, one) < 0


def test_phi_index_clause():
    a = nt.mk_phi(0, nt.PHI_ZERO)
    b = nt.mk_phi(1, nt.PHI_ZERO)
    assert nt.phi_cmp(a, b) < 0


def test_phi_head_constraint_rejected_at_construction():
    b = nt.mk_phi(1, nt.PHI_ZERO)
    with pytest.raises(OrderError):
        nt.mk_phi(0, b)


def test_phi_raw_clause_narrative():
    # wrapping a term at a lower index is rejected by the constructor; on
    # the raw tuple the lower-index clause compares the argument against
    # the other term, which here is an equality, so the raw wrap is not
    # below its own argument
    b = nt.mk_phi(1, nt.PHI_ZERO)
    raw = ("p", 0, b)
    assert nt.phi_cmp(b, b) == 0
    assert not nt.phi_cmp(raw, b) < 0


def test_phi_linearity():
    assert linearity_suite(PHI, 6).ok


def test_phi_sum_needs_indecomposables():
    one = nt.mk_phi(0, nt.PHI_ZERO)
    s = nt.mk_phi_sum((one, one))
    with pytest.raises(OrderError):
        nt.mk_phi_sum((s, one))


def test_phi_subterm_property():
    terms = nt.phi_terms(5)
    for z in terms:
        for y in nt.phi_subterms(z):
            for x in terms:
                if nt.phi_cmp(x, y) <= 0:
                    assert nt.phi_cmp(x, z) < 0


def test_phi_parse_show_roundtrip():
    for t in nt.phi_terms(6):
        assert PHI.parse(PHI.show(t)) == t


# --- the psi-style system ----------------------------------------------------

P = nt.POrder()


def test_zero_in_psi_suborder():
    assert nt.p_member(nt.P_ZERO)


def test_exponent_dominates_coefficient():
    a = nt.p_psi(nt.P_ZERO)
    b = nt.p_omega_psi(1, nt.P_ZERO)
    assert nt.p_cmp(a, b) < 0


def test_p_addition_associative_and_right_monotone():
    terms = nt.p_terms(6)
    for a, b, c in itertools.product(terms, repeat=3):
        assert nt.p_add(nt.p_add(a, b), c) == nt.p_add(a, nt.p_add(b, c))
    for a in terms:
        for b in terms:
            for c in terms:
                if nt.p_cmp(b, c) < 0:
                    assert nt.p_cmp(nt.p_add(a, b), nt.p_add(a, c)) < 0


def test_p_linearity():
    assert linearity_suite(P, 7).ok
    assert linearity_suite(nt.PsiOmegaOrder(), 7).ok


def test_p_parse_show_roundtrip():
    for t in nt.p_terms(7):
        assert P.parse(P.show(t)) == t
