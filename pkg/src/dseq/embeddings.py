"""Cross-system order embeddings.

The two flagship chains are

  fixed point of the Goodstein functor  <->  theta-terms below Omega, and
  fixed point of the weak functor       <->  phi(omega, 0),

each realized by explicit syntactic maps:

  * a collapse of Goodstein values over theta-coefficient terms into
    collapsed normal forms, and its inverse;
  * suborders of the fixed points that are omega-power fixed points of
    the composed functor, with their sequence isomorphisms;
  * a collapse on any such omega-power fixed point, built by inserting
    the value into the largest offending support sequence (the map that
    makes the free collapsing system initial at desk scale);
  * the length-measured recursion from the psi-style system into the
    weak fixed point, and the phi-image of the weak fixed point.

Every composite map is accepted by property: the verification suite
checks exhaustive strict monotonicity on enumerated sources.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .orders import FinOrder, OmegaPower, Order, OrderError
from .predilators import Predilator, PredilatorError
from .fixpoint import (Cl, CollapseError, PsiOrder, ThetaOrder, bh_initial_embed,
                       bh_collapse_check)
from .goodstein import GOODSTEIN, WEAK
from . import notations as nt


# ---------------------------------------------------------------------------
# Goodstein values over theta-coefficient terms vs collapsed normal forms


def cnf_collapse(sigma):
    """Collapse a Goodstein value with theta-term coefficients into a
    collapsed normal form: exponents collapse recursively, coefficients
    keep their theta part."""
    pairs = []
    for e, c in sigma:
        if not nt.is_c_theta_term(c):
            raise OrderError("coefficient is not a theta-term: %s" % nt.nf_show(c))
        pairs.append((cnf_collapse(e), c[1][0][1]))
    return nt.mk_nf(pairs)


def cnf_collapse_inv(t):
    """Inverse reading: collapsed normal forms are exactly the collapse
    images, coefficient by coefficient."""
    pairs = []
    for e, m in t[1]:
        if m[0] != "mv":
            raise OrderError("coefficient not collapsed: %s" % nt.nf_show(t))
        pairs.append((cnf_collapse_inv(e), nt.c_theta(m[1])))
    return tuple(pairs)


def cnf_theta_collapse(sigma):
    """The candidate collapse on C: value to theta of its collapsed form."""
    return nt.c_theta(cnf_collapse(sigma))


# ---------------------------------------------------------------------------
# Omega-power fixed points and the insertion collapse


class OmegaFixpoint:
    """A suborder S isomorphic-onto-range to weakly decreasing sequences of
    inner values over S.  Subclasses provide membership, the sequence of an
    element, and the partial inverse."""

    inner: Predilator
    order: Order
    label = "omega-fixpoint"

    def member(self, s) -> bool:
        raise NotImplementedError

    def kappa(self, s) -> tuple:
        raise NotImplementedError

    def kappa_inv(self, seq):
        raise NotImplementedError

    def seq_order(self) -> OmegaPower:
        return OmegaPower(self.inner.carrier(self.order))


def insertion_collapse(fx: OmegaFixpoint):
    """The collapse sending a value to the preimage of its singleton
    sequence, or, when a support's sequence dominates that singleton, of
    the largest such sequence cut where the value fits and extended by it.

    The insertion point is the first entry strictly below the value, so
    the result stays weakly decreasing, exceeds every offending sequence,
    and tracks the value monotonically.
    """
    seq_order = fx.seq_order()
    inner, order = fx.inner, fx.order

    def collapse(sigma):
        singleton = (sigma,)
        offender = None
        for s in inner.supp(order, sigma):
            ks = fx.kappa(s)
            if seq_order.cmp(ks, singleton) >= 0:
                if offender is None or seq_order.cmp(offender, ks) < 0:
                    offender = ks
        if offender is None:
            return fx.kappa_inv(singleton)
        j = 0
        car = inner.carrier(order)
        while j < len(offender) and car.cmp(offender[j], sigma) >= 0:
            j += 1
        return fx.kappa_inv(offender[:j] + singleton)

    return collapse


# ---------------------------------------------------------------------------
# The Goodstein fixed point's omega-power suborder


class GoodsteinSequenceFixpoint(OmegaFixpoint):
    """Terms of the Goodstein fixed point whose coefficients are, at every
    level, the coded naturals; such a term codes a weakly decreasing
    sequence of exponent values with multiplicities."""

    label = "goodstein-seq"

    def __init__(self):
        self.inner = GOODSTEIN
        self.psi = PsiOrder(GOODSTEIN)
        self.psiplus = PsiOrder(GOODSTEIN, valid_only=False)
        self.order = self.psi

    @functools.lru_cache(maxsize=None)
    def coded(self, n: int) -> Cl:
        if n == 0:
            return Cl(())
        return Cl((((), self.coded(n - 1)),))

    def decode(self, t: Cl):
        """The natural a term codes, or None."""
        n = 0
        while True:
            if t.payload == ():
                return n
            if len(t.payload) != 1 or t.payload[0][0] != ():
                return None
            t = t.payload[0][1]
            n += 1

    def member_plus(self, t: Cl) -> bool:
        if any(self.decode(c) is None for _, c in t.payload):
            return False
        return all(self.member_plus(ch) for ch in self.psi.children(t))

    def member(self, t: Cl) -> bool:
        return self.member_plus(t) and self.psi.is_valid(t)

    def kappa(self, t: Cl) -> tuple:
        out = []
        for e, c in t.payload:
            reps = self.decode(c)
            if reps is None:
                raise OrderError("coefficient is not a coded natural")
            out.extend([e] * (1 + reps))
        return tuple(out)

    def kappa_inv(self, seq):
        car = self.inner.carrier(self.order)
        pairs = []
        idx = 0
        while idx < len(seq):
            j = idx
            while j < len(seq) and car.cmp(seq[j], seq[idx]) == 0:
                j += 1
            pairs.append((seq[idx], self.coded(j - idx - 1)))
            idx = j
        t = self.psi.collapse(tuple(pairs))
        if not self.member(t):
            raise CollapseError("sequence preimage left the suborder")
        return t


# ---------------------------------------------------------------------------
# Fixed point of the Goodstein functor vs theta-terms below Omega


class _GoodsteinThetaMaps:
    def __init__(self):
        self.fx = GoodsteinSequenceFixpoint()
        self.theta = ThetaOrder(GOODSTEIN)
        self.collapse = insertion_collapse(self.fx)
        self._to_generic_memo: dict = {}
        self._from_psi_memo: dict = {}
        self.embed = bh_initial_embed(GOODSTEIN, self.collapse)

    def c_to_generic(self, c):
        got = self._to_generic_memo.get(c)
        if got is None:
            sigma = cnf_collapse_inv(nt.c_theta_arg(c))
            got = self.theta.mk(GOODSTEIN.rename(sigma, self.c_to_generic))
            self._to_generic_memo[c] = got
        return got

    def psi_to_c(self, t: Cl):
        got = self._from_psi_memo.get(t)
        if got is None:
            got = cnf_theta_collapse(GOODSTEIN.rename(t.payload, self.psi_to_c))
            self._from_psi_memo[t] = got
        return got


_GT = None


def _goodstein_theta_maps() -> _GoodsteinThetaMaps:
    global _GT
    if _GT is None:
        _GT = _GoodsteinThetaMaps()
    return _GT


def psi_g_to_ot(t: Cl):
    """Fixed point of the Goodstein functor into OT terms below Omega."""
    return nt.eval_nf(_goodstein_theta_maps().psi_to_c(t))


def ot_to_psi_g(s) -> Cl:
    """OT terms below Omega into the Goodstein fixed point, through
    collapsed normal forms, free collapsing terms, and the sequence
    suborder."""
    if nt.ot_cmp(s, nt.OT_OMEGA) >= 0:
        raise OrderError("term not below Omega: %s" % nt.ot_show(s))
    maps = _goodstein_theta_maps()
    c = nt.c_theta(nt.m_collapse(nt.m_convert(s)))
    return maps.embed(maps.c_to_generic(c))


# ---------------------------------------------------------------------------
# The functor omega^X + omega*X and phi(omega, 0)


class PhiShapePredilator(Predilator):
    """Values are either a weakly decreasing sequence over the base or an
    indexed base element; all sequences sit below all indexed elements."""

    name = "phishape"

    def _power(self, base):
        return OmegaPower(base)

    def value_cmp(self, base, a, b):
        if a[0] != b[0]:
            return -1 if a[0] == "q" else 1
        if a[0] == "q":
            return self._power(base).cmp(a[1], b[1])
        if a[1] != b[1]:
            return -1 if a[1] < b[1] else 1
        return base.cmp(a[2], b[2])

    def value_size(self, base, v):
        if v[0] == "q":
            return 1 + self._power(base).size(v[1])
        return 2 + v[1] + base.size(v[2])

    def value_show(self, base, v):
        if v[0] == "q":
            return "(q %s)" % self._power(base).show(v[1])
        return "(f %d %s)" % (v[1], base.show(v[2]))

    def value_from_sexpr(self, base, expr):
        if expr[0] == "q":
            return ("q", self._power(base).from_sexpr(expr[1]))
        if expr[0] == "f":
            return ("f", int(expr[1]), base.from_sexpr(expr[2]))
        raise OrderError("bad value: %r" % (expr,))

    def values(self, base, bound):
        out = [("q", s) for s in self._power(base).elements(bound - 1)]
        for n in range(max(bound - 2, 0)):
            for x in base.elements(bound - 2 - n):
                out.append(("f", n, x))
        return out

    def rename(self, v, fn):
        if v[0] == "q":
            return ("q", tuple(fn(x) for x in v[1]))
        return ("f", v[1], fn(v[2]))

    def supp(self, base, v):
        if v[0] == "q":
            return base.sort(list(v[1]))
        return [v[2]]


PHI_SHAPE = PhiShapePredilator()


def phi_to_theta(x):
    """phi(omega, 0) into free collapsing terms of the sequence-or-index
    functor; sums become sequences of images, indexed terms keep their
    index."""
    theta = ThetaOrder(PHI_SHAPE)

    def f(t):
        if t[0] == "+":
            return ("q", tuple(e(i) for i in t[1]))
        return ("f", t[1], e(t[2]))

    def e(t):
        return theta.mk(f(t))

    return e(x)


def p_seq_flatten(seq):
    """Sequence over psi(Omega^omega) into one term: head plus the
    indexed summands of every entry including the head."""
    if not seq:
        return nt.P_ZERO
    out = seq[0]
    for x in seq:
        out = nt.p_add(out, nt.p_psi(x))
    return out


def p_seq_flatten_tail(seq):
    """The variant dropping the head's own indexed summand; not injective."""
    if not seq:
        return nt.P_ZERO
    out = seq[0]
    for x in seq[1:]:
        out = nt.p_add(out, nt.p_psi(x))
    return out


class PsiOmegaFixpoint(OmegaFixpoint):
    """The suborder of psi(Omega^omega) whose high summands carry member
    coefficients at exponents shifted by two and whose exponent-one
    summands carry flattened sequences."""

    label = "psiomega-seq"

    def __init__(self):
        self.inner = PHI_SHAPE
        self.order = nt.PsiOmegaOrder()

    def split(self, x):
        """(high pairs, exponent-one args, leftovers)."""
        high, ones, bad = [], [], []
        for m, a in x[1]:
            if m >= 2:
                high.append((m - 2, a))
            elif m == 1:
                ones.append(a)
            else:
                bad.append((m, a))
        return high, ones, bad

    def flat_preimage(self, a):
        """The unique sequence flattening to a, or None.

        The flattening appends one exponent-zero summand per entry, so a
        candidate of length n reads the arguments of the last n such
        summands; the map being an embedding, at most one candidate fits.
        """
        pairs = a[1]
        if not pairs:
            return ()
        tail = 0
        while tail < len(pairs) and pairs[len(pairs) - 1 - tail][0] == 0:
            tail += 1
        for n in range(tail, 0, -1):
            cand = tuple(arg for _, arg in pairs[len(pairs) - n:])
            try:
                if p_seq_flatten(cand) == a:
                    return cand
            except OrderError:
                pass
        return None

    def member_plus(self, x) -> bool:
        high, ones, bad = self.split(x)
        if bad:
            return False
        for _, a in high:
            if not self.member(a):
                return False
        for a in ones:
            if self.flat_preimage(a) is None:
                return False
        return True

    def member(self, x) -> bool:
        if not (nt.p_member(x) and self.member_plus(x)):
            return False
        high, ones, _ = self.split(x)
        for _, a in high:
            if nt.p_cmp(a, x) >= 0:
                return False
        for a in ones:
            seq = self.flat_preimage(a)
            if seq and nt.p_cmp(seq[0], x) >= 0:
                return False
        return True

    def kappa(self, x) -> tuple:
        high, ones, bad = self.split(x)
        if bad:
            raise OrderError("exponent-zero summand outside the suborder")
        entries = [("f", m, a) for m, a in high]
        for a in ones:
            seq = self.flat_preimage(a)
            if seq is None:
                raise OrderError("exponent-one summand is not a flattening")
            entries.append(("q", seq))
        return tuple(entries)

    def kappa_inv(self, seq):
        pairs = []
        for v in seq:
            if v[0] == "f":
                pairs.append((v[1] + 2, v[2]))
            else:
                pairs.append((1, p_seq_flatten(v[1])))
        x = nt.mk_p(tuple(pairs))
        if not self.member(x):
            raise CollapseError("sequence preimage left the suborder")
        return x


def phi_to_psi_omega(x):
    """phi(omega, 0) into psi(Omega^omega), through the free collapsing
    terms of the sequence-or-index functor and the insertion collapse."""
    fx = PsiOmegaFixpoint()
    embed = bh_initial_embed(PHI_SHAPE, insertion_collapse(fx))
    return embed(phi_to_theta(x))


# ---------------------------------------------------------------------------
# psi(Omega^omega) into the weak fixed point (length-measured recursion)


class _PsiWMaps:
    def __init__(self):
        self.psi = PsiOrder(WEAK)
        self.psiplus = PsiOrder(WEAK, valid_only=False)
        self._memo: dict = {}

    def grouped(self, x):
        """Distinct exponents with their coefficient-argument sequences."""
        groups = []
        for m, a in x[1]:
            if groups and groups[-1][0] == m:
                groups[-1][1].append(a)
            else:
                groups.append((m, [a]))
        return [(m, tuple(args)) for m, args in groups]

    def h(self, x):
        """A weak value over collapse trees, by recursion on term length."""
        key = x
        got = self._memo.get(key)
        if got is not None:
            return got
        pairs = []
        for m, args in self.grouped(x):
            head = args[0]
            pairs.append((2 * m + 2, Cl(self.h(head))))
            pairs.append((2 * m + 1, Cl(self.h(p_seq_flatten_tail(args)))))
        out = tuple(pairs)
        self._memo[key] = out
        return out


_PW = None


def _psi_w_maps() -> _PsiWMaps:
    global _PW
    if _PW is None:
        _PW = _PsiWMaps()
    return _PW


def psi_omega_to_psi_w(x) -> Cl:
    """psi(Omega^omega) into the weak fixed point; the collapse validates
    that the image really lands inside it."""
    maps = _psi_w_maps()
    return maps.psi.collapse(maps.h(x))


# ---------------------------------------------------------------------------
# The weak fixed point into phi(omega, 0)


_PHI_ONE = nt.mk_phi(0, nt.PHI_ZERO)


def _phi_bump(a, b):
    """a + b + 1 at the level of indecomposable summands, where the left
    part is dropped as soon as the right exceeds it."""
    if b != nt.PHI_ZERO and nt.phi_cmp(b, a) > 0:
        items = [b, _PHI_ONE]
    else:
        items = [x for x in (a, b) if x != nt.PHI_ZERO] + [_PHI_ONE]
    flat = []
    for x in items:
        flat.extend(x[1] if x[0] == "+" else [x])
    return nt.mk_phi_sum(tuple(flat))


def weak_value_to_phi(v) -> tuple:
    """Weak values over the weak fixed point into phi(omega, 0)."""
    if not v:
        return nt.PHI_ZERO
    head, (m, x) = v[:-1], v[-1]
    a = weak_value_to_phi(head)
    b = weak_value_to_phi(x.payload)
    return nt.mk_phi(m, _phi_bump(a, b))


def psi_w_to_phi(t: Cl) -> tuple:
    """The weak fixed point into phi(omega, 0): the image of the payload."""
    return weak_value_to_phi(t.payload)


def phi_to_psi_w(x) -> Cl:
    """phi(omega, 0) into the weak fixed point, through psi(Omega^omega)."""
    return psi_omega_to_psi_w(phi_to_psi_omega(x))


def psi_omega_to_phi(x) -> tuple:
    """psi(Omega^omega) into phi(omega, 0), through the weak fixed point."""
    return psi_w_to_phi(psi_omega_to_psi_w(x))


# ---------------------------------------------------------------------------
# Verification


@dataclass
class EmbeddingReport:
    source: str
    target: str
    bound: int
    pairs_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def check_embedding(source: Order, target: Order, fn, bound: int,
                    elements=None, max_violations: int = 5) -> EmbeddingReport:
    """Exhaustive strict monotonicity of fn on enumerated source pairs."""
    rep = EmbeddingReport(source=source.name, target=target.name, bound=bound)
    elems = source.enumerate(bound) if elements is None else list(elements)
    images = [fn(t) for t in elems]
    for (a, fa), (b, fb) in itertools.combinations(zip(elems, images), 2):
        rep.pairs_checked += 1
        if source.cmp(a, b) != target.cmp(fa, fb):
            if len(rep.violations) < max_violations:
                rep.violations.append("order not preserved: %s vs %s"
                                      % (source.show(a), source.show(b)))
    return rep


def embedding_registry() -> dict:
    """Named embeddings: name -> (source order, target order, map)."""
    psi_g = PsiOrder(GOODSTEIN)
    psi_w = PsiOrder(WEAK)
    theta_g = ThetaOrder(GOODSTEIN)
    theta_phi = ThetaOrder(PHI_SHAPE)
    return {
        "nf-collapse": (nt.NfOrder(), nt.NfOrder(True), nt.nf_collapse),
        "m-collapse": (nt.MOrder(), nt.NfOrder(True), nt.m_theta_collapse),
        "normalize": (nt.OtOrder(), nt.NfOrder(), nt.omega_normalize),
        "psi-g-to-ot": (psi_g, nt.BhOrder(), psi_g_to_ot),
        "ot-to-psi-g": (nt.BhOrder(), psi_g, ot_to_psi_g),
        "phi-to-theta": (nt.PhiOrder(), theta_phi, phi_to_theta),
        "phi-to-psiomega": (nt.PhiOrder(), nt.PsiOmegaOrder(), phi_to_psi_omega),
        "psiomega-to-psi-w": (nt.PsiOmegaOrder(), psi_w, psi_omega_to_psi_w),
        "psi-w-to-phi": (psi_w, nt.PhiOrder(), psi_w_to_phi),
        "phi-to-psi-w": (nt.PhiOrder(), psi_w, phi_to_psi_w),
        "psiomega-to-phi": (nt.PsiOmegaOrder(), nt.PhiOrder(), psi_omega_to_phi),
    }


EQUIMORPHISM_PAIRS = {
    "goodstein-bh": ("psi-g-to-ot", "ot-to-psi-g"),
    "weak-phi": ("psi-w-to-phi", "phi-to-psi-w"),
    "phi-psiomega": ("phi-to-psiomega", "psiomega-to-phi"),
}


def equimorphism_suite(pair: str, bound: int) -> list:
    """Both directions' monotonicity plus monotone round trips."""
    fwd_name, bwd_name = EQUIMORPHISM_PAIRS[pair]
    registry = embedding_registry()
    src, tgt, fwd = registry[fwd_name]
    tgt2, src2, bwd = registry[bwd_name]
    reports = [check_embedding(src, tgt, fwd, bound),
               check_embedding(tgt2, src2, bwd, bound)]
    reports.append(check_embedding(src, src, lambda t: bwd(fwd(t)), bound))
    reports.append(check_embedding(tgt2, tgt2, lambda t: fwd(bwd(t)), bound))
    return reports
