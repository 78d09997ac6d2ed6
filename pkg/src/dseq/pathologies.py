"""Boundary phenomena: termination points that are not well founded,
a fixed point differing from the canonical one over a finite tree,
successors forced by the bump combinator and lost again by stratified
reconstruction, and the dense rational windows.

Ill-founded behavior is demonstrated at finite approximation depth with
explicit witnesses: descending support chains of any requested length,
and successor candidates that keep dropping as the approximation deepens.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .orders import FinOrder, ListOrder, Order, OrderError, QOrder, ZOrder
from .predilators import (BumpPredilator, FiniteTree, Predilator, PredilatorError,
                          TreePredilator)
from .fixpoint import (Cl, CodedRelation, FuelExhausted, PsiOrder, descent_of_length,
                       synthesize_height, unique_hom)


@dataclass
class PathologyReport:
    label: str
    checked: int = 0
    details: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


# ---------------------------------------------------------------------------
# The integer point for the identity functor


def z_point_values(lo: int, hi: int) -> list:
    """The window slice of the integer termination point: stage z holds z-1."""
    return [z - 1 for z in range(lo, hi + 1)]


def z_point_relation() -> CodedRelation:
    def decode(c):
        return c // 2 if c % 2 == 0 else -(c + 1) // 2

    def code(z):
        return 2 * z if z >= 0 else -2 * z - 1

    return CodedRelation(decode=decode, code=code,
                         preds=lambda z: [z - 1], label="z-point")


def z_point_check(lo: int, hi: int, descent_length: int = 10) -> PathologyReport:
    """Exact minimality and cofinality on a window, plus an explicit
    support descent of the requested length."""
    rep = PathologyReport(label="z-point[%d,%d]" % (lo, hi))
    for z in range(lo, hi + 1):
        a_z = z - 1
        rep.checked += 1
        if not a_z < z:
            rep.violations.append("value not below its stage at %d" % z)
        for y in range(lo, z):
            if not y - 1 < a_z:
                rep.violations.append("stage %d image not below stage %d" % (y, z))
        # minimality is exact on integers: nothing sits strictly between
        for sigma in range(lo - 1, a_z):
            y = sigma + 1
            if not (y < z and sigma <= y - 1):
                rep.violations.append(
                    "no earlier witness for %d below stage %d" % (sigma, z))
    for sigma in range(lo, hi):
        # cofinality witness: the very next stage
        z = sigma + 1
        if not (z <= hi and sigma <= z - 1):
            rep.violations.append("no stage dominates %d" % sigma)
    rel = z_point_relation()
    descent = descent_of_length(rel, 0, descent_length)
    rep.details.append("descent %s" % (descent,))
    if len(descent) != descent_length:
        rep.violations.append("descent construction fell short")
    try:
        synthesize_height(rel, [0], fuel=2000)
        rep.violations.append("height synthesis terminated on the integer point")
    except FuelExhausted as exc:
        rep.details.append("height synthesis exhausted fuel; witness %s"
                           % (exc.descent,))
    return rep


# ---------------------------------------------------------------------------
# A fixed point over a finite tree that is built from explicit padding terms


class TreeFixedPoint(Order):
    """Terms over a finite tree: the tree's own nodes plus padding terms
    P(t, x, y) supplying every other value of the node functor.  The
    payload map is a bijection onto the functor's values; the restriction
    keeps a padding term only when both arguments lie strictly below it."""

    def __init__(self, tree: FiniteTree, valid_only: bool = True):
        self.tree = tree
        self.d = TreePredilator(tree)
        self.valid_only = valid_only
        self.name = "treefp[%d]" % len(tree.nodes)
        self._cmp_cache: dict = {}

    def pi(self, v):
        if v[0] == "t":
            node = v[1]
            if self.tree.is_leaf(node):
                return ("leaf", node)
            return ("nd", node, ("t", node + (0,)), ("t", node + (1,)))
        _, node, x, y = v
        return ("nd", node, x, y)

    def cmp(self, a, b):
        if a == b:
            return 0
        if a[0] == "t" and b[0] == "t":
            return FiniteTree.node_cmp(a[1], b[1])
        key = (a, b)
        got = self._cmp_cache.get(key)
        if got is None:
            got = self.d.value_cmp(self, self.pi(a), self.pi(b))
            self._cmp_cache[key] = got
        return got

    def size(self, t):
        if t[0] == "t":
            return 1 + len(t[1])
        return 1 + len(t[1]) + self.size(t[2]) + self.size(t[3])

    def is_member(self, v) -> bool:
        if v[0] == "t":
            return True
        _, node, x, y = v
        return (self.is_member(x) and self.is_member(y)
                and self.cmp(x, v) < 0 and self.cmp(y, v) < 0)

    def collapse(self, value):
        """Preimage of a functor value; padding terms cover what the tree
        nodes themselves do not reach."""
        if value[0] == "leaf":
            return ("t", value[1])
        _, node, x, y = value
        if x == ("t", node + (0,)) and y == ("t", node + (1,)):
            return ("t", node)
        v = ("P", node, x, y)
        if self.valid_only and not self.is_member(v):
            raise PredilatorError("padding term outside the restriction")
        return v

    def elements(self, bound):
        out = [("t", n) for n in self.tree.nodes if 1 + len(n) <= bound]
        seen = set(out)
        while True:
            grew = False
            for node in self.tree.internal():
                pool = [v for v in out if self.size(v) + 2 + len(node) <= bound]
                for x in pool:
                    for y in pool:
                        if 1 + len(node) + self.size(x) + self.size(y) > bound:
                            continue
                        if x == ("t", node + (0,)) and y == ("t", node + (1,)):
                            continue
                        v = ("P", node, x, y)
                        if v in seen:
                            continue
                        if self.valid_only and not self.is_member(v):
                            continue
                        seen.add(v)
                        out.append(v)
                        grew = True
            if not grew:
                return out

    def show(self, t):
        if t[0] == "t":
            return "(t %s)" % FiniteTree.node_show(t[1])
        return "(P %s %s %s)" % (FiniteTree.node_show(t[1]),
                                 self.show(t[2]), self.show(t[3]))

    def from_sexpr(self, expr):
        if expr[0] == "t":
            return ("t", FiniteTree.node_parse(expr[1]))
        if expr[0] == "P":
            return ("P", FiniteTree.node_parse(expr[1]),
                    self.from_sexpr(expr[2]), self.from_sexpr(expr[3]))
        raise OrderError("bad tree term: %r" % (expr,))


def tree_fixed_point_check(tree: FiniteTree, bound: int = 7) -> PathologyReport:
    """Both fixed-point conditions on the padded tree order, and agreement
    with the canonical fixed point through the collapse recursion."""
    rep = PathologyReport(label="treefp")
    x = TreeFixedPoint(tree)
    elems = x.elements(bound)
    rep.checked = len(elems)
    base = ListOrder(x, elems)
    car = x.d.carrier(base)
    # the payload map is a bijection with the padded order: check both
    # inclusions of the range condition on enumerated functor values
    for value in car.enumerate(bound):
        sup = x.d.supp(base, value)
        dominating = all(x.d.value_cmp(x, x.pi(s), value) < 0 for s in sup)
        try:
            pre = x.collapse(value)
        except PredilatorError:
            pre = None
        if pre is not None and x.pi(pre) != value:
            rep.violations.append("collapse is not a section at %s"
                                  % car.show(value))
        if (pre is not None) != dominating:
            rep.violations.append("range condition mismatch at %s"
                                  % car.show(value))
    # the support relation has a height function on the finite fragment
    idx = {v: i for i, v in enumerate(elems)}

    def preds(v):
        return [s for s in x.d.supp(x, x.pi(v)) if s in idx]

    rel = CodedRelation(decode=lambda c: elems[c] if 0 <= c < len(elems) else None,
                        code=lambda v: idx[v], preds=preds, label="treefp")
    try:
        synthesize_height(rel, elems, fuel=10 ** 6)
    except FuelExhausted as exc:
        rep.violations.append("no height function: descent %s" % (exc.descent,))
    # agreement with the canonical fixed point, through the unique hom
    psi = PsiOrder(x.d)
    hom = unique_hom(x.d, elems, x.pi, psi)
    images = [hom(v) for v in elems]
    for i, (a, fa) in enumerate(zip(elems, images)):
        for b, fb in zip(elems[:i], images[:i]):
            if x.cmp(b, a) != psi.cmp(fb, fa):
                rep.violations.append("hom to the canonical point not an "
                                      "embedding at %s" % x.show(a))
    rep.details.append("hom image size %d" % len(set(images)))
    return rep


# ---------------------------------------------------------------------------
# Successors under the bump combinator


def successor_check(d: Predilator, bound: int) -> PathologyReport:
    """Every enumerated term of the bumped fixed point has a successor
    sharing its support, with nothing enumerable in between."""
    bump = BumpPredilator(d)
    psi = PsiOrder(bump)
    terms = psi.sorted_terms(bound)
    rep = PathologyReport(label="successor:%s" % bump.name, checked=len(terms))
    for t in terms:
        succ = psi.collapse(bump.successor(t.payload))
        if psi.cmp(t, succ) >= 0:
            rep.violations.append("successor not above %s" % psi.show(t))
        if bump.supp(psi, t.payload) != bump.supp(psi, succ.payload):
            rep.violations.append("successor changed support at %s" % psi.show(t))
        for u in terms:
            if psi.cmp(t, u) < 0 and psi.cmp(u, succ) < 0:
                rep.violations.append("term between %s and its successor"
                                      % psi.show(t))
    return rep


# ---------------------------------------------------------------------------
# Stratified reconstruction that forgets a successor


@dataclass
class StratifiedPoint:
    strata: list
    elements: list
    b_values: list
    no_successor_term: object
    successor_candidates: list


def alt_termination_from_descent(d: Predilator, descent: list,
                                 bound: int = 6) -> StratifiedPoint:
    """Rebuild a termination point over the bumped functor from a strictly
    descending list of fixed-point values of d, stratum by stratum; the
    tagged middle element ends up with no successor relative to the depth.

    descent entries are values of d over elements of its fixed point.
    """
    bump = BumpPredilator(d)
    psi_d = PsiOrder(d)
    psi_e = PsiOrder(bump)
    car_d = d.carrier(psi_d)
    for a, b in zip(descent, descent[1:]):
        if car_d.cmp(b, a) >= 0:
            raise OrderError("descent list must strictly decrease")

    memo: dict = {}

    def transport(t: Cl) -> Cl:
        if t not in memo:
            memo[t] = psi_e.collapse((0, d.rename(t.payload, transport), 0))
        return memo[t]

    taus = [psi_e.collapse((2, d.rename(v, transport), 0)) for v in descent]
    pool = psi_e.elements(bound)
    middle = psi_e.collapse((1, None, 0))
    strata = [[t for t in pool
               if t.payload[0] == 0 or t.payload == (1, None, 0)]]
    taken = set(strata[0])
    for n, tau in enumerate(taus, start=1):
        allowed = set().union(*strata[:n]) if strata else set()
        layer = []
        for t in pool:
            if t in taken or t.payload[0] != 2:
                continue
            if psi_e.cmp(t, tau) <= 0:
                continue
            if all(c in allowed for c in psi_e.children(t)):
                layer.append(t)
        strata.append(layer)
        taken.update(layer)
    elements = sorted(taken, key=__import__("functools").cmp_to_key(psi_e.cmp))
    index = {t: i for i, t in enumerate(elements)}
    b_values = []
    for i, t in enumerate(elements):
        def to_index(c):
            j = index[c]
            if j >= i:
                raise OrderError("support outside the strict predecessors")
            return j
        b_values.append(bump.rename(t.payload, to_index))
    candidates = []
    for depth in range(1, len(strata) + 1):
        present = set().union(*strata[:depth])
        above = [t for t in present if psi_e.cmp(middle, t) < 0]
        best = None
        for t in above:
            if best is None or psi_e.cmp(t, best) < 0:
                best = t
        candidates.append(best)
    return StratifiedPoint(strata=strata, elements=elements, b_values=b_values,
                           no_successor_term=middle,
                           successor_candidates=candidates)


# ---------------------------------------------------------------------------
# Dense rational windows


def window_carrier(r: Fraction):
    def member(q: Fraction) -> bool:
        return q < r or q > r + 1

    return member


def below_witness(r: Fraction, q: Fraction, eps: Fraction) -> Fraction:
    """A carrier point strictly between q - eps and q."""
    member = window_carrier(r)
    p = q - eps / 2
    if member(p):
        return p
    lo = max(r + 1, q - eps)
    return (lo + q) / 2


def dense_window_check(r: Fraction, sample_bound: int = 8) -> PathologyReport:
    rep = PathologyReport(label="dense r=%s" % r)
    member = window_carrier(r)
    qs = [q for q in QOrder().enumerate(sample_bound) if member(q)]
    qs += [r + 2, r - 1, r + Fraction(3, 2) if member(r + Fraction(3, 2)) else r + 2]
    for q in qs:
        for k in range(4):
            eps = Fraction(1, 2 ** k)
            rep.checked += 1
            p = below_witness(r, q, eps)
            if not (member(p) and q - eps < p < q):
                rep.violations.append("no approximant below %s at %s" % (q, eps))
    for sigma in QOrder().enumerate(sample_bound):
        x = max(sigma, r + 1) + 1
        rep.checked += 1
        if not (member(x) and sigma <= x):
            rep.violations.append("no stage dominates %s" % sigma)
    return rep


def back_and_forth(r1: Fraction, r2: Fraction, steps: int) -> list:
    """Extend a partial isomorphism between two windows, one point per
    step, alternating sides; returns the matched pairs."""
    m1, m2 = window_carrier(r1), window_carrier(r2)
    stream1 = [q for q in QOrder().enumerate(steps + 4) if m1(q)]
    stream2 = [q for q in QOrder().enumerate(steps + 4) if m2(q)]
    pairs: list = []

    def pick(member, r, lo, hi):
        if lo is None and hi is None:
            return max(r + 2, Fraction(0))
        if hi is None:
            return max(lo, r + 1) + 1
        if lo is None:
            return min(hi, r) - 1
        mid = (lo + hi) / 2
        if member(mid):
            return mid
        if lo < r:
            return (lo + min(hi, r)) / 2
        return (max(lo, r + 1) + hi) / 2

    def insert(q, source_idx):
        fwd = sorted(pairs, key=lambda p: p[source_idx])
        lo = hi = None
        for p in fwd:
            if p[source_idx] < q:
                lo = p
            elif p[source_idx] > q and hi is None:
                hi = p
        other = 1 - source_idx
        member, r = (m2, r2) if other == 1 else (m1, r1)
        val = pick(member, r,
                   lo[other] if lo else None,
                   hi[other] if hi else None)
        if not member(val):
            raise OrderError("back-and-forth produced a non-carrier point")
        pair = (q, val) if source_idx == 0 else (val, q)
        pairs.append(pair)

    i1 = i2 = 0
    for step in range(steps):
        if step % 2 == 0:
            while i1 < len(stream1) and any(p[0] == stream1[i1] for p in pairs):
                i1 += 1
            if i1 < len(stream1):
                insert(stream1[i1], 0)
        else:
            while i2 < len(stream2) and any(p[1] == stream2[i2] for p in pairs):
                i2 += 1
            if i2 < len(stream2):
                insert(stream2[i2], 1)
    for (a1, b1) in pairs:
        for (a2, b2) in pairs:
            if (a1 < a2) != (b1 < b2):
                raise OrderError("back-and-forth broke the order")
    return pairs


# ---------------------------------------------------------------------------
# Uniqueness for the constant integer functor


def const_z_uniqueness_demo(values: list) -> PathologyReport:
    """Check a claimed termination prefix for the constant integer functor
    against the surjectivity argument: the value map must be an embedding
    onto an integer interval, and any gap pins a minimality violation."""
    rep = PathologyReport(label="const-z demo", checked=len(values))
    for a, b in zip(values, values[1:]):
        if a >= b:
            rep.violations.append("stage values must strictly increase")
            return rep
    if not values:
        return rep
    lo, hi = values[0], values[-1]
    attained = set(values)
    for z in range(lo, hi + 1):
        if z not in attained:
            x = min(i for i, v in enumerate(values) if v > z)
            rep.violations.append(
                "gap at %d: stage %d holds %d but %d also exceeds every "
                "earlier stage, so minimality fails" % (z, x, values[x],
                                                        values[x] - 1))
    if rep.ok:
        rep.details.append("isomorphism with the interval [%d,%d] via the "
                           "value map" % (lo, hi))
    return rep
