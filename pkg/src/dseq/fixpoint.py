"""Fixed-point term systems for coded predilators.

A collapse term is a tree: a D-value whose base elements are smaller
collapse terms (exactly its support).  The embedding into D-values is
the payload accessor, comparison reflects payload comparison over the
tree order itself, and the range condition asks, hereditarily, that the
payload dominate the payloads of its children.  The order of all trees
plays the role of the extended system (with the payload map bijective);
the hereditarily dominating trees form the fixed point proper.

Also here: conversion between enumerated fixed-point prefixes and
termination prefixes of increasing sequences, the condition checkers for
those prefixes, unique homomorphisms by collapse recursion, bounded-code
height synthesis, and the free collapsing term system with its two
order conditions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import sexpr
from .orders import FinOrder, ListOrder, Order, OrderError, fin_subset_le, fin_subset_lt
from .predilators import Predilator, PredilatorError


class CollapseError(PredilatorError):
    """The range condition rejects the offered value."""


class FuelExhausted(PredilatorError):
    def __init__(self, message, descent):
        super().__init__(message)
        self.descent = descent


@dataclass(frozen=True)
class Cl:
    """A collapse term: a value over the finite order of its children."""

    payload: object


class PsiOrder(Order):
    """Collapse trees of one predilator; valid_only restricts to the
    hereditarily dominating ones (the fixed point itself)."""

    def __init__(self, d: Predilator, valid_only: bool = True):
        self.d = d
        self.valid_only = valid_only
        self.name = ("psi:%s" if valid_only else "psiplus:%s") % d.name
        self._cmp_cache: dict = {}
        self._valid_cache: dict = {}
        self._size_cache: dict = {}

    # -- order interface ----------------------------------------------------

    def cmp(self, a, b):
        if a == b:
            return 0
        key = (a, b)
        got = self._cmp_cache.get(key)
        if got is None:
            got = self.d.value_cmp(self, a.payload, b.payload)
            self._cmp_cache[key] = got
        return got

    def size(self, t):
        got = self._size_cache.get(t)
        if got is None:
            if self.valid_only and not self.is_valid(t):
                raise OrderError("term violates the range condition: %s" % self.show(t))
            got = self.d.value_size(self, t.payload)
            self._size_cache[t] = got
        return got

    def elements(self, bound):
        seen = set()
        out = []
        while True:
            base = ListOrder(self, out, presorted=False)
            grew = False
            for payload in self.d.values(base, bound):
                t = Cl(payload)
                if t in seen:
                    continue
                if self.valid_only and not self._dominates(t):
                    continue
                seen.add(t)
                out.append(t)
                grew = True
            if not grew:
                return out

    def show(self, t):
        return "(cl %s)" % self.d.value_show(self, t.payload)

    def from_sexpr(self, expr):
        if not (isinstance(expr, list) and len(expr) == 2 and expr[0] == "cl"):
            raise sexpr.SexprError("expected (cl value): %r" % (expr,))
        t = Cl(self.d.value_from_sexpr(self, expr[1]))
        if self.valid_only and not self.is_valid(t):
            raise CollapseError("parsed term violates the range condition")
        return t

    # -- fixed-point structure ----------------------------------------------

    def pi(self, t: Cl):
        """The embedding into D-values over this order."""
        return t.payload

    def children(self, t: Cl) -> list:
        return self.d.supp(self, t.payload)

    def _dominates(self, t: Cl) -> bool:
        return all(self.d.value_cmp(self, c.payload, t.payload) < 0
                   for c in self.children(t))

    def is_valid(self, t: Cl) -> bool:
        got = self._valid_cache.get(t)
        if got is None:
            got = self._dominates(t) and all(self.is_valid(c) for c in self.children(t))
            self._valid_cache[t] = got
        return got

    def collapse(self, value) -> Cl:
        """Inverse of the payload map; rejects range-condition violations."""
        t = Cl(value)
        for c in self.children(t):
            if not self.is_valid(c):
                raise CollapseError("support element outside the fixed point: %s"
                                    % self.show(c))
            if self.d.value_cmp(self, c.payload, value) >= 0:
                raise CollapseError("support payload not below the value: %s"
                                    % self.show(c))
        return t

    def height(self, t: Cl) -> int:
        kids = self.children(t)
        return 1 + max([0] + [self.height(c) for c in kids])

    def sorted_terms(self, bound: int) -> list:
        """Enumerated terms arranged by the fixed-point order itself."""
        import functools
        return sorted(self.elements(bound),
                      key=functools.cmp_to_key(self.cmp))


def support_payloads(psi: PsiOrder, value) -> list:
    """Payloads of the support elements: the simplified closure set."""
    return [c.payload for c in psi.d.supp(psi, value)]


def range_condition_holds(psi: PsiOrder, value) -> bool:
    return all(psi.d.value_cmp(psi, p, value) < 0 for p in support_payloads(psi, value))


# ---------------------------------------------------------------------------
# General finite-index closure sets


@dataclass
class NuPresentation:
    """A finite collapse presentation for a finite index order.

    Element i carries an index alpha_i below nu and a value payload_i
    over fin:n referencing other elements; heights must strictly drop
    along the support relation.
    """

    d: Predilator
    nu: int
    alphas: list
    payloads: list
    heights: list

    def __post_init__(self):
        n = len(self.payloads)
        base = FinOrder(n)
        for i, tau in enumerate(self.payloads):
            if not 0 <= self.alphas[i] < self.nu:
                raise OrderError("index component out of range")
            for j in self.d.supp(base, tau):
                if self.heights[j] >= self.heights[i]:
                    raise OrderError(
                        "declared heights do not respect the support relation")

    def base(self) -> FinOrder:
        return FinOrder(len(self.payloads))


def nu_closure_element(pres: NuPresentation, gamma: int, i: int) -> list:
    """Contribution of one element: its value plus that value's closure,
    when the element's index reaches gamma."""
    alpha, tau = pres.alphas[i], pres.payloads[i]
    if alpha < gamma:
        return []
    return _dedup(pres, [tau] + nu_closure_value(pres, gamma, tau))


def nu_closure_value(pres: NuPresentation, gamma: int, tau) -> list:
    out = []
    for j in pres.d.supp(pres.base(), tau):
        out.extend(nu_closure_element(pres, gamma, j))
    return _dedup(pres, out)


def _dedup(pres: NuPresentation, vals: list) -> list:
    base = pres.base()
    out = []
    for v in vals:
        if not any(pres.d.value_cmp(base, v, w) == 0 for w in out):
            out.append(v)
    return out


def presentation_from_prefix(d: Predilator, prefix_values: list) -> NuPresentation:
    """Index-1 presentation of a termination prefix (values over fin:i)."""
    n = len(prefix_values)
    heights = []
    for i, v in enumerate(prefix_values):
        sup = d.supp(FinOrder(i), v) if i else []
        heights.append(1 + max([0] + [heights[j] for j in sup]))
    return NuPresentation(d, 1, [0] * n, list(prefix_values), heights)


# ---------------------------------------------------------------------------
# Termination prefixes vs fixed-point prefixes


def fp_to_termination(psi: PsiOrder, terms: list) -> list:
    """Read an order-sorted, downward-closed list of fixed-point terms as a
    termination prefix: entry i is the payload of term i with each child
    replaced by its position among the strict predecessors."""
    d = psi.d
    values = []
    for i, t in enumerate(terms):
        def index_of(c):
            for j in range(i):
                if terms[j] == c:
                    return j
            raise OrderError("prefix not downward closed at %s" % psi.show(c))
        values.append(d.rename(t.payload, index_of))
    return values


def termination_to_fp(psi: PsiOrder, values: list) -> list:
    """Rebuild fixed-point terms from a termination prefix; the collapse
    validates the range condition stage by stage."""
    d = psi.d
    terms: list = []
    for i, v in enumerate(values):
        for j in range(i):
            if d.value_cmp(FinOrder(i), values[j], v) >= 0:
                raise OrderError("stage %d not above stage %d" % (i, j))
        payload = d.rename(v, lambda j: terms[j])
        terms.append(psi.collapse(payload))
    return terms


def prefix_pi_values(d: Predilator, values: list) -> list:
    """The embedding images over the full prefix base; inclusions between
    finite orders are identities on elements."""
    return list(values)


@dataclass
class ConditionReport:
    predilator: str
    length: int
    bound: int
    minimality_checked: int = 0
    coverage_checked: int = 0
    horizon: int = 0
    height: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def check_conditions(d: Predilator, values: list, enum_bound: int,
                     fuel: int = 10 ** 6) -> ConditionReport:
    """Check a termination prefix against the defining conditions.

    Minimality is checked through the dichotomy: any enumerated value
    below a stage either equals an earlier image or mentions an earlier
    stage in its support, and is dominated by that stage's image.
    Cofinality is checked for every enumerated value the prefix can still
    cover; values beyond the last image count as horizon, not violations.
    The height condition runs the bounded-code synthesizer.
    """
    rep = ConditionReport(predilator=d.name, length=len(values), bound=enum_bound)
    n = len(values)
    for i in range(n):
        base = FinOrder(i)
        a_i = values[i]
        for j in range(i):
            if d.value_cmp(base, values[j], a_i) >= 0:
                rep.violations.append("stage %d image not below stage %d" % (j, i))
        for sigma in d.values(base, enum_bound):
            if d.value_cmp(base, sigma, a_i) >= 0:
                continue
            rep.minimality_checked += 1
            witness = None
            for j in range(i):
                if d.value_cmp(base, sigma, values[j]) > 0:
                    continue
                equal = d.value_cmp(base, sigma, values[j]) == 0
                if equal or j in d.supp(base, sigma):
                    witness = j
                    break
            if witness is None:
                rep.violations.append(
                    "stage %d not minimal: %s has no earlier witness"
                    % (i, d.value_show(base, sigma)))
    base_n = FinOrder(n)
    last = values[n - 1] if n else None
    for sigma in d.values(base_n, enum_bound):
        if last is None or d.value_cmp(base_n, sigma, last) > 0:
            rep.horizon += 1
            continue
        rep.coverage_checked += 1
        best = None
        for x in range(n):
            if all(s <= x for s in d.supp(base_n, sigma)) and \
                    d.value_cmp(base_n, sigma, values[x]) <= 0:
                best = x
                break
        if best is None:
            rep.violations.append("no stage dominates %s" % d.value_show(base_n, sigma))
    try:
        rel = prefix_relation(d, values)
        rep.height = synthesize_height(rel, list(range(n)), fuel=fuel)
    except FuelExhausted as exc:
        rep.violations.append("height synthesis exhausted fuel; descent %s"
                              % (exc.descent,))
    return rep


# ---------------------------------------------------------------------------
# Height synthesis by bounded code search


@dataclass
class CodedRelation:
    """A relation on coded elements: decode(i) yields element i or None,
    preds(x) lists the elements strictly related below x."""

    decode: object
    code: object
    preds: object
    label: str = "rel"


def prefix_relation(d: Predilator, values: list) -> CodedRelation:
    n = len(values)

    def preds(i):
        return sorted(d.supp(FinOrder(i), values[i]))

    return CodedRelation(decode=lambda c: c if 0 <= c < n else None,
                         code=lambda x: x, preds=preds, label="prefix")


def code_bound(rel: CodedRelation, x, n: int) -> int:
    """Primitive-recursive bound on codes reachable by n-step descents."""
    b = rel.code(x)
    for _ in range(n):
        best = b
        for k in range(b + 1):
            y = rel.decode(k)
            if y is None:
                continue
            for l in rel.preds(y):
                best = max(best, rel.code(l))
        b = best
    return b


def _descent_exists(rel: CodedRelation, x, length: int, budget: list) -> list | None:
    """A descending sequence of the given length starting at x, or None."""
    if length <= 1:
        return [x]
    budget[0] -= 1
    if budget[0] <= 0:
        raise FuelExhausted("fuel exhausted while searching descents", [x])
    for y in rel.preds(x):
        tail = _descent_exists(rel, y, length - 1, budget)
        if tail is not None:
            return [x] + tail
    return None


def synthesize_height(rel: CodedRelation, elements: list, fuel: int = 10 ** 6) -> dict:
    """Assign each element the least n admitting no n-long descent.

    Strictly increasing along the relation wherever it terminates; on
    ill-founded inputs the fuel runs out and the longest descent found is
    reported as the witness.
    """
    budget = [fuel]
    heights = {}
    for x in elements:
        n = 1
        witness = [x]
        while True:
            try:
                found = _descent_exists(rel, x, n, budget)
            except FuelExhausted:
                raise FuelExhausted("fuel exhausted at %s" % (x,), witness)
            if found is None:
                heights[rel.code(x)] = n
                break
            witness = found
            n += 1
    return heights


def descent_of_length(rel: CodedRelation, x, length: int, fuel: int = 10 ** 6) -> list:
    """An explicit descending chain of the requested length, if one exists."""
    found = _descent_exists(rel, x, length, [fuel])
    if found is None:
        raise OrderError("no descent of length %d from %s" % (length, x))
    return found


# ---------------------------------------------------------------------------
# Unique homomorphisms between fixed points


def unique_hom(d: Predilator, source_elements: list, source_pi,
               target: PsiOrder, translate=None):
    """The homomorphism determined by target-collapsing the mapped payloads.

    source_pi(x) is a value over source elements; translate, when given,
    converts values of the source predilator into values of the target's
    (for carrier inclusions such as smaller constants into larger ones).
    """
    memo = {}

    def f(x):
        if x in memo:
            return memo[x]
        v = d.rename(source_pi(x), f)
        if translate is not None:
            v = translate(v)
        t = target.collapse(v)
        memo[x] = t
        return t

    return f


# ---------------------------------------------------------------------------
# The free collapsing term system and its two conditions


class ThetaOrder(Order):
    """Free collapsing terms over a predilator: one constructor applied to
    values over previously built terms, compared by the two clauses."""

    def __init__(self, d: Predilator):
        self.d = d
        self.name = "theta:%s" % d.name
        self._cmp_cache: dict = {}

    def mk(self, value):
        return ("th", value)

    def arg(self, t):
        return t[1]

    def cmp(self, a, b):
        if a == b:
            return 0
        key = (a, b)
        got = self._cmp_cache.get(key)
        if got is None:
            got = -1 if self._lt(a, b) else (1 if self._lt(b, a) else 1)
            self._cmp_cache[key] = got
        return got

    def _lt(self, a, b) -> bool:
        sa, sb = a[1], b[1]
        if self.d.value_cmp(self, sa, sb) < 0 and \
                all(self.cmp(c, b) < 0 for c in self.d.supp(self, sa)):
            return True
        return any(self.cmp(a, c) <= 0 for c in self.d.supp(self, sb))

    def size(self, t):
        return 1 + self.d.value_size(self, t[1])

    def elements(self, bound):
        seen = set()
        out = []
        while True:
            base = ListOrder(self, out, presorted=False)
            grew = False
            for v in self.d.values(base, bound - 1):
                t = self.mk(v)
                if t not in seen:
                    seen.add(t)
                    out.append(t)
                    grew = True
            if not grew:
                return out

    def show(self, t):
        return "(th %s)" % self.d.value_show(self, t[1])

    def from_sexpr(self, expr):
        if not (isinstance(expr, list) and len(expr) == 2 and expr[0] == "th"):
            raise sexpr.SexprError("expected (th value): %r" % (expr,))
        return self.mk(self.d.value_from_sexpr(self, expr[1]))


@dataclass
class CollapseCheckReport:
    label: str
    pairs: int = 0
    singles: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def bh_collapse_check(d: Predilator, base: Order, collapse, samples: list,
                      label: str = "collapse") -> CollapseCheckReport:
    """Verify the two collapse conditions on sample values over the base.

    (i) comparable values whose smaller side's support sits below the
        image of the larger collapse to ordered images;
    (ii) every value's support sits below its own image.
    """
    rep = CollapseCheckReport(label=label)
    images = [collapse(s) for s in samples]
    for s, img in zip(samples, images):
        rep.singles += 1
        if not fin_subset_lt(base, d.supp(base, s), [img]):
            rep.violations.append("support not below image of %s"
                                  % d.value_show(base, s))
    for (s, si), (t, ti) in itertools.permutations(zip(samples, images), 2):
        if d.value_cmp(base, s, t) >= 0:
            continue
        if not fin_subset_lt(base, d.supp(base, s), [ti]):
            continue
        rep.pairs += 1
        if base.cmp(si, ti) >= 0:
            rep.violations.append("images out of order: %s vs %s"
                                  % (d.value_show(base, s), d.value_show(base, t)))
    return rep


def bh_initial_embed(d: Predilator, collapse):
    """Embed free collapsing terms into a target equipped with a collapse,
    by structural recursion through the value layer."""
    memo = {}

    def e(t):
        if t in memo:
            return memo[t]
        out = collapse(d.rename(t[1], e))
        memo[t] = out
        return out

    return e
