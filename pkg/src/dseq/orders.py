"""Linear orders, order maps, and the omega-power construction.

Everything else in the package is built over the small zoo of orders in
this module.  An Order bundles five capabilities:

  * ``cmp(a, b)``     decidable strict total order (-1/0/+1),
  * ``size(t)``       symbol count used to bound enumerations,
  * ``enumerate(n)``  every element of size <= n, canonically sorted,
  * ``show(t)``       print form,
  * ``parse(s)``      inverse of show.

Canonical enumeration order is (size, print form): deterministic and
independent of the comparison under test.  Elements of a suborder share
their representation with the parent order, so canonical inclusions are
identity functions on elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import sexpr


class OrderError(ValueError):
    pass


class Order:
    name = "order"

    def cmp(self, a, b) -> int:
        raise NotImplementedError

    def lt(self, a, b) -> bool:
        return self.cmp(a, b) < 0

    def le(self, a, b) -> bool:
        return self.cmp(a, b) <= 0

    def eq(self, a, b) -> bool:
        return self.cmp(a, b) == 0

    def size(self, t) -> int:
        raise NotImplementedError

    def elements(self, bound: int) -> list:
        """Unsorted elements of size <= bound; override per order."""
        raise NotImplementedError

    def enumerate(self, bound: int) -> list:
        return sorted(self.elements(bound), key=lambda t: (self.size(t), self.show(t)))

    def show(self, t) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        return self.from_sexpr(sexpr.parse(text))

    def from_sexpr(self, expr):
        raise NotImplementedError

    def contains(self, t) -> bool:
        try:
            self.size(t)
            return True
        except Exception:
            return False

    def sort(self, items: list) -> list:
        """Sort and deduplicate under this order's comparison."""
        out: list = []
        for x in items:
            lo, hi = 0, len(out)
            while lo < hi:
                mid = (lo + hi) // 2
                c = self.cmp(out[mid], x)
                if c < 0:
                    lo = mid + 1
                elif c > 0:
                    hi = mid
                else:
                    break
            else:
                out.insert(lo, x)
                continue
        return out

    def maximum(self, items: list):
        best = None
        for x in items:
            if best is None or self.lt(best, x):
                best = x
        return best


class FinOrder(Order):
    """The finite order n with elements 0 .. n-1."""

    def __init__(self, n: int):
        if n < 0:
            raise OrderError("negative size")
        self.n = n
        self.name = "fin:%d" % n

    def cmp(self, a, b):
        return (a > b) - (a < b)

    def size(self, t):
        if not (isinstance(t, int) and 0 <= t < self.n):
            raise OrderError("not an element of %s: %r" % (self.name, t))
        return 1

    def elements(self, bound):
        return list(range(self.n)) if bound >= 1 else []

    def show(self, t):
        return str(t)

    def from_sexpr(self, expr):
        t = int(expr)
        self.size(t)
        return t

    def __eq__(self, other):
        return isinstance(other, FinOrder) and other.n == self.n

    def __hash__(self):
        return hash(("fin", self.n))


class NatOrder(Order):
    name = "nat"

    def cmp(self, a, b):
        return (a > b) - (a < b)

    def size(self, t):
        if not (isinstance(t, int) and t >= 0):
            raise OrderError("not a natural: %r" % (t,))
        return t + 1

    def elements(self, bound):
        return list(range(max(bound, 0)))

    def show(self, t):
        return str(t)

    def from_sexpr(self, expr):
        t = int(expr)
        self.size(t)
        return t


class ZOrder(Order):
    name = "z"

    def cmp(self, a, b):
        return (a > b) - (a < b)

    def size(self, t):
        if not isinstance(t, int):
            raise OrderError("not an integer: %r" % (t,))
        return 2 * abs(t) + 1

    def elements(self, bound):
        k = (bound - 1) // 2
        return list(range(-k, k + 1)) if bound >= 1 else []

    def show(self, t):
        return str(t)

    def from_sexpr(self, expr):
        return int(expr)


class QOrder(Order):
    """Exact rationals; size |p| + q for p/q in lowest terms."""

    name = "q"

    def cmp(self, a, b):
        return (a > b) - (a < b)

    def size(self, t):
        if not isinstance(t, Fraction):
            raise OrderError("not a rational: %r" % (t,))
        return abs(t.numerator) + t.denominator

    def elements(self, bound):
        out = []
        for q in range(1, bound + 1):
            for p in range(-(bound - q), bound - q + 1):
                f = Fraction(p, q)
                if abs(f.numerator) + f.denominator <= bound and f.denominator == q:
                    out.append(f)
        return sorted(set(out))

    def show(self, t):
        if t.denominator == 1:
            return str(t.numerator)
        return "%d/%d" % (t.numerator, t.denominator)

    def from_sexpr(self, expr):
        return Fraction(expr)


class SumOrder(Order):
    """Tagged disjoint union, every left element below every right one."""

    def __init__(self, left: Order, right: Order):
        self.left = left
        self.right = right
        self.name = "sum(%s,%s)" % (left.name, right.name)

    def cmp(self, a, b):
        if a[0] != b[0]:
            return -1 if a[0] == "l" else 1
        inner = self.left if a[0] == "l" else self.right
        return inner.cmp(a[1], b[1])

    def size(self, t):
        tag, x = t
        inner = {"l": self.left, "r": self.right}[tag]
        return 1 + inner.size(x)

    def elements(self, bound):
        out = [("l", x) for x in self.left.elements(bound - 1)]
        out += [("r", x) for x in self.right.elements(bound - 1)]
        return out

    def show(self, t):
        tag, x = t
        inner = self.left if tag == "l" else self.right
        return "(%s %s)" % (tag, inner.show(x))

    def from_sexpr(self, expr):
        tag, body = expr
        inner = {"l": self.left, "r": self.right}[tag]
        return (tag, inner.from_sexpr(body))


class TopOrder(Order):
    """The given order with one new top element added."""

    TOP = ("top",)

    def __init__(self, inner: Order):
        self.inner = inner
        self.name = "top(%s)" % inner.name

    def cmp(self, a, b):
        if a == self.TOP and b == self.TOP:
            return 0
        if a == self.TOP:
            return 1
        if b == self.TOP:
            return -1
        return self.inner.cmp(a[1], b[1])

    def size(self, t):
        if t == self.TOP:
            return 1
        return 1 + self.inner.size(t[1])

    def elements(self, bound):
        out = [("x", x) for x in self.inner.elements(bound - 1)]
        if bound >= 1:
            out.append(self.TOP)
        return out

    def show(self, t):
        if t == self.TOP:
            return "T"
        return "(x %s)" % self.inner.show(t[1])

    def from_sexpr(self, expr):
        if expr == "T":
            return self.TOP
        return ("x", self.inner.from_sexpr(expr[1]))


class OmegaPower(Order):
    """Weakly decreasing finite sequences over a base order.

    A sequence is below any of its proper extensions; otherwise the first
    differing position decides.
    """

    def __init__(self, base: Order):
        self.base = base
        self.name = "omega^(%s)" % base.name

    def cmp(self, a, b):
        for x, y in zip(a, b):
            c = self.base.cmp(x, y)
            if c != 0:
                return c
        return (len(a) > len(b)) - (len(a) < len(b))

    def validate(self, t):
        for i in range(len(t) - 1):
            if self.base.cmp(t[i], t[i + 1]) < 0:
                raise OrderError("sequence not weakly decreasing: %s" % self.show(t))

    def size(self, t):
        self.validate(t)
        return 1 + sum(1 + self.base.size(x) for x in t)

    def elements(self, bound):
        if bound < 1:
            return []
        out = [()]
        if bound < 3:
            return out
        items = self.base.enumerate(bound - 2)

        def extend(prefix, budget):
            for x in items:
                cost = 1 + self.base.size(x)
                if cost > budget:
                    continue
                if prefix and self.base.cmp(prefix[-1], x) < 0:
                    continue
                seq = prefix + (x,)
                out.append(seq)
                extend(seq, budget - cost)

        extend((), bound - 1)
        return out

    def show(self, t):
        return "(s" + "".join(" " + self.base.show(x) for x in t) + ")"

    def from_sexpr(self, expr):
        if not isinstance(expr, list) or not expr or expr[0] != "s":
            raise sexpr.SexprError("expected (s ...): %r" % (expr,))
        t = tuple(self.base.from_sexpr(e) for e in expr[1:])
        self.validate(t)
        return t


class Restriction(Order):
    """Suborder of all elements strictly below a cut point."""

    def __init__(self, parent: Order, top):
        self.parent = parent
        self.top = top
        self.name = "%s|%s" % (parent.name, parent.show(top))

    def cmp(self, a, b):
        return self.parent.cmp(a, b)

    def size(self, t):
        if not self.parent.lt(t, self.top):
            raise OrderError("element not below the cut: %s" % self.parent.show(t))
        return self.parent.size(t)

    def elements(self, bound):
        return [t for t in self.parent.elements(bound) if self.parent.lt(t, self.top)]

    def show(self, t):
        return self.parent.show(t)

    def from_sexpr(self, expr):
        t = self.parent.from_sexpr(expr)
        self.size(t)
        return t


class ListOrder(Order):
    """Explicit finite suborder of a parent order, given by its elements."""

    def __init__(self, parent: Order, items: list, presorted: bool = False):
        self.parent = parent
        self.items = list(items) if presorted else parent.sort(items)
        self.name = "list[%d]" % len(self.items)

    def cmp(self, a, b):
        return self.parent.cmp(a, b)

    def size(self, t):
        return self.parent.size(t)

    def elements(self, bound):
        return [t for t in self.items if self.parent.size(t) <= bound]

    def show(self, t):
        return self.parent.show(t)

    def from_sexpr(self, expr):
        return self.parent.from_sexpr(expr)

    def index(self, t) -> int:
        for i, x in enumerate(self.items):
            if self.parent.eq(x, t):
                return i
        raise OrderError("element not in suborder: %s" % self.parent.show(t))


def restrict_below(order: Order, x) -> Order:
    """The suborder of all elements strictly below x."""
    if isinstance(order, FinOrder):
        if not (0 <= x < order.n):
            raise OrderError("cut point outside the order")
        return FinOrder(x)
    order.size(x)
    return Restriction(order, x)


@dataclass
class OrderMap:
    """A strictly increasing map between two orders."""

    dom: Order
    cod: Order
    fn: object
    label: str = ""

    def apply(self, x):
        return self.fn(x)

    def __call__(self, x):
        return self.fn(x)

    def compose(self, other: "OrderMap") -> "OrderMap":
        """self after other (other's codomain feeds self's domain)."""
        return OrderMap(other.dom, self.cod, lambda x: self.fn(other.fn(x)),
                        label="%s.%s" % (self.label, other.label))

    def image(self, xs):
        return [self.fn(x) for x in xs]


def identity_map(order: Order) -> OrderMap:
    return OrderMap(order, order, lambda x: x, label="id")


def iota(sub: Order, sup: Order) -> OrderMap:
    """Canonical inclusion; suborders share element representation."""
    return OrderMap(sub, sup, lambda x: x, label="iota")


def fin_map(dom: FinOrder, cod: FinOrder, graph: list) -> OrderMap:
    if len(graph) != dom.n:
        raise OrderError("graph length mismatch")
    for a, b in zip(graph, graph[1:]):
        if a >= b:
            raise OrderError("graph not strictly increasing")
    for v in graph:
        if not (0 <= v < cod.n):
            raise OrderError("graph value outside codomain")
    g = list(graph)
    return OrderMap(dom, cod, lambda x: g[x], label="graph")


def restrict_map(f: OrderMap, x) -> OrderMap:
    """Restrict f to the elements below x, shrinking the codomain to f(x)."""
    f.dom.size(x)
    return OrderMap(restrict_below(f.dom, x), restrict_below(f.cod, f.apply(x)),
                    f.fn, label=f.label + "|")


def _as_set(order: Order, ys):
    if isinstance(ys, (list, tuple, set, frozenset)):
        return list(ys)
    order.size(ys)
    return [ys]


def fin_subset_lt(order: Order, ys, zs) -> bool:
    """Y <_fin Z: every y has some z strictly above it.  Singletons allowed."""
    ys, zs = _as_set(order, ys), _as_set(order, zs)
    return all(any(order.lt(y, z) for z in zs) for y in ys)


def fin_subset_le(order: Order, ys, zs) -> bool:
    ys, zs = _as_set(order, ys), _as_set(order, zs)
    return all(any(order.le(y, z) for z in zs) for y in ys)


def omega_iter(n: int, base: Order) -> Order:
    """n-fold omega power of the base order."""
    if n < 0:
        raise OrderError("negative iteration count")
    order = base
    for _ in range(n):
        order = OmegaPower(order)
    return order


@dataclass
class LinearityReport:
    system: str
    bound: int
    count: int
    pair_checks: int = 0
    triple_checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self):
        yield "linearity\tsystem=%s\tbound=%d\tcount=%d\tpairs=%d\ttriples=%d\tok=%s" % (
            self.system, self.bound, self.count, self.pair_checks,
            self.triple_checks, self.ok)
        for v in self.violations:
            yield "violation\t%s" % v


def linearity_suite(order: Order, bound: int, max_violations: int = 5) -> LinearityReport:
    """Exhaustively check irreflexivity, trichotomy, and transitivity.

    Violations are report content: the suite never raises on a broken
    comparator, it exhibits the offending pair or triple instead.
    """
    elems = order.enumerate(bound)
    rep = LinearityReport(system=order.name, bound=bound, count=len(elems))

    def record(msg):
        if len(rep.violations) < max_violations:
            rep.violations.append(msg)

    n = len(elems)
    cmps = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cmps[i][j] = order.cmp(elems[i], elems[j])
    for i in range(n):
        if cmps[i][i] != 0:
            record("irreflexivity: %s" % order.show(elems[i]))
    for i in range(n):
        for j in range(n):
            rep.pair_checks += 1
            if cmps[i][j] != -cmps[j][i]:
                record("asymmetry: %s vs %s" % (order.show(elems[i]), order.show(elems[j])))
            if i != j and cmps[i][j] == 0:
                record("trichotomy: distinct elements compare equal: %s vs %s"
                       % (order.show(elems[i]), order.show(elems[j])))
    for i in range(n):
        for j in range(n):
            if cmps[i][j] >= 0:
                continue
            for k in range(n):
                rep.triple_checks += 1
                if cmps[j][k] < 0 and cmps[i][k] >= 0:
                    record("transitivity: %s < %s < %s but not %s < %s" % (
                        order.show(elems[i]), order.show(elems[j]), order.show(elems[k]),
                        order.show(elems[i]), order.show(elems[k])))
                    break
    return rep
