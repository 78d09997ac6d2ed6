"""Coded predilators: carrier, morphism action, finite support.

A predilator is coded by what it does over any base order: a carrier of
values with a decidable comparison, a renaming action along order maps,
and a finite support per value.  The support condition (every value is
the image of a value over its own support) holds structurally for all
predilators here because values are syntax trees mentioning base
elements at their leaves, and the action is structural renaming.

``least_above`` is an optional capability: only predilators with a
computable successor structure provide it.  It raises Exhausted when the
carrier has no value above the given set, which the inverse-sequence
driver reports as termination.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import sexpr
from .orders import (FinOrder, ListOrder, OmegaPower, Order, OrderError,
                     OrderMap, SumOrder, iota)


class PredilatorError(ValueError):
    pass


class LeastAboveUnsupported(PredilatorError):
    pass


class Exhausted(PredilatorError):
    """No carrier value lies above the given finite set."""


class BoundExhausted(PredilatorError):
    """A search ran out of budget before finding a witness."""


class Predilator:
    name = "predilator"

    def value_cmp(self, base: Order, a, b) -> int:
        raise NotImplementedError

    def value_size(self, base: Order, v) -> int:
        raise NotImplementedError

    def value_show(self, base: Order, v) -> str:
        raise NotImplementedError

    def value_from_sexpr(self, base: Order, expr):
        raise NotImplementedError

    def values(self, base: Order, bound: int) -> list:
        raise NotImplementedError

    def rename(self, v, fn):
        """Map every base element mentioned in v through fn."""
        raise NotImplementedError

    def supp(self, base: Order, v) -> list:
        """Sorted, duplicate-free list of base elements v depends on."""
        raise NotImplementedError

    def least_above(self, base: Order, vals: list):
        raise LeastAboveUnsupported(self.name)

    def carrier(self, base: Order) -> "Carrier":
        return Carrier(self, base)

    def act(self, f: OrderMap, v):
        return self.rename(v, f.apply)

    def validate(self, base: Order, v):
        self.value_size(base, v)


class Carrier(Order):
    """The order of D-values over a fixed base."""

    def __init__(self, d: Predilator, base: Order):
        self.d = d
        self.base = base
        self.name = "%s(%s)" % (d.name, base.name)

    def cmp(self, a, b):
        return self.d.value_cmp(self.base, a, b)

    def size(self, t):
        return self.d.value_size(self.base, t)

    def elements(self, bound):
        return self.d.values(self.base, bound)

    def show(self, t):
        return self.d.value_show(self.base, t)

    def from_sexpr(self, expr):
        return self.d.value_from_sexpr(self.base, expr)


class IdPredilator(Predilator):
    """The identity functor: carrier is the base itself, supports are singletons."""

    name = "id"

    def value_cmp(self, base, a, b):
        return base.cmp(a, b)

    def value_size(self, base, v):
        return base.size(v)

    def value_show(self, base, v):
        return base.show(v)

    def value_from_sexpr(self, base, expr):
        return base.from_sexpr(expr)

    def values(self, base, bound):
        return base.elements(bound)

    def rename(self, v, fn):
        return fn(v)

    def supp(self, base, v):
        return [v]

    def least_above(self, base, vals):
        if isinstance(base, FinOrder):
            nxt = 0 if not vals else max(vals) + 1
            if nxt >= base.n:
                raise Exhausted("id over %s" % base.name)
            return nxt
        raise LeastAboveUnsupported("id over %s" % base.name)


class ConstPredilator(Predilator):
    """Constant functor: same carrier over every base, identity action."""

    def __init__(self, value_order: Order):
        self.value_order = value_order
        self.name = "const:%s" % value_order.name

    def value_cmp(self, base, a, b):
        return self.value_order.cmp(a, b)

    def value_size(self, base, v):
        return self.value_order.size(v)

    def value_show(self, base, v):
        return self.value_order.show(v)

    def value_from_sexpr(self, base, expr):
        return self.value_order.from_sexpr(expr)

    def values(self, base, bound):
        return self.value_order.elements(bound)

    def rename(self, v, fn):
        return v

    def supp(self, base, v):
        return []

    def least_above(self, base, vals):
        vo = self.value_order
        if isinstance(vo, FinOrder):
            nxt = 0 if not vals else max(vals) + 1
            if nxt >= vo.n:
                raise Exhausted(self.name)
            return nxt
        if vo.name == "z":
            if not vals:
                # the integers have no least element
                raise LeastAboveUnsupported("const over z has no minimum")
            return max(vals) + 1
        if vo.name == "nat":
            return 0 if not vals else max(vals) + 1
        raise LeastAboveUnsupported(self.name)


class SumPredilator(Predilator):
    """Disjoint union of two predilators, first summand below the second."""

    def __init__(self, d1: Predilator, d2: Predilator):
        self.d1 = d1
        self.d2 = d2
        self.name = "sum:%s,%s" % (d1.name, d2.name)

    def _inner(self, tag):
        return self.d1 if tag == "l" else self.d2

    def value_cmp(self, base, a, b):
        if a[0] != b[0]:
            return -1 if a[0] == "l" else 1
        return self._inner(a[0]).value_cmp(base, a[1], b[1])

    def value_size(self, base, v):
        return 1 + self._inner(v[0]).value_size(base, v[1])

    def value_show(self, base, v):
        return "(%s %s)" % (v[0], self._inner(v[0]).value_show(base, v[1]))

    def value_from_sexpr(self, base, expr):
        tag, body = expr
        if tag not in ("l", "r"):
            raise sexpr.SexprError("bad sum tag %r" % tag)
        return (tag, self._inner(tag).value_from_sexpr(base, body))

    def values(self, base, bound):
        out = [("l", v) for v in self.d1.values(base, bound - 1)]
        out += [("r", v) for v in self.d2.values(base, bound - 1)]
        return out

    def rename(self, v, fn):
        return (v[0], self._inner(v[0]).rename(v[1], fn))

    def supp(self, base, v):
        return self._inner(v[0]).supp(base, v[1])

    def least_above(self, base, vals):
        rights = [v[1] for v in vals if v[0] == "r"]
        lefts = [v[1] for v in vals if v[0] == "l"]
        if rights:
            return ("r", self.d2.least_above(base, rights))
        try:
            return ("l", self.d1.least_above(base, lefts))
        except Exhausted:
            return ("r", self.d2.least_above(base, []))


class OmegaPredilator(Predilator):
    """Composition with the omega power: weakly decreasing value sequences."""

    def __init__(self, d: Predilator):
        self.d = d
        self.name = "omega:%s" % d.name

    def _power(self, base):
        return OmegaPower(self.d.carrier(base))

    def value_cmp(self, base, a, b):
        return self._power(base).cmp(a, b)

    def value_size(self, base, v):
        return self._power(base).size(v)

    def value_show(self, base, v):
        return self._power(base).show(v)

    def value_from_sexpr(self, base, expr):
        return self._power(base).from_sexpr(expr)

    def values(self, base, bound):
        return self._power(base).elements(bound)

    def rename(self, v, fn):
        return tuple(self.d.rename(x, fn) for x in v)

    def supp(self, base, v):
        out = []
        for x in v:
            out.extend(self.d.supp(base, x))
        return base.sort(out)

    def least_above(self, base, vals):
        if not vals:
            return ()
        power = self._power(base)
        top = power.maximum(vals)
        return top + (self.d.least_above(base, []),)


class BumpPredilator(Predilator):
    """Two copies of a predilator around a point, scaled by omega.

    Values are tuples (0, v, n) < (1, None, n) < (2, v, n), ordered
    lexicographically; every value has a successor obtained by bumping n.
    """

    def __init__(self, d: Predilator):
        self.d = d
        self.name = "bump:%s" % d.name

    def value_cmp(self, base, a, b):
        if a[0] != b[0]:
            return (a[0] > b[0]) - (a[0] < b[0])
        if a[0] != 1:
            c = self.d.value_cmp(base, a[1], b[1])
            if c != 0:
                return c
        return (a[2] > b[2]) - (a[2] < b[2])

    def value_size(self, base, v):
        inner = 0 if v[0] == 1 else self.d.value_size(base, v[1])
        return 1 + inner + v[2]

    def value_show(self, base, v):
        if v[0] == 1:
            return "(b1 %d)" % v[2]
        return "(b%d %s %d)" % (v[0], self.d.value_show(base, v[1]), v[2])

    def value_from_sexpr(self, base, expr):
        head = expr[0]
        if head == "b1":
            return (1, None, int(expr[1]))
        if head in ("b0", "b2"):
            return (int(head[1]), self.d.value_from_sexpr(base, expr[1]), int(expr[2]))
        raise sexpr.SexprError("bad bump tag %r" % head)

    def values(self, base, bound):
        out = [(1, None, n) for n in range(max(bound - 1, 0))]
        for v in self.d.values(base, bound - 1):
            room = bound - 1 - self.d.value_size(base, v)
            for n in range(room + 1):
                out.append((0, v, n))
                out.append((2, v, n))
        return out

    def rename(self, v, fn):
        if v[0] == 1:
            return v
        return (v[0], self.d.rename(v[1], fn), v[2])

    def supp(self, base, v):
        if v[0] == 1:
            return []
        return self.d.supp(base, v[1])

    def successor(self, v):
        return (v[0], v[1], v[2] + 1)

    def least_above(self, base, vals):
        if not vals:
            try:
                return (0, self.d.least_above(base, []), 0)
            except Exhausted:
                return (1, None, 0)
        top = vals[0]
        for v in vals[1:]:
            if self.value_cmp(base, top, v) < 0:
                top = v
        return self.successor(top)


@dataclass(frozen=True)
class FiniteTree:
    """A finite binary tree in which every node has zero or two children.

    Nodes are bit tuples; the node order puts a proper extension below the
    node it extends and otherwise compares lexicographically.  Children
    below parents is what lets the node functor's padding construction
    satisfy the range condition.
    """

    nodes: frozenset

    @staticmethod
    def from_parent_list(rows):
        """rows: list of (parent_index, is_leaf); row order assigns children 0, 1."""
        nodes = {}
        child_count = {}
        for i, (parent, _is_leaf) in enumerate(rows):
            if parent < 0:
                nodes[i] = ()
            else:
                if parent not in nodes:
                    raise PredilatorError("row %d references unseen parent %d" % (i, parent))
                bit = child_count.get(parent, 0)
                if bit > 1:
                    raise PredilatorError("node %d has more than two children" % parent)
                child_count[parent] = bit + 1
                nodes[i] = nodes[parent] + (bit,)
        tree = FiniteTree(frozenset(nodes.values()))
        tree.validate()
        return tree

    def validate(self):
        for node in self.nodes:
            kids = [b for b in (0, 1) if node + (b,) in self.nodes]
            if len(kids) == 1:
                raise PredilatorError("node %s has exactly one child" % (node,))
        if () not in self.nodes:
            raise PredilatorError("tree has no root")

    def is_leaf(self, node):
        return node + (0,) not in self.nodes

    def leaves(self):
        return [n for n in self.nodes if self.is_leaf(n)]

    def internal(self):
        return [n for n in self.nodes if not self.is_leaf(n)]

    @staticmethod
    def node_cmp(s, t) -> int:
        for a, b in zip(s, t):
            if a != b:
                return -1 if a < b else 1
        return (len(s) < len(t)) - (len(s) > len(t))

    @staticmethod
    def node_show(node):
        return "e" if not node else "".join(str(b) for b in node)

    @staticmethod
    def node_parse(text):
        if text == "e":
            return ()
        return tuple(int(c) for c in text)


class TreePredilator(Predilator):
    """Leaves plus internal-node terms t(x, y) over the base order."""

    def __init__(self, tree: FiniteTree):
        tree.validate()
        self.tree = tree
        self.name = "tree[%d]" % len(tree.nodes)

    def value_cmp(self, base, a, b):
        na = a[1]
        nb = b[1]
        c = FiniteTree.node_cmp(na, nb)
        if c != 0:
            return c
        if a[0] == "leaf" and b[0] == "leaf":
            return 0
        if a[0] != b[0]:
            raise PredilatorError("leaf and internal term share a node")
        c = base.cmp(a[2], b[2])
        if c != 0:
            return c
        return base.cmp(a[3], b[3])

    def value_size(self, base, v):
        if v[0] == "leaf":
            return 1
        return 1 + base.size(v[2]) + base.size(v[3])

    def value_show(self, base, v):
        if v[0] == "leaf":
            return "(leaf %s)" % FiniteTree.node_show(v[1])
        return "(nd %s %s %s)" % (FiniteTree.node_show(v[1]),
                                  base.show(v[2]), base.show(v[3]))

    def value_from_sexpr(self, base, expr):
        if expr[0] == "leaf":
            node = FiniteTree.node_parse(expr[1])
            if node not in self.tree.nodes or not self.tree.is_leaf(node):
                raise PredilatorError("not a leaf: %r" % (node,))
            return ("leaf", node)
        node = FiniteTree.node_parse(expr[1])
        if node not in self.tree.nodes or self.tree.is_leaf(node):
            raise PredilatorError("not an internal node: %r" % (node,))
        return ("nd", node, base.from_sexpr(expr[2]), base.from_sexpr(expr[3]))

    def values(self, base, bound):
        out = []
        if bound >= 1:
            out.extend(("leaf", n) for n in self.tree.leaves())
        elems = base.elements(bound - 2)
        for n in self.tree.internal():
            for x in elems:
                for y in elems:
                    if 1 + base.size(x) + base.size(y) <= bound:
                        out.append(("nd", n, x, y))
        return out

    def rename(self, v, fn):
        if v[0] == "leaf":
            return v
        return ("nd", v[1], fn(v[2]), fn(v[3]))

    def supp(self, base, v):
        if v[0] == "leaf":
            return []
        return base.sort([v[2], v[3]])


class ShiftPredilator(Predilator):
    """Precomposition with (alpha + Id), for finite bases only.

    The carrier over fin:n is the inner carrier over fin:(alpha+n); the
    first alpha base elements act as constants, supports drop them and
    shift the rest down.
    """

    def __init__(self, d: Predilator, alpha: int):
        if alpha < 0:
            raise PredilatorError("negative shift")
        self.d = d
        self.alpha = alpha
        self.name = "shift:%s:%d" % (d.name, alpha)

    def _big(self, base):
        if not isinstance(base, FinOrder):
            raise PredilatorError("shift supports finite bases only")
        return FinOrder(self.alpha + base.n)

    def value_cmp(self, base, a, b):
        return self.d.value_cmp(self._big(base), a, b)

    def value_size(self, base, v):
        return self.d.value_size(self._big(base), v)

    def value_show(self, base, v):
        return self.d.value_show(self._big(base), v)

    def value_from_sexpr(self, base, expr):
        return self.d.value_from_sexpr(self._big(base), expr)

    def values(self, base, bound):
        return self.d.values(self._big(base), bound)

    def rename(self, v, fn):
        def shifted(e):
            if e < self.alpha:
                return e
            return self.alpha + fn(e - self.alpha)
        return self.d.rename(v, shifted)

    def supp(self, base, v):
        big = self._big(base)
        return [e - self.alpha for e in self.d.supp(big, v) if e >= self.alpha]

    def least_above(self, base, vals):
        return self.d.least_above(self._big(base), vals)


@dataclass
class NaturalityReport:
    predilator: str
    map_label: str
    bound: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def check_naturality(d: Predilator, f: OrderMap, bound: int,
                     max_violations: int = 5) -> NaturalityReport:
    """Support naturality plus strict monotonicity of the action along f."""
    rep = NaturalityReport(predilator=d.name, map_label=f.label, bound=bound)
    vals = d.carrier(f.dom).enumerate(bound)
    images = [d.act(f, v) for v in vals]
    cod_car = d.carrier(f.cod)
    for v, img in zip(vals, images):
        rep.checked += 1
        want = f.cod.sort(f.image(d.supp(f.dom, v)))
        got = d.supp(f.cod, img)
        if len(want) != len(got) or any(f.cod.cmp(a, b) != 0 for a, b in zip(want, got)):
            if len(rep.violations) < max_violations:
                rep.violations.append("support not natural at %s"
                                      % d.value_show(f.dom, v))
    for i in range(len(vals)):
        for j in range(len(vals)):
            ci = d.value_cmp(f.dom, vals[i], vals[j])
            cj = cod_car.cmp(images[i], images[j])
            if ci != cj:
                if len(rep.violations) < max_violations:
                    rep.violations.append(
                        "action not an embedding: %s vs %s"
                        % (d.value_show(f.dom, vals[i]), d.value_show(f.dom, vals[j])))
    return rep


def check_support_condition(d: Predilator, base: Order, value, search_bound: int):
    """Search for a witness over the support whose inclusion image is the value.

    Returns (True, witness) on success.  If the exhaustive search up to
    search_bound already covers the value's size, a missing witness is a
    structural violation and (False, None) is returned; otherwise the
    bound was too small and BoundExhausted is raised.
    """
    support = d.supp(base, value)
    if isinstance(base, FinOrder):
        sub = FinOrder(len(support))
        inc = OrderMap(sub, base, lambda i: support[i], label="iota")
    else:
        sub = ListOrder(base, support)
        inc = iota(sub, base)
    for tau in d.carrier(sub).enumerate(search_bound):
        if d.value_cmp(base, d.act(inc, tau), value) == 0:
            return True, tau
    if d.value_size(base, value) <= search_bound:
        return False, None
    raise BoundExhausted("no witness up to size %d" % search_bound)


def deflate(d: Predilator, base: Order, value):
    """Rewrite a value over the finite order formed by its own support.

    Returns (support, small_value): support is the sorted support list and
    small_value is the same value with each support element replaced by its
    index, i.e. a value over fin:len(support).  Renaming index i back to
    support[i] recovers the original value.
    """
    support = d.supp(base, value)
    sub = ListOrder(base, support)
    small = d.rename(value, lambda e: sub.index(e))
    return support, small
