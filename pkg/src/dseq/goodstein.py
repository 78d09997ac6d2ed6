"""Goodstein and weak Goodstein predilators, hereditary base coding,
sequence steppers, increasing-sequence prefixes, and the tower embeddings
between Goodstein terms and iterated omega powers.

A Goodstein term over a base order X is a sum

    (1 + X)^{g0} * (1 + c0) + ... + (1 + X)^{g_{n-1}} * (1 + c_{n-1})

with strictly descending term exponents g_i and coefficients c_i in X;
it is coded as a tuple of (exponent, coefficient) pairs.  Over the finite
order with b-1 elements these terms are exactly the hereditary base-b
numerals, which gives an order isomorphism with the naturals and hence an
exact least-strictly-above.  Weak terms carry plain natural exponents and
code plain base-b notation the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sexpr
from .orders import FinOrder, NatOrder, Order, SumOrder, TopOrder, omega_iter
from .predilators import Exhausted, LeastAboveUnsupported, Predilator, PredilatorError


class GoodsteinPredilator(Predilator):
    name = "goodstein"

    def value_cmp(self, base, a, b):
        for (ea, ca), (eb, cb) in zip(a, b):
            c = self.value_cmp(base, ea, eb)
            if c != 0:
                return c
            c = base.cmp(ca, cb)
            if c != 0:
                return c
        return (len(a) > len(b)) - (len(a) < len(b))

    def value_size(self, base, v):
        self._check_shape(base, v)
        return 1 + sum(self.value_size(base, e) + base.size(c) for e, c in v)

    def _check_shape(self, base, v):
        for i in range(len(v) - 1):
            if self.value_cmp(base, v[i][0], v[i + 1][0]) <= 0:
                raise PredilatorError("exponents not strictly descending: %s"
                                      % self.value_show(base, v))

    def value_show(self, base, v):
        return "(+" + "".join(" (g %s %s)" % (self.value_show(base, e), base.show(c))
                              for e, c in v) + ")"

    def value_from_sexpr(self, base, expr):
        if not isinstance(expr, list) or not expr or expr[0] != "+":
            raise sexpr.SexprError("expected (+ ...): %r" % (expr,))
        pairs = []
        for item in expr[1:]:
            if not (isinstance(item, list) and len(item) == 3 and item[0] == "g"):
                raise sexpr.SexprError("expected (g exp coef): %r" % (item,))
            pairs.append((self.value_from_sexpr(base, item[1]),
                          base.from_sexpr(item[2])))
        v = tuple(pairs)
        self._check_shape(base, v)
        return v

    def values(self, base, bound):
        coefs = base.enumerate(bound - 2)
        if not coefs:
            return [()] if bound >= 1 else []
        min_coef = min(base.size(c) for c in coefs)
        exps = self.values(base, bound - 1 - min_coef)
        exps = list(reversed(self._sorted_by_order(base, exps)))
        out = []
        if bound >= 1:
            out.append(())

        def rec(start, budget, acc):
            for i in range(start, len(exps)):
                e = exps[i]
                ecost = self.value_size(base, e)
                for c in coefs:
                    cost = ecost + base.size(c)
                    if cost <= budget:
                        term = acc + ((e, c),)
                        out.append(term)
                        rec(i + 1, budget - cost, term)

        rec(0, bound - 1, ())
        return out

    def _sorted_by_order(self, base, vals):
        import functools
        return sorted(vals, key=functools.cmp_to_key(
            lambda a, b: self.value_cmp(base, a, b)))

    def rename(self, v, fn):
        return tuple((self.rename(e, fn), fn(c)) for e, c in v)

    def supp(self, base, v):
        acc = []

        def walk(t):
            for e, c in t:
                walk(e)
                acc.append(c)

        walk(v)
        return base.sort(acc)

    def least_above(self, base, vals):
        if not isinstance(base, FinOrder):
            raise LeastAboveUnsupported("goodstein over %s" % base.name)
        if base.n == 0:
            if not vals:
                return ()
            raise Exhausted("goodstein over the empty order")
        b = base.n + 1
        nxt = 0 if not vals else max(eval_g(v, b) for v in vals) + 1
        return encode_nat(nxt, b)


class WeakPredilator(Predilator):
    name = "weak"

    def value_cmp(self, base, a, b):
        for (ma, ca), (mb, cb) in zip(a, b):
            if ma != mb:
                return -1 if ma < mb else 1
            c = base.cmp(ca, cb)
            if c != 0:
                return c
        return (len(a) > len(b)) - (len(a) < len(b))

    def value_size(self, base, v):
        self._check_shape(v)
        return 1 + sum(1 + m + base.size(c) for m, c in v)

    def _check_shape(self, v):
        for i in range(len(v) - 1):
            if v[i][0] <= v[i + 1][0]:
                raise PredilatorError("exponents not strictly descending")

    def value_show(self, base, v):
        return "(+" + "".join(" (m %d %s)" % (m, base.show(c)) for m, c in v) + ")"

    def value_from_sexpr(self, base, expr):
        if not isinstance(expr, list) or not expr or expr[0] != "+":
            raise sexpr.SexprError("expected (+ ...): %r" % (expr,))
        pairs = []
        for item in expr[1:]:
            if not (isinstance(item, list) and len(item) == 3 and item[0] == "m"):
                raise sexpr.SexprError("expected (m nat coef): %r" % (item,))
            pairs.append((int(item[1]), base.from_sexpr(item[2])))
        v = tuple(pairs)
        self._check_shape(v)
        return v

    def values(self, base, bound):
        coefs = base.enumerate(bound - 2)
        out = [()] if bound >= 1 else []
        if not coefs:
            return out
        min_coef = min(base.size(c) for c in coefs)
        max_m = bound - 2 - min_coef

        def rec(next_m, budget, acc):
            for m in range(next_m, -1, -1):
                for c in coefs:
                    cost = 1 + m + base.size(c)
                    if cost <= budget:
                        term = acc + ((m, c),)
                        out.append(term)
                        rec(m - 1, budget - cost, term)

        if max_m >= 0:
            rec(max_m, bound - 1, ())
        return out

    def rename(self, v, fn):
        return tuple((m, fn(c)) for m, c in v)

    def supp(self, base, v):
        return base.sort([c for _, c in v])

    def least_above(self, base, vals):
        if not isinstance(base, FinOrder):
            raise LeastAboveUnsupported("weak over %s" % base.name)
        if base.n == 0:
            if not vals:
                return ()
            raise Exhausted("weak over the empty order")
        b = base.n + 1
        nxt = 0 if not vals else max(eval_w(v, b) for v in vals) + 1
        return encode_w(nxt, b)


GOODSTEIN = GoodsteinPredilator()
WEAK = WeakPredilator()


def encode_nat(k: int, base: int):
    """Hereditary base-b numeral of k as a Goodstein term over fin:(b-1)."""
    if base < 2:
        raise ValueError("base must be at least 2")
    if k < 0:
        raise ValueError("negative value")
    digits = []
    m = k
    while m:
        m, d = divmod(m, base)
        digits.append(d)
    pairs = [(encode_nat(e, base), d - 1) for e, d in enumerate(digits) if d]
    return tuple(reversed(pairs))


def eval_g(v, base: int) -> int:
    """Evaluate a Goodstein term over fin:(b-1) as a hereditary base-b numeral."""
    if base < 1:
        raise ValueError("base must be positive")
    return sum((base ** eval_g(e, base)) * (1 + c) for e, c in v)


def encode_w(k: int, base: int):
    """Plain base-b numeral of k as a weak term over fin:(b-1)."""
    if base < 2:
        raise ValueError("base must be at least 2")
    if k < 0:
        raise ValueError("negative value")
    digits = []
    m = k
    while m:
        m, d = divmod(m, base)
        digits.append(d)
    return tuple(reversed([(e, d - 1) for e, d in enumerate(digits) if d]))


def eval_w(v, base: int) -> int:
    return sum((base ** m) * (1 + c) for m, c in v)


def hereditary_text(k: int, base: int) -> str:
    """Human form of the hereditary base notation, e.g. 2^{2^{2^0}} + 2^0."""
    term = encode_nat(k, base)

    def fmt(v):
        if not v:
            return "0"
        parts = []
        for e, c in v:
            exp = fmt(e)
            piece = "%d^%s" % (base, exp if len(exp) == 1 else "{%s}" % exp)
            if c + 1 > 1:
                piece += "*%d" % (c + 1)
            parts.append(piece)
        return " + ".join(parts)

    return fmt(term)


def classic_step(value: int, stage: int) -> int:
    """One classic Goodstein step: stage n reads the value in hereditary
    base n+2, bumps the base to n+3, and subtracts one.  Zero is absorbing."""
    if value == 0:
        return 0
    return eval_g(encode_nat(value, stage + 2), stage + 3) - 1


def classic_run(seed: int, max_steps: int) -> list[int]:
    out = [seed]
    for n in range(max_steps):
        if out[-1] == 0:
            break
        out.append(classic_step(out[-1], n))
    return out


def weak_step(value: int, stage: int) -> int:
    if value == 0:
        return 0
    return eval_w(encode_w(value, stage + 2), stage + 3) - 1


def weak_run(seed: int, max_steps: int) -> list[int]:
    out = [seed]
    for n in range(max_steps):
        if out[-1] == 0:
            break
        out.append(weak_step(out[-1], n))
    return out


@dataclass
class TerminationPrefix:
    """A finite initial segment of an increasing D-sequence.

    values[k] lives over fin:k (offset by alpha for relative sequences).
    terminated_at is the first stage whose carrier had nothing above the
    images of the earlier stages, if the run hit one.
    """

    predilator: Predilator
    alpha: int
    values: list
    terminated_at: int | None = None

    def base_at(self, k: int) -> FinOrder:
        return FinOrder(self.alpha + k)


def inverse_prefix(d: Predilator, stages: int) -> TerminationPrefix:
    """First ``stages`` members of the increasing D-sequence from 0.

    Inclusions between finite orders are identities on elements, so the
    image of an earlier value under the canonical embedding is the value
    itself read over the larger base.
    """
    return inverse_prefix_relative(d, 0, stages)


def inverse_prefix_relative(d: Predilator, alpha: int, stages: int) -> TerminationPrefix:
    values: list = []
    for k in range(stages):
        base = FinOrder(alpha + k)
        try:
            values.append(d.least_above(base, list(values)))
        except Exhausted:
            return TerminationPrefix(d, alpha, values, terminated_at=k)
    return TerminationPrefix(d, alpha, values)


def g_height(v) -> int:
    """1 for the empty sum, else one more than the largest exponent height."""
    if not v:
        return 1
    return 1 + max(g_height(e) for e, _ in v)


def top_order(base: Order) -> TopOrder:
    return TopOrder(base)


def aca_forward_f(n: int, xp):
    """The tower embedding of a top-extended base element, f_0(x) = <x>."""
    out = (xp,)
    for _ in range(n):
        out = ((out,),)
    return out


def aca_forward_g(n: int, v, base: Order):
    """Map a Goodstein term into the (2n+1)-fold omega power of the
    top-extended base.  An order embedding on terms of height at most n;
    on taller terms the value is still produced but unconstrained.
    """
    if n == 0:
        return ()
    entries = []
    for e, c in v:
        entries.append((aca_forward_g(n - 1, e, base), aca_forward_f(n - 1, ("x", c))))
    entries.append((aca_forward_f(n - 1, TopOrder.TOP),))
    return tuple(entries)


def aca_forward_codomain(n: int, base: Order) -> Order:
    return omega_iter(2 * n + 1, TopOrder(base))


def aca_backward_domain(n: int, base: Order) -> Order:
    return omega_iter(n, base)


def aca_backward_base(base: Order) -> SumOrder:
    return SumOrder(base, NatOrder())


def aca_backward_f(n: int, s, base: Order):
    """Map the n-fold omega power into Goodstein terms over base + naturals.

    Blocks of equal leading entries become one summand whose coefficient
    records the block length on the natural-number side.
    """
    if n == 0:
        return ((), ("l", s)),
    if not s:
        return ()
    inner = omega_iter(n - 1, base)
    k = 1
    while k < len(s) and inner.cmp(s[k], s[0]) == 0:
        k += 1
    head = ((aca_backward_f(n - 1, s[0], base), ("r", k)),)
    tail = aca_backward_f(n, s[k:], base)
    if tail and GOODSTEIN.value_cmp(aca_backward_base(base), head[0][0], tail[0][0]) <= 0:
        raise PredilatorError("block exponents failed to descend")
    return head + tail
