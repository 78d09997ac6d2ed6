"""Concrete ordinal notation systems.

Three term systems with decidable comparison live here:

  * OT(theta): terms built from Omega, a collapsing constructor theta,
    and weakly decreasing sums of omega powers, together with the
    E-subterm sets, a height function, addition, and the two scaled
    products by Omega.
  * Omega-normal forms: sums Omega^g * d with strictly descending normal
    exponents and coefficients below Omega, optionally with every
    coefficient a theta-term (collapsed coefficients), plus the
    normalization of arbitrary OT terms and the embedding of normal
    forms into collapsed ones.
  * phi(omega, 0) and the psi-style system P with its suborder
    psi(Omega^omega).

Terms are immutable nested tuples; comparisons are memoized globally.
By convention ``omega^Omega`` and ``omega^(theta s)`` are rewritten to
``Omega`` and ``theta s`` at construction, so one-element sums never
carry an indecomposable head.
"""

from __future__ import annotations

import functools

from . import sexpr
from .orders import Order, OrderError, fin_subset_le, fin_subset_lt
from .predilators import Predilator, PredilatorError

# ---------------------------------------------------------------------------
# OT(theta)

OT_OMEGA = ("O",)
OT_ZERO = ("+", ())


def ot_theta(s):
    return ("v", s)


def ot_sum(exps) -> tuple:
    """Sum of omega powers; collapses omega^Omega and omega^(theta s)."""
    exps = tuple(exps)
    for a, b in zip(exps, exps[1:]):
        if ot_cmp(a, b) < 0:
            raise OrderError("sum exponents must be weakly decreasing")
    if len(exps) == 1 and exps[0][0] in ("O", "v"):
        return exps[0]
    return ("+", exps)


def ot_is_zero(t):
    return t == OT_ZERO


def as_powers(t) -> tuple:
    """View any term as its list of omega-power exponents."""
    if t[0] == "+":
        return t[1]
    return (t,)


_OT_CMP_CACHE: dict = {}


def ot_cmp(a, b) -> int:
    if a == b:
        return 0
    key = (a, b)
    got = _OT_CMP_CACHE.get(key)
    if got is not None:
        return got
    res = _ot_cmp(a, b)
    _OT_CMP_CACHE[key] = res
    return res


def _theta_lt(a, b) -> bool:
    """theta(sa) < theta(sb) via the two collapsing clauses."""
    sa, sb = a[1], b[1]
    if ot_cmp(sa, sb) < 0 and all(ot_cmp(e, b) < 0 for e in ot_e_set(sa)):
        return True
    return any(ot_cmp(a, e) <= 0 for e in ot_e_set(sb))


def _ot_cmp(a, b) -> int:
    ta, tb = a[0], b[0]
    if ta == "O" and tb == "O":
        return 0
    if ta == "O":
        if tb == "v" or not b[1]:
            return 1
        return -1 if ot_cmp(OT_OMEGA, b[1][0]) <= 0 else 1  # Omega vs sum head
    if tb == "O":
        return -_ot_cmp(b, a)
    if ta == "v" and tb == "v":
        if _theta_lt(a, b):
            return -1
        if _theta_lt(b, a):
            return 1
        # distinct arguments always separate; surface breakage to the suite
        return 1
    if ta == "v":
        exps = b[1]
        if not exps:
            return 1  # any theta-term is above zero
        return -1 if ot_cmp(a, exps[0]) <= 0 else 1
    if tb == "v":
        return -_ot_cmp(b, a)
    # two sums: extension or first difference
    for x, y in zip(a[1], b[1]):
        c = ot_cmp(x, y)
        if c != 0:
            return c
    return (len(a[1]) > len(b[1])) - (len(a[1]) < len(b[1]))


@functools.lru_cache(maxsize=None)
def ot_e_set(t) -> tuple:
    """The finite set of theta-subterms a term exposes."""
    if t[0] == "O":
        return ()
    if t[0] == "v":
        return (t,)
    out = []
    for g in t[1]:
        for e in ot_e_set(g):
            if e not in out:
                out.append(e)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def ot_height(t) -> int:
    if t[0] == "O":
        return 0
    if t[0] == "v":
        return ot_height(t[1]) + 1
    return max([0] + [ot_height(g) + 1 for g in t[1]])


@functools.lru_cache(maxsize=None)
def ot_size(t) -> int:
    if t[0] == "O":
        return 1
    if t[0] == "v":
        return 1 + ot_size(t[1])
    return 1 + sum(1 + ot_size(g) for g in t[1])


def ot_add(a, b):
    pa, pb = as_powers(a), as_powers(b)
    if not pb:
        return a
    if not pa:
        return b
    keep = len(pa)
    while keep > 0 and ot_cmp(pa[keep - 1], pb[0]) < 0:
        keep -= 1
    return ot_sum(pa[:keep] + pb)


def ot_omega_mul(a):
    """Omega * a."""
    return ot_sum(tuple(ot_add(OT_OMEGA, g) for g in as_powers(a)))


def ot_omega_pow_mul(a, b):
    """Omega^a * b."""
    scale = ot_omega_mul(a)
    return ot_sum(tuple(ot_add(scale, g) for g in as_powers(b)))


def ot_show(t) -> str:
    if t[0] == "O":
        return "O"
    if t[0] == "v":
        return "(v %s)" % ot_show(t[1])
    if not t[1]:
        return "0"
    return "(+" + "".join(" (w %s)" % ot_show(g) for g in t[1]) + ")"


def ot_from_sexpr(expr):
    if expr == "O":
        return OT_OMEGA
    if expr == "0":
        return OT_ZERO
    if not isinstance(expr, list) or not expr:
        raise sexpr.SexprError("bad OT term: %r" % (expr,))
    if expr[0] == "v":
        return ot_theta(ot_from_sexpr(expr[1]))
    if expr[0] == "+":
        exps = []
        for item in expr[1:]:
            if not (isinstance(item, list) and len(item) == 2 and item[0] == "w"):
                raise sexpr.SexprError("expected (w T): %r" % (item,))
            exps.append(ot_from_sexpr(item[1]))
        return ot_sum(tuple(exps))
    raise sexpr.SexprError("bad OT term: %r" % (expr,))


class OtOrder(Order):
    name = "ot"

    def cmp(self, a, b):
        return ot_cmp(a, b)

    def size(self, t):
        return ot_size(t)

    def elements(self, bound):
        return ot_terms(bound)

    def show(self, t):
        return ot_show(t)

    def from_sexpr(self, expr):
        return ot_from_sexpr(expr)


class BhOrder(OtOrder):
    """The suborder of OT terms strictly below Omega."""

    name = "bh"

    def size(self, t):
        if ot_cmp(t, OT_OMEGA) >= 0:
            raise OrderError("term not below Omega: %s" % ot_show(t))
        return ot_size(t)

    def elements(self, bound):
        return [t for t in ot_terms(bound) if ot_cmp(t, OT_OMEGA) < 0]


def _descending_assembly(items, item_cost, item_cmp, budget, strict):
    """All tuples over items, (weakly) descending under item_cmp, with
    total cost within budget.  items may be in any order."""
    items = sorted(items, key=functools.cmp_to_key(item_cmp), reverse=True)
    out = []

    def rec(start, remaining, acc):
        for i in range(start, len(items)):
            cost = item_cost(items[i])
            if cost > remaining:
                continue
            nxt = acc + (items[i],)
            out.append(nxt)
            rec(i + 1 if strict else i, remaining - cost, nxt)

    rec(0, budget, ())
    return out


_OT_TERMS_CACHE: dict = {}


def ot_terms(bound: int) -> list:
    if bound < 1:
        return []
    if bound in _OT_TERMS_CACHE:
        return list(_OT_TERMS_CACHE[bound])
    out = [OT_ZERO, OT_OMEGA]
    for s in ot_terms(bound - 1):
        out.append(ot_theta(s))
    smaller = ot_terms(bound - 2)
    for exps in _descending_assembly(smaller, lambda g: 1 + ot_size(g), ot_cmp,
                                     bound - 1, strict=False):
        if exps:
            if len(exps) == 1 and exps[0][0] in ("O", "v"):
                continue  # already produced as the indecomposable itself
            out.append(("+", exps))
    out = [t for t in out if ot_size(t) <= bound]
    _OT_TERMS_CACHE[bound] = out
    return list(out)


# ---------------------------------------------------------------------------
# Omega-normal forms

NF_ZERO = ("nf", ())
M_ZERO = ("mw", ())


def mk_nf(pairs) -> tuple:
    pairs = tuple(pairs)
    for (e1, _), (e2, _) in zip(pairs, pairs[1:]):
        if nf_cmp(e1, e2) <= 0:
            raise OrderError("normal-form exponents must strictly descend")
    for _, c in pairs:
        if c == M_ZERO:
            raise OrderError("normal-form coefficients must be nonzero")
    return ("nf", pairs)


def mk_m_theta(nf_arg):
    return ("mv", nf_arg)


def mk_m_sum(ms) -> tuple:
    ms = tuple(ms)
    for a, b in zip(ms, ms[1:]):
        if m_cmp(a, b) < 0:
            raise OrderError("coefficient exponents must be weakly decreasing")
    if len(ms) == 1 and ms[0][0] == "mv":
        return ms[0]  # omega^(theta s) is theta s
    return ("mw", ms)


@functools.lru_cache(maxsize=None)
def eval_nf(t):
    """Denoted OT term of a normal form."""
    out = OT_ZERO
    for e, c in t[1]:
        out = ot_add(out, ot_omega_pow_mul(eval_nf(e), eval_m(c)))
    return out


@functools.lru_cache(maxsize=None)
def eval_m(m):
    if m[0] == "mv":
        return ot_theta(eval_nf(m[1]))
    return ot_sum(tuple(eval_m(x) for x in m[1]))


def nf_cmp(a, b) -> int:
    if a == b:
        return 0
    return ot_cmp(eval_nf(a), eval_nf(b))


def m_cmp(a, b) -> int:
    if a == b:
        return 0
    return ot_cmp(eval_m(a), eval_m(b))


@functools.lru_cache(maxsize=None)
def nf_size(t) -> int:
    return 1 + sum(nf_size(e) + m_size(c) for e, c in t[1])


@functools.lru_cache(maxsize=None)
def m_size(m) -> int:
    if m[0] == "mv":
        return 1 + nf_size(m[1])
    return 1 + sum(1 + m_size(x) for x in m[1])


def nf_is_collapsed(t) -> bool:
    return all(nf_is_collapsed(e) and c[0] == "mv" and nf_is_collapsed(c[1])
               for e, c in t[1])


def nf_show(t) -> str:
    if not t[1]:
        return "0"
    return "(nf" + "".join(" (w %s %s)" % (nf_show(e), m_show(c))
                           for e, c in t[1]) + ")"


def m_show(m) -> str:
    if m[0] == "mv":
        return "(v %s)" % nf_show(m[1])
    if not m[1]:
        return "0"
    return "(+" + "".join(" (w %s)" % m_show(x) for x in m[1]) + ")"


def nf_from_sexpr(expr):
    if expr == "0":
        return NF_ZERO
    if not isinstance(expr, list) or not expr or expr[0] != "nf":
        raise sexpr.SexprError("bad normal form: %r" % (expr,))
    pairs = []
    for item in expr[1:]:
        if not (isinstance(item, list) and len(item) == 3 and item[0] == "w"):
            raise sexpr.SexprError("expected (w exp coef): %r" % (item,))
        pairs.append((nf_from_sexpr(item[1]), m_from_sexpr(item[2])))
    return mk_nf(pairs)


def m_from_sexpr(expr):
    if expr == "0":
        return M_ZERO
    if not isinstance(expr, list) or not expr:
        raise sexpr.SexprError("bad coefficient: %r" % (expr,))
    if expr[0] == "v":
        return mk_m_theta(nf_from_sexpr(expr[1]))
    if expr[0] == "+":
        return mk_m_sum(tuple(m_from_sexpr(item[1]) for item in expr[1:]))
    raise sexpr.SexprError("bad coefficient: %r" % (expr,))


_NF_TERMS_CACHE: dict = {}


def nf_terms(bound: int, collapsed: bool = False) -> list:
    key = (bound, collapsed)
    if bound < 1:
        return []
    if key in _NF_TERMS_CACHE:
        return list(_NF_TERMS_CACHE[key])
    exps = nf_terms(bound - 2, collapsed)
    coefs = [c for c in m_terms(bound - 2, collapsed) if c != M_ZERO]
    if collapsed:
        coefs = [c for c in coefs if c[0] == "mv"]
    pair_pool = [(e, c) for e in exps for c in coefs]
    out = [NF_ZERO]

    def pair_cost(p):
        return nf_size(p[0]) + m_size(p[1])

    def pair_cmp(p, q):
        c = nf_cmp(p[0], q[0])
        if c != 0:
            return c
        return m_cmp(p[1], q[1])

    for pairs in _descending_assembly(pair_pool, pair_cost, pair_cmp,
                                      bound - 1, strict=True):
        if pairs and all(nf_cmp(a[0], b[0]) > 0 for a, b in zip(pairs, pairs[1:])):
            out.append(("nf", pairs))
    _NF_TERMS_CACHE[key] = out
    return list(out)


def m_terms(bound: int, collapsed: bool = False) -> list:
    if bound < 1:
        return []
    out = [M_ZERO]
    for t in nf_terms(bound - 1, collapsed):
        out.append(mk_m_theta(t))
    if not collapsed:
        pool = m_terms(bound - 2, collapsed)
        for ms in _descending_assembly(pool, lambda m: 1 + m_size(m), m_cmp,
                                       bound - 1, strict=False):
            if ms and not (len(ms) == 1 and ms[0][0] == "mv"):
                out.append(("mw", ms))
    return out


class NfOrder(Order):
    name = "nf"

    def __init__(self, collapsed: bool = False):
        self.collapsed = collapsed
        if collapsed:
            self.name = "cnf"

    def cmp(self, a, b):
        return nf_cmp(a, b)

    def size(self, t):
        if self.collapsed and not nf_is_collapsed(t):
            raise OrderError("coefficients not collapsed: %s" % nf_show(t))
        return nf_size(t)

    def elements(self, bound):
        return nf_terms(bound, self.collapsed)

    def show(self, t):
        return nf_show(t)

    def from_sexpr(self, expr):
        t = nf_from_sexpr(expr)
        self.size(t)
        return t


class MOrder(Order):
    """Normal-form values below Omega (coefficient position terms)."""

    name = "mcoef"

    def cmp(self, a, b):
        return m_cmp(a, b)

    def size(self, t):
        return m_size(t)

    def elements(self, bound):
        return m_terms(bound)

    def show(self, t):
        return m_show(t)

    def from_sexpr(self, expr):
        return m_from_sexpr(expr)


class COrder(Order):
    """The suborder of theta-terms among collapsed normal forms."""

    name = "ctheta"

    def cmp(self, a, b):
        return nf_cmp(a, b)

    def size(self, t):
        if not is_c_theta_term(t):
            raise OrderError("not a collapsed theta-term: %s" % nf_show(t))
        return nf_size(t)

    def elements(self, bound):
        return [t for t in nf_terms(bound, collapsed=True) if is_c_theta_term(t)]

    def show(self, t):
        return nf_show(t)

    def from_sexpr(self, expr):
        t = nf_from_sexpr(expr)
        self.size(t)
        return t


def is_c_theta_term(t) -> bool:
    """Omega^0 * (theta s) with s collapsed: the C carrier shape."""
    if t[0] != "nf" or len(t[1]) != 1:
        return False
    e, c = t[1][0]
    return e == NF_ZERO and c[0] == "mv" and nf_is_collapsed(c[1])


def c_theta(arg_nf) -> tuple:
    return mk_nf(((NF_ZERO, mk_m_theta(arg_nf)),))


def c_theta_arg(t):
    if not is_c_theta_term(t):
        raise OrderError("not a theta-term: %s" % nf_show(t))
    return t[1][0][1][1]


@functools.lru_cache(maxsize=None)
def coded_natural(n: int):
    """Nested theta-terms standing in for the naturals in collapsed forms."""
    if n == 0:
        return NF_ZERO
    return c_theta(coded_natural(n - 1))


# ---------------------------------------------------------------------------
# Normalization (any OT term has an Omega-normal form)


def split_plus_omega(g):
    """For g >= Omega produce d with g = Omega + d."""
    if ot_cmp(g, OT_OMEGA) < 0:
        raise OrderError("term below Omega")
    if g[0] == "O":
        return OT_ZERO
    if g[0] == "+":
        exps = g[1]
        if len(exps) == 1:
            # a single power above Omega absorbs the addition
            return g
        head = ot_sum((exps[0],))
        return ot_add(split_plus_omega(head), ot_sum(exps[1:]))
    raise OrderError("theta-terms lie below Omega")


def split_omega_mul(g):
    """Write any term as (d, r) with g = Omega*d + r and r < Omega."""
    if ot_cmp(g, OT_OMEGA) < 0:
        return OT_ZERO, g
    powers = as_powers(g)
    i = 0
    while i < len(powers) and ot_cmp(powers[i], OT_OMEGA) >= 0:
        i += 1
    d = ot_sum(tuple(split_plus_omega(p) for p in powers[:i]))
    r = ot_sum(powers[i:])
    return d, r


def omega_normalize(t):
    """The Omega-normal form of an OT term, normalizing inside every
    theta-subterm as well."""
    if ot_is_zero(t):
        return NF_ZERO
    powers = as_powers(t)
    split = [split_omega_mul(p) for p in powers]
    pairs = []
    idx = 0
    while idx < len(split):
        d = split[idx][0]
        run = []
        while idx < len(split) and ot_cmp(split[idx][0], d) == 0:
            run.append(split[idx][1])
            idx += 1
        coef_value = ot_sum(tuple(run))
        pairs.append((omega_normalize(d), m_convert(coef_value)))
    return mk_nf(pairs)


def m_convert(v):
    """Convert an OT value below Omega into a coefficient term."""
    if ot_cmp(v, OT_OMEGA) >= 0:
        raise OrderError("coefficient must lie below Omega")
    if ot_is_zero(v):
        return M_ZERO
    if v[0] == "v":
        return mk_m_theta(omega_normalize(v[1]))
    return mk_m_sum(tuple(m_convert(g) for g in v[1]))


# ---------------------------------------------------------------------------
# Collapsing coefficients (normal forms into collapsed normal forms)


def nf_collapse(t):
    """Embed normal forms into collapsed normal forms."""
    if t == NF_ZERO:
        return mk_nf(((coded_natural(3), mk_m_theta(NF_ZERO)),))
    pairs = tuple((nf_collapse(e), mk_m_theta(m_collapse(c))) for e, c in t[1])
    return mk_nf(pairs)


def m_collapse(m):
    """Embed coefficient terms into collapsed normal forms; composing with
    the theta constructor embeds the below-Omega suborder into C."""
    if m == M_ZERO:
        return NF_ZERO
    if m[0] == "mv":
        return mk_nf(((coded_natural(2), mk_m_theta(nf_collapse(m[1]))),))
    ms = m[1]
    g, rest = ms[0], ms[1:]
    if not rest and g[0] == "mv":
        raise PredilatorError("single theta power should have been collapsed "
                              "at construction")
    d = mk_m_sum(rest) if rest else M_ZERO
    return mk_nf(((coded_natural(1), mk_m_theta(m_collapse(g))),
                  (coded_natural(0), mk_m_theta(m_collapse(d)))))


def m_theta_collapse(m):
    """The map sending a below-Omega value s to the theta-term theta(g(s))."""
    return c_theta(m_collapse(m))


# ---------------------------------------------------------------------------
# phi(omega, 0)

PHI_ZERO = ("+", ())


def phi_head(t) -> int:
    if t[0] == "p":
        return t[1]
    return 0


def mk_phi(n: int, x) -> tuple:
    if phi_head(x) > n:
        raise OrderError("head constraint violated: h(%s) > %d" % (phi_show(x), n))
    return ("p", n, x)


def mk_phi_sum(items) -> tuple:
    items = tuple(items)
    if not items:
        return PHI_ZERO
    if len(items) == 1:
        return items[0]
    for x in items:
        if x[0] != "p":
            raise OrderError("sum members must be indecomposable")
    for a, b in zip(items, items[1:]):
        if phi_cmp(a, b) < 0:
            raise OrderError("sum members must be weakly decreasing")
    return ("+", items)


_PHI_CMP_CACHE: dict = {}


def phi_cmp(a, b) -> int:
    if a == b:
        return 0
    key = (a, b)
    got = _PHI_CMP_CACHE.get(key)
    if got is not None:
        return got
    res = _phi_cmp(a, b)
    _PHI_CMP_CACHE[key] = res
    _PHI_CMP_CACHE[(b, a)] = -res
    return res


def _phi_cmp(a, b) -> int:
    if a[0] == "+" and not a[1]:
        return -1  # zero below everything else
    if b[0] == "+" and not b[1]:
        return 1
    if a[0] == "+" and b[0] == "+":
        for x, y in zip(a[1], b[1]):
            c = phi_cmp(x, y)
            if c != 0:
                return c
        return (len(a[1]) > len(b[1])) - (len(a[1]) < len(b[1]))
    if a[0] == "+":
        return -1 if phi_cmp(a[1][0], b) < 0 else 1
    if b[0] == "+":
        return -_phi_cmp(b, a)
    n, x = a[1], a[2]
    m, y = b[1], b[2]
    if n == m:
        return phi_cmp(x, y)
    if n < m:
        return -1 if phi_cmp(x, b) < 0 else 1
    return -1 if phi_cmp(a, y) < 0 else 1


@functools.lru_cache(maxsize=None)
def phi_size(t) -> int:
    if t[0] == "p":
        return 1 + t[1] + phi_size(t[2])
    return 1 + sum(phi_size(x) for x in t[1])


def phi_subterms(t) -> list:
    """Strict subterms: everything used at some point in building t."""
    out = []
    if t[0] == "p":
        out.append(t[2])
        out.extend(phi_subterms(t[2]))
    else:
        for x in t[1]:
            out.append(x)
            out.extend(phi_subterms(x))
    return out


def phi_show(t) -> str:
    if t[0] == "p":
        return "(p %d %s)" % (t[1], phi_show(t[2]))
    if not t[1]:
        return "0"
    return "(+" + "".join(" " + phi_show(x) for x in t[1]) + ")"


def phi_from_sexpr(expr):
    if expr == "0":
        return PHI_ZERO
    if not isinstance(expr, list) or not expr:
        raise sexpr.SexprError("bad phi term: %r" % (expr,))
    if expr[0] == "p":
        return mk_phi(int(expr[1]), phi_from_sexpr(expr[2]))
    if expr[0] == "+":
        return mk_phi_sum(tuple(phi_from_sexpr(x) for x in expr[1:]))
    raise sexpr.SexprError("bad phi term: %r" % (expr,))


_PHI_TERMS_CACHE: dict = {}


def phi_terms(bound: int) -> list:
    if bound < 1:
        return []
    if bound in _PHI_TERMS_CACHE:
        return list(_PHI_TERMS_CACHE[bound])
    out = [PHI_ZERO]
    smaller = phi_terms(bound - 1)
    for n in range(bound - 1):
        for x in smaller:
            if 1 + n + phi_size(x) <= bound and phi_head(x) <= n:
                out.append(("p", n, x))
    h_terms = [t for t in out if t[0] == "p"]
    for items in _descending_assembly(h_terms, phi_size, phi_cmp,
                                      bound - 1, strict=False):
        if len(items) >= 2:
            out.append(("+", items))
    out = [t for t in out if phi_size(t) <= bound]
    _PHI_TERMS_CACHE[bound] = out
    return list(out)


class PhiOrder(Order):
    name = "phi"

    def cmp(self, a, b):
        return phi_cmp(a, b)

    def size(self, t):
        return phi_size(t)

    def elements(self, bound):
        return phi_terms(bound)

    def show(self, t):
        return phi_show(t)

    def from_sexpr(self, expr):
        return phi_from_sexpr(expr)


# ---------------------------------------------------------------------------
# The psi-style system P and its suborder psi(Omega^omega)

P_ZERO = ("P", ())


def mk_p(pairs) -> tuple:
    """Sum of Omega^m * psi(x) summands, lexicographically sorted."""
    pairs = tuple(pairs)
    for (m1, x1), (m2, x2) in zip(pairs, pairs[1:]):
        if m1 < m2:
            raise OrderError("Omega exponents must weakly decrease")
        if m1 == m2 and p_cmp(x1, x2) < 0:
            raise OrderError("equal exponents need weakly decreasing coefficients")
    for _, x in pairs:
        if not p_member(x):
            raise OrderError("coefficient argument outside psi(Omega^omega)")
    return ("P", pairs)


def p_cmp(a, b) -> int:
    for (ma, xa), (mb, xb) in zip(a[1], b[1]):
        if ma != mb:
            return -1 if ma < mb else 1
        c = p_cmp(xa, xb)
        if c != 0:
            return c
    return (len(a[1]) > len(b[1])) - (len(a[1]) < len(b[1]))


def p_member(x) -> bool:
    """x lies in psi(Omega^omega) iff its coefficient arguments lie below x."""
    return all(p_cmp(xi, x) < 0 for _, xi in x[1])


@functools.lru_cache(maxsize=None)
def p_size(t) -> int:
    return 1 + sum(1 + m + p_size(x) for m, x in t[1])


def p_add(a, b):
    if not b[1]:
        return a
    if not a[1]:
        return b
    head_b = b[1][0]
    keep = len(a[1])

    def pair_lt(p, q):
        if p[0] != q[0]:
            return p[0] < q[0]
        return p_cmp(p[1], q[1]) < 0

    while keep > 0 and pair_lt(a[1][keep - 1], head_b):
        keep -= 1
    return ("P", a[1][:keep] + b[1])


def p_psi(x):
    """The summand Omega^0 * psi(x)."""
    return ("P", ((0, x),))


def p_omega_psi(m: int, x):
    return ("P", ((m, x),))


def p_show(t) -> str:
    if not t[1]:
        return "0"
    return "(+" + "".join(" (P %d (c %s))" % (m, p_show(x)) for m, x in t[1]) + ")"


def p_from_sexpr(expr):
    if expr == "0":
        return P_ZERO
    if not isinstance(expr, list) or not expr or expr[0] != "+":
        raise sexpr.SexprError("bad P term: %r" % (expr,))
    pairs = []
    for item in expr[1:]:
        if not (isinstance(item, list) and len(item) == 3 and item[0] == "P"):
            raise sexpr.SexprError("expected (P m (c T)): %r" % (item,))
        body = item[2]
        if not (isinstance(body, list) and len(body) == 2 and body[0] == "c"):
            raise sexpr.SexprError("expected (c T): %r" % (body,))
        pairs.append((int(item[1]), p_from_sexpr(body[1])))
    return mk_p(pairs)


_P_TERMS_CACHE: dict = {}


def p_terms(bound: int) -> list:
    """Members of P whose coefficient arguments lie in psi(Omega^omega)."""
    if bound < 1:
        return []
    if bound in _P_TERMS_CACHE:
        return list(_P_TERMS_CACHE[bound])
    args = [t for t in p_terms(bound - 2) if p_member(t)]
    pool = []
    for m in range(bound - 1):
        for x in args:
            if 1 + m + p_size(x) <= bound:
                pool.append((m, x))

    def pair_cost(p):
        return 1 + p[0] + p_size(p[1])

    def pair_cmp(p, q):
        if p[0] != q[0]:
            return -1 if p[0] < q[0] else 1
        return p_cmp(p[1], q[1])

    out = [P_ZERO]
    for pairs in _descending_assembly(pool, pair_cost, pair_cmp,
                                      bound - 1, strict=False):
        if pairs:
            out.append(("P", pairs))
    _P_TERMS_CACHE[bound] = out
    return list(out)


class POrder(Order):
    name = "p"

    def cmp(self, a, b):
        return p_cmp(a, b)

    def size(self, t):
        return p_size(t)

    def elements(self, bound):
        return p_terms(bound)

    def show(self, t):
        return p_show(t)

    def from_sexpr(self, expr):
        return p_from_sexpr(expr)


class PsiOmegaOrder(POrder):
    name = "psiomega"

    def size(self, t):
        if not p_member(t):
            raise OrderError("term outside psi(Omega^omega): %s" % p_show(t))
        return p_size(t)

    def elements(self, bound):
        return [t for t in p_terms(bound) if p_member(t)]


# ---------------------------------------------------------------------------
# The term-shape functor whose collapsing term system mirrors OT(theta)


class OtShapePredilator(Predilator):
    """Values are OT-like terms with base elements in the theta slots."""

    name = "otshape"

    def value_cmp(self, base, a, b):
        if a == b:
            return 0
        ta, tb = a[0], b[0]
        if ta == "om" and tb == "om":
            return 0
        if ta == "om":
            if tb == "el" or not b[1]:
                return 1
            return -1 if self.value_cmp(base, a, b[1][0]) <= 0 else 1
        if tb == "om":
            return -self.value_cmp(base, b, a)
        if ta == "el" and tb == "el":
            return base.cmp(a[1], b[1])
        if ta == "el":
            exps = b[1]
            if not exps:
                return 1
            return -1 if self.value_cmp(base, a, exps[0]) <= 0 else 1
        if tb == "el":
            return -self.value_cmp(base, b, a)
        for x, y in zip(a[1], b[1]):
            c = self.value_cmp(base, x, y)
            if c != 0:
                return c
        return (len(a[1]) > len(b[1])) - (len(a[1]) < len(b[1]))

    def value_size(self, base, v):
        if v[0] == "om":
            return 1
        if v[0] == "el":
            return 1 + base.size(v[1])
        return 1 + sum(1 + self.value_size(base, x) for x in v[1])

    def value_show(self, base, v):
        if v[0] == "om":
            return "O"
        if v[0] == "el":
            return "(e %s)" % base.show(v[1])
        if not v[1]:
            return "0"
        return "(+" + "".join(" (w %s)" % self.value_show(base, x)
                              for x in v[1]) + ")"

    def value_from_sexpr(self, base, expr):
        if expr == "O":
            return ("om",)
        if expr == "0":
            return ("sum", ())
        if expr[0] == "e":
            return ("el", base.from_sexpr(expr[1]))
        if expr[0] == "+":
            return self.mk_sum(base, tuple(self.value_from_sexpr(base, item[1])
                                           for item in expr[1:]))
        raise sexpr.SexprError("bad shape term: %r" % (expr,))

    def mk_sum(self, base, exps):
        if len(exps) == 1 and exps[0][0] in ("om", "el"):
            return exps[0]
        return ("sum", exps)

    def values(self, base, bound):
        if bound < 1:
            return []
        out = [("om",), ("sum", ())]
        out += [("el", x) for x in base.elements(bound - 1)]
        smaller = self.values(base, bound - 2)
        for exps in _descending_assembly(
                smaller, lambda v: 1 + self.value_size(base, v),
                lambda x, y: self.value_cmp(base, x, y), bound - 1, strict=False):
            if exps and not (len(exps) == 1 and exps[0][0] in ("om", "el")):
                out.append(("sum", exps))
        return [v for v in out if self.value_size(base, v) <= bound]

    def rename(self, v, fn):
        if v[0] == "om":
            return v
        if v[0] == "el":
            return ("el", fn(v[1]))
        return ("sum", tuple(self.rename(x, fn) for x in v[1]))

    def supp(self, base, v):
        if v[0] == "om":
            return []
        if v[0] == "el":
            return [v[1]]
        acc = []
        for x in v[1]:
            acc.extend(self.supp(base, x))
        return base.sort(acc)
