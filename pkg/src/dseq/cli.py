"""Command-line entry point.

One executable exposes every subsystem: term enumeration, Goodstein and
inverse sequence runners, fixed-point tools, notation-system utilities,
embedding verification, the boundary constructions, and the aggregated
verification suite.  Exit status is 0 exactly when no violations were
recorded.  ``--format records`` switches to delimited one-line records;
``--figures DIR`` additionally renders matplotlib figures for the
report-producing commands.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import embeddings as em
from . import goodstein as gs
from . import notations as nt
from . import pathologies as pa
from .fixpoint import PsiOrder, check_conditions, fp_to_termination, unique_hom
from .orders import (FinOrder, NatOrder, Order, QOrder, ZOrder, linearity_suite,
                     omega_iter)
from .predilators import (BumpPredilator, ConstPredilator, FiniteTree,
                          IdPredilator, OmegaPredilator, Predilator,
                          ShiftPredilator, SumPredilator, TreePredilator,
                          check_naturality, check_support_condition)
from .orders import iota
from .reports import (Recorder, figure_path, render_rank_figure,
                      render_sequence_figure, render_suite_figure)

DEFAULT_SIZE = int(os.environ.get("DSEQ_SIZE", "4"))


def parse_order(spec: str) -> Order:
    if spec.startswith("fin:"):
        return FinOrder(int(spec[4:]))
    if spec == "nat":
        return NatOrder()
    if spec == "z":
        return ZOrder()
    if spec == "q":
        return QOrder()
    if spec == "ot":
        return nt.OtOrder()
    if spec == "bh":
        return nt.BhOrder()
    if spec == "nf":
        return nt.NfOrder()
    if spec == "cnf":
        return nt.NfOrder(True)
    if spec == "m":
        return nt.MOrder()
    if spec == "phi":
        return nt.PhiOrder()
    if spec == "p":
        return nt.POrder()
    if spec == "psiomega":
        return nt.PsiOmegaOrder()
    if spec.startswith("omegapow:"):
        _, n, rest = spec.split(":", 2)
        return omega_iter(int(n), parse_order(rest))
    if spec.startswith("psi:"):
        return PsiOrder(parse_predilator(spec[4:]))
    if spec.startswith("psiplus:"):
        return PsiOrder(parse_predilator(spec[8:]), valid_only=False)
    if spec.startswith("car:"):
        _, pred, base = spec.split(":", 2)
        return parse_predilator(pred).carrier(parse_order(base))
    raise SystemExit("unknown order spec: %s" % spec)


def _split_top(text: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip("()") for p in parts]


def parse_predilator(spec: str) -> Predilator:
    if spec == "goodstein":
        return gs.GOODSTEIN
    if spec == "weak":
        return gs.WEAK
    if spec == "id":
        return IdPredilator()
    if spec == "phishape":
        return em.PHI_SHAPE
    if spec.startswith("const:"):
        return ConstPredilator(parse_order(spec[6:]))
    if spec.startswith("sum:"):
        left, right = _split_top(spec[4:])
        return SumPredilator(parse_predilator(left), parse_predilator(right))
    if spec.startswith("omega:"):
        return OmegaPredilator(parse_predilator(spec[6:]))
    if spec.startswith("bump:"):
        return BumpPredilator(parse_predilator(spec[5:]))
    if spec.startswith("shift:"):
        body, alpha = spec[6:].rsplit(":", 1)
        return ShiftPredilator(parse_predilator(body), int(alpha))
    if spec.startswith("tree:"):
        return TreePredilator(load_tree(spec[5:]))
    raise SystemExit("unknown predilator spec: %s" % spec)


def load_tree(path: str) -> FiniteTree:
    """Tree file: one node per line, ``parent-index flag`` with flag leaf
    or node; the root row uses parent -1."""
    rows = []
    with open(path) as handle:
        for line in handle:
            line = line.split("#")[0].strip()
            if not line:
                continue
            parent, flag = line.split()
            rows.append((int(parent), flag == "leaf"))
    return FiniteTree.from_parent_list(rows)


# ---------------------------------------------------------------------------
# subcommands


def cmd_enumerate(args, rec: Recorder):
    order = parse_order(args.order)
    for t in order.enumerate(args.size):
        rec.record("term", ("form", order.show(t)), ("size", order.size(t)))


def cmd_goodstein_run(args, rec: Recorder):
    step = gs.weak_step if args.weak else gs.classic_step
    encode = gs.encode_w if args.weak else gs.encode_nat
    show = (gs.WEAK if args.weak else gs.GOODSTEIN).value_show
    seq = [args.seed]
    for n in range(args.steps):
        if seq[-1] == 0:
            break
        seq.append(step(seq[-1], n))
    for n, value in enumerate(seq):
        base = n + 2
        term = show(FinOrder(base - 1), encode(value, base)) if value or base > 1 else "(+)"
        rec.record("step", ("stage", n), ("base", base), ("value", value),
                   ("term", term))
    if args.figures:
        render_sequence_figure(range(len(seq)), seq,
                               figure_path(args.figures, "goodstein-run.png"),
                               "%s sequence from %d"
                               % ("weak" if args.weak else "classic", args.seed))


def cmd_goodstein_inverse(args, rec: Recorder):
    d = parse_predilator(args.predilator)
    prefix = gs.inverse_prefix(d, args.stages)
    evals = []
    for k, v in enumerate(prefix.values):
        base = FinOrder(k)
        fields = [("stage", k), ("term", d.value_show(base, v))]
        if d is gs.GOODSTEIN:
            fields.append(("value", gs.eval_g(v, k + 1)))
            evals.append(gs.eval_g(v, k + 1))
        elif d is gs.WEAK:
            fields.append(("value", gs.eval_w(v, k + 1)))
            evals.append(gs.eval_w(v, k + 1))
        rec.record("stage", *fields)
    if prefix.terminated_at is not None:
        rec.record("terminated", ("stage", prefix.terminated_at))
    if args.figures and evals:
        render_sequence_figure(range(len(evals)), evals,
                               figure_path(args.figures, "inverse-prefix.png"),
                               "increasing sequence for %s" % d.name)


def cmd_fixpoint_enumerate(args, rec: Recorder):
    psi = PsiOrder(parse_predilator(args.predilator))
    for t in psi.sorted_terms(args.size):
        rec.record("term", ("form", psi.show(t)), ("size", psi.size(t)))


def cmd_fixpoint_check(args, rec: Recorder):
    from .fixpoint import termination_to_fp
    from .predilators import LeastAboveUnsupported
    d = parse_predilator(args.predilator)
    psi = PsiOrder(d)
    lin = linearity_suite(psi, args.size)
    rec.record("linearity", ("system", psi.name), ("count", lin.count),
               ("ok", lin.ok))
    rec.note_failure(len(lin.violations))
    # round trip through termination prefixes on the enumerated terms
    terms = psi.sorted_terms(args.size)
    values = fp_to_termination(psi, terms)
    back = termination_to_fp(psi, values)
    roundtrip_ok = back == terms and fp_to_termination(psi, back) == values
    rec.record("roundtrip", ("terms", len(terms)), ("ok", roundtrip_ok))
    if not roundtrip_ok:
        rec.note_failure()
    # the defining conditions hold on genuine initial segments, which the
    # increasing-sequence driver produces stage by stage
    try:
        prefix = gs.inverse_prefix(d, max(args.size, 6))
    except LeastAboveUnsupported:
        rec.record("conditions", ("note", "no least-above; skipped"))
        return
    report = check_conditions(d, prefix.values, args.size)
    rec.record("conditions", ("length", report.length),
               ("minimality", report.minimality_checked),
               ("coverage", report.coverage_checked),
               ("horizon", report.horizon), ("ok", report.ok))
    for v in report.violations:
        rec.record("violation", ("detail", v))
    rec.note_failure(len(report.violations))


def cmd_fixpoint_hom(args, rec: Recorder):
    d1 = parse_predilator(args.src)
    d2 = parse_predilator(args.dst)
    psi1, psi2 = PsiOrder(d1), PsiOrder(d2)
    if args.src == args.dst:
        translate = None
        d = d1
    elif isinstance(d1, ConstPredilator) and isinstance(d2, ConstPredilator):
        translate = lambda v: v  # value carriers share their elements
        d = d1
    else:
        raise SystemExit("homomorphisms need equal predilators or constant "
                         "carriers with shared elements")
    terms = psi1.sorted_terms(args.size)
    hom = unique_hom(d, terms, psi1.pi, psi2, translate=translate)
    for t in terms:
        rec.record("map", ("from", psi1.show(t)), ("to", psi2.show(hom(t))))


def cmd_notation_cmp(args, rec: Recorder):
    order = parse_order(args.system)
    a, b = order.parse(args.a), order.parse(args.b)
    c = order.cmp(a, b)
    rec.record("cmp", ("result", {-1: "less", 0: "equal", 1: "greater"}[c]))


def cmd_notation_normalize(args, rec: Recorder):
    t = nt.ot_from_sexpr(__import__("dseq.sexpr", fromlist=["parse"]).parse(args.term))
    nf = nt.omega_normalize(t)
    rec.record("normal-form", ("form", nt.nf_show(nf)),
               ("value", nt.ot_show(nt.eval_nf(nf))))


def cmd_notation_enumerate(args, rec: Recorder):
    order = parse_order(args.system)
    for t in order.enumerate(args.size):
        rec.record("term", ("form", order.show(t)))


def cmd_embed_run(args, rec: Recorder):
    src, tgt, fn = em.embedding_registry()[args.map]
    t = src.parse(args.term)
    rec.record("image", ("form", tgt.show(fn(t))))


def cmd_embed_verify(args, rec: Recorder):
    src, tgt, fn = em.embedding_registry()[args.map]
    rep = em.check_embedding(src, tgt, fn, args.size)
    rec.record("embedding", ("map", args.map), ("source", rep.source),
               ("target", rep.target), ("pairs", rep.pairs_checked),
               ("ok", rep.ok))
    for v in rep.violations:
        rec.record("violation", ("detail", v))
    rec.note_failure(len(rep.violations))
    if args.figures:
        elems = src.enumerate(args.size)
        import functools
        ordered = sorted(elems, key=functools.cmp_to_key(src.cmp))
        images = [fn(t) for t in ordered]
        img_sorted = sorted(images, key=functools.cmp_to_key(tgt.cmp))
        ranks = [next(i for i, u in enumerate(img_sorted) if tgt.cmp(u, v) == 0)
                 for v in images]
        render_rank_figure(range(len(ordered)), ranks,
                           figure_path(args.figures, "embed-%s.png" % args.map),
                           args.map)


def cmd_embed_equimorphism(args, rec: Recorder):
    for rep in em.equimorphism_suite(args.pair, args.size):
        rec.record("direction", ("source", rep.source), ("target", rep.target),
                   ("pairs", rep.pairs_checked), ("ok", rep.ok))
        rec.note_failure(len(rep.violations))
        for v in rep.violations:
            rec.record("violation", ("detail", v))


def cmd_patho_zcheck(args, rec: Recorder):
    lo, hi = (int(x) for x in args.window.split(","))
    rep = pa.z_point_check(lo, hi, descent_length=args.descent)
    rec.record("z-point", ("window", args.window), ("checked", rep.checked),
               ("ok", rep.ok))
    for line in rep.details:
        rec.record("detail", ("info", line))
    rec.note_failure(len(rep.violations))


def cmd_patho_tree(args, rec: Recorder):
    tree = load_tree(args.file)
    rep = pa.tree_fixed_point_check(tree, bound=args.size)
    rec.record("treefp", ("nodes", len(tree.nodes)), ("terms", rep.checked),
               ("ok", rep.ok))
    for v in rep.violations:
        rec.record("violation", ("detail", v))
    rec.note_failure(len(rep.violations))


def cmd_patho_successor(args, rec: Recorder):
    d = parse_predilator(args.predilator)
    rep = pa.successor_check(d, args.size)
    rec.record("successor", ("predilator", d.name), ("terms", rep.checked),
               ("ok", rep.ok))
    rec.note_failure(len(rep.violations))


def cmd_patho_dense(args, rec: Recorder):
    r = Fraction(args.r)
    rep = pa.dense_window_check(r, args.size + 4)
    rec.record("dense", ("r", args.r), ("checked", rep.checked), ("ok", rep.ok))
    rec.note_failure(len(rep.violations))


# ---------------------------------------------------------------------------
# the aggregated verification suite

SHIPPED_ORDERS = [
    ("car:goodstein:fin:2", 8),
    ("car:weak:fin:2", 7),
    ("omegapow:1:fin:2", 7),
    ("omegapow:2:fin:1", 8),
    ("ot", 6),
    ("nf", 8),
    ("cnf", 12),
    ("phi", 6),
    ("p", 7),
    ("psi:goodstein", 9),
    ("psi:weak", 8),
    ("psi:const:fin:3", 3),
    ("psi:sum:const:fin:2,const:fin:3", 4),
    ("psi:bump:goodstein", 5),
]

SHIPPED_EMBEDDINGS = [
    ("normalize", 6), ("nf-collapse", 8), ("m-collapse", 6),
    ("psi-g-to-ot", 9), ("ot-to-psi-g", 4), ("phi-to-theta", 5),
    ("phi-to-psiomega", 4), ("psiomega-to-psi-w", 5), ("psi-w-to-phi", 8),
    ("phi-to-psi-w", 4), ("psiomega-to-phi", 5),
]

FIVE_PREDILATORS = ["goodstein", "weak", "const:fin:3",
                    "sum:const:fin:2,const:fin:3", "bump:goodstein"]


def _suite_linearity(size: int):
    violations = []
    checked = 0
    for spec, bound in SHIPPED_ORDERS:
        rep = linearity_suite(parse_order(spec), max(bound, size))
        checked += rep.pair_checks + rep.triple_checks
        violations += ["%s: %s" % (spec, v) for v in rep.violations]
    return checked, violations


def _suite_predilators(size: int):
    violations = []
    checked = 0
    from .orders import fin_map
    ds = [parse_predilator(s) for s in FIVE_PREDILATORS] + [IdPredilator()]
    for d in ds:
        f = fin_map(FinOrder(2), FinOrder(4), [1, 3])
        rep = check_naturality(d, f, max(5, size))
        checked += rep.checked
        violations += ["%s: %s" % (d.name, v) for v in rep.violations]
        base = FinOrder(3)
        for v in d.carrier(base).enumerate(max(5, size)):
            checked += 1
            ok, _ = check_support_condition(d, base, v, max(6, size + 2))
            if not ok:
                violations.append("%s: support condition fails at %s"
                                  % (d.name, d.value_show(base, v)))
    return checked, violations


def _suite_goodstein(size: int):
    violations = []
    checked = 0
    for k in range(200):
        for b in (2, 3, 4):
            checked += 1
            if gs.eval_g(gs.encode_nat(k, b), b) != k:
                violations.append("hereditary coding broken at %d base %d" % (k, b))
            if gs.eval_w(gs.encode_w(k, b), b) != k:
                violations.append("plain coding broken at %d base %d" % (k, b))
    if gs.classic_run(5, 2)[:2] != [5, 27]:
        violations.append("classic first step off the worked value")
    if gs.weak_run(5, 2)[:2] != [5, 9]:
        violations.append("weak first step off the worked value")
    pre = gs.inverse_prefix(gs.GOODSTEIN, 12)
    for k, v in enumerate(pre.values):
        checked += 1
        if gs.eval_g(v, k + 1) != k:
            violations.append("inverse sequence stage %d off" % k)
    return checked, violations


def _suite_fixpoint(size: int):
    from .fixpoint import termination_to_fp
    violations = []
    checked = 0
    for spec in FIVE_PREDILATORS:
        d = parse_predilator(spec)
        psi = PsiOrder(d)
        bound = {"goodstein": 9, "weak": 8}.get(spec, 5)
        terms = psi.sorted_terms(max(bound, size))[:12]
        values = fp_to_termination(psi, terms)
        back = termination_to_fp(psi, values)
        checked += len(terms)
        if back != terms:
            violations.append("%s: prefix round trip failed" % spec)
        if fp_to_termination(psi, back) != values:
            violations.append("%s: value round trip failed" % spec)
    return checked, violations


def _suite_embeddings(size: int):
    violations = []
    checked = 0
    for name, bound in SHIPPED_EMBEDDINGS:
        src, tgt, fn = em.embedding_registry()[name]
        rep = em.check_embedding(src, tgt, fn, max(bound, size))
        checked += rep.pairs_checked
        violations += ["%s: %s" % (name, v) for v in rep.violations]
    return checked, violations


def _suite_pathologies(size: int):
    violations = []
    rep = pa.z_point_check(-10, 10)
    checked = rep.checked
    violations += rep.violations
    tree = FiniteTree.from_parent_list([(-1, False), (0, True), (0, True)])
    rep = pa.tree_fixed_point_check(tree, bound=max(6, size + 2))
    checked += rep.checked
    violations += rep.violations
    rep = pa.successor_check(gs.GOODSTEIN, max(4, size))
    checked += rep.checked
    violations += rep.violations
    for r in (Fraction(0), Fraction(1, 3), Fraction(7, 2)):
        rep = pa.dense_window_check(r, 8)
        checked += rep.checked
        violations += rep.violations
    rep = pa.const_z_uniqueness_demo(list(range(-10, 10)))
    checked += rep.checked
    violations += rep.violations
    return checked, violations


SUITES = [
    ("linearity", _suite_linearity),
    ("predilators", _suite_predilators),
    ("goodstein", _suite_goodstein),
    ("fixpoint", _suite_fixpoint),
    ("embeddings", _suite_embeddings),
    ("pathologies", _suite_pathologies),
]


def _run_suite(entry):
    name, size = entry
    fn = dict(SUITES)[name]
    checked, violations = fn(size)
    return name, checked, violations


def cmd_verify(args, rec: Recorder):
    names = [n for n, _ in SUITES] if args.all else args.suites
    jobs = max(1, args.jobs)
    results = []
    if jobs == 1:
        results = [_run_suite((n, args.size)) for n in names]
    else:
        import concurrent.futures
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_suite, [(n, args.size) for n in names]))
    results.sort(key=lambda r: names.index(r[0]))
    passed, failed = [], []
    for name, checked, violations in results:
        rec.record("suite", ("name", name), ("checked", checked),
                   ("violations", len(violations)),
                   ("ok", not violations))
        for v in violations[:10]:
            rec.record("violation", ("suite", name), ("detail", v))
        rec.note_failure(len(violations))
        passed.append(checked - len(violations))
        failed.append(len(violations))
    if args.figures:
        render_suite_figure([r[0] for r in results], passed, failed,
                            figure_path(args.figures, "verify.png"),
                            "verification suites")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="dseq", description=__doc__)
    top.add_argument("--format", choices=("text", "records"), default="text")
    top.add_argument("--figures", metavar="DIR", default=None,
                     help="also render matplotlib figures into DIR")
    top.add_argument("--rng-seed", dest="rng_seed", type=int, default=0,
                     help="seed echoed into records; reserved for sampled checks")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list terms of an order")
    p.add_argument("--order", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_enumerate)

    g = sub.add_parser("goodstein", help="sequence runners")
    gsub = g.add_subparsers(dest="sub", required=True)
    p = gsub.add_parser("run")
    p.add_argument("--seed", dest="seed", type=int, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--weak", action="store_true")
    p.set_defaults(fn=cmd_goodstein_run)
    p = gsub.add_parser("inverse")
    p.add_argument("--predilator", default="goodstein")
    p.add_argument("--stages", type=int, default=10)
    p.set_defaults(fn=cmd_goodstein_inverse)

    f = sub.add_parser("fixpoint", help="fixed-point tools")
    fsub = f.add_subparsers(dest="sub", required=True)
    p = fsub.add_parser("enumerate")
    p.add_argument("--predilator", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_fixpoint_enumerate)
    p = fsub.add_parser("check")
    p.add_argument("--predilator", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_fixpoint_check)
    p = fsub.add_parser("hom")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_fixpoint_hom)

    n = sub.add_parser("notation", help="notation-system utilities")
    nsub = n.add_subparsers(dest="sub", required=True)
    p = nsub.add_parser("cmp")
    p.add_argument("--system", required=True)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_notation_cmp)
    p = nsub.add_parser("normalize")
    p.add_argument("term")
    p.set_defaults(fn=cmd_notation_normalize)
    p = nsub.add_parser("enumerate")
    p.add_argument("--system", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_notation_enumerate)

    e = sub.add_parser("embed", help="cross-system embeddings")
    esub = e.add_subparsers(dest="sub", required=True)
    p = esub.add_parser("run")
    p.add_argument("--map", required=True)
    p.add_argument("term")
    p.set_defaults(fn=cmd_embed_run)
    p = esub.add_parser("verify")
    p.add_argument("--map", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_embed_verify)
    p = esub.add_parser("equimorphism")
    p.add_argument("--pair", required=True, choices=sorted(em.EQUIMORPHISM_PAIRS))
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_embed_equimorphism)

    pt = sub.add_parser("patho", help="boundary constructions")
    psub = pt.add_subparsers(dest="sub", required=True)
    p = psub.add_parser("z-check")
    p.add_argument("--window", default="-10,10")
    p.add_argument("--descent", type=int, default=10)
    p.set_defaults(fn=cmd_patho_zcheck)
    p = psub.add_parser("tree")
    p.add_argument("--file", required=True)
    p.add_argument("--size", type=int, default=7)
    p.set_defaults(fn=cmd_patho_tree)
    p = psub.add_parser("successor")
    p.add_argument("--predilator", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_patho_successor)
    p = psub.add_parser("dense")
    p.add_argument("--r", required=True)
    p.add_argument("--size", type=int, default=DEFAULT_SIZE)
    p.set_defaults(fn=cmd_patho_dense)

    v = sub.add_parser("verify", help="aggregated verification suites")
    v.add_argument("--all", action="store_true")
    v.add_argument("--suites", nargs="*", default=[],
                   choices=[n for n, _ in SUITES])
    v.add_argument("--size", type=int, default=DEFAULT_SIZE)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(fn=cmd_verify)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rec = Recorder(fmt=args.format)
    rec.record("invocation", ("command", args.command), ("seed", args.rng_seed))
    args.fn(args, rec)
    try:
        status = rec.emit(sys.stdout)
    except BrokenPipeError:
        return 0
    return status


if __name__ == "__main__":
    raise SystemExit(main())
