"""Command-line front end.

Exit status: 0 success / true, 1 definitive false, 2 bounded or
indeterminate, 64 usage error, 65 malformed input, 66 unreadable input,
69 input beyond the supported size.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import graph as gr
from .analysis import (
    AnalysisError,
    analyze,
    blocking_pairs,
    check_balancing_union,
    fixed_vertices,
    framework_blocking_vertices,
    minimal_balancing_sets_mixed,
    run_checks,
)
from .biased import derive_bias
from .formats import (
    ParseError,
    format_biased,
    format_graph,
    parse_matroid,
    read_construct,
    read_graph,
    read_matroid,
)
from .frameworks import (
    MAX_ELEMENTS,
    classify_representation,
    decide_quasi_graphic,
    enumerate_frameworks,
    is_excluded_minor,
    verify_framework,
)
from .matroid import UnsupportedSize, cycle_matroid, has_minor, uniform

EXIT_TRUE, EXIT_FALSE, EXIT_BOUNDED = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_NOINPUT, EXIT_SIZE = 64, 65, 66, 69
JOBS_ENV = "QUASIGRAPHIC_JOBS"
INLINE_KINDS = ("uniform", "graphic", "dual", "named")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_jobs():
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def load_matroid(tokens):
    """A matroid file path, or an inline body such as ``uniform 3 7``."""
    if tokens and tokens[0] in INLINE_KINDS:
        name = "-".join(tokens) if tokens[0] != "uniform" else f"U{tokens[1]},{tokens[2]}" if len(tokens) == 3 else "m"
        return parse_matroid(f"matroid {name}\n" + " ".join(tokens) + "\n", "<command line>")
    if len(tokens) != 1:
        raise ParseError("expected a matroid file or an inline 'uniform|graphic|dual|named ...' body", None, "<command line>")
    return read_matroid(tokens[0])


class Out:
    def __init__(self, fmt, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def text(self, line=""):
        if self.fmt == "text":
            print(line, file=self.stream)

    def record(self, tag, **fields):
        if self.fmt == "records":
            parts = [tag] + [f"{k}={_fmt(v)}" for k, v in fields.items()]
            print(" ".join(parts), file=self.stream)

    def raw(self, line):
        print(line, file=self.stream)


def _fmt(v):
    if isinstance(v, bool):
        return str(int(v))
    if v is None:
        return "-"
    if isinstance(v, (set, frozenset, list, tuple)):
        items = sorted(str(x) for x in v)
        return ",".join(items) if items else "-"
    return str(v).replace(" ", "_")


# -- verbs ----------------------------------------------------------------------

def cmd_verify(args, out):
    gf = read_graph(args.graph)
    n = load_matroid(args.matroid)
    rep = verify_framework(gf.graph, n)
    if rep.valid:
        kind = classify_representation(gf.graph, n, rep.derived)
        out.text(f"valid framework for {n.name or 'matroid'} (frame={kind.is_frame}, lift={kind.is_lift})")
        out.record("verify", valid=True, frame=kind.is_frame, lift=kind.is_lift)
        return EXIT_TRUE
    f = rep.failure
    out.text(f"invalid: {f.axiom} fails: {f.detail}")
    out.text(f"witness: {_witness(f.witness)}")
    out.record("verify", valid=False, axiom=f.axiom, witness=_witness(f.witness))
    return EXIT_FALSE


def _witness(w):
    if isinstance(w, gr.Component):
        return "vertices=" + ",".join(map(str, sorted(w.vertices))) + ";edges=" + ",".join(sorted(w.edges))
    if isinstance(w, tuple):
        return ":".join(str(x) for x in w)
    if isinstance(w, (set, frozenset)):
        return ",".join(sorted(w))
    return str(w)


def cmd_decide(args, out):
    n = load_matroid(args.matroid)
    d = decide_quasi_graphic(n, args.max_vertices, max_elements=args.max_elements)
    if d.quasi_graphic:
        bias = derive_bias(d.witness, n)
        out.text(f"{n.name or 'matroid'}: quasi-graphic ({d.justification})")
        out.text(format_biased(bias, name="witness").rstrip())
        out.record("decide", quasi_graphic=True, bounded=False, vertices=d.witness.n,
                   edges=",".join(f"{lab}:{u}-{v}" for lab, u, v in d.witness.edges))
        if args.witness:
            with open(args.witness, "w") as fh:
                fh.write(format_biased(bias, name="witness"))
        return EXIT_TRUE
    status = "indeterminate" if d.bounded else "NOT quasi-graphic"
    out.text(f"{n.name or 'matroid'}: {status} ({d.justification})")
    if d.bounded:
        out.text("bounded")
    out.record("decide", quasi_graphic=d.quasi_graphic if d.quasi_graphic is not None else "unknown",
               bounded=d.bounded, justification=d.justification)
    return EXIT_BOUNDED if d.bounded else EXIT_FALSE


def cmd_enumerate(args, out):
    n = load_matroid(args.matroid)
    res = enumerate_frameworks(
        n,
        max_vertices=args.max_vertices,
        connected_only=args.connected_only,
        three_connected_shortcut=not args.no_shortcut,
        max_elements=args.max_elements,
        jobs=args.jobs,
    )
    if args.format == "records":
        for line in res.records(members=args.members):
            out.raw(line)
    else:
        shapes = res.unlabeled_classes()
        out.text(f"{n.name or 'matroid'}: {len(res.frameworks)} framework classes, "
                 f"{len(res.all_graphs())} labelled frameworks, {len(shapes)} underlying graphs")
        for group in shapes:
            g = group[0]
            out.text(f"  {len(group):4d} x {g.n} vertices: {_edge_summary(g)}")
        out.text(f"search: {res.mode}, nodes={res.stats['nodes']}, leaves={res.stats['leaves']}, "
                 f"pruned={res.stats['pruned']}")
        if res.bounded:
            out.text("bounded: the vertex bound, not exhaustion, ended the search")
    if res.bounded:
        return EXIT_BOUNDED
    return EXIT_TRUE if res.frameworks else EXIT_FALSE


def _edge_summary(g):
    pairs = {}
    for _, u, v in g.edges:
        pairs[(u, v)] = pairs.get((u, v), 0) + 1
    return " ".join(f"{u}-{v}" + (f"x{k}" if k > 1 else "") for (u, v), k in sorted(pairs.items()))


def cmd_analyze(args, out):
    gf = read_graph(args.graph)
    n = load_matroid(args.matroid)
    a = analyze(gf.graph, n)
    rep = a.representation
    conv = "lift (loops removed)" if rep.is_lift and gf.graph.loop_mask else "H itself"
    if rep.is_lift and rep.is_frame and gf.graph.loop_mask:
        conv += "; both frame and lift, lift convention used"
    blocking = framework_blocking_vertices(a)
    pairs = blocking_pairs(a)
    try:
        fixed = sorted(fixed_vertices(a))
    except AnalysisError as exc:
        fixed = None
        why = str(exc)
    sets = minimal_balancing_sets_mixed(a, args.max_size)
    out.text(f"representation: frame={rep.is_frame} lift={rep.is_lift}")
    out.text(f"H': {conv}")
    out.text(f"blocking vertices: {sorted(blocking)}")
    out.text(f"blocking pairs: {pairs}")
    out.text(f"fixed vertices: {fixed if fixed is not None else 'n/a (' + why + ')'}")
    out.text(f"minimal balancing sets (size <= {args.max_size}):")
    for s in sets:
        out.text(f"  vertices={sorted(s.vertices)} edges={sorted(s.edges)}")
    out.record("analyze", frame=rep.is_frame, lift=rep.is_lift, h_prime="lift" if "lift" in conv else "h",
               blocking=sorted(blocking), pairs=[f"{u}-{v}" for u, v in pairs],
               fixed=fixed if fixed is not None else "n/a")
    for s in sets:
        out.record("balancing", vertices=sorted(s.vertices), edges=sorted(s.edges))
    if args.checks:
        results = run_checks(a)
        results["balancing-union"] = check_balancing_union(a, seed=args.seed)
        bad = 0
        for name, viol in results.items():
            out.text(f"check {name}: {'ok' if not viol else f'{len(viol)} violations'}")
            out.record("check", name=name, violations=len(viol))
            bad += len(viol)
        return EXIT_TRUE if not bad else EXIT_FALSE
    return EXIT_TRUE


def cmd_construct(args, out):
    c = read_construct(args.construction_file)
    h_text = format_graph(c.graph, signature=c.signature, name="H") if c.signature is not None else \
        format_graph(c.graph, balanced=c.biased.balanced, name="H")
    g_text = format_graph(c.base, name="G")
    if args.out:
        with open(args.out + ".graph", "w") as fh:
            fh.write(h_text)
        with open(args.out + ".base.graph", "w") as fh:
            fh.write(g_text)
        out.text(f"wrote {args.out}.graph and {args.out}.base.graph")
        out.record("construct", graph=args.out + ".graph", base=args.out + ".base.graph")
    else:
        out.raw(h_text.rstrip())
        out.raw(g_text.rstrip())
    return EXIT_TRUE


def cmd_minor(args, out):
    m = load_matroid(args.matroid)
    t = read_matroid(args.minor) if len(args.minor) == 1 and args.minor[0] not in INLINE_KINDS else load_matroid(args.minor)
    found = has_minor(m, t)
    out.text(f"{m.name or 'matroid'} {'has' if found else 'does not have'} a {t.name or 'matroid'} minor")
    out.record("minor", matroid=m.name, minor=t.name, found=found)
    return EXIT_TRUE if found else EXIT_FALSE


# -- reproduce ------------------------------------------------------------------

def _check(out, name, ok, detail=""):
    out.text(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))
    out.record("check", name=name, result="PASS" if ok else "FAIL", detail=detail)
    return ok


def _uniqueness(out, r, n, expected, jobs):
    res = enumerate_frameworks(uniform(r, n), jobs=jobs)
    targets = {name: gr.canonical_form(g) for name, g in expected.items()}
    seen = {}
    for g in res.all_graphs():
        key = gr.canonical_form(g)
        names = [nm for nm, t in targets.items() if t == key]
        seen.setdefault(names[0] if names else "other", []).append(g)
    ok = set(seen) == set(expected)
    detail = ", ".join(f"{k}: {len(v)} labelled" for k, v in sorted(seen.items()))
    detail += f"; {len(res.frameworks)} classes"
    return _check(out, f"frameworks of U{r},{n} are exactly {sorted(expected)}", ok, detail)


def _exclusion(out, r, n):
    m = uniform(r, n)
    d = decide_quasi_graphic(m)
    ok1 = _check(out, f"U{r},{n} is not quasi-graphic", d.quasi_graphic is False, d.justification)
    rep = is_excluded_minor(m)
    ok2 = True
    for desc, dd in rep.minors.items():
        if not dd.quasi_graphic:
            ok2 = False
    kinds = sorted({f"{k.split()[0]}={'QG' if v.quasi_graphic else 'not QG'}" for k, v in rep.minors.items()})
    ok3 = _check(out, f"every single-element minor of U{r},{n} is quasi-graphic", ok2, " ".join(kinds))
    ok4 = _check(out, f"U{r},{n} is an excluded minor", rep.excluded)
    return ok1 and ok3 and ok4


def reproduce(target, out, jobs=1):
    t0 = time.perf_counter()
    if target == "thm-3.1":
        ok = _uniqueness(out, 3, 6, {"2K3": gr.k_multiply(gr.cycle_graph(3), 2)}, jobs)
        d = decide_quasi_graphic(uniform(2, 6))
        six = gr.canonical_form(gr.k_multiply(gr.path_graph(2), 6))
        has6 = any(gr.canonical_form(g) == six for g in enumerate_frameworks(uniform(2, 6)).all_graphs())
        ok &= _check(out, "6K2 is a framework for U2,6", has6 and bool(d.quasi_graphic))
        ok &= _exclusion(out, 3, 7)
    elif target == "thm-3.2":
        ok = _uniqueness(out, 4, 6, {"K4": gr.complete_graph(4), "K": gr.graph_k()}, jobs)
        ok &= _exclusion(out, 4, 7)
    elif target == "thm-3.3-small":
        ok = True
        for r, n in ((3, 7), (4, 7)):
            m = uniform(r, n)
            small = [c for c in m.circuit_sets() if len(c) <= r]
            ok &= _check(out, f"U{r},{n} has no circuit of size <= r", not small)
            seps = [j for j in range(1, n // 2 + 1) if m.find_separation(j) is not None]
            ok &= _check(out, f"U{r},{n} has no separation of any order", not seps,
                         "k-connected for every k, in particular 9-connected")
            ok &= _check(out, f"U{r},{n} is an excluded minor", is_excluded_minor(m).excluded)
        for k in range(3, 7):
            ok &= _check(out, f"U2,{k} is quasi-graphic (kK2)", bool(decide_quasi_graphic(uniform(2, k)).quasi_graphic))
        for n in (5, 6):
            ok &= _check(out, f"U3,{n} is quasi-graphic", bool(decide_quasi_graphic(uniform(3, n)).quasi_graphic))
        for n in (8, 9):
            ok &= _check(out, f"U4,{n} has a U4,7 minor", has_minor(uniform(4, n), uniform(4, 7)))
    elif target == "wheel-count":
        res = enumerate_frameworks(cycle_matroid(gr.wheel_graph(4)), jobs=jobs)
        count = len(res.frameworks)
        ok = _check(out, "M(W4) has at least 2^4 = 16 inequivalent frameworks", count >= 16, f"{count} classes")
    else:
        raise ValueError(f"unknown target {target}")
    out.text(f"{target}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - t0:.1f}s)")
    out.record("reproduce", target=target, result="PASS" if ok else "FAIL")
    return ok


def cmd_reproduce(args, out):
    return EXIT_TRUE if reproduce(args.target, out, args.jobs) else EXIT_FALSE


# -- entry ----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "records"], default="text")
    common.add_argument("--jobs", type=_positive, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")
    common.add_argument("--max-vertices", type=_positive, default=None)
    common.add_argument("--max-elements", type=_positive, default=MAX_ELEMENTS)
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="quasigraphic", description="Frameworks and quasi-graphic matroids.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", parents=[common], help="check a graph against QG1-QG4")
    s.add_argument("graph")
    s.add_argument("matroid", nargs="+")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("decide", parents=[common], help="is the matroid quasi-graphic?")
    s.add_argument("matroid", nargs="+")
    s.add_argument("--witness", help="write the witness framework to this file")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("enumerate", parents=[common], help="all frameworks up to equivalence")
    s.add_argument("matroid", nargs="+")
    s.add_argument("--connected-only", action="store_true")
    s.add_argument("--no-shortcut", action="store_true", help="skip the 3-connected vertex-count shortcut")
    s.add_argument("--members", action="store_true", help="one record per framework, not per class")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("analyze", parents=[common], help="blocking vertices, pairs, fixed vertices")
    s.add_argument("graph")
    s.add_argument("matroid", nargs="+")
    s.add_argument("--max-size", type=int, default=2, help="largest balancing set to list")
    s.add_argument("--checks", action="store_true", help="also run the structural property checks")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("construct", parents=[common], help="build a construction from a construction file")
    s.add_argument("construction_file", metavar="construction-file")
    s.add_argument("--out", help="output prefix; writes PREFIX.graph and PREFIX.base.graph")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("minor", parents=[common], help="does MATROID have a MINOR minor?")
    s.add_argument("matroid", nargs="+")
    s.add_argument("--minor", nargs="+", required=True)
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("reproduce", parents=[common], help="re-derive a known result")
    s.add_argument("target", choices=["thm-3.1", "thm-3.2", "thm-3.3-small", "wheel-count"])
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = _default_jobs()
    out = Out(args.format)
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"cannot open input: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except UnsupportedSize as exc:
        print(f"unsupported size: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
