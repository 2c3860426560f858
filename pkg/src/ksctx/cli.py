"""ksctx command line: reproduce the CHSH/Kochen-Specker contextuality numbers.

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from fractions import Fraction

from . import enumeration as en
from . import ks, metrics, polytope, simulate
from .errors import KsctxError
from .fmt import decimal_str, parse_rational, rational_str, rational_with_decimal
from .scenario import builtin_chsh, parse_scenario

SEED_ENV = "KSCTX_SEED"
CLOSED_FORM_LABEL = "√2−1"
FRACTION_GRID = [Fraction(2), Fraction(9, 4), Fraction(5, 2), Fraction(11, 4), Fraction(3),
                 metrics.TSIRELSON_APPROX, Fraction(7, 2), Fraction(4)]


def _lambda_arg(text):
    if text.lower() == "tsirelson":
        return "tsirelson"
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_arg(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed_arg(text):
    try:
        seed = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="FILE",
                        help="scenario description file (default: builtin CHSH)")
    common.add_argument("--format", choices=("csv", "table"), default="csv",
                        help="machine (csv) or aligned human output (table)")

    p = argparse.ArgumentParser(prog="ksctx", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    e = sub.add_parser("enumerate", parents=[common], help="all assignments with joints")
    e.add_argument("--noncontextual-only", action="store_true")

    f = sub.add_parser("facets", parents=[common], help="H-representation of a correlation polytope")
    f.add_argument("--projection", choices=("context", "joints"), default="context",
                   help="per-context (single, single, joint) triples, or all joint coordinates")
    f.add_argument("--noncontextual", action="store_true",
                   help="use only noncontextual assignments as vertices")
    f.add_argument("--vertices", action="store_true", help="also print the V-representation")

    sub.add_parser("bounds", parents=[common], help="classical and algebraic bounds")

    fr = sub.add_parser("fraction", parents=[common], help="minimal contextual fraction for a target")
    fr.add_argument("--lambda", dest="lam", type=_lambda_arg, required=True,
                    metavar="RATIONAL|tsirelson")
    fr.add_argument("--tsirelson-approx", type=_rational_arg, default=metrics.TSIRELSON_APPROX,
                    metavar="RATIONAL", help="rational used for 'tsirelson' (default 707/250)")
    fr.add_argument("--at-least", action="store_true",
                    help="require expected value >= target instead of equality")

    sm = sub.add_parser("simulate", parents=[common], help="seeded assignment stream")
    sm.add_argument("--n", type=int, required=True)
    grp = sm.add_mutually_exclusive_group(required=True)
    grp.add_argument("--k", type=int, help="number of contextual entries")
    grp.add_argument("--lambda", dest="lam", type=_lambda_arg, metavar="RATIONAL|tsirelson")
    sm.add_argument("--tsirelson-approx", type=_rational_arg, default=metrics.TSIRELSON_APPROX,
                    metavar="RATIONAL")
    sm.add_argument("--seed", type=_seed_arg, default=None,
                    help=f"64-bit seed (default: ${SEED_ENV} or 0)")

    k = sub.add_parser("ks", parents=[common], help="two-valued states of a hypergraph")
    src = k.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", metavar="PATH")
    src.add_argument("--fixture", choices=ks.fixture_names())
    k.add_argument("--limit", type=int, default=None, help="stop after this many states")
    k.add_argument("--states", action="store_true", help="list the states found")

    r = sub.add_parser("report", parents=[common], help="reproduce every headline number")
    r.add_argument("--seed", type=_seed_arg, default=None)
    return p


def _scenario(args):
    if args.scenario:
        with open(args.scenario, encoding="utf-8") as fh:
            return parse_scenario(fh.read())
    return builtin_chsh()


def _default_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    return _seed_arg(env) if env else 0


def _table(csv_text: str) -> str:
    rows = list(csv.reader(io.StringIO(csv_text)))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"


def _emit_csv(out, args, text):
    out.write(_table(text) if args.format == "table" else text)


def cmd_enumerate(args, out):
    s = _scenario(args)
    rows = en.enumerate_assignments(s)
    if args.noncontextual_only:
        rows = [a for a in rows if en.is_noncontextual(a)]
    _emit_csv(out, args, en.assignments_csv(s, rows))


def cmd_facets(args, out):
    s = _scenario(args)
    names = en.coordinate_names(s)
    if args.projection == "context":
        projections = [(f"context {c}", polytope.context_projection(s, k))
                       for k, c in enumerate(s.contexts)]
    else:
        projections = [("joints", polytope.joint_projection(s))]
    for title, proj in projections:
        verts = polytope.correlation_vertices(s, proj, noncontextual_only=args.noncontextual)
        facets = polytope.facets_from_vertices(verts)
        out.write(f"# {title}: coordinates {' '.join(names[i] for i in proj)}\n")
        if args.format == "table":
            for f in facets:
                out.write(_human_facet(f, [names[i] for i in proj]) + "\n")
        else:
            out.write(polytope.format_hrep(facets))
        if args.vertices:
            out.write(polytope.format_vrep(verts))


def _human_facet(f, names):
    """Render ``normal.x <= offset`` as ``-offset <= -normal.x``."""
    terms = []
    for c, name in zip(f.normal, names):
        c = -c
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{rational_str(abs(c))}*"
        terms.append(f"{sign} {mag}E({name})")
    body = " ".join(terms)
    body = body[2:] if body.startswith("+ ") else "-" + body[2:]
    return f"{rational_str(-f.offset)} <= {body}"


def cmd_bounds(args, out):
    s = _scenario(args)
    out.write(f"classical={polytope.maximize_functional(s, True)} "
              f"algebraic={polytope.maximize_functional(s, False)}\n")


def _resolve_lambda(args):
    if args.lam == "tsirelson":
        return args.tsirelson_approx, True
    return args.lam, False


def cmd_fraction(args, out):
    s = _scenario(args)
    lam, tsirelson = _resolve_lambda(args)
    report = metrics.min_contextual_fraction(s, lam, at_least=args.at_least)
    text = metrics.format_report(report)
    if tsirelson:
        text = text.replace("fraction=", "lp_fraction=", 1)
        out.write(f"target=tsirelson (2√2) approximated by {rational_str(lam)}\n")
    out.write(text)
    closed = metrics.fraction_closed_form(lam)
    out.write(f"closed_form={rational_with_decimal(closed)}\n")
    if tsirelson:
        out.write(f"fraction={metrics.tsirelson_fraction_decimal()} (closed form {CLOSED_FORM_LABEL})\n")
        out.write("ratio_closed_form=(√2−1):(2−√2)\n")


def cmd_simulate(args, out):
    s = _scenario(args)
    seed = _default_seed(args.seed)
    if args.k is not None:
        spec = simulate.StreamSpec(args.n, args.k, seed)
        stream = simulate.generate_stream(s, spec)
        lam_line = None
    else:
        lam, _ = _resolve_lambda(args)
        stream = simulate.stream_for_lambda(s, lam, args.n, seed)
        lam_line = f"lambda={rational_with_decimal(lam)}"
    _emit_csv(out, args, simulate.stream_csv(s, stream))
    if lam_line:
        out.write(lam_line + "\n")
    value = simulate.empirical_functional(s, stream)
    out.write(f"n={stream.spec.n_total}\n")
    out.write(f"k={stream.spec.n_contextual}\n")
    out.write(f"seed={seed}\n")
    out.write(f"empirical_exact={rational_str(value)}\n")
    out.write(f"empirical={decimal_str(value)}\n")


def cmd_ks(args, out):
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            hg = ks.parse_hypergraph(fh.read())
        name = args.file
    else:
        hg = ks.load_fixture(args.fixture)
        name = args.fixture
    out.write(_ks_summary(name, hg, args.limit, args.states))


def _ks_summary(name, hg, limit=None, list_states=False):
    res = ks.enumerate_two_valued_states(hg, limit)
    lines = [f"hypergraph={name}", f"atoms={len(hg.atoms)}", f"contexts={len(hg.contexts)}",
             f"two_valued_states={len(res.states)}", f"exhaustive={str(res.exhaustive).lower()}"]
    if res.exhaustive:
        emb = ks.embeddability_checks(hg, res)
        lines += [f"unital={str(emb.unital).lower()}", f"separating={str(emb.separating).lower()}"]
        stmt = metrics.ks_fraction_statement(len(res.states))
        value = rational_str(stmt.fraction) + (" (undetermined)" if stmt.undetermined else "")
        lines.append(f"contextual_per_quantum={value}")
    if list_states:
        lines += ["state=" + " ".join(st.true_atoms(hg)) for st in res.states]
    return "\n".join(lines) + "\n"


def cmd_report(args, out):
    s = builtin_chsh()
    seed = _default_seed(args.seed)
    w = out.write
    assignments = en.enumerate_assignments(s)
    nonctx = [a for a in assignments if en.is_noncontextual(a)]
    w("# ksctx reproduction report (builtin CHSH scenario)\n")
    w(f"contextual_variables={' '.join(v.name for v in s.variables)}\n")
    w(f"assignments={len(assignments)}\n")
    w(f"noncontextual={len(nonctx)}\n")
    w(f"classical={polytope.maximize_functional(s, True)} "
      f"algebraic={polytope.maximize_functional(s, False)}\n")
    w(f"functional_values_all={','.join(map(str, sorted({en.functional_value(s, a) for a in assignments})))}\n")
    w(f"functional_values_noncontextual={','.join(map(str, sorted({en.functional_value(s, a) for a in nonctx})))}\n")

    rows = simulate.table_one_rows(s)
    for i, a in enumerate(rows, start=1):
        w(f"table1_row{i}={a} functional={en.functional_value(s, a)} "
          f"contextuality={en.contextuality_count(a)}\n")
    uniform = metrics.Mixture.uniform(rows)
    w(f"average_contextual_per_quantum_table1_uniform="
      f"{rational_str(metrics.average_contextual_per_quantum(uniform))}\n")

    names = en.coordinate_names(s)
    for k, c in enumerate(s.contexts):
        proj = polytope.context_projection(s, k)
        facets = polytope.facets_from_vertices(polytope.correlation_vertices(s, proj))
        for f in facets:
            w(f"facet context={c} {_human_facet(f, [names[i] for i in proj])}\n")
    proj = polytope.context_projection(s, 0)
    facets = polytope.facets_from_vertices(polytope.correlation_vertices(s, proj))
    reduced = polytope.restrict(facets, {0: 0, 1: 0})
    lo, hi = polytope.interval(reduced)
    w(f"facet_reduction E({names[proj[0]]})=E({names[proj[1]]})=0 gives "
      f"{rational_str(lo)} <= E({names[proj[2]]}) <= {rational_str(hi)}\n")

    verts = polytope.correlation_vertices(s, proj)
    single_ok = (polytope.vertices_from_facets(polytope.facets_from_vertices(verts)) == verts
                 and polytope.facets_from_vertices(polytope.vertices_from_facets(facets)) == facets)
    cube = polytope.canonical_vertices(
        [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])
    cube_f = polytope.facets_from_vertices(cube)
    cube_ok = (polytope.vertices_from_facets(cube_f) == cube
               and polytope.facets_from_vertices(polytope.vertices_from_facets(cube_f)) == cube_f)
    w(f"roundtrip_single_context={'ok' if single_ok else 'FAIL'}\n")
    w(f"roundtrip_cube={'ok' if cube_ok else 'FAIL'}\n")
    joint_facets = polytope.facets_from_vertices(
        polytope.correlation_vertices(s, polytope.joint_projection(s), noncontextual_only=True))
    w(f"noncontextual_joint_polytope_facets={len(joint_facets)}\n")

    for lam in FRACTION_GRID:
        rep = metrics.min_contextual_fraction(s, lam)
        w(f"fraction lambda={rational_str(lam)} lp={rational_with_decimal(rep.min_contextual_fraction)} "
          f"closed_form={rational_str(metrics.fraction_closed_form(lam))} "
          f"ratio={':'.join(map(str, rep.ratio_ints()))}\n")
    w(f"tsirelson fraction={metrics.tsirelson_fraction_decimal()} (closed form {CLOSED_FORM_LABEL}) "
      f"ratio=(√2−1):(2−√2)\n")

    stream = simulate.generate_stream(s, simulate.StreamSpec(40, 19, seed))
    value = simulate.empirical_functional(s, stream)
    w(f"table3 n=40 k=19 seed={seed} empirical={rational_with_decimal(value)}\n")
    st = simulate.stream_for_lambda(s, metrics.TSIRELSON_APPROX, 40, seed)
    w(f"stream_for_lambda lambda={rational_str(metrics.TSIRELSON_APPROX)} n=40 "
      f"k={st.spec.n_contextual} achieved={rational_with_decimal(simulate.empirical_functional(s, st))}\n")

    for name in ks.fixture_names():
        hg = ks.load_fixture(name)
        w(_ks_summary(name, hg).replace("\n", " ").strip() + "\n")


COMMANDS = {
    "enumerate": cmd_enumerate, "facets": cmd_facets, "bounds": cmd_bounds,
    "fraction": cmd_fraction, "simulate": cmd_simulate, "ks": cmd_ks, "report": cmd_report,
}


def run(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args, out)
    except (KsctxError, OSError) as exc:
        err.write(f"ksctx {args.command}: error: {exc}\n")
        return 1
    return 0


def main():
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8", newline="\n")
    sys.exit(run())


if __name__ == "__main__":
    main()
