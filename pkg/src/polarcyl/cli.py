"""Command-line front end.

Exit codes: 0 when every check passes, 2 when checks ran and some failed,
1 on usage or internal errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from . import classify as cl
from . import graded, intersect, lattice, pencil
from .fields import parse_field
from .intersect import Check, SurfaceFamily
from .report import Report


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in s.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {s!r}") from None


def _family(weights: str, degrees: str) -> SurfaceFamily:
    try:
        return SurfaceFamily(_ints(weights), _ints(degrees))
    except ValueError as e:
        raise UsageError(str(e)) from None


def _emit(report: Report, args, pretty_body: str = "", csv_body: Optional[str] = None) -> int:
    if args.format == "json":
        print(report.to_json(meta=not args.no_meta))
    elif args.format == "csv":
        print(csv_body if csv_body is not None else report.checks_csv(), end="")
    else:
        if pretty_body:
            print(pretty_body)
        print(report.pretty_checks())
    return report.exit_code


# -- classify --------------------------------------------------------------------


def cmd_classify(args) -> int:
    if args.bound < 1:
        raise UsageError("--bound must be at least 1")
    ref = cl.load_reference(args.reference)
    codims = [args.codim] if args.codim else [1, 2]
    rep = Report("classify", {"bound": args.bound, "codim": args.codim})
    pretty, csvs = [], []
    for codim in codims:
        t0 = time.perf_counter()
        res = cl.classify(args.bound, codim, ref)
        elapsed = time.perf_counter() - t0
        want = len(ref.table(codim))
        rep.add(Check(f"table {codim} row count", f"table{codim}", want, len(res.rows)))
        rep.add(Check(f"table {codim} diff empty", f"table{codim}", True, res.diff.empty))
        rep.data[f"table{codim}"] = {
            "rows": [r.to_dict() for r in res.rows],
            "diff": res.diff.to_dict(),
        }
        if not args.no_meta:
            rep.data[f"table{codim}"]["seconds"] = round(elapsed, 3)
        csvs.append(cl.to_csv(res.rows))
        lines = [f"Table {codim} (weights <= {args.bound}): {len(res.rows)} rows"]
        for r in res.rows:
            lct = r.lct.text() if r.lct else "-"
            lines.append(f"  {r.table_id or '?':8s} {r.text():48s} lct {lct}")
        for k, items in res.diff.to_dict().items():
            for it in items:
                lines.append(f"  diff {k}: {it}")
        pretty.append("\n".join(lines))
    return _emit(rep, args, "\n\n".join(pretty), "".join(csvs))


# -- check -----------------------------------------------------------------------


def cmd_check(args) -> int:
    f = _family(args.weights, args.degrees)
    w, d = f.weights, f.degrees
    rep = Report("check", {"weights": list(w), "degrees": list(d)})
    qs = graded.quasi_smooth_general(w, d)
    wf = graded.surface_well_formed(w, d)
    rep.add(Check("index = 1", "def:index", 1, f.index))
    rep.add(Check("ambient well-formed", "def:wf", True, graded.ambient_well_formed(w)))
    rep.add(Check("surface well-formed", "def:wf", True, wf))
    rep.add(Check("quasi-smooth", "def:qs", True, qs))
    rep.add(Check("not a linear cone", "def:cone", False, graded.is_linear_cone(w, d)))
    if args.jacobian:
        from .jacobian import quasi_smooth_randomized

        rep.add(Check("quasi-smooth (randomized Jacobian)", "def:qs", qs, quasi_smooth_randomized(w, d, seeds=args.seeds)))
    data = {"family": f.label(), "index": f.index}
    if f.index >= 1:
        data["anticanonical_square"] = str(intersect.anticanonical_square(f))
    typed = qs and wf
    if typed:
        sing = intersect.coordinate_singularities(f)
        data["singular_points"] = [p.to_dict() for p in sing]
    try:
        rep.extend(intersect.verify_inline_identities(f))
    except ValueError:
        pass
    rep.data = data
    body = [f"{f.label()}  index {f.index}"]
    if "anticanonical_square" in data:
        body.append(f"(-K)^2 = {data['anticanonical_square']}")
    if typed:
        pts = ", ".join(f"{p.name}: {p.type_string()}" for p in sing) or "none"
        body.append(f"singular points: {pts}")
    return _emit(rep, args, "\n".join(body))


# -- verdict ---------------------------------------------------------------------


def cmd_verdict(args) -> int:
    ref = cl.load_reference(args.reference)
    if args.all or args.table:
        fams = ref.instances(args.n_max)
        if args.table:
            fams = [f for f in fams if ref.by_id(f.table_id).table == args.table]
    elif args.family:
        row = ref.by_id(args.family)
        if row.parametric and args.n is None:
            raise UsageError(f"{args.family} is parametric; give --n")
        fams = [row.instance(args.n) if row.parametric else row.family]
    elif args.weights and args.degrees:
        fams = [_family(args.weights, args.degrees)]
    else:
        raise UsageError("give weights and degrees, --family, --table or --all")
    rep = Report("verdict", {k: getattr(args, k) for k in ("weights", "degrees", "family", "n", "table", "all", "n_max")})
    rows, lines = [], []
    for f in fams:
        try:
            v = cl.cylinder_verdict(f, ref)
        except cl.UnknownRowError as e:
            raise UsageError(str(e.args[0])) from None
        r, n = ref.identify(f)
        lct = r.lct_at(n)
        rows.append({"id": r.id, "n": n, "family": f.label(), "min_lct": str(lct.minimum), **v.to_dict()})
        tag = f"{r.id}[n={n}]" if n is not None else r.id
        lines.append(f"  {tag:12s} {f.label():40s} {'CYLINDER' if v.has_cylinder else 'none':9s} {v.justification}  ({v.citation})")
        if v.justification == "LCT_GE_1":
            rep.add(Check(f"{tag} stored min lct >= 1", "thm:alpha1", True, lct.minimum >= 1))
    if len(fams) > 1:
        positives = [x["family"] for x in rows if x["has_cylinder"]]
        rep.add(Check("instances with a cylinder", "main-theorem", ["(1,1,1,1,1; 2,2)"] if args.all else positives, positives))
    rep.data = {"verdicts": rows, "instances": len(rows)}
    return _emit(rep, args, "\n".join([f"{len(rows)} instance(s)"] + lines))


# -- chain / pencil ----------------------------------------------------------------


def cmd_chain(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    chain = lattice.run_chain_S2n(args.n)
    rep = Report("chain", {"n": args.n}, chain.checks, {"steps": [s.to_dict() for s in chain.steps], "notes": chain.notes})
    lines = [f"S_{{{2*args.n},{2*args.n}}} chain"]
    for s in chain.steps:
        tracked = ", ".join(f"{k} = {v}" for k, v in s.tracked.items())
        lines.append(f"  {s.label:22s} K^2 = {str(s.K2):10s} rank {s.rank:3d}  {tracked}")
    lines += [f"  note: {n}" for n in chain.notes]
    return _emit(rep, args, "\n".join(lines))


def cmd_pencil(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    try:
        F = parse_field(args.field) if args.field else pencil.default_field()
    except ValueError as e:
        raise UsageError(str(e)) from None
    pr = pencil.verify_LR(args.n, args.seed, F, normalized=args.normalized)
    if args.emit_poly:
        if pr.discriminant is None:
            raise RuntimeError("no discriminant computed")
        print("\n".join(pr.discriminant.term_lines()))
        return 0 if pr.passed else 2
    rep = Report("pencil", {"n": args.n, "field": str(F), "normalized": args.normalized}, pr.checks, pr.to_dict(), seed=args.seed)
    rep.data.pop("checks", None)
    d = rep.data
    body = (
        f"n={args.n} seed={args.seed} field={d['field']} mode={d['mode']}\n"
        f"  discriminant degree {d['discriminant_degree']}, root in {d['root_field']}"
    )
    return _emit(rep, args, body)


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polarcyl", description="Exact checks for index-one log del Pezzo surfaces.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--no-meta", action="store_true", help="omit timestamps and timings")
    common.add_argument("--reference", help="reference-table JSON (default: shipped data)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="enumerate and compare with the reference tables")
    s.add_argument("--bound", type=int, default=cl.DEFAULT_BOUND)
    s.add_argument("--codim", type=int, choices=(1, 2))
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("check", parents=[common], help="predicates and singularities of one family")
    s.add_argument("weights")
    s.add_argument("degrees")
    s.add_argument("--jacobian", action="store_true", help="also run the randomized Groebner check")
    s.add_argument("--seeds", type=int, default=8)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("verdict", parents=[common], help="cylinder verdicts")
    s.add_argument("weights", nargs="?")
    s.add_argument("degrees", nargs="?")
    s.add_argument("--family")
    s.add_argument("--n", type=int)
    s.add_argument("--table", type=int, choices=(1, 2))
    s.add_argument("--all", action="store_true")
    s.add_argument("--n-max", type=int, default=10)
    s.set_defaults(func=cmd_verdict)

    s = sub.add_parser("chain", parents=[common], help="replay the S_{2n,2n} birational chain")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_chain)

    s = sub.add_parser("pencil", parents=[common], help="reducible members of the S_{2n,2n} pencil")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--field", help=f"q or p:<prime> (default p:{pencil.DEFAULT_PRIME}, or ${pencil.PRIME_ENV})")
    s.add_argument("--normalized", action="store_true", help="use the normalized coordinate form")
    s.add_argument("--emit-poly", action="store_true", help="print the discriminant as 'coef exp' lines")
    s.set_defaults(func=cmd_pencil)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # noqa: BLE001
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
