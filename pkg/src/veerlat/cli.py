"""Command-line interface: bundles, section queries, pockets and verification."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, bundle
from .errors import EmptyProjection, HypothesisUnmet, ModelUnsupported, NoT0InBand, NotCompatible, VeerlatError
from .metrics import CONSTANTS
from .pockets import (
    PocketContext,
    SubsurfaceSpec,
    compatibility_guard,
    d_lambda,
    dY,
    isolated_pocket,
    lambda_projection,
    overlap_index,
)
from .report import CONVENTIONS, CheckReport
from .sections import base_section, bottom_of, top_of
from .suites import SUITES, run_suites
from .veering import MonodromySpec, TauEdgeRef, VeeringComplex

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 64

EXIT_CODES = {
    0: "success",
    1: "an unconditional check failed, or another error (validation, window, ...)",
    2: "monodromy is not pseudo-Anosov",
    3: "no veering coloring exists",
    4: "malformed or inconsistent flip script / bundle",
    5: "bundle hash mismatch or cached tables differ from rebuild",
    6: "annulus core is not a pivot slope",
    64: "command-line usage error",
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is taken by NotPseudoAnosov
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def _orbit_table(cx):
    rows = [f"|F| = {cx.tetrahedra_per_period()}  period = {cx.period}  chi = {cx.chi}"]
    rows.append(f"{'orbit':>5}  {'birth':>5}  {'death':>5}  {'color':<5}  slope")
    for row in cx.to_tables()["orbits"]:
        rows.append(
            f"{row['orbit']:>5}  {row['birth']:>5}  {row['death']:>5}  {row['color']:<5}  {row.get('slope', '-')}"
        )
    return "\n".join(rows)


# -- bundle ---------------------------------------------------------------------------


def cmd_bundle_build(args):
    if args.lr:
        spec = MonodromySpec.from_word(args.lr)
    elif args.matrix:
        spec = MonodromySpec.from_matrix(*args.matrix)
    else:
        spec = bundle.script_from_json(json.loads(Path(args.script).read_text()))
    cx = VeeringComplex(spec)
    cx.validate_veering()
    path = bundle.save(cx, args.output)
    print(_orbit_table(cx))
    print(f"monodromy: {spec.describe()}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_bundle_info(args):
    cx = bundle.load(args.bundle)
    print(_orbit_table(cx))
    print(f"monodromy: {cx.spec.describe()}")
    return EXIT_OK


# -- sections ---------------------------------------------------------------------------


def _section_row(cx, T):
    row = {"section": repr(T), "edges": [str(e) for e in T.edges()]}
    if cx.has_torus_model:
        row["slopes"] = [str(cx.slope(e)) for e in T.edges()]
    return row


def cmd_sections(args):
    cx = bundle.load(args.bundle)
    if args.action == "sweep":
        lo = args.start
        hi = args.stop if args.stop is not None else lo + cx.period
        rows = [dict(_section_row(cx, base_section(cx, k)), layer=k) for k in range(lo, hi + 1)]
        _emit(rows, args.out)
        return EXIT_OK
    if not args.edges:
        raise VeerlatError("--edges is required for top and bottom")
    E = [TauEdgeRef.parse(x) for x in args.edges]
    T = top_of(cx, E) if args.action == "top" else bottom_of(cx, E)
    _emit(_section_row(cx, T), args.out)
    return EXIT_OK


# -- pocket ---------------------------------------------------------------------------------


def _subsurface(args, cx):
    if args.slope:
        return SubsurfaceSpec.annulus(args.slope)
    data = json.loads(Path(args.boundary).read_text())
    edges = data["edges"] if isinstance(data, dict) else data
    chi = data.get("chi") if isinstance(data, dict) else None
    return SubsurfaceSpec.explicit([TauEdgeRef.parse(x) for x in edges], chi=chi)


def _try(fn):
    try:
        return fn()
    except (EmptyProjection, ModelUnsupported) as exc:
        return {"status": "bound-only", "reason": f"{type(exc).__name__}: {exc}"}


def pocket_report(cx, Y, research=False):
    ctx = PocketContext(cx, Y)
    pocket = ctx.maximal()
    D = CONSTANTS.D
    out = {
        "subsurface": Y.label(),
        "conventions": CONVENTIONS,
        "slack": "+-2 (annular convention)" if Y.is_annulus else "exact Farey distance or bound-only",
        "boundary_edges": [str(e) for e in sorted(ctx.E)],
        "maximal": {
            "kind": pocket.kind,
            "bottom": repr(pocket.bottom),
            "top": repr(pocket.top),
            "tetrahedra": pocket.count,
            "region": sorted(pocket.region),
            "d_bottom_top": _try(lambda: dY(cx, Y, ctx.bottom, ctx.top)),
        },
    }
    if Y.is_annulus:
        status, measured = compatibility_guard(cx, Y)
        lam_minus, lam_plus = lambda_projection(cx, Y)
        out["guard"] = {"status": status, "d_lambda": measured}
        out["lambda_minus_arcs"] = sorted(lam_minus)
        out["lambda_plus_arcs"] = sorted(lam_plus)
        out["overlap_index"] = overlap_index(cx, Y)
        gate = CONSTANTS.hypothesisGate
        iso = {"gate": gate, "gate_passed": d_lambda(cx, Y) >= gate, "research_mode": research}
        try:
            V = isolated_pocket(cx, Y, research=research)
        except (HypothesisUnmet, NoT0InBand) as exc:
            iso["status"] = "not-built"
            iso["reason"] = f"{type(exc).__name__}: {exc}"
        else:
            info = V.info
            iso.update(
                status="built",
                kind=V.kind,
                bottom=repr(V.bottom),
                top=repr(V.top),
                tetrahedra=V.count,
                region=sorted(V.region),
                band_certificates={
                    "d(T0^Y, lambda+)": info["cert_T0Y_lambda_plus"],
                    "bound_plus": 9 * D,
                    "d(Phi^N(T0)^Y, lambda-)": info["cert_TNY_lambda_minus"],
                    "bound_minus": 7 * D,
                },
                N=info["N"],
                T0_layer=info["T0_layer"],
                d_T0_lambda_plus=info["d_T0_lambda_plus"],
                embedding_horizon=info["embedding_horizon"],
                embedding_hits=info["embedding_hits"],
            )
        out["isolated"] = iso
    return out


def cmd_pocket(args):
    cx = bundle.load(args.bundle)
    Y = _subsurface(args, cx)
    try:
        report = pocket_report(cx, Y, research=args.research)
    except NotCompatible as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("pivot slopes (level 0): " + " ".join(exc.pivots), file=sys.stderr)
        return exc.exit_code
    if args.out:
        out_dir = Path(args.out)
        _emit(report, out_dir / "pocket.json")
        region = {"maximal": report["maximal"]["region"], "isolated": report.get("isolated", {}).get("region")}
        _emit(region, out_dir / "region.json")
        print(f"wrote {out_dir / 'pocket.json'} and {out_dir / 'region.json'}")
    else:
        _emit(report)
    return EXIT_OK


# -- verify -----------------------------------------------------------------------------------


def cmd_verify(args):
    start = time.perf_counter()
    cx = bundle.load(args.bundle)
    records = run_suites(cx, args.suite, seed=args.seed, research=args.research)
    report = CheckReport(records, seed=args.seed, subject=cx.spec.describe(),
                         wall_clock_s=time.perf_counter() - start)
    text = report.to_json(timestamps=not args.deterministic)
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)
    summary = report.to_dict()["summary"]
    print(f"{summary['total']} checks, {summary['failed']} failed: {summary['by_status']}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


# -- parser ---------------------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="veerlat", description="Veering sections, pockets and projection checks.",
                epilog="exit codes: " + "; ".join(f"{k} {v}" for k, v in EXIT_CODES.items()))
    p.add_argument("--version", action="version", version=f"veerlat {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bundle", help="build or inspect bundle files")
    bsub = b.add_subparsers(dest="action", required=True, parser_class=_Parser)
    build = bsub.add_parser("build", help="build, validate and save a bundle")
    src = build.add_mutually_exclusive_group(required=True)
    src.add_argument("--lr", help="LR word, e.g. RRL or R^6L")
    src.add_argument("--matrix", nargs=4, type=int, metavar=("A", "B", "C", "D"))
    src.add_argument("--script", help="flip script JSON file")
    build.add_argument("-o", "--output", default="bundle.json")
    build.set_defaults(func=cmd_bundle_build)
    info = bsub.add_parser("info", help="print the orbit table of a bundle")
    info.add_argument("bundle")
    info.set_defaults(func=cmd_bundle_info)

    s = sub.add_parser("sections", help="sweep layers and constrained extrema")
    s.add_argument("action", choices=("sweep", "top", "bottom"))
    s.add_argument("bundle")
    s.add_argument("--edges", nargs="*", help="edge refs orbit@level")
    s.add_argument("--from", dest="start", type=int, default=0)
    s.add_argument("--to", dest="stop", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sections)

    pk = sub.add_parser("pocket", help="maximal and isolated pockets for a subsurface")
    pk.add_argument("bundle")
    which = pk.add_mutually_exclusive_group(required=True)
    which.add_argument("--slope", help="annulus core p/q")
    which.add_argument("--boundary", help="JSON file with boundary edge refs")
    pk.add_argument("--research", action="store_true", help="build isolated pockets below the distance gate")
    pk.add_argument("--out", help="output directory for pocket.json and region.json")
    pk.set_defaults(func=cmd_pocket)

    v = sub.add_parser("verify", help="run property suites and write a report")
    v.add_argument("bundle")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.add_argument("--deterministic", action="store_true", help="omit wall-clock fields")
    v.add_argument("--research", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VeerlatError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
