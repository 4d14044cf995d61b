"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 internal inconsistency.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import graph as gr
from . import io
from .errors import CheckFailed, GraphFramesError, InputError
from .frame import canonical_dual, verify_dual
from .graph_frame import (
    DualSpec,
    dual_from_shifts,
    dual_is_in_family,
    is_g_frame,
    is_lg_frame,
    laplacian_bound_check,
    lg_frame,
    tightness_report,
    unitary_equivalence_map,
)
from .linalg import DEFAULT_TOLERANCE
from .survey import survey


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _graph(path: str) -> gr.Graph:
    return io.parse_edge_list(_read(path))


def cmd_gen_graph(args) -> int:
    kind, n = args.kind, args.n
    comments = [f"kind={kind} n={n}"]
    if kind == "complete":
        g = gr.complete(n)
    elif kind == "cycle":
        g = gr.cycle(n)
    elif kind == "path":
        g = gr.path(n)
    elif kind == "star":
        g = gr.star(n)
    else:
        g = gr.random_graph(n, args.p, args.seed)
        comments = [f"kind=random n={n} p={args.p!r} seed={args.seed} algorithm={gr.RANDOM_ALGORITHM}"]
    if args.union:
        g = gr.disjoint_union(g, _graph(args.union))
        comments.append(f"disjoint union with {Path(args.union).name}")
    sys.stdout.write(io.write_edge_list(g, comments))
    return 0


def cmd_frame(args) -> int:
    tol = DEFAULT_TOLERANCE
    g = _graph(args.input)
    result = lg_frame(g, tol)
    csv = io.frame_to_csv(result.frame)
    if args.out:
        _write(args.out, csv)
    if args.json:
        report = io.frame_report(g, result, tightness_report(g, tol, result=result), tol)
        sys.stdout.write(io.report_to_json(report))
    elif not args.out:
        sys.stdout.write(csv)
    return 0


def cmd_analyze(args) -> int:
    tol = DEFAULT_TOLERANCE
    g = _graph(args.input)
    rep = tightness_report(g, tol)
    bounds = laplacian_bound_check(g, tol, spectrum=np.array(rep.laplacian_spectrum))
    if args.json:
        out = {
            **io.report_header(tol),
            "graph": io.graph_summary(g),
            **rep.as_dict(),
            "laplacian_bounds": io.bound_check_dict(bounds),
        }
        sys.stdout.write(io.report_to_json(out))
    else:
        print(f"n={g.n} edges={g.m} components={len(rep.components_regular)}")
        print(f"tight: {rep.is_tight}" + (f" (alpha = {rep.alpha:.12g})" if rep.is_tight else ""))
        print(f"frame bounds: A = {rep.frame_bounds[0]:.12g}, B = {rep.frame_bounds[1]:.12g}")
        print(f"regular: {rep.graph_regular}" + (f" (r = {rep.regular_degree})" if rep.graph_regular else ""))
        print(f"null vertex: {rep.has_null_vertex}  complete: {rep.is_complete}")
        clusters = ", ".join(f"{v:.12g}^{m}" for v, m in rep.adjacency_distinct)
        print(f"distinct adjacency eigenvalues: {clusters}")
        print(f"mu_1 >= Delta + 1: {bounds.max_holds} ({bounds.mu_max:.12g} vs {bounds.max_degree_plus_one})")
        if bounds.connectivity_holds is not None:
            print(
                f"mu_(n-1) <= n delta/(n-1): {bounds.connectivity_holds} "
                f"({bounds.algebraic_connectivity:.12g} vs {bounds.connectivity_bound:.12g})"
            )
    return 0


def cmd_dual(args) -> int:
    tol = DEFAULT_TOLERANCE
    g = _graph(args.input)
    f = io.frame_from_csv(_read(args.frame))
    p = gr.connected_components(g).count
    spec = DualSpec(io.matrix_from_csv(_read(args.shifts))) if args.shifts else DualSpec.zeros(p, f.k)
    sys.stdout.write(io.frame_to_csv(dual_from_shifts(f, g, spec, tol)))
    return 0


def cmd_verify(args) -> int:
    tol = DEFAULT_TOLERANCE
    g = _graph(args.input)
    f = io.frame_from_csv(_read(args.frame))
    g_ok, g_res = is_g_frame(f, g, tol)
    out = {
        **io.report_header(tol),
        "is_g_frame": g_ok,
        "gramian_residual": g_res,
        "is_lg_frame": is_lg_frame(f, g, tol),
    }
    passed = g_ok
    if g_ok:
        dual = io.frame_from_csv(_read(args.dual)) if args.dual else canonical_dual(f, tol)
        d_ok, d_res = verify_dual(f, dual, tol)
        fam_ok, spec = dual_is_in_family(f, g, dual, tol)
        out.update(
            dual_source=args.dual or "canonical",
            verify_dual=d_ok,
            dual_residual=d_res,
            dual_is_in_family=fam_ok,
            shifts=spec.shifts,
        )
        passed = d_ok and fam_ok
    sys.stdout.write(io.report_to_json(out))
    return 0 if passed else CheckFailed.exit_code


def cmd_equiv(args) -> int:
    tol = DEFAULT_TOLERANCE
    g = _graph(args.input)
    fa = io.frame_from_csv(_read(args.frame_a))
    fb = io.frame_from_csv(_read(args.frame_b))
    emap = unitary_equivalence_map(fa, fb, g, tol)
    ok = emap.holds(tol, float(np.max(np.abs(fa.vectors))))
    if args.json:
        out = {
            **io.report_header(tol),
            "U": emap.U,
            "max_orth_residual": emap.max_orth_residual,
            "max_map_residual": emap.max_map_residual,
            "holds": ok,
        }
        sys.stdout.write(io.report_to_json(out))
    else:
        sys.stdout.write(
            io.matrix_to_csv(
                emap.U,
                [
                    f"max_orth_residual={io.format_number(emap.max_orth_residual)}",
                    f"max_map_residual={io.format_number(emap.max_map_residual)}",
                ],
            )
        )
    return 0 if ok else CheckFailed.exit_code


def cmd_survey(args) -> int:
    tol = DEFAULT_TOLERANCE
    rep = survey(args.max_n, tol, workers=args.workers)
    if args.json:
        sys.stdout.write(io.report_to_json({**io.report_header(tol), **rep.as_dict()}))
    else:
        print(f"n={rep.n} graphs={rep.graphs} tight={rep.tight} (no null vertex: {rep.tight_no_null_vertex})")
        print(f"connected tight graphs: {rep.tight_connected}")
        for name, count in rep.violations_by_predicate.items():
            print(f"  {name}: {count} violations")
        print(f"multiplicity formula mismatches: {rep.multiplicity_mismatches} of {rep.multiplicity_checked}")
        print(f"violations: {rep.violations}")
    return 0 if rep.ok else CheckFailed.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graph-frames", description="Frames generated by graph Laplacians.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen-graph", help="write a generated graph as an edge list")
    p.add_argument("--kind", required=True, choices=["complete", "cycle", "path", "star", "random"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--p", type=float, default=0.5, help="edge probability (random)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (random)")
    p.add_argument("--union", metavar="FILE", help="append the graph in FILE as further components")
    p.set_defaults(func=cmd_gen_graph)

    p = sub.add_parser("frame", help="build the Laplacian-eigenbasis frame of a graph")
    p.add_argument("--input", required=True, metavar="EDGES")
    p.add_argument("--out", metavar="CSV")
    p.add_argument("--json", action="store_true", help="print the full report")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("analyze", help="tightness, regularity and eigenvalue bounds")
    p.add_argument("--input", required=True, metavar="EDGES")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dual", help="dual frame from per-component shifts (default: canonical dual)")
    p.add_argument("--input", required=True, metavar="EDGES")
    p.add_argument("--frame", required=True, metavar="CSV")
    p.add_argument("--shifts", metavar="CSV", help="p rows x k columns, rows in component order")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("verify", help="check a frame (and optionally a dual) against a graph")
    p.add_argument("--input", required=True, metavar="EDGES")
    p.add_argument("--frame", required=True, metavar="CSV")
    p.add_argument("--dual", metavar="CSV")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("equiv", help="orthogonal map between two frames of the same graph")
    p.add_argument("--input", required=True, metavar="EDGES")
    p.add_argument("--frame-a", required=True, metavar="CSV")
    p.add_argument("--frame-b", required=True, metavar="CSV")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("survey", help="exhaustive check over all graphs on N vertices")
    p.add_argument("--max-n", required=True, type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphFramesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
