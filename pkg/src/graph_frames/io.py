"""Text formats: edge lists, CSV frames/matrices and JSON reports.

Edge list::

    # graph-frames v1        (comments start with '#', blank lines ignored)
    4                        (vertex count)
    0 1                      (one 0-indexed edge per line)
    1 2

CSV files hold one row per frame vector (or matrix row), numbers written with
17 significant digits so every double survives a round trip.
"""
from __future__ import annotations

import json
import math

import numpy as np

from . import __version__
from .errors import InputError
from .frame import (
    Frame,
    canonical_dual,
    frame_bounds,
    frame_operator,
    gramian,
    is_parseval,
    is_tight,
    is_uniform,
    is_unit_norm,
    verify_dual,
)
from .graph import RANDOM_ALGORITHM, Graph, connected_components, degree_info, laplacian_matrix
from .graph_frame import BoundCheck, LgFrameResult, TightnessReport, canonical_dual_lg
from .linalg import TolerancePolicy, max_abs_diff

HEADER = "# graph-frames v1"
FORMAT_VERSION = 1


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edge_list(text: str) -> Graph:
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tokens = line.split()
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise InputError(f"line {lineno}: expected integers, got {raw.strip()!r}") from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise InputError(f"line {lineno}: expected a positive vertex count, got {raw.strip()!r}")
            n = values[0]
            continue
        if len(values) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
        u, v = values
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        for x in (u, v):
            if not 0 <= x < n:
                raise InputError(f"line {lineno}: vertex {x} out of range for n = {n}")
        pairs.append((u, v))
    if n is None:
        raise InputError("edge list is empty: missing vertex count")
    return Graph(n, tuple(pairs))


def write_edge_list(g: Graph, comments: list[str] | tuple[str, ...] = ()) -> str:
    lines = [HEADER, *(f"# {c}" for c in comments), str(g.n)]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def format_number(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise InputError(f"cannot serialise non-finite value {x!r}")
    if x == 0.0:
        return "0"  # also folds -0.0
    return format(x, ".17g")


def matrix_to_csv(rows, comments: list[str] | tuple[str, ...] = ()) -> str:
    arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise InputError(f"need a non-empty 2-d array, got shape {arr.shape}")
    lines = [HEADER, *(f"# {c}" for c in comments)]
    lines += [",".join(format_number(x) for x in row) for row in arr]
    return "\n".join(lines) + "\n"


def matrix_from_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        try:
            row = [float(cell) for cell in line.split(",")]
        except ValueError:
            raise InputError(f"line {lineno}: non-numeric cell in {raw.strip()!r}") from None
        if not all(math.isfinite(x) for x in row):
            raise InputError(f"line {lineno}: non-finite value")
        if rows and len(row) != len(rows[0]):
            raise InputError(f"line {lineno}: ragged row with {len(row)} columns, expected {len(rows[0])}")
        rows.append(row)
    if not rows:
        raise InputError("CSV holds no rows")
    return np.array(rows)


def frame_to_csv(f: Frame) -> str:
    return matrix_to_csv(f.vectors)


def frame_from_csv(text: str) -> Frame:
    return Frame(matrix_from_csv(text))


# -- JSON reports -----------------------------------------------------------------

def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise InputError(f"cannot serialise non-finite value {x!r}")
        return 0.0 if x == 0.0 else x
    return obj


def report_to_json(report: dict) -> str:
    """Stable JSON: sorted keys, shortest round-tripping float repr."""
    return json.dumps(_plain(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def report_from_json(text: str) -> dict:
    return json.loads(text)


def report_header(tol: TolerancePolicy) -> dict:
    return {
        "format": FORMAT_VERSION,
        "tool": "graph-frames",
        "tool_version": __version__,
        "tolerances": tol.as_dict(),
        "random_graph_algorithm": RANDOM_ALGORITHM,
    }


def graph_summary(g: Graph) -> dict:
    parts = connected_components(g)
    return {
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "components": parts.count,
        "component_labels": list(parts.labels),
        "degrees": degree_info(g).degrees.tolist(),
    }


def frame_report(g: Graph, result: LgFrameResult, tightness: TightnessReport, tol: TolerancePolicy) -> dict:
    f = result.frame
    bounds = frame_bounds(f, tol)
    tight, alpha = is_tight(f, tol)
    uniform, c = is_uniform(f, tol)
    generic_dual = canonical_dual(f, tol)
    lg_dual = canonical_dual_lg(result)
    _, dual_res = verify_dual(f, lg_dual, tol)
    return {
        **report_header(tol),
        "graph": graph_summary(g),
        "spectrum": {
            "laplacian": result.laplacian_spectrum,
            "adjacency": list(tightness.adjacency_spectrum),
        },
        "frame": {"n": f.n, "k": f.k, "vectors": f.vectors},
        "bounds": {"A": bounds.A, "B": bounds.B},
        "flags": {
            "is_tight": tight,
            "alpha": alpha,
            "is_parseval": is_parseval(f, tol),
            "is_uniform": uniform,
            "uniform_norm": c,
            "is_unit_norm": is_unit_norm(f, tol),
        },
        "tightness": tightness.as_dict(),
        "residuals": {
            "gramian_vs_laplacian": max_abs_diff(gramian(f), laplacian_matrix(g)),
            "frame_operator_vs_diagonal": max_abs_diff(frame_operator(f), np.diag(result.leading_spectrum)),
            "canonical_dual_lg_vs_generic": max_abs_diff(lg_dual.vectors, generic_dual.vectors),
            "canonical_dual_reconstruction": dual_res,
        },
    }


def bound_check_dict(b: BoundCheck) -> dict:
    return {**b._asdict(), "holds": b.holds}
