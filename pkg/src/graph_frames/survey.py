"""Exhaustive check of the tightness characterisations on small labeled graphs.

Graphs on ``n`` vertices are indexed by edge subsets: bit ``i`` of the index
selects the ``i``-th pair of ``itertools.combinations(range(n), 2)``. Every
index from 1 to ``2**C(n,2) - 1`` is visited, so graphs on fewer vertices
appear as graphs with null vertices.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import ConsistencyError, InputError
from .frame import frame_operator, gramian, vector_norms
from .graph import Graph, laplacian_matrix
from .graph_frame import laplacian_bound_check, lg_frame, tightness_report
from .linalg import DEFAULT_TOLERANCE, TolerancePolicy, max_abs_diff

MIN_N, MAX_N = 2, 6
CONSTRUCTION_TOL = 1e-9
NORM_TOL = 1e-8

PREDICATES = {
    "a_tight_components_regular": "tight => every component regular",
    "b_tight_iff_two_eigenvalues": "(tight and no null vertex) <=> exactly two distinct adjacency eigenvalues",
    "c_connected_tight_iff_complete": "(connected and tight) <=> complete",
    "d_tight_uniform": "tight and no null vertex => uniform with norm sqrt(r)",
    "e_laplacian_bounds": "mu_1 >= Delta + 1, and mu_(n-1) <= n delta / (n - 1) when connected",
    "f_construction": "Gramian = L and frame operator = diag(leading spectrum)",
}


def graph_from_index(n: int, index: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph(n, tuple(pr for i, pr in enumerate(pairs) if index >> i & 1))


def enumerate_graphs(n: int) -> Iterator[tuple[int, Graph]]:
    """Every labeled simple graph on ``n`` vertices with at least one edge."""
    pairs = list(itertools.combinations(range(n), 2))
    for index in range(1, 1 << len(pairs)):
        yield index, Graph(n, tuple(pr for i, pr in enumerate(pairs) if index >> i & 1))


def multiplicities_match(report, n: int) -> bool:
    """Adjacency clusters are ``(r, n(alpha-r)/alpha)`` and ``(r-alpha, nr/alpha)``.

    Only meaningful for a tight frame of a graph without null vertices.
    """
    r, alpha = report.regular_degree, report.alpha
    if r is None or alpha is None or len(report.adjacency_distinct) != 2:
        return False
    expected = [(r, n * (alpha - r) / alpha), (r - alpha, n * r / alpha)]
    for (value, mult), (want_value, want_mult) in zip(report.adjacency_distinct, expected):
        if abs(want_mult - round(want_mult)) > NORM_TOL or mult != round(want_mult):
            return False
        if abs(value - want_value) > NORM_TOL * max(1.0, abs(want_value)):
            return False
    return True


@dataclass(frozen=True)
class GraphRecord:
    index: int
    tight: bool
    connected: bool
    complete: bool
    null_vertex: bool
    failed: tuple[str, ...]
    multiplicity_ok: bool | None


def check_graph(index: int, g: Graph, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> GraphRecord:
    failed = []
    result = lg_frame(g, tol)
    lap = laplacian_matrix(g)
    frame_op = frame_operator(result.frame)
    if (
        max_abs_diff(gramian(result.frame), lap) > CONSTRUCTION_TOL
        or max_abs_diff(frame_op, np.diag(result.leading_spectrum)) > CONSTRUCTION_TOL
    ):
        failed.append("f_construction")

    try:
        rep = tightness_report(g, tol, result=result)
    except ConsistencyError:
        # only raised for connected, tight, non-complete graphs
        failed.append("c_connected_tight_iff_complete")
        return GraphRecord(index, True, True, False, False, tuple(failed), None)

    tight, null = rep.is_tight, rep.has_null_vertex
    if tight and not all(ok for ok, _ in rep.components_regular):
        failed.append("a_tight_components_regular")
    if (tight and not null) != (len(rep.adjacency_distinct) == 2):
        failed.append("b_tight_iff_two_eigenvalues")
    if (rep.is_connected and tight) != rep.is_complete:
        failed.append("c_connected_tight_iff_complete")
    multiplicity_ok = None
    if tight and not null:
        r = rep.regular_degree
        norms = vector_norms(result.frame)
        if r is None or not rep.is_uniform or np.max(np.abs(norms - math.sqrt(r))) > NORM_TOL:
            failed.append("d_tight_uniform")
        multiplicity_ok = multiplicities_match(rep, g.n)
    if not laplacian_bound_check(g, tol, spectrum=result.laplacian_spectrum).holds:
        failed.append("e_laplacian_bounds")
    return GraphRecord(index, tight, rep.is_connected, rep.is_complete, null, tuple(failed), multiplicity_ok)


def _check_chunk(args) -> list[GraphRecord]:
    n, indices, tol = args
    return [check_graph(i, graph_from_index(n, i), tol) for i in indices]


@dataclass
class SurveyReport:
    n: int
    graphs: int = 0
    tight: int = 0
    connected: int = 0
    tight_no_null_vertex: int = 0
    tight_with_null_vertex: int = 0
    tight_connected: list[list[tuple[int, int]]] = field(default_factory=list)
    violations_by_predicate: dict[str, int] = field(default_factory=lambda: {k: 0 for k in PREDICATES})
    violating_indices: dict[str, list[int]] = field(default_factory=lambda: {k: [] for k in PREDICATES})
    multiplicity_checked: int = 0
    multiplicity_mismatches: int = 0

    @property
    def violations(self) -> int:
        return sum(self.violations_by_predicate.values())

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.multiplicity_mismatches == 0

    def add(self, rec: GraphRecord):
        self.graphs += 1
        self.connected += rec.connected
        if rec.tight:
            self.tight += 1
            if rec.null_vertex:
                self.tight_with_null_vertex += 1
            else:
                self.tight_no_null_vertex += 1
            if rec.connected:
                self.tight_connected.append(list(graph_from_index(self.n, rec.index).edges))
        for name in rec.failed:
            self.violations_by_predicate[name] += 1
            if len(self.violating_indices[name]) < 10:
                self.violating_indices[name].append(rec.index)
        if rec.multiplicity_ok is not None:
            self.multiplicity_checked += 1
            self.multiplicity_mismatches += not rec.multiplicity_ok

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "graphs": self.graphs,
            "tight": self.tight,
            "connected": self.connected,
            "tight_no_null_vertex": self.tight_no_null_vertex,
            "tight_with_null_vertex": self.tight_with_null_vertex,
            "tight_connected": [[list(e) for e in edges] for edges in self.tight_connected],
            "violations": self.violations,
            "violations_by_predicate": dict(self.violations_by_predicate),
            "violating_indices": {k: list(v) for k, v in self.violating_indices.items()},
            "predicates": dict(PREDICATES),
            "multiplicity_checked": self.multiplicity_checked,
            "multiplicity_mismatches": self.multiplicity_mismatches,
        }


def survey(max_n: int, tol: TolerancePolicy = DEFAULT_TOLERANCE, workers: int = 1) -> SurveyReport:
    """Check every labeled graph on ``max_n`` vertices with at least one edge.

    With ``workers > 1`` the index range is split into chunks evaluated in
    separate processes; records are merged in index order, so the report is
    the same for any worker count.
    """
    if isinstance(max_n, bool) or not isinstance(max_n, int) or not MIN_N <= max_n <= MAX_N:
        raise InputError(f"max_n must be an integer in [{MIN_N}, {MAX_N}], got {max_n!r}")
    total = 1 << (max_n * (max_n - 1) // 2)
    report = SurveyReport(max_n)
    if workers <= 1:
        for index, g in enumerate_graphs(max_n):
            report.add(check_graph(index, g, tol))
        return report
    step = max(1, total // (8 * workers))
    chunks = [(max_n, range(lo, min(lo + step, total)), tol) for lo in range(1, total, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for records in pool.map(_check_chunk, chunks):
            for rec in records:
                report.add(rec)
    return report
