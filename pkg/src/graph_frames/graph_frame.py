"""Frames generated by graphs.

A frame ``{f_i}`` in ``R^k`` is generated by a graph ``G`` on ``n`` vertices
when its Gramian equals the Laplacian ``L(G)``; then ``k = n - p`` with ``p``
the number of connected components. The construction used here factors
``L = M diag(mu) M^T`` and takes the columns of
``B = diag(sqrt(mu_1), ..., sqrt(mu_k)) M_1^T`` where ``M_1`` holds the
eigenvectors of the ``k`` positive eigenvalues. Such frames have a diagonal
frame operator; we call them Laplacian-eigenbasis frames (``lg`` frames).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConsistencyError, InputError
from .frame import (
    Frame,
    canonical_dual,
    dual_residual,
    frame_operator,
    gramian,
    is_uniform,
    synthesis_matrix,
)
from .graph import (
    ComponentPartition,
    Graph,
    adjacency_matrix,
    connected_components,
    degree_info,
    has_null_vertex,
    induced_subgraph,
    is_regular,
    laplacian_matrix,
)
from .linalg import (
    DEFAULT_TOLERANCE,
    TolerancePolicy,
    cluster_distinct,
    eigh,
    identity,
    matmul,
    max_abs_diff,
    spd_power,
    transpose,
)


@dataclass(frozen=True, eq=False)
class LgFrameResult:
    frame: Frame
    laplacian_spectrum: np.ndarray
    k: int
    eigenbasis: np.ndarray
    components: ComponentPartition

    @property
    def leading_spectrum(self) -> np.ndarray:
        return self.laplacian_spectrum[: self.k]


def _scaled(tol: float, reference) -> float:
    ref = np.asarray(reference)
    return tol * max(1.0, float(np.max(np.abs(ref))) if ref.size else 0.0)


def lg_frame(g: Graph, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> LgFrameResult:
    """Build the Laplacian-eigenbasis frame of ``g``.

    The dimension ``k = n - p`` comes from exact connectivity; the eigensolver
    must then agree that exactly the trailing ``p`` eigenvalues vanish.

    Raises:
        InputError: for an edgeless graph (rank 0, no frame).
        ConsistencyError: if the computed spectrum contradicts the rank.
    """
    parts = connected_components(g)
    k = g.n - parts.count
    if k == 0:
        raise InputError("graph has no edges: Laplacian has rank 0, no frame")
    spectrum, basis = eigh(laplacian_matrix(g), tol)
    zero_tol = tol.zero * max(1.0, float(spectrum[0]))
    if spectrum[k - 1] <= zero_tol or np.any(np.abs(spectrum[k:]) > zero_tol):
        raise ConsistencyError(
            f"Laplacian spectrum {spectrum.tolist()} disagrees with rank {k} = n - p from connectivity"
        )
    return _result_from_basis(g, parts, spectrum, basis, k)


def _result_from_basis(g, parts, spectrum, basis, k) -> LgFrameResult:
    lead = np.clip(spectrum[:k], 0.0, None)
    b = np.sqrt(lead)[:, None] * transpose(basis[:, :k])
    spectrum = spectrum.copy()
    spectrum.setflags(write=False)
    return LgFrameResult(Frame.from_synthesis(b), spectrum, k, basis, parts)


def _random_orthogonal(m: int, rng: np.random.Generator) -> np.ndarray:
    # product of Givens rotations over every pair with random angles, then random signs
    q = identity(m)
    for i in range(m - 1):
        for j in range(i + 1, m):
            angle = rng.uniform(0.0, 2.0 * math.pi)
            c, s = math.cos(angle), math.sin(angle)
            qi = q[:, i].copy()
            q[:, i] = c * qi - s * q[:, j]
            q[:, j] = s * qi + c * q[:, j]
    return q * rng.choice([-1.0, 1.0], size=m)


def eigenbasis_variant(result: LgFrameResult, g: Graph, seed: int, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> LgFrameResult:
    """Same construction from another orthonormal eigenbasis of ``L(g)``.

    Each eigenspace of the positive spectrum (eigenvalues grouped with
    ``cluster_distinct``) is rotated by a random orthogonal matrix and
    random sign flips; the null space is left alone.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    k = result.k
    basis = result.eigenbasis.copy()
    start = 0
    for _, mult in cluster_distinct(result.leading_spectrum, tol.cluster):
        block = slice(start, start + mult)
        basis[:, block] = matmul(basis[:, block], _random_orthogonal(mult, rng))
        start += mult
    return _result_from_basis(g, result.components, result.laplacian_spectrum, basis, k)


# -- membership tests -----------------------------------------------------------

def is_g_frame(f: Frame, g: Graph, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> tuple[bool, float]:
    """Is ``f`` a frame for ``R^(n-p)`` whose Gramian is ``L(g)``? Returns the flag and the Gramian residual."""
    if f.n != g.n:
        raise InputError(f"frame has {f.n} vectors but the graph has {g.n} vertices")
    lap = laplacian_matrix(g)
    residual = max_abs_diff(gramian(f), lap)
    ok = residual <= _scaled(tol.recon, lap) and f.k == g.n - connected_components(g).count
    if ok:
        ok = eigh(frame_operator(f), tol).values[-1] > tol.zero
    return bool(ok), residual


def is_lg_frame(f: Frame, g: Graph, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    """A graph frame whose frame operator is diagonal (equivalently: orthogonal analysis-matrix columns)."""
    if not is_g_frame(f, g, tol)[0]:
        return False
    s = frame_operator(f)
    off = s - np.diag(np.diag(s))
    return max_abs_diff(off, np.zeros_like(off)) <= _scaled(tol.recon, s)


def _require_g_frame(f: Frame, g: Graph, tol: TolerancePolicy, what: str = "frame"):
    ok, residual = is_g_frame(f, g, tol)
    if not ok:
        raise InputError(f"{what} is not generated by the graph (Gramian residual {residual:.3e})")


# -- duals --------------------------------------------------------------------

def canonical_dual_lg(result: LgFrameResult) -> Frame:
    """Canonical dual through the diagonal frame operator: ``f_i / mu`` coordinate-wise."""
    return Frame(result.frame.vectors / result.leading_spectrum[None, :])


@dataclass(frozen=True, eq=False)
class DualSpec:
    """One shift vector per connected component, rows in component-id order."""

    shifts: np.ndarray = field()

    def __post_init__(self):
        arr = np.array(self.shifts, dtype=np.float64)
        if arr.ndim != 2:
            raise InputError(f"shifts must be a p x k array, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "shifts", arr)

    @classmethod
    def zeros(cls, p: int, k: int) -> "DualSpec":
        return cls(np.zeros((p, k)))


def dual_from_shifts(f: Frame, g: Graph, spec: DualSpec, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> Frame:
    """``g_i = S^-1 f_i + nu_c`` with ``c`` the component of vertex ``i``."""
    _require_g_frame(f, g, tol)
    parts = connected_components(g)
    if spec.shifts.shape != (parts.count, f.k):
        raise InputError(
            f"need {parts.count} shift vectors of dimension {f.k} (one per component), got shape {spec.shifts.shape}"
        )
    labels = np.asarray(parts.labels)
    return Frame(canonical_dual(f, tol).vectors + spec.shifts[labels])


def dual_is_in_family(f: Frame, g: Graph, dual: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> tuple[bool, DualSpec]:
    """Decompose ``dual`` as canonical dual plus shifts.

    Membership requires the shifts ``h_i = g_i - S^-1 f_i`` to be constant on
    every component and ``dual`` to reproduce ``f``. The recovered per-component
    shifts are the component means of ``h_i``.
    """
    if f.n != dual.n or f.k != dual.k or f.n != g.n:
        raise InputError(f"shape mismatch: frame {f.n}x{f.k}, dual {dual.n}x{dual.k}, graph on {g.n} vertices")
    h = dual.vectors - canonical_dual(f, tol).vectors
    parts = connected_components(g)
    shifts = np.zeros((parts.count, f.k))
    spread = 0.0
    for c, members in enumerate(parts.members()):
        block = h[members]
        shifts[c] = block.mean(axis=0)
        spread = max(spread, float(np.max(np.abs(block - shifts[c]))))
    constant = spread <= _scaled(tol.recon, h)
    return bool(constant and dual_residual(f, dual) <= tol.tight), DualSpec(shifts)


# -- unitary equivalence ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EquivalenceMap:
    U: np.ndarray
    max_orth_residual: float
    max_map_residual: float

    def holds(self, tol: TolerancePolicy = DEFAULT_TOLERANCE, reference: float = 1.0) -> bool:
        return self.max_orth_residual <= tol.orth and self.max_map_residual <= tol.recon * max(1.0, reference)


def unitary_equivalence_map(f1: Frame, f2: Frame, g: Graph, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> EquivalenceMap:
    """Orthogonal ``U`` with ``U g_i = f_i`` for two frames generated by the same graph.

    ``U = S1^-2 B C^T S2`` where ``B``, ``C`` are the synthesis matrices of
    ``f1``, ``f2`` and ``S1``, ``S2`` their frame operators.

    Raises:
        InputError: if either frame is not generated by ``g``; frames from
            different graphs are never unitarily equivalent.
    """
    _require_g_frame(f1, g, tol, "first frame")
    _require_g_frame(f2, g, tol, "second frame")
    b, c = synthesis_matrix(f1), synthesis_matrix(f2)
    s1_inv2 = spd_power(frame_operator(f1), -2.0, tol)
    u = matmul(matmul(matmul(s1_inv2, b), f2.vectors), frame_operator(f2))
    eye = identity(f1.k)
    orth = max(max_abs_diff(matmul(transpose(u), u), eye), max_abs_diff(matmul(u, transpose(u)), eye))
    mapped = max_abs_diff(matmul(u, c), b)
    return EquivalenceMap(u, orth, mapped)


# -- tightness and regularity ---------------------------------------------------

@dataclass(frozen=True)
class TightnessReport:
    is_tight: bool
    alpha: float | None
    frame_bounds: tuple[float, float]
    laplacian_spectrum: tuple[float, ...]
    is_connected: bool
    components_regular: tuple[tuple[bool, int | None], ...]
    graph_regular: bool
    regular_degree: int | None
    has_null_vertex: bool
    adjacency_spectrum: tuple[float, ...]
    adjacency_distinct: tuple[tuple[float, int], ...]
    is_complete: bool
    predicted_alpha: int | None
    is_uniform: bool
    uniform_norm: float | None

    def as_dict(self) -> dict:
        return {
            "is_tight": self.is_tight,
            "alpha": self.alpha,
            "frame_bounds": {"A": self.frame_bounds[0], "B": self.frame_bounds[1]},
            "laplacian_spectrum": list(self.laplacian_spectrum),
            "is_connected": self.is_connected,
            "components_regular": [{"regular": ok, "r": r} for ok, r in self.components_regular],
            "graph_regular": self.graph_regular,
            "regular_degree": self.regular_degree,
            "has_null_vertex": self.has_null_vertex,
            "adjacency_spectrum": list(self.adjacency_spectrum),
            "adjacency_distinct": [{"value": v, "multiplicity": m} for v, m in self.adjacency_distinct],
            "is_complete": self.is_complete,
            "predicted_alpha": self.predicted_alpha,
            "is_uniform": self.is_uniform,
            "uniform_norm": self.uniform_norm,
        }


def tightness_report(g: Graph, tol: TolerancePolicy = DEFAULT_TOLERANCE, result: LgFrameResult | None = None) -> TightnessReport:
    """Tightness of the graph's frame next to the regularity and adjacency data that predict it.

    Raises:
        InputError: for an edgeless graph.
        ConsistencyError: if a connected graph yields a tight frame without
            being complete, which cannot happen in exact arithmetic.
    """
    if result is None:
        result = lg_frame(g, tol)
    s_values = eigh(frame_operator(result.frame), tol).values
    lo, hi = float(s_values[-1]), float(s_values[0])
    tight = lo > tol.zero and hi - lo <= tol.tight * hi
    alpha = float(np.mean(s_values)) if tight else None

    parts = result.components
    comp_regular = tuple(is_regular(induced_subgraph(g, members)) for members in parts.members())
    regular, r = is_regular(g)
    null = has_null_vertex(g)
    adj_values = eigh(adjacency_matrix(g), tol).values
    uniform, c = is_uniform(result.frame, tol)
    complete = g.is_complete()
    connected = parts.count == 1
    if tight and connected and not complete:
        raise ConsistencyError("connected graph produced a tight frame but is not complete")
    return TightnessReport(
        is_tight=bool(tight),
        alpha=alpha,
        frame_bounds=(lo, hi),
        laplacian_spectrum=tuple(float(x) for x in result.laplacian_spectrum),
        is_connected=connected,
        components_regular=comp_regular,
        graph_regular=regular,
        regular_degree=r,
        has_null_vertex=null,
        adjacency_spectrum=tuple(float(x) for x in adj_values),
        adjacency_distinct=tuple(cluster_distinct(adj_values, tol.cluster)),
        is_complete=complete,
        predicted_alpha=r + 1 if regular and r > 0 else None,
        is_uniform=uniform,
        uniform_norm=c,
    )


class BoundCheck(NamedTuple):
    """Laplacian eigenvalue bounds: ``mu_1 >= Delta + 1`` and, for connected
    graphs, ``mu_{n-1} <= n * delta / (n - 1)``. Slacks are non-negative when
    a bound holds exactly."""

    mu_max: float
    max_degree_plus_one: int
    max_slack: float
    max_holds: bool
    algebraic_connectivity: float | None
    connectivity_bound: float | None
    connectivity_slack: float | None
    connectivity_holds: bool | None

    @property
    def holds(self) -> bool:
        return self.max_holds and self.connectivity_holds is not False


def laplacian_bound_check(g: Graph, tol: TolerancePolicy = DEFAULT_TOLERANCE, spectrum=None) -> BoundCheck:
    if not g.edges:
        raise InputError("the largest-eigenvalue bound needs at least one edge")
    if spectrum is None:
        spectrum = eigh(laplacian_matrix(g), tol).values
    info = degree_info(g)
    mu1 = float(spectrum[0])
    slack1 = mu1 - (info.Delta + 1)
    if connected_components(g).count == 1:
        mu_conn = float(spectrum[g.n - 2])
        bound = g.n * info.delta / (g.n - 1)
        slack2 = bound - mu_conn
        return BoundCheck(mu1, info.Delta + 1, slack1, slack1 >= -tol.zero, mu_conn, bound, slack2, slack2 >= -tol.zero)
    return BoundCheck(mu1, info.Delta + 1, slack1, slack1 >= -tol.zero, None, None, None, None)
