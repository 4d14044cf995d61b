"""Dense real matrix helpers and a cyclic Jacobi symmetric eigensolver.

Matrices are plain ``float64`` numpy arrays. Products go through
:func:`matmul`, which accumulates over the inner index left to right so that
results do not depend on the BLAS build or thread count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, InputError

JACOBI_REL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative tolerances shared by every numerical comparison."""

    orth: float = 1e-10
    recon: float = 1e-10
    zero: float = 1e-9
    tight: float = 1e-9
    cluster: float = 1e-6

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise InputError(f"tolerance {name} must be positive, got {value!r}")

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCE = TolerancePolicy()


class EigenDecomposition(NamedTuple):
    values: np.ndarray
    """Eigenvalues, descending."""
    vectors: np.ndarray
    """Orthonormal eigenvectors as columns, in the order of ``values``."""


def as_matrix(a) -> np.ndarray:
    m = np.array(a, dtype=np.float64)
    if m.ndim != 2:
        raise InputError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def symmetric(a) -> np.ndarray:
    """Return ``a`` as a float matrix, rejecting any asymmetry at all."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise InputError(f"symmetric matrix must be square, got shape {m.shape}")
    if not np.array_equal(m, m.T):
        i, j = np.unravel_index(np.argmax(np.abs(m - m.T)), m.shape)
        raise InputError(f"matrix is not symmetric: a[{i},{j}]={m[i, j]!r} but a[{j},{i}]={m[j, i]!r}")
    return m


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.float64)


def transpose(a) -> np.ndarray:
    return np.ascontiguousarray(as_matrix(a).T)


def matmul(a, b) -> np.ndarray:
    """Matrix product with plain left-to-right accumulation over the inner index."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    vec_a, vec_b = a.ndim == 1, b.ndim == 1
    if vec_a:
        a = a[None, :]
    if vec_b:
        b = b[:, None]
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise InputError(f"shape mismatch in matmul: {a.shape} @ {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]))
    for t in range(a.shape[1]):
        out += a[:, t, None] * b[None, t, :]
    if vec_a and vec_b:
        return out[0, 0]
    if vec_a:
        return out[0]
    if vec_b:
        return out[:, 0]
    return out


def max_abs_diff(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise InputError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


SMALL_ORDER = 16


def _rotation(app: float, aqq: float, apq: float) -> tuple[float, float, float]:
    theta = (aqq - app) / (2.0 * apq)
    if abs(theta) > 1e150:
        # theta**2 would overflow; the first-order tangent is exact at this size
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    return t, c, t * c


def _off_norm(a: np.ndarray) -> float:
    return math.sqrt(2.0 * math.fsum((a[np.triu_indices(a.shape[0], k=1)] ** 2).tolist()))


def _jacobi_small(a: np.ndarray, target: float) -> tuple[np.ndarray, np.ndarray]:
    # Same arithmetic as _jacobi_large on Python floats; much faster for tiny n.
    n = a.shape[0]
    m = a.tolist()
    v = identity(n).tolist()
    rng = range(n)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = math.sqrt(2.0 * math.fsum(m[p][q] * m[p][q] for p in rng for q in range(p + 1, n)))
        if off <= target:
            break
        for p in range(n - 1):
            row_p = m[p]
            for q in range(p + 1, n):
                apq = row_p[q]
                if apq == 0.0:
                    continue
                row_q = m[q]
                app, aqq = row_p[p], row_q[q]
                t, c, s = _rotation(app, aqq, apq)
                for r in rng:
                    arp, arq = row_p[r], row_q[r]
                    row_p[r] = m[r][p] = c * arp - s * arq
                    row_q[r] = m[r][q] = s * arp + c * arq
                row_p[p] = app - t * apq
                row_q[q] = aqq + t * apq
                row_p[q] = row_q[p] = 0.0
                for vr in v:
                    vrp, vrq = vr[p], vr[q]
                    vr[p] = c * vrp - s * vrq
                    vr[q] = s * vrp + c * vrq
    else:
        off = math.sqrt(2.0 * math.fsum(m[p][q] * m[p][q] for p in rng for q in range(p + 1, n)))
        if off > target:
            raise ConvergenceError(
                f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps; off-diagonal norm {off:.3e}"
            )
    return np.array(m), np.array(v)


def _jacobi_large(a: np.ndarray, target: float) -> tuple[np.ndarray, np.ndarray]:
    a = a.copy()
    n = a.shape[0]
    v = identity(n)
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app, aqq = a[p, p], a[q, q]
                t, c, s = _rotation(float(app), float(aqq), float(apq))
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    else:
        off = _off_norm(a)
        if off > target:
            raise ConvergenceError(
                f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps; off-diagonal norm {off:.3e}"
            )
    return a, v


def eigh(a, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Pairs ``(p, q)`` are visited row by row in every sweep. Iteration stops
    once the off-diagonal Frobenius norm drops below ``1e-12 * ||A||_F``.
    Eigenvalues come back descending (stable among exact ties) and each
    eigenvector is signed so its first entry larger than ``tol.zero`` in
    magnitude is positive.

    Raises:
        ConvergenceError: if the sweep cap is hit first.
    """
    a = symmetric(a)
    n = a.shape[0]
    if n < 1:
        raise InputError("eigh needs a matrix of order at least 1")
    target = JACOBI_REL_TOL * math.sqrt(math.fsum((a * a).ravel().tolist()))
    jacobi = _jacobi_small if n <= SMALL_ORDER else _jacobi_large
    diag, v = jacobi(a, target)

    values = np.diag(diag).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    for j in range(n):
        col = vectors[:, j]
        big = np.flatnonzero(np.abs(col) > tol.zero)
        if big.size and col[big[0]] < 0:
            vectors[:, j] = -col
    return EigenDecomposition(values, vectors)


def spd_power(s, exponent: float, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> np.ndarray:
    """``S**exponent`` for a symmetric positive definite ``S`` via its eigenbasis.

    Raises:
        InputError: if the smallest eigenvalue is not above ``tol.zero``.
    """
    values, vectors = eigh(s, tol)
    if values[-1] <= tol.zero:
        raise InputError(f"matrix is not positive definite (smallest eigenvalue {values[-1]:.3e})")
    return matmul(vectors * values**exponent, transpose(vectors))


def cluster_distinct(values, cluster_tol: float = DEFAULT_TOLERANCE.cluster) -> list[tuple[float, int]]:
    """Group a descending sequence into numerically distinct values.

    Neighbours whose gap is at most ``cluster_tol * max(1, spread)`` share a
    cluster; each cluster is reported as ``(mean, multiplicity)``.
    """
    vals = [float(x) for x in values]
    if not vals:
        return []
    if any(b > a for a, b in zip(vals, vals[1:])):
        raise InputError("cluster_distinct expects values sorted descending")
    gap_tol = cluster_tol * max(1.0, vals[0] - vals[-1])
    groups = [[vals[0]]]
    for prev, cur in zip(vals, vals[1:]):
        if prev - cur <= gap_tol:
            groups[-1].append(cur)
        else:
            groups.append([cur])
    return [(math.fsum(g) / len(g), len(g)) for g in groups]
