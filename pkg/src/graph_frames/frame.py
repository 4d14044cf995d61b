"""Finite frames in real k-space: operators, optimal bounds and duals."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import InputError
from .linalg import (
    DEFAULT_TOLERANCE,
    TolerancePolicy,
    eigh,
    identity,
    matmul,
    max_abs_diff,
    spd_power,
    transpose,
)


class Frame:
    """An ordered list of ``n`` vectors in ``R^k``, stored row per vector.

    Construction only checks shapes. Whether the vectors span ``R^k`` is a
    question for :func:`is_frame`; operations that need a genuine frame
    (duals, reconstruction) check it themselves.
    """

    __slots__ = ("_vectors",)

    def __init__(self, vectors):
        arr = np.array(vectors, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
            raise InputError(f"a frame needs a non-empty n x k array of vectors, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputError("frame vectors must be finite")
        arr.setflags(write=False)
        self._vectors = arr

    @classmethod
    def from_synthesis(cls, b) -> "Frame":
        """Frame whose vectors are the columns of the k x n matrix ``b``."""
        return cls(transpose(b))

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    @property
    def n(self) -> int:
        return self._vectors.shape[0]

    @property
    def k(self) -> int:
        return self._vectors.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, i) -> np.ndarray:
        return self._vectors[i]

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return np.array_equal(self._vectors, other._vectors)

    __hash__ = None

    def __repr__(self):
        return f"Frame(n={self.n}, k={self.k})"


class FrameBounds(NamedTuple):
    A: float
    B: float


def synthesis_matrix(f: Frame) -> np.ndarray:
    """The k x n matrix ``[f_1 ... f_n]``."""
    return transpose(f.vectors)


def analysis_apply(f: Frame, x) -> np.ndarray:
    """Coefficients ``<x, f_i>`` for every frame vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (f.k,):
        raise InputError(f"vector of dimension {f.k} expected, got shape {x.shape}")
    return matmul(f.vectors, x)


def frame_operator(f: Frame) -> np.ndarray:
    """``S = B B^T`` (k x k)."""
    b = synthesis_matrix(f)
    return matmul(b, f.vectors)


def gramian(f: Frame) -> np.ndarray:
    """``G = B^T B`` (n x n); ``G[i, j] = <f_j, f_i>``."""
    return matmul(f.vectors, synthesis_matrix(f))


def frame_bounds(f: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> FrameBounds:
    """Optimal bounds: the extreme eigenvalues of the frame operator."""
    values = eigh(frame_operator(f), tol).values
    return FrameBounds(float(values[-1]), float(values[0]))


def is_frame(f: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    return frame_bounds(f, tol).A > tol.zero


def is_tight(f: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> tuple[bool, float | None]:
    """``(True, alpha)`` for an alpha-tight frame, ``alpha`` being the mean of the spectrum of S."""
    values = eigh(frame_operator(f), tol).values
    lo, hi = float(values[-1]), float(values[0])
    if lo > tol.zero and hi - lo <= tol.tight * hi:
        return True, float(np.mean(values))
    return False, None


def is_parseval(f: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    tight, alpha = is_tight(f, tol)
    return tight and abs(alpha - 1.0) <= tol.tight


def vector_norms(f: Frame) -> np.ndarray:
    return np.sqrt(np.einsum("ij,ij->i", f.vectors, f.vectors))


def is_uniform(f: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> tuple[bool, float | None]:
    """``(True, c)`` when every vector has norm ``c`` (c is the mean norm)."""
    norms = vector_norms(f)
    top = float(norms.max())
    if top - float(norms.min()) <= tol.tight * max(1.0, top):
        return True, float(np.mean(norms))
    return False, None


def is_unit_norm(f: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    return bool(np.all(np.abs(vector_norms(f) - 1.0) <= tol.tight))


def _require_frame(f: Frame, tol: TolerancePolicy):
    lo = frame_bounds(f, tol).A
    if lo <= tol.zero:
        raise InputError(f"vectors do not span R^{f.k}: frame operator is singular (smallest eigenvalue {lo:.3e})")


def canonical_dual(f: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> Frame:
    """``{S^-1 f_i}``.

    Raises:
        InputError: if ``f`` does not span its space.
    """
    _require_frame(f, tol)
    s_inv = spd_power(frame_operator(f), -1.0, tol)
    return Frame(matmul(f.vectors, s_inv))


def dual_residual(f: Frame, g: Frame) -> float:
    """Worst entry of ``sum_i <e_j, f_i> g_i - e_j`` over both orderings and all basis vectors e_j."""
    if f.n != g.n or f.k != g.k:
        raise InputError(f"frames differ in shape: {f.n}x{f.k} vs {g.n}x{g.k}")
    eye = identity(f.k)
    # column j of C B^T is sum_i <e_j, f_i> g_i
    forward = max_abs_diff(matmul(synthesis_matrix(g), f.vectors), eye)
    backward = max_abs_diff(matmul(synthesis_matrix(f), g.vectors), eye)
    return max(forward, backward)


def verify_dual(f: Frame, g: Frame, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> tuple[bool, float]:
    res = dual_residual(f, g)
    return res <= tol.tight, res


def reconstruct(f: Frame, dual: Frame, coefficients) -> np.ndarray:
    """Synthesis with the dual: ``sum_i c_i g_i``."""
    c = np.asarray(coefficients, dtype=np.float64)
    if c.shape != (dual.n,) or f.n != dual.n or f.k != dual.k:
        raise InputError(f"{dual.n} coefficients for a {f.n}x{f.k} frame expected, got shape {c.shape}")
    return matmul(synthesis_matrix(dual), c)
