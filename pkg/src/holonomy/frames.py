"""Value types for points on the Stiefel and Grassmann manifolds.

Frames are stored as ``d x n`` arrays whose columns are orthonormal vectors,
so ``F.conj().T @ G`` is the matrix of inner products and ``F @ F.conj().T``
is the projector onto the span.  All arrays held by these types are made
read-only on construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import as_complex_matrix, dagger, hermitian_defect, unitarity_defect
from .errors import DimensionError, ValidationError

FRAME_ATOL = 1e-10
PROJECTOR_ATOL = 1e-10
RANK_ATOL = 1e-8
GATE_ATOL = 1e-10


def closure_tolerance(n: int) -> float:
    """Largest ``||P(tau) - P(0)||_F`` for which a rank-``n`` curve counts as a loop."""
    return 1e-8 * np.sqrt(2 * n)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Frame:
    """An ordered orthonormal family of ``n`` vectors in a ``d``-dimensional space."""

    columns: np.ndarray

    def __post_init__(self):
        cols = as_complex_matrix(self.columns, "frame")
        d, n = cols.shape
        if not 1 <= n <= d:
            raise DimensionError(f"frame must satisfy 1 <= n <= d, got d={d}, n={n}")
        defect = unitarity_defect(cols)
        if defect > FRAME_ATOL:
            raise ValidationError(f"frame columns are not orthonormal (defect {defect:.3e})")
        object.__setattr__(self, "columns", _frozen(cols))

    @property
    def d(self) -> int:
        return self.columns.shape[0]

    @property
    def n(self) -> int:
        return self.columns.shape[1]

    def projector(self) -> "Projector":
        return Projector(self.columns @ dagger(self.columns))

    @classmethod
    def computational(cls, d: int, n: int) -> "Frame":
        """The first ``n`` standard basis vectors of ``C^d``."""
        return cls(np.eye(d, n, dtype=complex))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.columns, dtype=dtype)


def as_frame(x) -> Frame:
    return x if isinstance(x, Frame) else Frame(x)


def frame_array(x) -> np.ndarray:
    return as_frame(x).columns


@dataclass(frozen=True, eq=False)
class Projector:
    """Rank-``n`` orthogonal projection on ``C^d``."""

    matrix: np.ndarray

    def __post_init__(self):
        p = as_complex_matrix(self.matrix, "projector")
        validate_projectors(p[None])
        object.__setattr__(self, "matrix", _frozen(p))

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.matrix).real))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def validate_projectors(p: np.ndarray) -> int:
    """Check a ``(m, d, d)`` stack of projectors and return their common rank."""
    if p.ndim != 3 or p.shape[1] != p.shape[2]:
        raise DimensionError(f"projector stack must have shape (m, d, d), got {p.shape}")
    herm = hermitian_defect(p)
    if herm > PROJECTOR_ATOL:
        raise ValidationError(f"projector is not Hermitian (defect {herm:.3e})")
    idem = float(np.max(np.abs(p @ p - p), initial=0.0))
    if idem > PROJECTOR_ATOL:
        raise ValidationError(f"projector is not idempotent (defect {idem:.3e})")
    traces = np.trace(p, axis1=1, axis2=2).real
    ranks = np.rint(traces)
    if np.max(np.abs(traces - ranks), initial=0.0) > RANK_ATOL:
        raise ValidationError("projector trace is not an integer")
    if np.any(ranks != ranks[0]):
        raise ValidationError("projectors along a curve must share one rank")
    rank = int(ranks[0])
    if rank < 1:
        raise ValidationError("projector rank must be at least 1")
    return rank


@dataclass(frozen=True, eq=False)
class Gate:
    """A unitary ``n x n`` matrix, expressed relative to ``reference_frame`` when given."""

    matrix: np.ndarray
    reference_frame: Frame | None = None
    atol: float = GATE_ATOL

    def __post_init__(self):
        u = as_complex_matrix(self.matrix, "gate")
        if u.shape[0] != u.shape[1]:
            raise DimensionError(f"gate must be square, got shape {u.shape}")
        defect = unitarity_defect(u)
        if defect > self.atol:
            raise ValidationError(f"gate is not unitary (defect {defect:.3e} > {self.atol:.1e})")
        if self.reference_frame is not None:
            ref = as_frame(self.reference_frame)
            if ref.n != u.shape[0]:
                raise DimensionError("reference frame size does not match gate size")
            object.__setattr__(self, "reference_frame", ref)
        object.__setattr__(self, "matrix", _frozen(u))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def as_gate(x, atol: float = 1e-8) -> Gate:
    return x if isinstance(x, Gate) else Gate(x, atol=atol)


@dataclass(frozen=True, eq=False)
class ProjectorCurve:
    """Projectors sampled at strictly increasing times ``0 = t_0 < ... < t_M = tau``."""

    times: np.ndarray
    projectors: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float, copy=True)
        proj = np.array(self.projectors, dtype=complex, copy=True)
        if times.ndim != 1 or proj.ndim != 3 or len(times) != len(proj):
            raise DimensionError("times and projector samples must have matching lengths")
        check_time_grid(times)
        self_rank = validate_projectors(proj)
        times.setflags(write=False)
        proj.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "projectors", proj)
        object.__setattr__(self, "_rank", self_rank)

    @property
    def d(self) -> int:
        return self.projectors.shape[1]

    @property
    def n(self) -> int:
        return self._rank

    @property
    def duration(self) -> float:
        return float(self.times[-1])

    def __len__(self) -> int:
        return len(self.times)

    @property
    def closure_residual(self) -> float:
        return float(np.linalg.norm(self.projectors[-1] - self.projectors[0]))

    def is_closed(self, tol: float | None = None) -> bool:
        tol = closure_tolerance(self.n) if tol is None else tol
        return self.closure_residual <= tol

    @classmethod
    def from_frames(cls, times, frames) -> "ProjectorCurve":
        f = np.asarray(frames, dtype=complex)
        return cls(times, f @ dagger(f))


def check_time_grid(times: np.ndarray) -> None:
    if len(times) < 2:
        raise ValidationError("a time grid needs at least two samples")
    if times[0] != 0.0:
        raise ValidationError(f"time grid must start at 0, got {times[0]}")
    steps = np.diff(times)
    if np.any(steps == 0):
        raise ValidationError("time grid contains duplicate consecutive samples")
    if np.any(steps < 0):
        raise ValidationError("time grid must be strictly increasing")
