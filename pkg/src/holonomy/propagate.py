"""Schrodinger propagation and time-ordered exponentials."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._linalg import as_complex_matrix, dagger, expm_hermitian, expm_skew, hermitian_defect
from .errors import DimensionError, ValidationError
from .frames import Gate, ProjectorCurve, as_frame, check_time_grid
from .serialization import encode_float, encode_matrix

HERMITIAN_ATOL = 1e-10
INTERPOLATIONS = ("piecewise-constant", "linear")

# Gauss-Legendre nodes and weights of the fourth-order commutator-free Magnus step.
_CF4_NODES = (0.5 - np.sqrt(3) / 6, 0.5 + np.sqrt(3) / 6)
_CF4_WEIGHTS = ((3 - 2 * np.sqrt(3)) / 12, (3 + 2 * np.sqrt(3)) / 12)


@dataclass(frozen=True, eq=False)
class HamiltonianSchedule:
    """A Hermitian generator ``H(t)`` on ``[0, tau]``.

    The schedule is stored as samples ``(times[i], matrices[i])``.  Between
    samples it is evaluated by ``interpolation``: ``"piecewise-constant"``
    holds ``matrices[i]`` on ``[times[i], times[i+1])``, ``"linear"``
    interpolates entrywise.  When ``generator`` is given it is the exact
    ``H(t)`` and the samples only serve as a record.
    """

    times: np.ndarray
    matrices: np.ndarray
    interpolation: str = "piecewise-constant"
    generator: Callable[[float], np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        times = np.array(self.times, dtype=float, copy=True)
        try:
            mats = np.array(self.matrices, dtype=complex, copy=True)
        except ValueError as exc:
            raise DimensionError("Hamiltonian samples must share one shape") from exc
        if times.ndim != 1 or mats.ndim != 3 or len(times) != len(mats):
            raise DimensionError("schedule needs matching time and (m, d, d) matrix samples")
        if mats.shape[1] != mats.shape[2]:
            raise DimensionError(f"Hamiltonian samples must be square, got {mats.shape[1:]}")
        check_time_grid(times)
        defect = hermitian_defect(mats)
        if defect > HERMITIAN_ATOL:
            raise ValidationError(f"Hamiltonian sample is not Hermitian (defect {defect:.3e})")
        if self.interpolation not in INTERPOLATIONS:
            raise ValidationError(f"unknown interpolation {self.interpolation!r}")
        times.setflags(write=False)
        mats.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "matrices", mats)

    @property
    def duration(self) -> float:
        return float(self.times[-1])

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    @property
    def is_time_independent(self) -> bool:
        return self.generator is None and bool(np.all(self.matrices == self.matrices[0]))

    def at(self, t) -> np.ndarray:
        """Evaluate ``H`` at a scalar time or an array of times."""
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        if self.generator is not None:
            out = np.array([self.generator(float(s)) for s in ts], dtype=complex)
        elif self.interpolation == "piecewise-constant":
            idx = np.clip(np.searchsorted(self.times, ts, side="right") - 1, 0, len(self.times) - 1)
            out = self.matrices[idx]
        else:
            idx = np.clip(np.searchsorted(self.times, ts, side="right") - 1, 0, len(self.times) - 2)
            t0, t1 = self.times[idx], self.times[idx + 1]
            w = np.clip((ts - t0) / (t1 - t0), 0.0, 1.0)[:, None, None]
            out = (1 - w) * self.matrices[idx] + w * self.matrices[idx + 1]
        return out[0] if np.ndim(t) == 0 else out

    @classmethod
    def constant(cls, h, tau: float) -> "HamiltonianSchedule":
        h = as_complex_matrix(h, "Hamiltonian")
        return cls(np.array([0.0, float(tau)]), np.array([h, h]))

    @classmethod
    def from_function(cls, fn: Callable[[float], np.ndarray], tau: float,
                      samples: int = 101) -> "HamiltonianSchedule":
        times = np.linspace(0.0, float(tau), samples)
        return cls(times, np.array([fn(t) for t in times]), "linear", fn)

    @classmethod
    def piecewise_constant(cls, durations, matrices) -> "HamiltonianSchedule":
        durations = np.asarray(durations, dtype=float)
        if np.any(durations <= 0):
            raise ValidationError("segment durations must be positive")
        mats = [as_complex_matrix(m, "Hamiltonian") for m in matrices]
        if len(mats) != len(durations):
            raise DimensionError("need one matrix per segment")
        times = np.concatenate([[0.0], np.cumsum(durations)])
        return cls(times, np.array(mats + [mats[-1]]))


def uniform_grid(tau: float, steps: int) -> np.ndarray:
    if int(steps) < 1:
        raise ValidationError("steps must be at least 1")
    return np.linspace(0.0, float(tau), int(steps) + 1)


def step_unitaries(schedule: HamiltonianSchedule, grid: np.ndarray, order: int = 2) -> np.ndarray:
    """One-step propagators ``U(t_{i+1}, t_i)`` on an arbitrary grid."""
    dt = np.diff(grid)
    if order == 2:
        return expm_hermitian(schedule.at(grid[:-1] + 0.5 * dt), dt)
    if order == 4:
        (c1, c2), (a1, a2) = _CF4_NODES, _CF4_WEIGHTS
        h1 = schedule.at(grid[:-1] + c1 * dt)
        h2 = schedule.at(grid[:-1] + c2 * dt)
        first = expm_hermitian(a2 * h1 + a1 * h2, dt)
        second = expm_hermitian(a1 * h1 + a2 * h2, dt)
        return second @ first
    raise ValidationError(f"unsupported integrator order {order}; use 2 or 4")


def propagate_on_grid(schedule: HamiltonianSchedule, grid: np.ndarray, order: int = 2) -> np.ndarray:
    steps = step_unitaries(schedule, grid, order)
    out = np.empty((len(grid), schedule.dim, schedule.dim), dtype=complex)
    out[0] = np.eye(schedule.dim)
    for i, s in enumerate(steps):
        out[i + 1] = s @ out[i]
    return out


def propagator(schedule: HamiltonianSchedule, steps: int, order: int = 2) -> np.ndarray:
    """Propagators ``U_t`` at the ``steps + 1`` points of a uniform grid on ``[0, tau]``.

    Each step multiplies by ``exp(-i dt H(t_i + dt/2))`` (``order=2``).  ``order=4``
    uses a two-exponential commutator-free Magnus step at the Gauss points,
    which is useful when a time-dependent loop must close to ~1e-8.
    """
    return propagate_on_grid(schedule, uniform_grid(schedule.duration, steps), order)


def drive_subspace(schedule: HamiltonianSchedule, r_frame, steps: int,
                   order: int = 2) -> tuple[ProjectorCurve, np.ndarray]:
    """Curve ``P_t = U_t P_0 U_t^dagger`` and driven frames ``U_t F_0``.

    Returns the projector curve on the uniform grid and a ``(steps + 1, d, n)``
    stack of frames.  The frames are generally not horizontal.
    """
    f0 = as_frame(r_frame).columns
    if f0.shape[0] != schedule.dim:
        raise DimensionError(f"frame lives in C^{f0.shape[0]} but the schedule acts on C^{schedule.dim}")
    grid = uniform_grid(schedule.duration, steps)
    frames = propagate_on_grid(schedule, grid, order) @ f0
    return ProjectorCurve.from_frames(grid, frames), frames


def ordered_product(factors: np.ndarray, direction: str) -> np.ndarray:
    """Multiply a stack of step factors, later ones on the left (forward) or right (backward)."""
    out = np.eye(factors.shape[-1], dtype=complex)
    if direction == "forward":
        for f in factors:
            out = f @ out
    elif direction == "backward":
        for f in factors:
            out = out @ f
    else:
        raise ValidationError(f"direction must be 'forward' or 'backward', got {direction!r}")
    return out


def ordered_exponential(times, integrand, direction: str = "forward", substeps: int = 1) -> np.ndarray:
    """Time-ordered exponential of a sampled skew-Hermitian integrand.

    The integrand is interpolated linearly between samples and every interval
    is split into ``substeps`` pieces, each contributing the exact exponential
    of its midpoint value times its width.  ``"forward"`` places later
    factors on the left, ``"backward"`` on the right.  A single sample (no
    interval) yields the identity.
    """
    t = np.asarray(times, dtype=float)
    a = np.asarray(integrand, dtype=complex)
    if a.ndim != 3 or a.shape[1] != a.shape[2] or len(t) != len(a):
        raise DimensionError("integrand must be (m, n, n) with one time per sample")
    if len(t) == 0:
        raise ValidationError("ordered exponential needs at least one sample")
    if len(t) == 1:
        return np.eye(a.shape[1], dtype=complex)
    if np.any(np.diff(t) <= 0):
        raise ValidationError("integrand times must be strictly increasing")
    s = int(substeps)
    if s < 1:
        raise ValidationError("substeps must be at least 1")
    w = (np.arange(s) + 0.5) / s
    dt = np.diff(t)[:, None]
    mids = (1 - w)[None, :, None, None] * a[:-1, None] + w[None, :, None, None] * a[1:, None]
    mids = mids * (dt / s)[:, :, None, None]
    mids = 0.5 * (mids - dagger(mids))
    return ordered_product(expm_skew(mids.reshape(-1, a.shape[1], a.shape[1])), direction)


def loop_ratio(length: float, bound: float) -> float:
    """``length / bound``; ``inf`` when ``bound == 0 < length`` and ``nan`` when both vanish."""
    if bound > 0:
        return length / bound
    return float("inf") if length > 0 else float("nan")


@dataclass(frozen=True, eq=False)
class LoopReport:
    """Summary of one simulated loop of the computational space."""

    holonomy: Gate
    bound: float
    length: float
    kinetic_energy: float
    closure_residual: float
    duration: float
    dynamical_operator: Gate | None = None
    eigenphases: tuple[float, ...] = ()
    optimal: bool | None = None
    curve: ProjectorCurve | None = field(default=None, repr=False)

    @property
    def ratio(self) -> float:
        return loop_ratio(self.length, self.bound)

    def to_dict(self) -> dict:
        out = {
            "holonomy": encode_matrix(self.holonomy.matrix),
            "eigenphases": [float(x) for x in self.eigenphases],
            "bound": self.bound,
            "length": self.length,
            "kinetic_energy": self.kinetic_energy,
            "ratio": encode_float(self.ratio),
            "closure_residual": self.closure_residual,
            "duration": self.duration,
        }
        if self.dynamical_operator is not None:
            out["dynamical_operator"] = encode_matrix(self.dynamical_operator.matrix)
        if self.optimal is not None:
            out["optimal"] = self.optimal
        return out
