"""Connection, horizontal lifts, holonomy and the dynamical operator.

Everything here works on sampled curves.  A curve of frames is a
``(m, d, n)`` array; a curve of subspaces is a :class:`ProjectorCurve`.
Gates are returned as ``n x n`` matrices relative to the initial frame.
"""

from __future__ import annotations

import numpy as np

from ._linalg import commutator, dagger, expm_hermitian, polar_unitary, unitarity_defect
from .errors import ClosureError, DimensionError, PreconditionError, ResolutionError, ValidationError
from .frames import (
    FRAME_ATOL,
    Frame,
    Gate,
    Projector,
    ProjectorCurve,
    as_frame,
    check_time_grid,
    closure_tolerance,
)
from .propagate import HamiltonianSchedule, ordered_product, step_unitaries, uniform_grid

__all__ = [
    "Frame",
    "Gate",
    "Projector",
    "ProjectorCurve",
    "connection_form",
    "horizontal_lift",
    "holonomy_of_curve",
    "holonomy_from_any_lift",
    "dynamical_operator",
]

DEFAULT_STEPS = 4000
SPAN_ATOL = 1e-8


def connection_form(frame, velocity) -> np.ndarray:
    """The u(n)-valued connection ``F^dagger Fdot`` evaluated on a tangent vector."""
    f = as_frame(frame).columns
    v = np.asarray(velocity, dtype=complex)
    if v.shape != f.shape:
        raise DimensionError(f"velocity shape {v.shape} does not match frame shape {f.shape}")
    return dagger(f) @ v


def _derivative(samples: np.ndarray, times: np.ndarray) -> np.ndarray:
    edge = 2 if len(times) >= 3 else 1
    return np.gradient(samples, times, axis=0, edge_order=edge)


def _step_generators(curve_p: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Per-step Magnus exponents of ``Fdot = Pdot F``: ``dP`` plus the commutator term."""
    pdot = _derivative(curve_p, times)
    dp = np.diff(curve_p, axis=0)
    dpdot = np.diff(pdot, axis=0)
    dt = np.diff(times)[:, None, None]
    return dp + (dt / 12.0) * commutator(dpdot, dp)


def _check_resolution(p: np.ndarray) -> None:
    jumps = np.linalg.norm(np.diff(p, axis=0), ord=2, axis=(1, 2))
    worst = float(np.max(jumps, initial=0.0))
    if worst >= 1.0:
        raise ResolutionError(f"consecutive projectors differ by {worst:.3f} in norm; refine the grid")


def _check_closed(residual: float, n: int, tol: float | None) -> None:
    tol = closure_tolerance(n) if tol is None else tol
    if residual > tol:
        raise ClosureError(residual, tol)


def horizontal_lift(curve: ProjectorCurve, initial_frame) -> np.ndarray:
    """Horizontal curve of frames over ``curve`` starting at ``initial_frame``.

    Integrates ``Fdot = Pdot F`` step by step.  The step exponent is the
    exact increment ``P_{i+1} - P_i`` corrected by the second Magnus term
    built from central-difference velocities, and every step ends with a
    projection onto the next subspace followed by a polar
    re-orthonormalization, so each returned frame spans its projector
    exactly.  Returns a ``(m, d, n)`` array.
    """
    f0 = as_frame(initial_frame).columns
    p = curve.projectors
    if f0.shape[0] != curve.d or f0.shape[1] != curve.n:
        raise DimensionError(f"frame of shape {f0.shape} cannot span a rank-{curve.n} projector on C^{curve.d}")
    span_gap = float(np.linalg.norm(f0 @ dagger(f0) - p[0]))
    if span_gap > SPAN_ATOL:
        raise PreconditionError(f"initial frame does not span P(0) (gap {span_gap:.3e})")
    _check_resolution(p)
    gens = _step_generators(p, curve.times)
    frames = np.empty((len(p), *f0.shape), dtype=complex)
    frames[0] = f0
    for i, x in enumerate(gens):
        f = frames[i]
        term = f
        acc = f.copy()
        for k in range(1, 5):
            term = (x @ term) / k
            acc += term
        frames[i + 1] = polar_unitary(p[i + 1] @ acc)
    return frames


def holonomy_of_curve(curve: ProjectorCurve, initial_frame, closure_tol: float | None = None) -> Gate:
    """Holonomy of a loop of subspaces as the matrix ``F_0^dagger F_M`` of its horizontal lift."""
    f0 = as_frame(initial_frame)
    _check_closed(curve.closure_residual, curve.n, closure_tol)
    frames = horizontal_lift(curve, f0)
    return Gate(dagger(f0.columns) @ frames[-1], reference_frame=f0, atol=1e-8)


def _frame_stack(frames) -> np.ndarray:
    f = np.asarray(frames, dtype=complex)
    if f.ndim != 3:
        raise DimensionError(f"frames must be a (m, d, n) stack, got shape {f.shape}")
    defect = unitarity_defect(f)
    if defect > FRAME_ATOL:
        raise ValidationError(f"frame sample has non-orthonormal columns (defect {defect:.3e})")
    return f


def holonomy_from_any_lift(frames, times, closure_tol: float | None = None) -> Gate:
    """Holonomy from an arbitrary (not necessarily horizontal) lift of a loop.

    Evaluates ``F_0^dagger F_M`` times the forward time-ordered exponential
    of ``-integral F^dagger Fdot``.  Each step factor is the unitary part of
    the overlap ``F_i^dagger F_{i+1}`` after removing the skew contribution of
    the subspace motion (second Magnus term), which makes the factors exact
    for purely vertical motion and fourth-order accurate in general.
    """
    f = _frame_stack(frames)
    t = np.asarray(times, dtype=float)
    if len(t) != len(f):
        raise DimensionError("need one time per frame")
    check_time_grid(t)
    n = f.shape[2]
    p = f @ dagger(f)
    _check_closed(float(np.linalg.norm(p[-1] - p[0])), n, closure_tol)
    _check_resolution(p)
    omega2 = _step_generators(p, t) - np.diff(p, axis=0)
    overlap = dagger(f[:-1]) @ f[1:]
    corrected = overlap - dagger(f[:-1]) @ omega2 @ f[:-1] @ polar_unitary(overlap)
    vertical = polar_unitary(corrected)
    transport = ordered_product(dagger(vertical), "forward")
    return Gate(dagger(f[0]) @ f[-1] @ transport, reference_frame=Frame(f[0]), atol=1e-8)


def dynamical_operator(schedule: HamiltonianSchedule, initial_frame, steps: int = DEFAULT_STEPS,
                       order: int = 2, closure_tol: float | None = None) -> Gate:
    """Backward time-ordered exponential of ``-i F_t^dagger H_t F_t`` along ``F_t = U_t F_0``.

    The integrand is taken at step midpoints, with the midpoint frame obtained
    by a half step from the left grid point.  The loop must close.
    """
    f0 = as_frame(initial_frame)
    if f0.d != schedule.dim:
        raise DimensionError(f"frame lives in C^{f0.d} but the schedule acts on C^{schedule.dim}")
    grid = uniform_grid(schedule.duration, steps)
    units = step_unitaries(schedule, grid, order)
    frames = np.empty((len(grid), f0.d, f0.n), dtype=complex)
    frames[0] = f0.columns
    for i, u in enumerate(units):
        frames[i + 1] = u @ frames[i]
    p_end = frames[-1] @ dagger(frames[-1])
    _check_closed(float(np.linalg.norm(p_end - frames[0] @ dagger(frames[0]))), f0.n, closure_tol)
    dt = np.diff(grid)
    mid_t = grid[:-1] + 0.5 * dt
    h_mid = schedule.at(mid_t)
    half = expm_hermitian(h_mid, 0.5 * dt) @ frames[:-1]
    local = dagger(half) @ h_mid @ half
    factors = expm_hermitian(local, dt)
    return Gate(ordered_product(factors, "backward"), reference_frame=f0, atol=1e-8)
