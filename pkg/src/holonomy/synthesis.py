"""Time-optimal loops realizing a prescribed gate, and parallel-transporting companions.

Given a gate ``G`` on an ``n``-dimensional subspace ``R`` of ``C^d`` with
``k`` unit eigenvalues and ``d >= 2n - k``, :func:`plan_optimal_loop` builds a
time-independent Hamiltonian that is a direct sum of ``n - k`` qubit
Hamiltonians.  Each eigenvector ``u_j`` of ``G`` rotates in the plane it
spans with a vector ``v_j`` of the orthogonal complement, returning after
one period with phase ``e^{i theta_j}``; the length of the resulting loop is
exactly the isoholonomic bound of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np
import scipy.linalg

from ._linalg import as_complex_matrix, dagger
from .analysis import simulate_loop
from .bounds import PHASE_ATOL, gate_eigensystem, isoholonomic_bound
from .bundle import DEFAULT_STEPS
from .errors import ConvergenceError, DimensionConditionError, DimensionError, DomainError, ValidationError
from .frames import Frame, Gate, Projector, as_frame
from .propagate import HamiltonianSchedule, LoopReport, propagate_on_grid, step_unitaries

HOLONOMY_ATOL = 1e-5
LENGTH_RTOL = 1e-4


@dataclass(frozen=True, eq=False)
class OptimalLoopPlan:
    gate: Gate
    r_frame: Frame
    hamiltonian: np.ndarray
    parallel_hamiltonian: HamiltonianSchedule
    period: float
    eigen_frame: Frame
    eigenphases: tuple[float, ...]
    qubit_params: tuple[tuple[float, float], ...]
    zero_vectors: np.ndarray
    one_vectors: np.ndarray
    eps0: float
    eps1: float

    @property
    def bound(self) -> float:
        return isoholonomic_bound(self.gate).bound

    @property
    def schedule(self) -> HamiltonianSchedule:
        return HamiltonianSchedule.constant(self.hamiltonian, self.period)


def _parallel_generator(h: np.ndarray, p: np.ndarray):
    k = h @ p + p @ h - 2 * p @ h @ p
    w, v = np.linalg.eigh(h)

    def generator(t: float) -> np.ndarray:
        u = (v * np.exp(-1j * t * w)) @ dagger(v)
        return u @ k @ dagger(u)

    return generator


def plan_optimal_loop(gate, r_frame=None, d: int | None = None,
                      eps0: float = 0.0, eps1: float = 1.0, samples: int = 257) -> OptimalLoopPlan:
    """Construct a Hamiltonian whose loop has holonomy ``gate`` and length ``L(gate)``.

    ``gate`` is an ``n x n`` unitary relative to ``r_frame`` (by default the
    first ``n`` basis vectors of ``C^d``).  ``samples`` only controls how densely
    the parallel-transporting companion is recorded; it is evaluated exactly.
    """
    g = gate if isinstance(gate, Gate) else Gate(as_complex_matrix(gate, "gate"), atol=1e-8)
    n = g.n
    if r_frame is None:
        if d is None:
            raise ValidationError("either r_frame or d must be given")
        r_frame = Frame.computational(int(d), n)
    frame = as_frame(r_frame)
    if d is None:
        d = frame.d
    if frame.d != d or frame.n != n:
        raise DimensionError(f"reference frame has shape {frame.columns.shape}, expected ({d}, {n})")
    if not eps0 < eps1:
        raise DomainError(f"need eps0 < eps1, got eps0={eps0}, eps1={eps1}")

    theta, z = gate_eigensystem(g)
    rotating = np.abs(theta) > PHASE_ATOL
    # Rotating eigenvectors first, fixed ones (theta = 0) last.
    order = np.concatenate([np.flatnonzero(rotating), np.flatnonzero(~rotating)])
    theta, z = theta[order], z[:, order]
    m = int(np.sum(rotating))
    k = n - m
    if d < 2 * n - k:
        raise DimensionConditionError(
            f"ambient dimension {d} is below 2n - k = {2 * n - k} for this gate")

    u = frame.columns @ z
    complement = scipy.linalg.null_space(dagger(frame.columns))
    v = complement[:, :m]
    lifted = np.mod(theta[:m], 2 * pi)
    b = np.sqrt(lifted / (2 * pi))
    a = np.sqrt(1 - b**2)
    ones = b * u[:, :m] + a * v
    zeros = a * u[:, :m] - b * v
    h = eps0 * zeros @ dagger(zeros) + eps1 * ones @ dagger(ones)
    h = 0.5 * (h + dagger(h))

    period = 2 * pi / (eps1 - eps0)
    p0 = frame.columns @ dagger(frame.columns)
    gen = _parallel_generator(h, p0)
    companion = HamiltonianSchedule.from_function(gen, period, samples)
    return OptimalLoopPlan(
        gate=Gate(g.matrix, reference_frame=frame, atol=g.atol),
        r_frame=frame,
        hamiltonian=h,
        parallel_hamiltonian=companion,
        period=period,
        eigen_frame=Frame(u),
        eigenphases=tuple(float(x) for x in theta),
        qubit_params=tuple((float(x), float(y)) for x, y in zip(a, b)),
        zero_vectors=zeros,
        one_vectors=ones,
        eps0=float(eps0),
        eps1=float(eps1),
    )


def execute_plan(plan: OptimalLoopPlan, steps: int = DEFAULT_STEPS, check: bool = True) -> LoopReport:
    """Run the planned Hamiltonian for one period and measure the loop.

    With ``check`` the measured holonomy must match the target within 1e-5
    (Frobenius) and the length must match ``L(G)`` within ``1e-4 max(1, L)``;
    otherwise :class:`ConvergenceError` is raised.
    """
    if steps < 100:
        raise ValidationError("execute_plan needs at least 100 steps")
    report = simulate_loop(plan.schedule, plan.r_frame, steps)
    if check:
        err = float(np.linalg.norm(report.holonomy.matrix - plan.gate.matrix))
        if err > HOLONOMY_ATOL:
            raise ConvergenceError(f"holonomy misses target by {err:.3e}")
        gap = abs(report.length - report.bound)
        if gap > LENGTH_RTOL * max(1.0, report.bound):
            raise ConvergenceError(f"loop length {report.length} differs from bound {report.bound}")
    return report


def parallel_companion(schedule: HamiltonianSchedule, p0, substeps: int = 16) -> HamiltonianSchedule:
    """Parallel-transporting Hamiltonian ``H P + P H - 2 P H P`` driving ``P0`` like ``schedule``.

    For a time-independent schedule the companion is returned with its exact
    generator ``e^{-itH} (H P0 + P0 H - 2 P0 H P0) e^{itH}``.  Otherwise ``P_t``
    is propagated with ``substeps`` fourth-order steps per sample interval; the
    companion is evaluated by one further step from the nearest recorded time.
    """
    p = Projector(np.asarray(p0, dtype=complex)).matrix
    if p.shape[0] != schedule.dim:
        raise DimensionError(f"projector acts on C^{p.shape[0]} but the schedule acts on C^{schedule.dim}")
    times = schedule.times
    if schedule.is_time_independent:
        gen = _parallel_generator(schedule.matrices[0], p)
        return HamiltonianSchedule(times, np.array([gen(t) for t in times]), "linear", gen)
    s = int(substeps)
    fine = np.concatenate([np.linspace(a, b, s, endpoint=False) for a, b in zip(times[:-1], times[1:])]
                          + [times[-1:]])
    u = propagate_on_grid(schedule, fine, order=4)

    def companion(us: np.ndarray, h: np.ndarray) -> np.ndarray:
        pt = us @ p @ dagger(us)
        hbar = h @ pt + pt @ h - 2 * pt @ h @ pt
        return 0.5 * (hbar + dagger(hbar))

    def generator(t: float) -> np.ndarray:
        j = int(np.clip(np.searchsorted(fine, t, side="right") - 1, 0, len(fine) - 1))
        ut = u[j] if t <= fine[j] else step_unitaries(schedule, np.array([fine[j], t]), 4)[0] @ u[j]
        return companion(ut, schedule.at(t))

    return HamiltonianSchedule(fine, companion(u, schedule.at(fine)), "linear", generator)


def explicit_parallel_hamiltonian(plan: OptimalLoopPlan, t: float) -> np.ndarray:
    """Closed-form companion of a plan in its qubit-block basis (real ``a_j``, ``b_j``)."""
    w = plan.eps1 - plan.eps0
    out = np.zeros_like(plan.hamiltonian)
    for (a, b), z, o in zip(plan.qubit_params, plan.zero_vectors.T, plan.one_vectors.T):
        diag = 2 * a * b * (np.outer(o, o.conj()) - np.outer(z, z.conj()))
        off = (a * a - b * b) * (np.exp(1j * t * w) * np.outer(z, o.conj())
                                 + np.exp(-1j * t * w) * np.outer(o, z.conj()))
        out += w * a * b * (diag + off)
    return out
