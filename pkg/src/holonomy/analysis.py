"""End-to-end measurement of a Hamiltonian-driven loop."""

from __future__ import annotations

from .bounds import isoholonomic_bound
from .bundle import DEFAULT_STEPS, dynamical_operator, holonomy_of_curve
from .frames import as_frame
from .geometry import curve_length
from .propagate import HamiltonianSchedule, LoopReport, drive_subspace

OPTIMALITY_RTOL = 1e-3


def simulate_loop(schedule: HamiltonianSchedule, r_frame, steps: int = DEFAULT_STEPS,
                  order: int = 2, closure_tol: float | None = None) -> LoopReport:
    """Drive ``span(r_frame)`` with ``schedule`` and measure holonomy, length and bound."""
    f0 = as_frame(r_frame)
    curve, _ = drive_subspace(schedule, f0, steps, order)
    gamma = holonomy_of_curve(curve, f0, closure_tol)
    spectrum = isoholonomic_bound(gamma)
    functionals = curve_length(curve)
    dyn = dynamical_operator(schedule, f0, steps, order, closure_tol)
    optimal = functionals.length <= (1 + OPTIMALITY_RTOL) * spectrum.bound + 1e-12
    return LoopReport(
        holonomy=gamma,
        bound=spectrum.bound,
        length=functionals.length,
        kinetic_energy=functionals.kinetic_energy,
        closure_residual=curve.closure_residual,
        duration=schedule.duration,
        dynamical_operator=dyn,
        eigenphases=spectrum.eigenphases,
        optimal=optimal,
        curve=curve,
    )
