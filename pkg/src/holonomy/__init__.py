"""Holonomies, lengths and isoholonomic bounds of loops of subspaces."""

from .analysis import simulate_loop
from .bounds import SpectralReport, isoholonomic_bound, qft_bound, runtime_bound, state_bound
from .bundle import (
    connection_form,
    dynamical_operator,
    holonomy_from_any_lift,
    holonomy_of_curve,
    horizontal_lift,
)
from .errors import (
    ClosureError,
    ConvergenceError,
    DimensionConditionError,
    DimensionError,
    DomainError,
    HolonomyError,
    NumericalError,
    PreconditionError,
    ResolutionError,
    ValidationError,
)
from .frames import Frame, Gate, Projector, ProjectorCurve
from .fuzz import fuzz_inequality
from .gates import named_gate
from .geometry import CurveFunctionals, curve_length, grassmann_speed_sq, skewness, stiefel_curve_length
from .lambda_system import (
    LambdaOneQubit,
    LambdaTwoQubit,
    PulseEnvelope,
    certify_optimality,
    one_qubit_hamiltonian,
    two_qubit_hamiltonian,
)
from .propagate import HamiltonianSchedule, LoopReport, drive_subspace, ordered_exponential, propagator
from .synthesis import OptimalLoopPlan, execute_plan, parallel_companion, plan_optimal_loop

__all__ = [
    "ClosureError",
    "ConvergenceError",
    "CurveFunctionals",
    "DimensionConditionError",
    "DimensionError",
    "DomainError",
    "Frame",
    "Gate",
    "HamiltonianSchedule",
    "HolonomyError",
    "LambdaOneQubit",
    "LambdaTwoQubit",
    "LoopReport",
    "NumericalError",
    "OptimalLoopPlan",
    "PreconditionError",
    "Projector",
    "ProjectorCurve",
    "PulseEnvelope",
    "ResolutionError",
    "SpectralReport",
    "ValidationError",
    "certify_optimality",
    "connection_form",
    "curve_length",
    "drive_subspace",
    "dynamical_operator",
    "execute_plan",
    "fuzz_inequality",
    "grassmann_speed_sq",
    "holonomy_from_any_lift",
    "holonomy_of_curve",
    "horizontal_lift",
    "isoholonomic_bound",
    "named_gate",
    "one_qubit_hamiltonian",
    "ordered_exponential",
    "parallel_companion",
    "plan_optimal_loop",
    "propagator",
    "qft_bound",
    "runtime_bound",
    "simulate_loop",
    "skewness",
    "state_bound",
    "stiefel_curve_length",
    "two_qubit_hamiltonian",
]

__version__ = "0.1.0"
