"""Isoholonomic bounds of gates and the associated runtime bound."""

from __future__ import annotations

from dataclasses import dataclass
from math import floor, pi, sqrt

import numpy as np
import scipy.linalg

from .errors import DomainError
from .frames import as_gate
from .gates import named_gate

__all__ = [
    "SpectralReport",
    "gate_eigensystem",
    "isoholonomic_bound",
    "named_gate",
    "qft_bound",
    "runtime_bound",
    "state_bound",
]

# Phases at most this large count as unit eigenvalues.
PHASE_ATOL = 1e-9
# Eigenphases within this distance of -pi are reported on the +pi branch.
BRANCH_ATOL = 1e-12


@dataclass(frozen=True)
class SpectralReport:
    eigenphases: tuple[float, ...]
    bound: float
    unit_eigenvalue_count: int


def principal_arguments(eigenvalues) -> np.ndarray:
    theta = np.angle(np.asarray(eigenvalues, dtype=complex))
    theta = np.where(theta <= -pi + BRANCH_ATOL, pi, theta)
    # Unit eigenvalues are reported as exactly zero phase; see PHASE_ATOL.
    return np.where(np.abs(theta) <= PHASE_ATOL, 0.0, theta)


def state_bound(theta: float) -> float:
    """Shortest length of a loop of pure states with holonomy ``e^{i theta}``."""
    theta = float(theta)
    if not -pi < theta <= pi:
        raise DomainError(f"theta must lie in (-pi, pi], got {theta}")
    a = abs(theta)
    return sqrt(a * (2 * pi - a))


def _bound_from_phases(theta: np.ndarray) -> float:
    a = np.abs(theta)
    return float(np.sqrt(np.sum(a * (2 * pi - a))))


def gate_eigensystem(gate) -> tuple[np.ndarray, np.ndarray]:
    """Principal eigenphases and an orthonormal eigenbasis (columns) of a unitary.

    Uses the complex Schur form, whose unitary factor diagonalizes a normal
    matrix even when eigenvalues repeat.  Phases come back in the canonical
    order of :func:`isoholonomic_bound`.
    """
    u = as_gate(gate).matrix
    t, z = scipy.linalg.schur(u, output="complex")
    theta = principal_arguments(np.diag(t))
    order = np.lexsort((-theta, -np.abs(theta)))
    return theta[order], z[:, order]


def isoholonomic_bound(gate) -> SpectralReport:
    """``L(G) = sqrt(sum_j |theta_j| (2 pi - |theta_j|))`` over the principal eigenphases."""
    theta, _ = gate_eigensystem(gate)
    k = int(np.sum(np.abs(theta) <= PHASE_ATOL))
    return SpectralReport(tuple(float(x) for x in theta), _bound_from_phases(theta), k)


def qft_bound(n: int) -> float:
    """Closed-form isoholonomic bound of the ``n``-dimensional Fourier transform."""
    if int(n) != n or n < 1:
        raise DomainError(f"Fourier transform size must be a positive integer, got {n}")
    n = int(n)
    return pi * sqrt(floor((n + 2) / 4) + 0.75 * (floor((n + 1) / 4) + floor((n - 1) / 4)))


def runtime_bound(bound: float, mean_speed: float) -> float:
    """Minimal evolution time ``L(G) / <<speed>>`` of a loop realizing a gate."""
    if mean_speed <= 0:
        raise DomainError(f"mean speed must be positive, got {mean_speed}")
    if bound < 0:
        raise DomainError(f"bound must be nonnegative, got {bound}")
    return bound / mean_speed
