"""Speeds, lengths and kinetic energies on the Grassmann and Stiefel manifolds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ._linalg import as_complex_matrix, commutator, dagger, hermitian_defect
from .errors import DimensionError, ResolutionError, ValidationError
from .frames import ProjectorCurve, check_time_grid


@dataclass(frozen=True)
class CurveFunctionals:
    length: float
    kinetic_energy: float
    mean_speed: float
    duration: float


def _derivative(samples: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Fourth-order differences on uniform grids, second-order ``np.gradient`` otherwise."""
    if len(times) < 3:
        raise ResolutionError("at least three samples are needed to differentiate a curve")
    steps = np.diff(times)
    h = float(steps.mean())
    if len(times) < 5 or np.ptp(steps) > 1e-9 * h:
        return np.gradient(samples, times, axis=0, edge_order=2)
    f = samples
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    out[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    out[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    out[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12 * h)
    out[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12 * h)
    return out


def grassmann_speed_sq(pdot) -> float:
    """Squared speed ``(1/2) tr(Pdot^2)`` of a tangent vector to the Grassmannian."""
    v = as_complex_matrix(pdot, "Pdot")
    if v.shape[0] != v.shape[1]:
        raise DimensionError(f"Pdot must be square, got {v.shape}")
    if hermitian_defect(v) > 1e-8:
        raise ValidationError("Pdot must be Hermitian")
    return max(0.0, 0.5 * float(np.sum(np.abs(v) ** 2)))


def _speed_sq_stack(pdot: np.ndarray) -> np.ndarray:
    return 0.5 * np.sum(np.abs(pdot) ** 2, axis=(1, 2))


def _functionals(times: np.ndarray, speed_sq: np.ndarray) -> CurveFunctionals:
    speed = np.sqrt(np.maximum(speed_sq, 0.0))
    tau = float(times[-1] - times[0])
    length = float(np.trapezoid(speed, times))
    energy = 0.5 * float(np.trapezoid(speed_sq, times))
    return CurveFunctionals(length, energy, length / tau, tau)


def speed_profile(curve: ProjectorCurve) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Times, Grassmann speeds and cumulative length at every sample of ``curve``."""
    speed_sq = _speed_sq_stack(_derivative(curve.projectors, curve.times))
    speed = np.sqrt(speed_sq)
    return curve.times, speed, cumulative_trapezoid(speed, curve.times, initial=0.0)


def grassmann_speed_sq_profile(curve: ProjectorCurve) -> np.ndarray:
    return _speed_sq_stack(_derivative(curve.projectors, curve.times))


def curve_length(curve: ProjectorCurve) -> CurveFunctionals:
    """Length, kinetic energy and mean speed of a sampled curve of projectors.

    Velocities are fourth-order finite differences on uniform grids;
    integrals use the composite trapezoid rule on the given grid.
    """
    return _functionals(curve.times, grassmann_speed_sq_profile(curve))


def skewness(h, p) -> float:
    """``-(1/2) tr([H, P]^2)``, the squared speed at which ``H`` moves the range of ``P``."""
    h = as_complex_matrix(h, "Hamiltonian")
    p = as_complex_matrix(p, "projector")
    if h.shape != p.shape or h.shape[0] != h.shape[1]:
        raise DimensionError(f"Hamiltonian {h.shape} and projector {p.shape} must be square and equal")
    c = commutator(h, p)
    return max(0.0, -0.5 * float(np.trace(c @ c).real))


def stiefel_curve_length(frames, times) -> CurveFunctionals:
    """Functionals of a curve of frames under ``g_V(X, Y) = Re tr(X^dagger Y)``."""
    f = np.asarray(frames, dtype=complex)
    t = np.asarray(times, dtype=float)
    if f.ndim != 3 or len(f) != len(t):
        raise DimensionError("frames must be a (m, d, n) stack with one time per frame")
    check_time_grid(t)
    fdot = _derivative(f, t)
    speed_sq = np.real(np.trace(dagger(fdot) @ fdot, axis1=1, axis2=2))
    return _functionals(t, speed_sq)
