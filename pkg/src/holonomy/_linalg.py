"""Small dense linear-algebra helpers shared across modules."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ValidationError


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(a, -1, -2))


def as_complex_matrix(a, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be two-dimensional, got shape {arr.shape}")
    return arr


def require_square(a: np.ndarray, name: str = "matrix") -> None:
    if a.shape[-1] != a.shape[-2]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")


def hermitian_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - dagger(a)), initial=0.0))


def require_hermitian(a: np.ndarray, atol: float, name: str = "matrix") -> None:
    require_square(a, name)
    defect = hermitian_defect(a)
    if defect > atol:
        raise ValidationError(f"{name} is not Hermitian (defect {defect:.3e} > {atol:.1e})")


def unitarity_defect(u: np.ndarray) -> float:
    eye = np.eye(u.shape[-1])
    return float(np.max(np.linalg.norm(dagger(u) @ u - eye, axis=(-2, -1)), initial=0.0))


def polar_unitary(x: np.ndarray) -> np.ndarray:
    """Isometric factor of the polar decomposition (nearest frame to ``x``)."""
    w, _, vh = np.linalg.svd(x, full_matrices=False)
    return w @ vh


def expm_hermitian(h: np.ndarray, dt) -> np.ndarray:
    """``exp(-i dt h)`` for Hermitian ``h`` (stacks allowed) via eigendecomposition."""
    h = 0.5 * (h + dagger(h))
    w, v = np.linalg.eigh(h)
    phases = np.exp(-1j * np.asarray(dt)[..., None] * w)
    return (v * phases[..., None, :]) @ dagger(v)


def expm_skew(a: np.ndarray) -> np.ndarray:
    """``exp(a)`` for skew-Hermitian ``a`` (stacks allowed); exactly unitary up to rounding."""
    return expm_hermitian(1j * a, 1.0)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
