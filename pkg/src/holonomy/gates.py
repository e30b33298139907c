"""Named gates and the catalog-key parser used by the CLI."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DomainError, ValidationError
from .serialization import decode_matrix

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PHASE_S = np.diag([1, 1j]).astype(complex)
PI8_T = np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def dft_matrix(n: int) -> np.ndarray:
    """Unitary discrete Fourier transform, ``F|j> = n^{-1/2} sum_k e^{2 pi i jk/n} |k>``."""
    if n < 1:
        raise DomainError("Fourier transform size must be positive")
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)


def gamma1(alpha: float, beta: float) -> np.ndarray:
    """One-qubit gate of the resonant Lambda scheme."""
    c, s = np.cos(alpha), np.sin(alpha)
    return np.array([[c, np.exp(-1j * beta) * s], [np.exp(1j * beta) * s, -c]], dtype=complex)


def gamma2(alpha: float, beta: float) -> np.ndarray:
    """Two-qubit gate in the ordered basis |00>, |01>, |10>, |11>."""
    c, s = np.cos(alpha), np.sin(alpha)
    g = np.eye(4, dtype=complex)
    g[0, 0], g[3, 3] = c, -c
    g[0, 3] = np.exp(-1j * beta) * s
    g[3, 0] = np.exp(1j * beta) * s
    return g


_FIXED = {"hadamard": HADAMARD, "phase_s": PHASE_S, "pi8_t": PI8_T, "cnot": CNOT}


def named_gate(key: str) -> np.ndarray:
    """Resolve a catalog key or ``@path.json`` into a gate matrix.

    Keys: ``hadamard``, ``phase_s``, ``pi8_t``, ``cnot``, ``qft:<n>``,
    ``gamma1:<alpha>:<beta>``, ``gamma2:<alpha>:<beta>`` (radians).
    """
    if key.startswith("@"):
        path = Path(key[1:])
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read gate file {path}: {exc}") from exc
        if isinstance(data, dict):
            data = data.get("matrix")
        return decode_matrix(data)
    if key in _FIXED:
        return _FIXED[key].copy()
    name, *args = key.split(":")
    try:
        if name == "qft" and len(args) == 1:
            return dft_matrix(int(args[0]))
        if name in ("gamma1", "gamma2") and len(args) == 2:
            alpha, beta = float(args[0]), float(args[1])
            return gamma1(alpha, beta) if name == "gamma1" else gamma2(alpha, beta)
    except ValueError as exc:
        raise ValidationError(f"malformed gate key {key!r}: {exc}") from exc
    raise ValidationError(f"unknown gate key {key!r}")
