"""JSON encoding of complex matrices and frames.

Complex numbers are written as ``[re, im]`` pairs, matrices as row-major
nested lists of pairs, and frames as lists of column vectors.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ValidationError


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def encode_matrix(a) -> list[list[list[float]]]:
    a = np.asarray(a, dtype=complex)
    return [[encode_complex(z) for z in row] for row in a]


def encode_frame(f) -> list[list[list[float]]]:
    f = np.asarray(f, dtype=complex)
    return [[encode_complex(z) for z in col] for col in f.T]


def encode_float(x: float):
    """Plain float, or ``"inf"`` / ``None`` for values JSON cannot hold."""
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _decode_entry(z) -> complex:
    if isinstance(z, (int, float)):
        return complex(z)
    if isinstance(z, (list, tuple)) and len(z) == 2 and all(isinstance(v, (int, float)) for v in z):
        return complex(z[0], z[1])
    raise ValidationError(f"complex entry must be a number or an [re, im] pair, got {z!r}")


def decode_matrix(data) -> np.ndarray:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValidationError("matrix must be a non-empty list of rows")
    width = len(data[0])
    if any(len(r) != width for r in data):
        raise ValidationError("matrix rows must have equal length")
    return np.array([[_decode_entry(z) for z in row] for row in data], dtype=complex)


def decode_frame(data) -> np.ndarray:
    """Inverse of :func:`encode_frame`; returns a ``d x n`` array."""
    return decode_matrix(data).T
