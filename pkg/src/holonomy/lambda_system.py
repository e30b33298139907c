"""Resonant Lambda-system schemes for one- and two-qubit holonomic gates.

One qubit lives on the basis ``(|0>, |1>, |e>)``.  Two ions use the product
basis ``|00>, |01>, |0e>, |10>, |11>, |1e>, |e0>, |e1>, |ee>`` (index
``3 a + b`` with ``0, 1, e -> 0, 1, 2``).  Angles are in radians.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .analysis import simulate_loop
from .bundle import DEFAULT_STEPS
from .errors import DomainError, ValidationError
from .frames import Frame
from .gates import gamma1, gamma2
from .propagate import HamiltonianSchedule, LoopReport

ENVELOPE_KINDS = ("square", "sin2", "custom-sampled")
COUPLING_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class PulseEnvelope:
    """Common non-negative envelope ``Omega(t)`` supported on ``[0, duration]``."""

    kind: str
    duration: float
    amplitude: float = 1.0
    samples: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in ENVELOPE_KINDS:
            raise ValidationError(f"unknown envelope kind {self.kind!r}")
        if not self.duration > 0:
            raise DomainError("pulse duration must be positive")
        if self.kind == "custom-sampled":
            if self.samples is None:
                raise ValidationError("custom envelope needs (times, values) samples")
            t, y = (np.asarray(x, dtype=float) for x in self.samples)
            if t.ndim != 1 or t.shape != y.shape or len(t) < 2:
                raise ValidationError("custom envelope samples must be two equal 1-d arrays")
            if np.any(np.diff(t) <= 0) or t[0] != 0 or not np.isclose(t[-1], self.duration):
                raise ValidationError("custom envelope times must increase from 0 to the duration")
            if np.any(y < 0):
                raise ValidationError("envelope must be non-negative")
            object.__setattr__(self, "samples", (t, y))
        elif self.amplitude < 0:
            raise ValidationError("envelope must be non-negative")

    @classmethod
    def square(cls, duration: float, area: float = pi) -> "PulseEnvelope":
        return cls("square", duration, area / duration)

    @classmethod
    def sin2(cls, duration: float, area: float = pi) -> "PulseEnvelope":
        return cls("sin2", duration, 2 * area / duration)

    @classmethod
    def custom(cls, times, values) -> "PulseEnvelope":
        t = np.asarray(times, dtype=float)
        return cls("custom-sampled", float(t[-1]), samples=(t, np.asarray(values, dtype=float)))

    def __call__(self, t: float) -> float:
        if t < 0 or t > self.duration:
            return 0.0
        if self.kind == "square":
            return self.amplitude
        if self.kind == "sin2":
            return self.amplitude * np.sin(pi * t / self.duration) ** 2
        return float(np.interp(t, *self.samples))

    @property
    def area(self) -> float:
        if self.kind == "square":
            return self.amplitude * self.duration
        if self.kind == "sin2":
            return 0.5 * self.amplitude * self.duration
        return float(np.trapezoid(self.samples[1], self.samples[0]))


@dataclass(frozen=True)
class LambdaOneQubit:
    alpha: float
    beta: float

    @property
    def omega0(self) -> complex:
        return np.sin(self.alpha / 2) * np.exp(0.5j * self.beta)

    @property
    def omega1(self) -> complex:
        return -np.cos(self.alpha / 2) * np.exp(-0.5j * self.beta)

    def gate(self) -> np.ndarray:
        return gamma1(self.alpha, self.beta)


@dataclass(frozen=True)
class LambdaTwoQubit:
    alpha: float
    beta: float

    @property
    def omega00(self) -> complex:
        return np.sin(self.alpha / 2) * np.exp(0.5j * self.beta)

    @property
    def omega11(self) -> complex:
        return -np.cos(self.alpha / 2) * np.exp(-0.5j * self.beta)

    @property
    def omega0e(self) -> complex:
        return complex(np.sin(self.alpha / 2))

    @property
    def omega1e(self) -> complex:
        return complex(-np.cos(self.alpha / 2))

    def gate(self) -> np.ndarray:
        return gamma2(self.alpha, self.beta)


def _couple(d: int, pairs) -> np.ndarray:
    """Hermitian ``sum w |target><source| + h.c.`` from ``(target, source, w)`` triples."""
    h = np.zeros((d, d), dtype=complex)
    for target, source, w in pairs:
        h[target, source] += w
        h[source, target] += np.conj(w)
    return h


def _check_normalized(*ws: complex) -> None:
    total = sum(abs(w) ** 2 for w in ws)
    if abs(total - 1) > COUPLING_ATOL:
        raise ValidationError(f"couplings must satisfy sum |w|^2 = 1, got {total}")


def one_qubit_coupling(p: LambdaOneQubit) -> np.ndarray:
    _check_normalized(p.omega0, p.omega1)
    e = 2
    return _couple(3, [(e, 0, p.omega0), (e, 1, p.omega1)])


def two_qubit_coupling(p: LambdaTwoQubit) -> np.ndarray:
    _check_normalized(p.omega00, p.omega11)
    _check_normalized(p.omega0e, p.omega1e)
    idx = {a + b: 3 * i + j for i, a in enumerate("01e") for j, b in enumerate("01e")}
    h0 = _couple(9, [(idx["ee"], idx["00"], p.omega00), (idx["ee"], idx["11"], p.omega11)])
    h1 = _couple(9, [(idx["e0"], idx["0e"], p.omega0e), (idx["e1"], idx["1e"], p.omega1e)])
    return h0 + h1


def _schedule(coupling: np.ndarray, env: PulseEnvelope, samples: int) -> HamiltonianSchedule:
    return HamiltonianSchedule.from_function(lambda t: env(t) * coupling, env.duration, samples)


def one_qubit_hamiltonian(p: LambdaOneQubit, env: PulseEnvelope,
                          samples: int = DEFAULT_STEPS + 1) -> HamiltonianSchedule:
    """Rotating-frame Hamiltonian ``Omega(t) (w0 |e><0| + w1 |e><1| + h.c.)`` on ``C^3``."""
    return _schedule(one_qubit_coupling(p), env, samples)


def two_qubit_hamiltonian(p: LambdaTwoQubit, env: PulseEnvelope,
                          samples: int = DEFAULT_STEPS + 1) -> HamiltonianSchedule:
    """Effective two-ion Hamiltonian ``Omega(t) (H0 + H1)`` on ``C^9``."""
    return _schedule(two_qubit_coupling(p), env, samples)


def one_qubit_frame() -> Frame:
    return Frame.computational(3, 2)


def two_qubit_frame() -> Frame:
    return Frame(np.eye(9, dtype=complex)[:, [0, 1, 3, 4]])


def certify_optimality(schedule: HamiltonianSchedule, r_frame, steps: int = DEFAULT_STEPS,
                       order: int = 4) -> LoopReport:
    """Measure a loop and flag it optimal when ``length <= (1 + 1e-3) L(holonomy)``.

    Pulse schedules are time dependent, so the fourth-order propagator is the
    default; it keeps the sampled curve close enough to the exact one for the
    speed/skewness identity to hold at 1e-6 on short, strong pulses.
    """
    return simulate_loop(schedule, r_frame, steps, order)
