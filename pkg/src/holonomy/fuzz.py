"""Random closed loops for stress-testing the isoholonomic inequality.

Three families are generated:

``plan``
    the optimal loop of a random gate (saturates the inequality);
``perturbed``
    a randomly perturbed optimal Hamiltonian run for one period, then
    closed again along a Grassmann geodesic;
``random``
    a random Hamiltonian run for a random time, then closed the same way.

``lambda`` loops (the one-qubit Lambda scheme with pulse area pi or 2 pi)
can be requested explicitly.
"""

from __future__ import annotations

import logging
from math import pi

import numpy as np
from scipy.stats import unitary_group

from ._linalg import dagger
from .bounds import isoholonomic_bound
from .bundle import holonomy_of_curve
from .errors import ValidationError
from .frames import Frame
from .geometry import curve_length
from .lambda_system import LambdaOneQubit, PulseEnvelope, one_qubit_frame, one_qubit_hamiltonian
from .propagate import HamiltonianSchedule, drive_subspace, loop_ratio
from .synthesis import plan_optimal_loop

log = logging.getLogger(__name__)

LENGTH_SLACK = 1e-3
DEFAULT_KINDS = ("plan", "perturbed", "random")
ALL_KINDS = DEFAULT_KINDS + ("lambda",)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    if n == 1:
        return np.array([[np.exp(1j * rng.uniform(-pi, pi))]])
    return unitary_group.rvs(n, random_state=rng)


def random_hermitian(d: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * 0.5 * (a + dagger(a)) / np.sqrt(2 * d)


def random_gate_with_fixed_points(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Random unitary with exactly ``k`` eigenvalues equal to one (generically)."""
    phases = np.concatenate([rng.uniform(-pi, pi, n - k), np.zeros(k)])
    v = random_unitary(n, rng)
    return v @ np.diag(np.exp(1j * phases)) @ dagger(v)


def geodesic_hamiltonian(start, end) -> np.ndarray:
    """Constant Hamiltonian moving ``span(start)`` to ``span(end)`` along a geodesic in unit time."""
    x = np.asarray(start, dtype=complex)
    y = np.asarray(end, dtype=complex)
    u, cos, vh = np.linalg.svd(dagger(x) @ y)
    cos = np.clip(cos, -1.0, 1.0)
    angles = np.arccos(cos)
    if np.any(angles >= pi / 2 - 1e-9):
        raise ValidationError("subspaces are too far apart for a unique geodesic")
    xu = x @ u
    gen = np.zeros((x.shape[0], x.shape[0]), dtype=complex)
    for j, th in enumerate(angles):
        if th < 1e-12:
            continue
        q = (y @ dagger(vh)[:, j] - xu[:, j] * cos[j]) / np.sin(th)
        gen += th * (np.outer(q, xu[:, j].conj()) - np.outer(xu[:, j], q.conj()))
    h = 1j * gen
    return 0.5 * (h + dagger(h))


def reclosed_schedule(h: np.ndarray, duration: float, frame: Frame) -> HamiltonianSchedule:
    """Run ``h`` for ``duration``, then return to ``span(frame)`` along a geodesic in equal time."""
    w, v = np.linalg.eigh(h)
    end = (v * np.exp(-1j * duration * w)) @ dagger(v) @ frame.columns
    k = geodesic_hamiltonian(end, frame.columns) / duration
    return HamiltonianSchedule.piecewise_constant([duration, duration], [h, k])


def measure(schedule: HamiltonianSchedule, frame: Frame, steps: int) -> dict:
    curve, _ = drive_subspace(schedule, frame, steps)
    gamma = holonomy_of_curve(curve, frame)
    bound = isoholonomic_bound(gamma).bound
    length = curve_length(curve).length
    return {
        "length": length,
        "bound": bound,
        "ratio": loop_ratio(length, bound),
        "closure_residual": curve.closure_residual,
    }


def _trial(kind: str, d: int, n: int, rng: np.random.Generator, steps: int) -> dict:
    frame = Frame.computational(d, n)
    if kind == "lambda":
        area = pi * int(rng.integers(1, 3))
        p = LambdaOneQubit(rng.uniform(0, 2 * pi), rng.uniform(-pi, pi))
        env = PulseEnvelope.square(rng.uniform(0.5, 2.0), area)
        out = measure(one_qubit_hamiltonian(p, env, samples=3), one_qubit_frame(), steps)
        out["area"] = area
        return out
    if kind in ("plan", "perturbed"):
        k_min = max(0, 2 * n - d)
        k = int(rng.integers(k_min, n)) if kind == "plan" else k_min
        gate = random_gate_with_fixed_points(n, k, rng)
        plan = plan_optimal_loop(gate, frame, d, 0.0, rng.uniform(0.5, 2.0))
        if kind == "plan":
            return measure(plan.schedule, frame, steps)
        h = plan.hamiltonian + random_hermitian(d, rng, rng.uniform(0.01, 0.5))
        return measure(reclosed_schedule(h, plan.period, frame), frame, steps)
    if kind == "random":
        h = random_hermitian(d, rng, rng.uniform(0.5, 2.0))
        return measure(reclosed_schedule(h, rng.uniform(0.2, 1.5), frame), frame, steps)
    raise ValidationError(f"unknown loop family {kind!r}")


def fuzz_inequality(trials: int, seed: int = 0, dims: tuple[int, int] = (4, 2), steps: int = 2000,
                    kinds: tuple[str, ...] = DEFAULT_KINDS) -> dict:
    """Check ``length >= L(holonomy) - 1e-3`` on ``trials`` random closed loops.

    Trial ``i`` uses the generator seeded with ``(seed, i)`` and the family
    ``kinds[i % len(kinds)]``, so results do not depend on evaluation order.
    """
    if int(trials) < 1:
        raise ValidationError("trials must be at least 1")
    d, n = (int(x) for x in dims)
    if not 1 <= n < d:
        raise ValidationError(f"need 1 <= n < d, got d={d}, n={n}")
    bad = [k for k in kinds if k not in ALL_KINDS]
    if bad or not kinds:
        raise ValidationError(f"unknown loop families {bad}")
    records = []
    for i in range(int(trials)):
        kind = kinds[i % len(kinds)]
        rec = _trial(kind, d, n, np.random.default_rng([int(seed), i]), steps)
        rec.update(trial=i, kind=kind, violation=bool(rec["length"] < rec["bound"] - LENGTH_SLACK))
        log.debug("trial %d (%s): length %.6f bound %.6f", i, kind, rec["length"], rec["bound"])
        records.append(rec)
    ratios = np.array([r["ratio"] for r in records])
    finite = ratios[np.isfinite(ratios)]
    return {
        "trials": len(records),
        "violations": sum(r["violation"] for r in records),
        "min_ratio": float(finite.min()) if finite.size else float("nan"),
        "mean_ratio": float(finite.mean()) if finite.size else float("nan"),
        "unbounded_loops": int(np.sum(np.isinf(ratios))),
        "min_margin": float(min(r["length"] - r["bound"] for r in records)),
        "records": records,
    }
