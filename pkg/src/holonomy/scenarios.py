"""Scenario documents and report assembly shared by the CLI and tests."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from math import pi
from pathlib import Path

import numpy as np

from . import bounds, fuzz
from .analysis import OPTIMALITY_RTOL, simulate_loop
from .bundle import DEFAULT_STEPS, SPAN_ATOL
from .errors import ValidationError
from .frames import Frame, closure_tolerance
from .gates import dft_matrix, named_gate
from .geometry import speed_profile
from .lambda_system import (
    LambdaOneQubit,
    LambdaTwoQubit,
    PulseEnvelope,
    certify_optimality,
    one_qubit_frame,
    one_qubit_hamiltonian,
    two_qubit_frame,
    two_qubit_hamiltonian,
)
from .propagate import HamiltonianSchedule, LoopReport
from .serialization import decode_frame, decode_matrix, encode_float, encode_matrix
from .synthesis import HOLONOMY_ATOL, LENGTH_RTOL, execute_plan, plan_optimal_loop

log = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"
KINDS = ("bound", "qft-bound", "simulate", "synthesize", "lambda1", "lambda2", "fuzz-inequality")
CURVE_KINDS = ("simulate", "synthesize", "lambda1", "lambda2")


@dataclass
class Scenario:
    kind: str
    parameters: dict = field(default_factory=dict)
    output: str = "json"
    steps: int = DEFAULT_STEPS
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown scenario kind {self.kind!r}; expected one of {KINDS}")
        if self.output not in ("json", "csv"):
            raise ValidationError(f"output must be 'json' or 'csv', got {self.output!r}")
        if self.output == "csv" and self.kind not in CURVE_KINDS:
            raise ValidationError(f"csv output needs a curve-producing kind {CURVE_KINDS}")
        if not isinstance(self.steps, int) or self.steps < 1:
            raise ValidationError("steps must be a positive integer")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValidationError("seed must be an unsigned integer")
        if not isinstance(self.parameters, dict):
            raise ValidationError("parameters must be an object")

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        if not isinstance(data, dict) or "kind" not in data:
            raise ValidationError("scenario must be an object with a 'kind' field")
        unknown = set(data) - {"kind", "parameters", "output", "steps", "seed"}
        if unknown:
            raise ValidationError(f"unknown scenario fields {sorted(unknown)}")
        return cls(**data)


def _param(params: dict, name: str, default=None, kind=float):
    value = params.get(name, default)
    if value is None:
        raise ValidationError(f"missing parameter {name!r}")
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"parameter {name!r} is malformed: {value!r}") from exc


def _load_json(ref):
    """Inline JSON value, or the content of ``@file.json``."""
    if isinstance(ref, str) and ref.startswith("@"):
        try:
            return json.loads(Path(ref[1:]).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read {ref[1:]}: {exc}") from exc
    return ref


def _gate(params: dict) -> np.ndarray:
    ref = params.get("gate")
    if ref is None:
        raise ValidationError("missing parameter 'gate'")
    if isinstance(ref, str):
        return named_gate(ref)
    return decode_matrix(ref)


def _envelope(params: dict) -> PulseEnvelope:
    tau = _param(params, "tau", 1.0)
    area = _param(params, "area", pi)
    choice = params.get("envelope", "square")
    if choice == "square":
        return PulseEnvelope.square(tau, area)
    if choice == "sin2":
        return PulseEnvelope.sin2(tau, area)
    data = _load_json(choice)
    if not isinstance(data, dict) or "times" not in data or "values" not in data:
        raise ValidationError("custom envelope needs an object with 'times' and 'values'")
    return PulseEnvelope.custom(data["times"], data["values"])


def _loop_results(report: LoopReport) -> dict:
    out = report.to_dict()
    out["tolerances"] = {
        "closure": closure_tolerance(report.holonomy.n),
        "optimality_rtol": OPTIMALITY_RTOL,
    }
    return out


def _run_bound(sc: Scenario) -> dict:
    g = _gate(sc.parameters)
    rep = bounds.isoholonomic_bound(g)
    return {
        "gate": encode_matrix(g),
        "bound": rep.bound,
        "eigenphases": list(rep.eigenphases),
        "unit_eigenvalue_count": rep.unit_eigenvalue_count,
        "tolerances": {"phase": bounds.PHASE_ATOL, "unitarity": 1e-8},
    }


def _run_qft(sc: Scenario) -> dict:
    n = _param(sc.parameters, "n", kind=int)
    closed = bounds.qft_bound(n)
    spectral = bounds.isoholonomic_bound(dft_matrix(n)).bound
    return {"n": n, "bound": closed, "spectral_bound": spectral, "difference": abs(closed - spectral),
            "tolerances": {"phase": bounds.PHASE_ATOL}}


def _run_simulate(sc: Scenario):
    p = sc.parameters
    expected = None
    if "hamiltonian" in p:
        data = _load_json(p["hamiltonian"])
        if isinstance(data, dict) and "segments" in data:
            segs = data["segments"]
            schedule = HamiltonianSchedule.piecewise_constant(
                [s["duration"] for s in segs], [decode_matrix(s["matrix"]) for s in segs])
        else:
            if isinstance(data, dict):
                data = data.get("matrix")
            schedule = HamiltonianSchedule.constant(decode_matrix(data), _param(p, "tau"))
        if "frame" in p:
            frame = Frame(decode_frame(_load_json(p["frame"])))
        else:
            frame = Frame.computational(schedule.dim, _param(p, "rank", 1, int))
    else:
        # Qubit with H = diag(eps0, eps1) and state cos(alpha/2)|0> + e^{i beta} sin(alpha/2)|1>.
        eps0, eps1 = _param(p, "eps0", 0.0), _param(p, "eps1", 1.0)
        if not eps0 < eps1:
            raise ValidationError("need eps0 < eps1")
        alpha, beta = _param(p, "alpha", pi / 2), _param(p, "beta", 0.0)
        a, b = np.cos(alpha / 2), np.exp(1j * beta) * np.sin(alpha / 2)
        schedule = HamiltonianSchedule.constant(np.diag([eps0, eps1]), 2 * pi / (eps1 - eps0))
        frame = Frame(np.array([[a], [b]]))
        theta = bounds.principal_arguments([np.exp(2j * pi * abs(b) ** 2)])[0]
        expected = {"phase": float(theta), "length": float(2 * pi * abs(a) * abs(b)),
                    "bound": bounds.state_bound(theta)}
    report = simulate_loop(schedule, frame, sc.steps)
    out = _loop_results(report)
    if expected is not None:
        out["expected"] = expected
    return out, report


def _run_synthesize(sc: Scenario):
    p = sc.parameters
    g = _gate(p)
    d = _param(p, "dim", 2 * g.shape[0], int)
    plan = plan_optimal_loop(g, d=d, eps0=_param(p, "eps0", 0.0), eps1=_param(p, "eps1", 1.0))
    report = execute_plan(plan, sc.steps)
    out = _loop_results(report)
    out["tolerances"].update(holonomy=HOLONOMY_ATOL, length_rtol=LENGTH_RTOL)
    out["plan"] = {
        "dim": d,
        "period": plan.period,
        "eigenphases": list(plan.eigenphases),
        "qubit_params": [list(ab) for ab in plan.qubit_params],
        "hamiltonian": encode_matrix(plan.hamiltonian),
    }
    out["target"] = encode_matrix(g)
    out["holonomy_error"] = float(np.linalg.norm(report.holonomy.matrix - g))
    return out, report


def _run_lambda(sc: Scenario):
    p = sc.parameters
    alpha, beta = _param(p, "alpha"), _param(p, "beta", 0.0)
    env = _envelope(p)
    if sc.kind == "lambda1":
        params = LambdaOneQubit(alpha, beta)
        schedule, frame = one_qubit_hamiltonian(params, env, sc.steps + 1), one_qubit_frame()
    else:
        params = LambdaTwoQubit(alpha, beta)
        schedule, frame = two_qubit_hamiltonian(params, env, sc.steps + 1), two_qubit_frame()
    report = certify_optimality(schedule, frame, sc.steps)
    target = params.gate()
    out = _loop_results(report)
    out["target"] = encode_matrix(target)
    out["holonomy_error"] = float(np.linalg.norm(report.holonomy.matrix - target))
    out["pulse_area"] = env.area
    return out, report


def _run_fuzz(sc: Scenario) -> dict:
    p = sc.parameters
    d, n = _param(p, "dim", 4, int), _param(p, "rank", 2, int)
    kinds = tuple(p.get("families", fuzz.DEFAULT_KINDS))
    summary = fuzz.fuzz_inequality(_param(p, "trials", 1, int), sc.seed, (d, n), sc.steps, kinds)
    for rec in summary["records"]:
        rec["ratio"] = encode_float(rec["ratio"])
    for key in ("min_ratio", "mean_ratio"):
        summary[key] = encode_float(summary[key])
    summary["tolerances"] = {"length_slack": fuzz.LENGTH_SLACK, "closure": closure_tolerance(n)}
    return summary


def run(scenario: Scenario, reproducible: bool = False) -> tuple[dict, LoopReport | None]:
    """Execute a scenario; returns the report document and the loop report, if any."""
    log.info("running %s scenario", scenario.kind)
    loop = None
    if scenario.kind == "bound":
        results = _run_bound(scenario)
    elif scenario.kind == "qft-bound":
        results = _run_qft(scenario)
    elif scenario.kind == "simulate":
        results, loop = _run_simulate(scenario)
    elif scenario.kind == "synthesize":
        results, loop = _run_synthesize(scenario)
    elif scenario.kind in ("lambda1", "lambda2"):
        results, loop = _run_lambda(scenario)
    else:
        results = _run_fuzz(scenario)
    tolerances = results.pop("tolerances", {})
    tolerances.setdefault("span", SPAN_ATOL)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": scenario.kind,
        "inputs": {"parameters": scenario.parameters, "steps": scenario.steps, "seed": scenario.seed},
        "tolerances": tolerances,
        **results,
    }
    if not reproducible:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    return doc, loop


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, allow_nan=False) + "\n"


def render_csv(loop: LoopReport) -> str:
    """One row per sample: time, Grassmann speed, cumulative length."""
    times, speed, cumulative = speed_profile(loop.curve)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["time", "speed", "cumulative_length"])
    for row in zip(times, speed, cumulative):
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()
