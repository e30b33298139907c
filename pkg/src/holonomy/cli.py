"""Command-line entry point.

Every subcommand builds a :class:`~holonomy.scenarios.Scenario` from its
flags; ``run FILE`` loads one from JSON.  Exit status is 0 on success, 2 for
invalid input and 3 when a computation fails (e.g. a loop does not close).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .errors import NumericalError, ValidationError
from .scenarios import Scenario, render_csv, render_json, run

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3

_ANGLE_HELP = "angle in radians"


def _common(p: argparse.ArgumentParser, steps: bool = True) -> None:
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--reproducible", action="store_true", help="omit the timestamp field")
    if steps:
        p.add_argument("--steps", type=int, default=4000, help="time steps per loop (default 4000)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holonomy",
        description="Holonomies, lengths and isoholonomic bounds of loops of subspaces. "
                    "All angles are in radians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="isoholonomic bound of a gate")
    p.add_argument("--gate", required=True,
                   help="catalog key (hadamard, phase_s, pi8_t, cnot, qft:N, gamma1:A:B, gamma2:A:B) or @file.json")
    _common(p, steps=False)

    p = sub.add_parser("qft-bound", help="closed-form bound of the N-dimensional Fourier transform")
    p.add_argument("--dim", type=int, required=True)
    _common(p, steps=False)

    p = sub.add_parser("simulate", help="measure a Hamiltonian-driven loop")
    p.add_argument("--hamiltonian", help="@file.json with a 'matrix' (needs --tau) or 'segments'")
    p.add_argument("--frame", help="@file.json with a list of column vectors")
    p.add_argument("--rank", type=int, help="use the first RANK basis vectors as the frame")
    p.add_argument("--tau", type=float)
    p.add_argument("--alpha", type=float, help="qubit example: polar angle of the state, " + _ANGLE_HELP)
    p.add_argument("--beta", type=float, help="qubit example: relative phase, " + _ANGLE_HELP)
    p.add_argument("--eps0", type=float)
    p.add_argument("--eps1", type=float)
    _common(p)

    p = sub.add_parser("synthesize", help="build and run a time-optimal loop for a gate")
    p.add_argument("--gate", required=True)
    p.add_argument("--dim", type=int, help="ambient dimension d (default 2n)")
    p.add_argument("--eps0", type=float)
    p.add_argument("--eps1", type=float)
    _common(p)

    for name in ("lambda1", "lambda2"):
        p = sub.add_parser(name, help=f"certify the {'one' if name == 'lambda1' else 'two'}-qubit Lambda scheme")
        p.add_argument("--alpha", type=float, required=True, help=_ANGLE_HELP)
        p.add_argument("--beta", type=float, default=0.0, help=_ANGLE_HELP)
        p.add_argument("--envelope", default="square", help="square, sin2 or @file.json with times/values")
        p.add_argument("--tau", type=float, default=1.0)
        p.add_argument("--area", type=float, help="pulse area (default pi)")
        _common(p)

    p = sub.add_parser("fuzz-inequality", help="check the isoholonomic inequality on random loops")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=4, help="ambient dimension d")
    p.add_argument("--rank", type=int, default=2, help="subspace dimension n")
    _common(p)

    p = sub.add_parser("run", help="run a scenario file")
    p.add_argument("scenario", type=Path)
    p.add_argument("--reproducible", action="store_true")
    return parser


_PARAM_FLAGS = ("gate", "hamiltonian", "frame", "rank", "tau", "alpha", "beta", "eps0", "eps1",
                "envelope", "area", "dim", "trials")


def scenario_from_args(args: argparse.Namespace) -> Scenario:
    if args.command == "run":
        try:
            data = json.loads(args.scenario.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read scenario {args.scenario}: {exc}") from exc
        return Scenario.from_dict(data)
    params = {k: getattr(args, k) for k in _PARAM_FLAGS if getattr(args, k, None) is not None}
    if args.command == "qft-bound":
        params = {"n": params.pop("dim")}
    kwargs = {"output": args.output}
    if hasattr(args, "steps"):
        kwargs["steps"] = args.steps
    if args.command == "fuzz-inequality":
        kwargs["seed"] = args.seed
    return Scenario(args.command, params, **kwargs)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("HOLONOMY_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        scenario = scenario_from_args(args)
        doc, loop = run(scenario, reproducible=args.reproducible)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if scenario.output == "csv":
        sys.stdout.write(render_csv(loop))
    else:
        sys.stdout.write(render_json(doc))
    return EXIT_OK

