"""fraclap command line: eval, solve, seminorm and verify.

Exit codes: 0 success, 1 a check failed or a numerical failure, 2 bad input.
"""

import argparse
import asyncio
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from fraclap.core.special import make_params
from fraclap.harness.config import load_config
from fraclap.harness.presets import parse_preset, preset_field
from fraclap.harness.reports import default_report_path
from fraclap.harness.runner import run_suite
from fraclap.logging import configure_logging, get_logger, log_with_data, to_plain
from fraclap.norms.seminorm import gagliardo_seminorm, sobolev_norm
from fraclap.ops.laplacian import frac_laplacian, frac_laplacian_pv
from fraclap.ops.oracles import fourier_multiplier_oracle, gaussian_hat, pin_fourier_convention
from fraclap.poisson.solver import solve_dirichlet
from fraclap.poisson.walk import wos_solve
from fraclap.quad.radial import make_spec
from fraclap.types import BallProblem, Suite

logger = get_logger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _point(text: str, dim: int) -> np.ndarray:
    try:
        x = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise ValueError(f"point must be comma-separated numbers, got {text!r}") from None
    if x.shape != (dim,):
        raise ValueError(f"point has {x.size} coordinates, expected {dim}")
    return x


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",")]


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",")]


def _emit(data: dict[str, Any]):
    print(json.dumps(data, default=to_plain))


def cmd_eval(args: argparse.Namespace) -> int:
    params = make_params(args.dim, args.s)
    spec = make_spec()
    u = preset_field(args.preset, params)
    x = _point(args.point, args.dim)
    if args.form == "fourier":
        if parse_preset(args.preset) != ("gaussian", None):
            raise ValueError("the Fourier form is available for the gaussian preset only")
        scale = pin_fourier_convention(params, spec)
        value = fourier_multiplier_oracle(gaussian_hat, x, params, spec, symbol_scale=scale)
        _emit({"value": value, "form": args.form, "symbol_scale": scale})
        return EXIT_OK
    operator = frac_laplacian_pv if args.form == "pv" else frac_laplacian
    result = operator(u, x, params, spec)
    _emit({"value": result.value, "err_est": result.err_est, "zones": result.zones, "form": args.form})
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    params = make_params(args.dim, args.s)
    problem = BallProblem(
        rho=args.rho,
        exterior=preset_field(args.preset_exterior, params),
        params=params,
        spec=make_spec(rng_seed=args.seed),
    )
    x = _point(args.point, args.dim)
    if args.mc:
        mean, stderr = wos_solve(problem, x, args.mc, args.seed)
        _emit({"value": mean, "stderr": stderr, "method": "walk-on-spheres", "samples": args.mc})
    else:
        result = solve_dirichlet(problem, x)
        _emit({"value": result.value, "err_est": result.err_est, "method": "quadrature"})
    return EXIT_OK


def cmd_seminorm(args: argparse.Namespace) -> int:
    params = make_params(args.dim, args.s)
    spec = make_spec(rng_seed=args.seed)
    u = preset_field(args.preset, params)
    norm = sobolev_norm if args.full else gagliardo_seminorm
    result = norm(u, args.domain, args.s, args.p, spec, args.dim)
    _emit({"value": result.value, "stderr": result.stderr, "method": result.method.value})
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    overrides = {
        "seed": args.seed,
        "dims": _int_list(args.dims) if args.dims else None,
        "orders": _float_list(args.orders) if args.orders else None,
        "points": args.points,
    }
    config = load_config(args.config, args.suite, overrides)
    output = args.out or config.output or default_report_path(config.suite.value)
    report = asyncio.run(run_suite(replace(config, output=Path(output))))
    _emit({"report": str(output), **report.summary})
    return EXIT_OK if report.summary["failed"] == 0 else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraclap",
        description="fractional Laplacian toolkit",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate (-D)^s of a preset at a point")
    ev.add_argument("--preset", required=True)
    ev.add_argument("--dim", type=int, default=2)
    ev.add_argument("--s", type=float, required=True)
    ev.add_argument("--point", required=True, help="comma-separated coordinates")
    ev.add_argument("--form", choices=["integral", "pv", "fourier"], default="integral")
    ev.set_defaults(handler=cmd_eval)

    so = sub.add_parser("solve", help="solve the exterior Dirichlet problem on a ball")
    so.add_argument("--rho", type=float, default=1.0)
    so.add_argument("--preset-exterior", required=True)
    so.add_argument("--point", required=True, help="comma-separated coordinates")
    so.add_argument("--dim", type=int, default=2)
    so.add_argument("--s", type=float, required=True)
    so.add_argument("--mc", type=int, default=0, help="walk-on-spheres samples; 0 uses quadrature")
    so.add_argument("--seed", type=int, default=42)
    so.set_defaults(handler=cmd_solve)

    se = sub.add_parser("seminorm", help="Gagliardo seminorm of a preset on a ball")
    se.add_argument("--preset", required=True)
    se.add_argument("--domain", type=float, default=1.0, help="ball radius")
    se.add_argument("--s", type=float, required=True)
    se.add_argument("--p", type=float, default=2.0)
    se.add_argument("--dim", type=int, default=2)
    se.add_argument("--full", action="store_true", help="full W^{s,p} norm")
    se.add_argument("--seed", type=int, default=42)
    se.set_defaults(handler=cmd_seminorm)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("suite", choices=[s.value for s in Suite])
    ve.add_argument("--config", type=Path)
    ve.add_argument("--out", type=Path)
    ve.add_argument("--seed", type=int)
    ve.add_argument("--dims", help="comma-separated dimensions")
    ve.add_argument("--orders", help="comma-separated orders s")
    ve.add_argument("--points", type=int)
    ve.set_defaults(handler=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except ValueError as e:
        log_with_data(logger, logging.ERROR, "invalid input", {"command": args.command, "error": str(e)})
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as e:
        details = e.args[1] if len(e.args) > 1 and isinstance(e.args[1], dict) else {}
        log_with_data(
            logger, logging.ERROR, "numerical failure", {"command": args.command, "error": str(e.args[0]), **details}
        )
        print(f"error: {e.args[0]}", file=sys.stderr)
        return EXIT_FAILED


def main() -> None:
    sys.exit(run())
