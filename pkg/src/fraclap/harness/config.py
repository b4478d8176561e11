"""Suite configuration from TOML files, suite defaults and command-line overrides."""

from pathlib import Path
from typing import Any

import tomli

from fraclap.harness.presets import parse_preset
from fraclap.logging import get_logger
from fraclap.quad.radial import make_spec
from fraclap.types import SuiteConfig, Suite

logger = get_logger(__name__)

TOP_LEVEL_KEYS = {
    "suite",
    "dims",
    "orders",
    "points",
    "seed",
    "presets",
    "tolerances",
    "quadrature",
    "options",
    "output",
}

SUITE_DEFAULTS: dict[Suite, dict[str, Any]] = {
    Suite.LAPLACIAN: {
        "orders": [0.25, 0.5, 0.75],
        "points": 10,
        "presets": ["gaussian"],
        "tolerances": {"rel": 1e-5, "constant": 1e-10},
        "quadrature": {"rel_tol": 1e-9, "abs_tol": 1e-13},
    },
    Suite.LEIBNIZ: {
        "orders": [0.25, 0.5, 0.75],
        "points": 20,
        "presets": [],
        "tolerances": {"rel": 1e-5},
        "options": {"max_offset": 0.3, "radii": [0.5, 0.9], "point_radius": 0.9},
        "quadrature": {"rel_tol": 1e-9, "abs_tol": 1e-13},
    },
    Suite.POLARIZATION: {
        "orders": [0.5],
        "presets": ["gaussian", "bump(0.8)", "constant", "affine", "cosine"],
        "tolerances": {"sigmas": 3.0},
        "options": {"taus": [0.4, 0.1], "delta": 0.1},
    },
    Suite.GAGLIARDO_LIMIT: {
        "orders": [0.5],
        "presets": ["gaussian", "gaussian(0.8)", "gaussian(0.7)"],
        "tolerances": {"sigmas": 3.0, "limit_rel": 0.05, "grid_rel": 1e-3},
        "options": {
            "taus": [0.4, 0.2, 0.1, 0.05],
            "delta": 0.05,
            "grid_cells": 64,
            "quotient_taus": [0.2, 0.1],
            "quotient_cells": 256,
        },
    },
    Suite.HOLDER_TRANSFER: {
        "tolerances": {"slack": 0.05},
        "options": {"cases": [[0.4, 0.25], [0.8, 0.5], [0.9, 0.75]], "pairs": 24},
        "quadrature": {"rel_tol": 1e-8, "angular_rule": 32},
    },
    Suite.POISSON: {
        "orders": [0.25, 0.5, 0.75],
        "points": 10,
        "presets": ["gaussian", "cosine", "halfspace-indicator", "lorentzian", "ball-complement(2)"],
        "tolerances": {"abs": 1e-4, "sigmas": 3.0},
        "options": {"rho": 1.0, "wos_samples": 1_000_000},
    },
    Suite.SHARMONICITY: {
        "orders": [0.5],
        "points": 5,
        "presets": ["constant", "bump(2)"],
        "tolerances": {"rel": 1e-3},
        "options": {"rho": 1.0},
        "quadrature": {"rel_tol": 1e-5, "angular_rule": 32},
    },
    Suite.ANALYTICITY: {
        "orders": [0.5],
        "presets": ["offset-gaussian"],
        "tolerances": {"residual": 0.2},
        "options": {"delta": 0.4, "derivative_orders": [1, 2, 3, 4], "scan": 20},
    },
    Suite.NORMS: {
        "orders": [0.5],
        "presets": ["holder-cusp(0.5)"],
        "tolerances": {"tail": 1e-6, "l1s": 1e-4, "sigmas": 3.0, "exponent": 0.05, "grid_rel": 1e-3},
        "options": {"radii": [0.5, 1.0, 2.0], "grid_cells": 64},
    },
}


def _check_grid(dims: list[int], orders: list[float], points: int):
    for dim in dims:
        if not isinstance(dim, int) or dim < 2:
            raise ValueError(f"dimensions must be integers >= 2, got {dim}")
    for order in orders:
        if not 0.0 < float(order) < 1.0:
            raise ValueError(f"orders must lie in (0, 1), got {order}")
    if points < 0:
        raise ValueError(f"points must be nonnegative, got {points}")


def parse_config(data: dict[str, Any], overrides: dict[str, Any] | None = None) -> SuiteConfig:
    """Merge suite defaults, file contents and overrides into a validated SuiteConfig."""
    unknown = set(data) - TOP_LEVEL_KEYS
    if unknown:
        raise ValueError(f"Unknown configuration keys: {', '.join(sorted(unknown))}")
    merged = {**data, **{k: v for k, v in (overrides or {}).items() if v is not None}}

    try:
        suite = Suite(merged.get("suite"))
    except ValueError:
        raise ValueError(f"Unknown suite: {merged.get('suite')}") from None
    defaults = SUITE_DEFAULTS[suite]

    dims = [int(d) for d in merged.get("dims", [2])]
    orders = [float(s) for s in merged.get("orders", defaults.get("orders", [0.5]))]
    points = int(merged.get("points", defaults.get("points", 0)))
    _check_grid(dims, orders, points)

    presets = list(merged.get("presets", defaults.get("presets", [])))
    for name in presets:
        parse_preset(name)

    tolerances = {**defaults.get("tolerances", {}), **merged.get("tolerances", {})}
    for key, value in tolerances.items():
        if not float(value) > 0.0:
            raise ValueError(f"tolerance {key} must be positive, got {value}")

    seed = int(merged.get("seed", 42))
    quadrature = {**defaults.get("quadrature", {}), **merged.get("quadrature", {})}
    quadrature["rng_seed"] = seed
    try:
        spec = make_spec(**quadrature)
    except TypeError as e:
        raise ValueError(f"Invalid quadrature settings: {e}") from None

    output = merged.get("output")
    config = SuiteConfig(
        suite=suite,
        dims=dims,
        orders=orders,
        points=points,
        seed=seed,
        presets=presets,
        tolerances={k: float(v) for k, v in tolerances.items()},
        spec=spec,
        output=Path(output) if output else None,
        options={**defaults.get("options", {}), **merged.get("options", {})},
    )
    logger.debug({"event": "config_parsed", "suite": suite.value, "dims": dims, "orders": orders})
    return config


def load_config(
    path: Path | None, suite: str | None = None, overrides: dict[str, Any] | None = None
) -> SuiteConfig:
    """Read a TOML config (or none) and apply the suite name and overrides."""
    data: dict[str, Any] = {}
    if path is not None:
        try:
            with open(path, "rb") as f:
                data = tomli.load(f)
        except OSError as e:
            raise ValueError(f"Cannot read config {path}: {e}") from None
        except tomli.TOMLDecodeError as e:
            raise ValueError(f"Invalid TOML in {path}: {e}") from None
        logger.info({"event": "config_loaded", "path": str(path)})
    if suite is not None:
        data = {**data, "suite": suite}
    return parse_config(data, overrides)
