"""Named field presets, optionally parameterized as name(arg)."""

import math
import re
from typing import Any, Callable

import numpy as np

from fraclap.core.fields import (
    affine_field,
    ball_complement_field,
    ball_indicator_field,
    bump_field,
    constant_field,
    cosine_field,
    gaussian_field,
    getoor_field,
    halfspace_indicator_field,
    holder_cusp_field,
    lorentzian_field,
)
from fraclap.quad.pairs import uniform_ball
from fraclap.types import FracParams, ScalarField

PRESET_PATTERN = re.compile(r"^\s*([a-z][a-z0-9-]*)\s*(?:\(\s*([^()]*?)\s*\))?\s*$")

PresetBuilder = Callable[[FracParams, float | None], ScalarField]


def _unit(dim: int) -> list[float]:
    return [1.0] + [0.0] * (dim - 1)


def _offset_gaussian(params: FracParams, arg: float | None) -> ScalarField:
    """exp(-|y - c|^2 / w^2) with c = (0.8, 0.3, 0, ...) and w = arg or 1."""
    center = [0.8, 0.3] + [0.0] * (params.dim - 2)
    width = 1.0 if arg is None else arg
    return gaussian_field(center=center, scale=width * math.sqrt(math.pi))


PRESETS: dict[str, PresetBuilder] = {
    "constant": lambda p, a: constant_field(1.0 if a is None else a),
    "affine": lambda p, a: affine_field(_unit(p.dim), 0.0 if a is None else a),
    "gaussian": lambda p, a: gaussian_field(scale=1.0 if a is None else a),
    "offset-gaussian": _offset_gaussian,
    "bump": lambda p, a: bump_field(1.0 if a is None else a),
    "holder-cusp": lambda p, a: holder_cusp_field(0.5 if a is None else a),
    "halfspace-indicator": lambda p, a: halfspace_indicator_field(),
    "getoor": lambda p, a: getoor_field(p.order),
    "cosine": lambda p, a: cosine_field(1.0 if a is None else a),
    "lorentzian": lambda p, a: lorentzian_field(1.0 if a is None else a),
    "ball-complement": lambda p, a: ball_complement_field(2.0 if a is None else a),
    "ball-indicator": lambda p, a: ball_indicator_field(1.0 if a is None else a),
}


def random_bump_pair(
    rng: np.random.Generator,
    dim: int,
    max_offset: float = 0.3,
    radii: tuple[float, float] = (0.5, 0.9),
) -> list[dict[str, Any]]:
    """Two independent bump settings: centre uniform in B_max_offset, radius and peak uniform."""
    lo, hi = radii
    if not 0.0 < lo <= hi:
        raise ValueError(f"bump radii must satisfy 0 < lo <= hi, got {radii}")
    return [
        {
            "center": uniform_ball(rng, 1, dim, max_offset)[0].tolist(),
            "radius": float(rng.uniform(lo, hi)),
            "amplitude": float(rng.uniform(0.5, 2.0)),
        }
        for _ in range(2)
    ]


def parse_preset(name: str) -> tuple[str, float | None]:
    """Split "bump(0.8)" into ("bump", 0.8); ValueError for unknown names."""
    match = PRESET_PATTERN.match(name)
    if not match or match.group(1) not in PRESETS:
        raise ValueError(f"Unknown preset: {name}")
    base, arg = match.group(1), match.group(2)
    if arg in (None, ""):
        return base, None
    try:
        return base, float(arg)
    except ValueError:
        raise ValueError(f"Preset argument must be a number: {name}") from None


def preset_field(name: str, params: FracParams) -> ScalarField:
    base, arg = parse_preset(name)
    return PRESETS[base](params, arg)
