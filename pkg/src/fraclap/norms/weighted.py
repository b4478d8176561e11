"""Weighted L^1_s and L^inf_s norms and the nonlocal tail."""

import math

import numpy as np
from scipy.optimize import minimize_scalar

from fraclap.logging import get_logger
from fraclap.quad.radial import radial_integral, shell_profile, tail_integral
from fraclap.quad.sphere import sphere_rule
from fraclap.types import Decay, FracParams, Method, QuadratureSpec, ScalarField, SeminormResult

logger = get_logger(__name__)


def _diverges(u: ScalarField, exponent: float, what: str) -> bool:
    if u.decay != Decay.COMPACT and u.growth >= exponent:
        logger.warning(
            {"event": "divergent_envelope", "norm": what, "field": u.name, "growth": u.growth}
        )
        return True
    return False


def weighted_l1s_norm(u: ScalarField, params: FracParams, spec: QuadratureSpec) -> SeminormResult:
    """Integral of |u(x)| / (1 + |x|^{N+2s}) over R^N."""
    q = params.dim + 2.0 * params.order
    if _diverges(u, 2.0 * params.order, "l1s"):
        return SeminormResult(value=math.inf, stderr=0.0, method=Method.RADIAL_EXACT)

    profile = shell_profile(
        lambda r, dirs: np.abs(u.eval(r * dirs)) / (1.0 + r**q), params.dim, spec.angular_rule
    )
    if u.decay == Decay.COMPACT:
        value, err = radial_integral(profile, 0.0, u.radius, spec, points=[1.0])
    else:
        near, near_err = radial_integral(profile, 0.0, spec.outer_cut, spec, points=[1.0])
        far, far_err = tail_integral(profile, spec.outer_cut, 2.0 * params.order, spec)
        value, err = near + far, near_err + far_err
    return SeminormResult(value=value, stderr=err, method=Method.RADIAL_EXACT)


def nonlocal_tail(
    u: ScalarField, x0: np.ndarray, radius: float, params: FracParams, spec: QuadratureSpec
) -> SeminormResult:
    """R^{2s} times the integral of |u(x)| / |x - x0|^{N+2s} over |x - x0| > R."""
    if not radius > 0.0:
        raise ValueError(f"tail radius must be positive, got {radius}")
    n, s = params.dim, params.order
    x0 = np.asarray(x0, dtype=float)
    if _diverges(u, 2.0 * s, "tail"):
        return SeminormResult(value=math.inf, stderr=0.0, method=Method.RADIAL_EXACT)

    profile = shell_profile(
        lambda r, dirs: np.abs(u.eval(x0 + r * dirs)) / r ** (n + 2.0 * s), n, spec.angular_rule
    )
    if u.decay == Decay.COMPACT:
        reach = float(np.linalg.norm(x0)) + u.radius
        value, err = radial_integral(profile, radius, reach, spec)
    else:
        value, err = tail_integral(profile, radius, 2.0 * s, spec)
    scale = radius ** (2.0 * s)
    return SeminormResult(value=scale * value, stderr=scale * err, method=Method.RADIAL_EXACT)


def weighted_linf_norm(
    u: ScalarField,
    params: FracParams,
    scan_points: int = 256,
    scan_radius: float = 16.0,
    angular: int = 32,
) -> float:
    """Supremum of (1 + |x|^{N+2s}) |u(x)| from a radial-angular scan, refined along the best ray.

    A field decaying exactly like the weight contributes its declared bound from beyond the scan.
    """
    q = params.dim + 2.0 * params.order
    if u.decay != Decay.COMPACT and u.growth > -q:
        logger.warning({"event": "divergent_envelope", "norm": "linf_s", "field": u.name})
        return math.inf

    reach = min(scan_radius, u.radius)
    if reach <= 0.0:
        return 0.0
    radii = np.concatenate(
        [
            np.linspace(0.0, min(2.0, reach), scan_points // 2, endpoint=False),
            np.geomspace(min(2.0, reach), reach, scan_points - scan_points // 2),
        ]
    )
    dirs, _ = sphere_rule(params.dim, angular)
    points = radii[:, None, None] * dirs[None, :, :]
    weighted = (1.0 + radii[:, None] ** q) * np.abs(u.eval(points))

    i, j = np.unravel_index(np.argmax(weighted), weighted.shape)
    best = float(weighted[i, j])
    lo, hi = radii[max(i - 1, 0)], radii[min(i + 1, len(radii) - 1)]
    if hi > lo:
        ray = dirs[j]
        refined = minimize_scalar(
            lambda r: -(1.0 + r**q) * abs(float(u.eval(r * ray))),
            bounds=(lo, hi),
            method="bounded",
        )
        best = max(best, -float(refined.fun))

    if u.decay != Decay.COMPACT and u.growth == -q:
        best = max(best, u.bound)
    return best
