"""Gagliardo seminorms on balls and on the whole space."""

import math
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import betainc

from fraclap.core.fields import at_least, regularity
from fraclap.core.special import gamma_fn, sphere_area
from fraclap.logging import get_logger
from fraclap.ops.quotient import energy_pair_integral
from fraclap.quad.pairs import grid_pair_estimate, pair_integral
from fraclap.quad.sphere import ball_cubature
from fraclap.types import FracParams, Method, QuadratureSpec, ScalarField, SeminormResult, Smoothness

logger = get_logger(__name__)


def _seminorm_integrand(u: ScalarField, dim: int, s: float, p: float):
    def integrand(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(y - x, axis=-1)
        safe = np.where(r > 0.0, r, 1.0)
        return np.where(r > 0.0, np.abs(u.eval(x) - u.eval(y)) ** p / safe ** (dim + s * p), 0.0)

    return integrand


def gagliardo_seminorm(
    u: ScalarField, radius: float, s: float, p: float, spec: QuadratureSpec, dim: int = 2
) -> SeminormResult:
    """[u]_{W^{s,p}(B_R)} by Monte Carlo over pairs, sampled densely near the diagonal."""
    if p < 1.0:
        raise ValueError(f"seminorm exponent p must be >= 1, got {p}")
    if not 0.0 < s < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {s}")
    if s * p >= 1.0 and not at_least(u, Smoothness.LIPSCHITZ):
        raise ValueError(f"{u.name} is not Lipschitz and sp = {s * p:g} >= 1")
    alpha = min(regularity(u), 1.0)
    if alpha <= s:
        raise ValueError(f"{u.name} has Hölder exponent {alpha:g} <= s; seminorm diverges")

    integral, err = pair_integral(
        _seminorm_integrand(u, dim, s, p),
        radius,
        dim,
        spec,
        diagonal_exponent=dim + s * p - alpha * p,
    )
    if integral <= 0.0:
        return SeminormResult(value=0.0, stderr=0.0, method=Method.MC_PAIR)
    value = integral ** (1.0 / p)
    return SeminormResult(value=value, stderr=err * value / (p * integral), method=Method.MC_PAIR)


def gagliardo_seminorm_grid(
    u: ScalarField, radius: float, s: float, p: float, dim: int = 2, n: int = 64
) -> SeminormResult:
    """[u]_{W^{s,p}(B_R)} by a midpoint double sum over B_R; the error is the change from n/2 cells per axis."""
    if p < 1.0:
        raise ValueError(f"seminorm exponent p must be >= 1, got {p}")
    if not 0.0 < s < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {s}")
    integral, err = grid_pair_estimate(_seminorm_integrand(u, dim, s, p), radius, dim, n)
    if integral <= 0.0:
        return SeminormResult(value=0.0, stderr=0.0, method=Method.GRID)
    value = integral ** (1.0 / p)
    return SeminormResult(value=value, stderr=err * value / (p * integral), method=Method.GRID)


def sobolev_norm(
    u: ScalarField, radius: float, s: float, p: float, spec: QuadratureSpec, dim: int = 2
) -> SeminormResult:
    """(||u||_{L^p(B_R)}^p + [u]_{W^{s,p}(B_R)}^p)^{1/p}."""
    points, weights = ball_cubature(dim, radius, n_radial=16, angular=spec.angular_rule)
    lp = float(weights @ np.abs(u.eval(points)) ** p)
    semi = gagliardo_seminorm(u, radius, s, p, spec, dim)
    total = (lp + semi.value**p) ** (1.0 / p)
    if total == 0.0:
        return SeminormResult(value=0.0, stderr=0.0, method=Method.MC_PAIR)
    stderr = semi.value ** (p - 1.0) * total ** (1.0 - p) * semi.stderr
    return SeminormResult(value=total, stderr=stderr, method=Method.MC_PAIR)


def _lens_volume(d: float, radius: float, dim: int) -> float:
    """Volume of B_R(0) intersected with B_R(z), |z| = d <= 2R."""
    ball = sphere_area(dim) * radius**dim / dim
    return ball * float(betainc((dim + 1) / 2.0, 0.5, max(0.0, 1.0 - d * d / (4.0 * radius * radius))))


def linear_seminorm_exact(
    slope: Sequence[float], radius: float, s: float, p: float, dim: int = 2
) -> SeminormResult:
    """[a.x]_{W^{s,p}(B_R)} reduced to a 1-D integral over the lens volume.

    The direction average of |theta_1|^p over the sphere factors out as a gamma ratio.
    """
    a = float(np.linalg.norm(slope))
    if a == 0.0:
        return SeminormResult(value=0.0, stderr=0.0, method=Method.RADIAL_EXACT)
    moment = gamma_fn(dim / 2.0) * gamma_fn((p + 1.0) / 2.0) / (
        math.sqrt(math.pi) * gamma_fn((dim + p) / 2.0)
    )
    radial, err = quad(
        lambda d: _lens_volume(d, radius, dim),
        0.0,
        2.0 * radius,
        weight="alg",
        wvar=(p - s * p - 1.0, 0.0),
        epsabs=1e-13,
        epsrel=1e-11,
    )
    scale = a**p * moment * sphere_area(dim)
    integral = scale * radial
    value = integral ** (1.0 / p)
    return SeminormResult(
        value=value, stderr=scale * err * value / (p * integral), method=Method.RADIAL_EXACT
    )


def full_space_seminorm(
    w: ScalarField, support: float, params: FracParams, spec: QuadratureSpec, lane: int = 0
) -> tuple[float, float]:
    """[w]^2_{H^s(R^N)} for w vanishing outside B_support; shares samples with G^s drawn on the same lane."""
    value, stderr = energy_pair_integral(w, support, params, spec, lane=lane)
    logger.debug({"event": "full_space_seminorm", "value": value, "stderr": stderr})
    return value, stderr
