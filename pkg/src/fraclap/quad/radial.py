"""Three-zone engine for radially singular integrals over R^N.

An integral over a shell r_min < |y| < r_max is written as a radial integral of
the angular profile A(r) = r^{N-1} sum_j w_j F(r, theta_j). The inner ball is
handled by Gauss-Jacobi against the known algebraic behaviour r^order of A at
the origin, the middle annuli adaptively, and the tail after the change of
variables w = r^{-beta} that maps [R, inf) onto the finite interval [0, R^{-beta}].
"""

import math
from dataclasses import replace
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, quad_vec
from scipy.special import roots_jacobi

from fraclap.logging import get_logger
from fraclap.quad.sphere import sphere_rule
from fraclap.types import OperatorResult, QuadratureSpec, ShellIntegrand

logger = get_logger(__name__)

INNER_NODES = 12
INNER_CHECK_NODES = 7
EPS = float(np.finfo(float).eps)


def make_spec(base: QuadratureSpec | None = None, **overrides) -> QuadratureSpec:
    """QuadratureSpec with overrides applied and its invariants checked."""
    spec = replace(base or QuadratureSpec(), **overrides)
    if not 0.0 < spec.inner_cut < spec.outer_cut:
        raise ValueError(
            f"need 0 < inner_cut < outer_cut, got {spec.inner_cut} and {spec.outer_cut}"
        )
    if not (spec.rel_tol > 0.0 and spec.abs_tol > 0.0 and spec.mc_rel_tol > 0.0):
        raise ValueError("tolerances must be positive")
    if spec.mc_samples < 1000:
        raise ValueError(f"mc_samples must be at least 1000, got {spec.mc_samples}")
    if spec.batch_size < 1 or spec.max_subdivisions < 1:
        raise ValueError("batch_size and max_subdivisions must be positive")
    if spec.angular_rule < 2 or spec.angular_rule % 2:
        raise ValueError(f"angular rule size must be even and >= 2, got {spec.angular_rule}")
    return spec


def _converged(value: float, err: float, spec: QuadratureSpec) -> bool:
    return err <= max(spec.abs_tol, spec.rel_tol * abs(value))


def _decades(a: float, b: float) -> list[float]:
    if a <= 0.0:
        return []
    return [10.0**k for k in range(math.ceil(math.log10(a)), math.floor(math.log10(b)) + 1)]


def radial_integral(
    fn: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec,
    points: Sequence[float] = (),
    zone: str = "middle",
) -> tuple[float, float]:
    """Adaptive 1-D integral of fn over [a, b] with optional breakpoints."""
    if not b > a:
        return 0.0, 0.0
    inner = sorted({p for p in points if a < p < b})
    out = quad(
        fn,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        points=inner or None,
        full_output=1,
    )
    value, err = float(out[0]), float(out[1])
    if len(out) > 3:
        info = out[2]
        if info.get("last", 0) >= spec.max_subdivisions and not _converged(value, err, spec):
            logger.error({"event": "quadrature_failed", "zone": zone, "err_est": err})
            raise RuntimeError("quadrature did not converge", {"zone": zone, "err_est": err})
        logger.warning({"event": "quadrature_roundoff", "zone": zone, "err_est": err})
    return value, err


def tail_integral(
    fn: Callable[[float], float],
    start: float,
    beta: float,
    spec: QuadratureSpec,
    zone: str = "tail",
) -> tuple[float, float]:
    """Integral of fn over [start, inf) after the substitution w = r^{-beta}."""
    if not beta > 0.0:
        raise ValueError(f"tail exponent must be positive, got {beta}")

    def mapped(w: float) -> float:
        r = w ** (-1.0 / beta)
        return fn(r) * r / (beta * w)

    return radial_integral(mapped, 0.0, start ** (-beta), spec, zone=zone)


def vector_integral(
    fn: Callable[[float], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec,
    points: Sequence[float] = (),
    zone: str = "middle",
) -> tuple[np.ndarray, float]:
    """Adaptive integral of a vector-valued fn, error measured in the max norm."""
    if not b > a:
        return np.zeros_like(np.asarray(fn(a))), 0.0
    value, err, info = quad_vec(
        fn,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        norm="max",
        limit=max(spec.max_subdivisions, 2000),
        points=sorted({p for p in points if a < p < b}) or None,
        full_output=True,
    )
    if info.status == 1:
        logger.error({"event": "quadrature_failed", "zone": zone, "err_est": float(err)})
        raise RuntimeError("quadrature did not converge", {"zone": zone, "err_est": float(err)})
    if info.status != 0:
        raise RuntimeError("quadrature produced non-finite values", {"zone": zone})
    return np.asarray(value), float(err)


def shell_profile(integrand: ShellIntegrand, dim: int, angular_rule: int) -> Callable[[float], float]:
    """r -> r^{N-1} times the sphere-rule sum of integrand(r, theta)."""
    dirs, weights = sphere_rule(dim, angular_rule)

    def profile(r: float) -> float:
        return r ** (dim - 1) * float(weights @ integrand(r, dirs))

    return profile


def _inner_zone(profile: Callable[[float], float], cut: float, order: float) -> tuple[float, float]:
    if not order > -1.0:
        raise ValueError(f"inner-zone singularity r^{order} is not integrable")
    estimates = {}
    for n in (INNER_NODES, INNER_CHECK_NODES):
        x, w = roots_jacobi(n, 0.0, order)
        r = 0.5 * cut * (x + 1.0)
        g = np.array([profile(ri) for ri in r]) / r**order
        scale = (0.5 * cut) ** (order + 1.0)
        estimates[n] = (scale * float(w @ g), scale * float(np.abs(w) @ np.abs(g)))
    value, magnitude = estimates[INNER_NODES]
    err = abs(value - estimates[INNER_CHECK_NODES][0]) + 16.0 * EPS * magnitude
    return value, err


def singular_radial_integral(
    integrand: ShellIntegrand,
    dim: int,
    spec: QuadratureSpec,
    order: float = 0.0,
    r_min: float = 0.0,
    r_max: float = math.inf,
    breakpoints: Sequence[float] = (),
    tail_order: float | None = None,
) -> OperatorResult:
    """Integral of integrand(|y|, y/|y|) dy over r_min < |y| < r_max.

    `order` is the exponent of the angular profile at the origin (only used
    when r_min == 0); `tail_order` the decay exponent beta of the profile,
    A(r) ~ r^{-1-beta}, used when r_max is infinite.
    """
    profile = shell_profile(integrand, dim, spec.angular_rule)
    zones: dict[str, float] = {}
    errors: dict[str, float] = {}

    start = r_min
    if r_min == 0.0:
        cut = min(spec.inner_cut, r_max)
        zones["inner"], errors["inner"] = _inner_zone(profile, cut, order)
        start = cut

    if math.isinf(r_max):
        stop = max(spec.outer_cut, start, max(breakpoints, default=0.0))
    else:
        stop = r_max

    if stop > start:
        zones["middle"], errors["middle"] = radial_integral(
            profile, start, stop, spec, points=[*_decades(start, stop), *breakpoints]
        )

    if math.isinf(r_max):
        zones["tail"], errors["tail"] = tail_integral(
            profile, stop, 1.0 if tail_order is None else tail_order, spec
        )

    logger.debug({"event": "radial_zones", "zones": zones, "errors": errors})
    return OperatorResult(value=sum(zones.values()), err_est=sum(errors.values()), zones=zones)
