"""Pointwise fractional Laplacian in second-difference and principal-value form."""

import math
from typing import Sequence

import numpy as np

from fraclap.core.fields import at_least
from fraclap.core.special import sphere_area
from fraclap.logging import get_logger
from fraclap.quad.radial import singular_radial_integral
from fraclap.types import Decay, FracParams, OperatorResult, QuadratureSpec, ScalarField, Smoothness

logger = get_logger(__name__)

LAPLACIAN_STEP = 1e-4


def check_tail(u: ScalarField, params: FracParams, what: str = "field"):
    """Reject fields whose growth makes the kernel tail diverge."""
    if u.decay != Decay.COMPACT and u.growth >= 2.0 * params.order:
        raise ValueError(
            f"{what} {u.name} grows like |x|^{u.growth:g}, tail diverges for s = {params.order:g}"
        )


def _check_operand(u: ScalarField, params: FracParams):
    if not at_least(u, Smoothness.C2):
        raise ValueError(
            f"{u.name} is only {u.smoothness.value}; the pointwise operator needs a C^2 field"
        )
    check_tail(u, params)


def _scaled(result: OperatorResult, factor: float, extra: dict[str, float] | None = None) -> OperatorResult:
    zones = {k: factor * v for k, v in result.zones.items()}
    for k, v in (extra or {}).items():
        zones[k] = factor * v
    return OperatorResult(
        value=sum(zones.values()), err_est=abs(factor) * result.err_est, zones=zones
    )


def compact_reach(u: ScalarField, x: np.ndarray, spec: QuadratureSpec) -> float:
    """Radius around x beyond which a compactly supported u vanishes."""
    return max(float(np.linalg.norm(x)) + u.radius, 2.0 * spec.inner_cut)


def frac_laplacian(
    u: ScalarField,
    x: np.ndarray,
    params: FracParams,
    spec: QuadratureSpec,
    breakpoints: Sequence[float] = (),
    smooth_radius: float = 0.0,
) -> OperatorResult:
    """(C/2) * integral of (2u(x) - u(x+y) - u(x-y)) / |y|^{N+2s} dy.

    A compact u contributes 2u(x) times the kernel mass beyond its support.
    smooth_radius declares u to be C^2 on B_smooth_radius(x); once it covers
    the inner zone the field's global smoothness tag is not consulted.
    """
    if smooth_radius >= spec.inner_cut:
        check_tail(u, params)
    else:
        _check_operand(u, params)
    x = np.asarray(x, dtype=float)
    n, s = params.dim, params.order
    ux = float(u.eval(x))

    def integrand(r: float, dirs: np.ndarray) -> np.ndarray:
        ys = r * dirs
        return (2.0 * ux - u.eval(x + ys) - u.eval(x - ys)) / r ** (n + 2.0 * s)

    if u.decay == Decay.COMPACT:
        reach = compact_reach(u, x, spec)
        cuts = [abs(float(np.linalg.norm(x)) - u.radius), *breakpoints]
        result = singular_radial_integral(
            integrand, n, spec, order=1.0 - 2.0 * s, r_max=reach, breakpoints=cuts
        )
        tail = 2.0 * ux * sphere_area(n) * reach ** (-2.0 * s) / (2.0 * s)
        out = _scaled(result, 0.5 * params.c_ns, {"tail": tail})
    else:
        result = singular_radial_integral(
            integrand, n, spec, order=1.0 - 2.0 * s, breakpoints=breakpoints, tail_order=2.0 * s
        )
        out = _scaled(result, 0.5 * params.c_ns)

    logger.debug({"event": "frac_laplacian", "field": u.name, "value": out.value, "err_est": out.err_est})
    return out


def _laplacian_at(u: ScalarField, x: np.ndarray) -> float:
    n = len(x)
    if u.derivative is not None:
        total = 0.0
        for i in range(n):
            iota = tuple(2 if j == i else 0 for j in range(n))
            total += float(u.derivative(iota)(x))
        return total
    h = LAPLACIAN_STEP
    steps = h * np.eye(n)
    plus, minus = u.eval(x + steps), u.eval(x - steps)
    return float(np.sum(plus + minus - 2.0 * u.eval(x))) / (h * h)


def frac_laplacian_pv(
    u: ScalarField, x: np.ndarray, params: FracParams, spec: QuadratureSpec
) -> OperatorResult:
    """C * PV integral of (u(x) - u(y)) / |x-y|^{N+2s} outside B_eps(x), plus the Taylor remainder of B_eps.

    The omitted ball contributes -|S| Lap u(x) eps^{2-2s} / (2N (2-2s)).
    """
    _check_operand(u, params)
    x = np.asarray(x, dtype=float)
    n, s = params.dim, params.order
    eps = spec.inner_cut
    ux = float(u.eval(x))

    def integrand(r: float, dirs: np.ndarray) -> np.ndarray:
        return (ux - u.eval(x + r * dirs)) / r ** (n + 2.0 * s)

    if u.decay == Decay.COMPACT:
        reach = compact_reach(u, x, spec)
        cuts = [abs(float(np.linalg.norm(x)) - u.radius)]
        result = singular_radial_integral(integrand, n, spec, r_min=eps, r_max=reach, breakpoints=cuts)
        extra = {"tail": ux * sphere_area(n) * reach ** (-2.0 * s) / (2.0 * s)}
    else:
        result = singular_radial_integral(integrand, n, spec, r_min=eps, tail_order=2.0 * s)
        extra = {}

    extra["ball"] = (
        -sphere_area(n) * _laplacian_at(u, x) * eps ** (2.0 - 2.0 * s) / (2.0 * n * (2.0 - 2.0 * s))
    )
    return _scaled(result, params.c_ns, extra)
