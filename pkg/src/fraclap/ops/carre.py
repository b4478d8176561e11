"""Carré du champ I_s, the Leibniz residual and the cutoff source field."""

import math
from typing import Sequence

import numpy as np

from fraclap.core.cutoffs import cutoff_field
from fraclap.core.fields import product_field, regularity
from fraclap.core.special import sphere_area
from fraclap.logging import get_logger
from fraclap.ops.laplacian import compact_reach, frac_laplacian
from fraclap.quad.radial import singular_radial_integral
from fraclap.types import (
    CutoffField,
    Decay,
    FracParams,
    OperatorResult,
    QuadratureSpec,
    ScalarField,
    SourceResult,
)

logger = get_logger(__name__)


def _spread(u: ScalarField) -> float:
    """Growth of |u(x) - u(y)| as |y| -> inf."""
    return 0.0 if u.decay == Decay.COMPACT else max(u.growth, 0.0)


def carre_du_champ(
    f: ScalarField,
    g: ScalarField,
    x: np.ndarray,
    params: FracParams,
    spec: QuadratureSpec,
    breakpoints: Sequence[float] = (),
) -> OperatorResult:
    """I_s(f, g)(x) = C * integral of (f(x)-f(y))(g(x)-g(y)) / |x-y|^{N+2s} dy."""
    n, s = params.dim, params.order
    alpha = regularity(f) + regularity(g)
    if alpha <= 2.0 * s:
        raise ValueError(
            f"I_s({f.name}, {g.name}) diverges on the diagonal: exponents sum to {alpha:g} <= 2s"
        )
    if _spread(f) + _spread(g) >= 2.0 * s:
        raise ValueError(f"I_s({f.name}, {g.name}) diverges at infinity for s = {s:g}")

    x = np.asarray(x, dtype=float)
    fx, gx = float(f.eval(x)), float(g.eval(x))

    def integrand(r: float, dirs: np.ndarray) -> np.ndarray:
        y = x + r * dirs
        return (fx - f.eval(y)) * (gx - g.eval(y)) / r ** (n + 2.0 * s)

    order = alpha - 1.0 - 2.0 * s
    if f.decay == Decay.COMPACT and g.decay == Decay.COMPACT:
        reach = max(compact_reach(f, x, spec), compact_reach(g, x, spec))
        norm_x = float(np.linalg.norm(x))
        result = singular_radial_integral(
            integrand,
            n,
            spec,
            order=order,
            r_max=reach,
            breakpoints=[abs(norm_x - f.radius), abs(norm_x - g.radius), *breakpoints],
        )
        zones = dict(result.zones)
        zones["tail"] = fx * gx * sphere_area(n) * reach ** (-2.0 * s) / (2.0 * s)
    else:
        result = singular_radial_integral(
            integrand, n, spec, order=order, breakpoints=breakpoints, tail_order=2.0 * s
        )
        zones = dict(result.zones)

    zones = {k: params.c_ns * v for k, v in zones.items()}
    return OperatorResult(
        value=sum(zones.values()), err_est=params.c_ns * result.err_est, zones=zones
    )


def leibniz_residual(
    f: ScalarField, g: ScalarField, x: np.ndarray, params: FracParams, spec: QuadratureSpec
) -> OperatorResult:
    """(-D)^s(fg) - f (-D)^s g - g (-D)^s f + I_s(f, g) at x; zones hold the four terms."""
    x = np.asarray(x, dtype=float)
    fx, gx = float(f.eval(x)), float(g.eval(x))

    lap_fg = frac_laplacian(product_field(f, g), x, params, spec)
    lap_g = frac_laplacian(g, x, params, spec)
    lap_f = frac_laplacian(f, x, params, spec)
    carre = carre_du_champ(f, g, x, params, spec)

    zones = {
        "product": lap_fg.value,
        "f_lap_g": -fx * lap_g.value,
        "g_lap_f": -gx * lap_f.value,
        "carre": carre.value,
    }
    err = lap_fg.err_est + abs(fx) * lap_g.err_est + abs(gx) * lap_f.err_est + carre.err_est
    value = lap_fg.value - fx * lap_g.value - gx * lap_f.value + carre.value
    logger.debug({"event": "leibniz_residual", "value": value, "err_est": err})
    return OperatorResult(value=value, err_est=err, zones=zones)


def _sum_results(terms: dict[str, tuple[float, OperatorResult]]) -> OperatorResult:
    zones = {name: c * res.value for name, (c, res) in terms.items()}
    err = sum(abs(c) * res.err_est for c, res in terms.values())
    return OperatorResult(value=sum(zones.values()), err_est=err, zones=zones)


def source_field(
    u: ScalarField, eta: CutoffField, x: np.ndarray, params: FracParams, spec: QuadratureSpec
) -> SourceResult:
    """Cutoff source C * int u(y)(eta^2(x) - eta^2(y)) / |x-y|^{N+2s} dy in direct and decomposed form."""
    n, s = params.dim, params.order
    x = np.asarray(x, dtype=float)
    eta_f = cutoff_field(eta)
    eta2x = float(eta_f.eval(x)) ** 2

    def integrand(r: float, dirs: np.ndarray) -> np.ndarray:
        yp, ym = x + r * dirs, x - r * dirs
        plus = u.eval(yp) * (eta2x - eta_f.eval(yp) ** 2)
        minus = u.eval(ym) * (eta2x - eta_f.eval(ym) ** 2)
        return 0.5 * (plus + minus) / r ** (n + 2.0 * s)

    order = min(regularity(u), 1.0) - 2.0 * s
    norm_x = float(np.linalg.norm(x))
    cuts = [abs(norm_x - eta.plateau), abs(norm_x - eta.support)]
    if eta2x == 0.0 or u.decay == Decay.COMPACT:
        reach = compact_reach(eta_f, x, spec)
        if eta2x != 0.0:
            reach = max(reach, compact_reach(u, x, spec))
        direct = singular_radial_integral(integrand, n, spec, order=order, r_max=reach, breakpoints=cuts)
    else:
        direct = singular_radial_integral(
            integrand, n, spec, order=order, breakpoints=cuts, tail_order=2.0 * s
        )
    direct = OperatorResult(
        value=params.c_ns * direct.value,
        err_est=params.c_ns * direct.err_est,
        zones={k: params.c_ns * v for k, v in direct.zones.items()},
    )

    eta_x, ux = math.sqrt(eta2x), float(u.eval(x))
    decomposed = _sum_results(
        {
            "eta_u_lap_eta": (2.0 * eta_x * ux, frac_laplacian(eta_f, x, params, spec)),
            "carre_eta_eta_u": (-1.0, carre_du_champ(eta_f, product_field(eta_f, u), x, params, spec)),
            "eta_carre_eta_u": (-eta_x, carre_du_champ(eta_f, u, x, params, spec)),
        }
    )
    return SourceResult(direct=direct, decomposed=decomposed)
