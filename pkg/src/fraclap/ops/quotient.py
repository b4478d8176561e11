"""Regularized difference quotient D^s, its functional G^s and the polarization identity.

The radial cutoff eta_tau removes the diagonal |x - y| < tau/2 from every
integral here, so none of them needs the singular inner zone.
"""

import math
from dataclasses import replace

import numpy as np

from fraclap.core.cutoffs import cutoff_field, radial_cutoff_value
from fraclap.core.fields import product_field
from fraclap.core.special import sphere_area
from fraclap.logging import get_logger
from fraclap.quad.pairs import lattice_midpoints, lattice_pair_sum, pair_integral
from fraclap.quad.radial import singular_radial_integral
from fraclap.quad.sphere import ball_cubature, sphere_rule
from fraclap.types import (
    CutoffField,
    FracParams,
    OperatorResult,
    QuadratureSpec,
    RadialCutoff,
    ScalarField,
)

logger = get_logger(__name__)


def kernel_mass(tau: RadialCutoff, params: FracParams) -> float:
    """Closed form of the integral of eta_tau(|z|) |z|^{-N-2s} over R^N."""
    t, s = tau.tau, params.order
    eps = 1.0 - 2.0 * s
    if eps == 0.0:
        ramp_up = math.log(2.0)
    else:
        ramp_up = (0.5 * t) ** eps * math.expm1(eps * math.log(2.0)) / eps
    ramp = (2.0 / t) * ramp_up - ((0.5 * t) ** (-2.0 * s) - t ** (-2.0 * s)) / (2.0 * s)
    plateau = t ** (-2.0 * s) / (2.0 * s)
    return sphere_area(params.dim) * (ramp + plateau)


def _localized(u: ScalarField, eta: CutoffField) -> ScalarField:
    return product_field(cutoff_field(eta), u)


def diff_quotient(
    u: ScalarField,
    eta: CutoffField,
    tau: RadialCutoff,
    x: np.ndarray,
    params: FracParams,
    spec: QuadratureSpec,
) -> OperatorResult:
    """D^s u(x) = w(x) kappa_tau - integral of eta_tau(|z|) w(x+z) |z|^{-N-2s} dz with w = eta u."""
    n, s = params.dim, params.order
    x = np.asarray(x, dtype=float)
    w = _localized(u, eta)
    wx = float(w.eval(x))

    def integrand(r: float, dirs: np.ndarray) -> np.ndarray:
        return radial_cutoff_value(tau, r) * w.eval(x + r * dirs) / r ** (n + 2.0 * s)

    norm_x = float(np.linalg.norm(x))
    reach = norm_x + eta.support
    if reach > 0.5 * tau.tau:
        conv = singular_radial_integral(
            integrand,
            n,
            spec,
            r_min=0.5 * tau.tau,
            r_max=reach,
            breakpoints=[tau.tau, abs(norm_x - eta.plateau), abs(norm_x - eta.support)],
        )
        conv_value, conv_err = conv.value, conv.err_est
    else:
        conv_value, conv_err = 0.0, 0.0

    mass = wx * kernel_mass(tau, params)
    return OperatorResult(
        value=mass - conv_value,
        err_est=conv_err,
        zones={"mass": mass, "convolution": -conv_value},
    )


def _energy_integrand(w: ScalarField, support: float, params: FracParams, tau: RadialCutoff | None):
    """(x, y) -> K(x-y) [(w(x)-w(y))^2 + w(x)^2 1{|y| > support}] for x in B_support."""
    n, s = params.dim, params.order

    def integrand(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(y - x, axis=-1)
        kernel = np.where(r > 0.0, 1.0 / np.where(r > 0.0, r, 1.0) ** (n + 2.0 * s), 0.0)
        if tau is not None:
            kernel = kernel * radial_cutoff_value(tau, r)
        wx, wy = w.eval(x), w.eval(y)
        outside = np.linalg.norm(y, axis=-1) > support
        return kernel * ((wx - wy) ** 2 + np.where(outside, wx * wx, 0.0))

    return integrand


def energy_pair_integral(
    w: ScalarField,
    support: float,
    params: FracParams,
    spec: QuadratureSpec,
    tau: RadialCutoff | None = None,
    lane: int = 0,
) -> tuple[float, float]:
    """Double integral over R^N x R^N of K (w(x)-w(y))^2 for w supported in B_support.

    Calls on the same lane share samples; independent estimates use distinct lanes.
    """
    n, s = params.dim, params.order
    return pair_integral(
        _energy_integrand(w, support, params, tau),
        support,
        n,
        spec,
        diagonal_exponent=n + 2.0 * s - 2.0,
        full_space=True,
        tail_exponent=n + 2.0 * s,
        lane=lane,
    )


def gagliardo_functional(
    u: ScalarField,
    eta: CutoffField,
    tau: RadialCutoff,
    params: FracParams,
    spec: QuadratureSpec,
    lane: int = 0,
) -> tuple[float, float]:
    """G^s(u) = double integral of eta_tau(|x-y|) (w(x)-w(y))^2 / |x-y|^{N+2s}, w = eta u."""
    value, stderr = energy_pair_integral(_localized(u, eta), eta.support, params, spec, tau, lane)
    logger.debug(
        {"event": "gagliardo_functional", "tau": tau.tau, "lane": lane, "value": value, "stderr": stderr}
    )
    return value, stderr


def polarization_check(
    u: ScalarField,
    eta: CutoffField,
    tau: RadialCutoff,
    params: FracParams,
    spec: QuadratureSpec,
    n_radial: int = 12,
) -> OperatorResult:
    """Integral of w D^s u over B minus G^s(u)/2; vanishes up to the combined error."""
    w = _localized(u, eta)
    points, weights = ball_cubature(
        params.dim,
        eta.support,
        n_radial=n_radial,
        angular=max(8, spec.angular_rule // 2),
        splits=[eta.plateau],
    )
    wvals = w.eval(points)

    lhs, lhs_err = 0.0, 0.0
    for point, weight, wp in zip(points, weights, wvals):
        if wp == 0.0:
            continue
        d = diff_quotient(u, eta, tau, point, params, spec)
        lhs += weight * wp * d.value
        lhs_err += abs(weight * wp) * d.err_est

    g, g_err = gagliardo_functional(u, eta, tau, params, spec)
    residual = lhs - 0.5 * g
    logger.info(
        {"event": "polarization_check", "tau": tau.tau, "lhs": lhs, "half_g": 0.5 * g, "stderr": 0.5 * g_err}
    )
    return OperatorResult(
        value=residual,
        err_est=lhs_err + 0.5 * g_err,
        zones={"lhs": lhs, "half_g": -0.5 * g},
    )


def cauchy_schwarz_gap(
    w: ScalarField,
    z: ScalarField,
    tau: RadialCutoff,
    radius: float,
    params: FracParams,
    spec: QuadratureSpec,
) -> tuple[float, float]:
    """sqrt(E(w) E(z)) - |E(w, z)| for the eta_tau-truncated energy; nonnegative.

    w and z must vanish outside B_radius. All three energies share samples, so
    the gap is nonnegative sample-wise and not only in expectation. The cross
    term may vanish and runs without a relative stopping rule.
    """
    n, s = params.dim, params.order

    def cross(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(y - x, axis=-1)
        kernel = radial_cutoff_value(tau, r) / np.where(r > 0.0, r, 1.0) ** (n + 2.0 * s)
        wx, wy, zx, zy = w.eval(x), w.eval(y), z.eval(x), z.eval(y)
        outside = np.linalg.norm(y, axis=-1) > radius
        return kernel * ((wx - wy) * (zx - zy) + np.where(outside, wx * zx, 0.0))

    e_w, err_w = energy_pair_integral(w, radius, params, spec, tau)
    e_z, err_z = energy_pair_integral(z, radius, params, spec, tau)
    e_wz, err_wz = pair_integral(
        cross,
        radius,
        n,
        replace(spec, mc_rel_tol=math.inf),
        diagonal_exponent=n + 2.0 * s - 2.0,
        full_space=True,
        tail_exponent=n + 2.0 * s,
    )
    product = math.sqrt(e_w * e_z)
    stderr = err_wz + (0.5 * (err_w * e_z + err_z * e_w) / product if product > 0.0 else 0.0)
    return product - abs(e_wz), stderr


def box_exterior_mass(x: np.ndarray, half_width: float, params: FracParams, angular: int = 512) -> np.ndarray:
    """Integral of |x-y|^{-N-2s} over y outside [-L, L]^N for each row of x.

    Each ray from x leaves the cube at distance rho(theta), which leaves
    rho^{-2s}/(2s) to integrate over the sphere.
    """
    s = params.order
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if np.any(np.abs(x) >= half_width):
        raise ValueError("points must lie strictly inside the cube")
    dirs, weights = sphere_rule(params.dim, angular)
    step = np.abs(dirs)[None, :, :]
    with np.errstate(divide="ignore"):
        reach = np.where(step > 0.0, (half_width - np.sign(dirs)[None, :, :] * x[:, None, :]) / step, np.inf)
    rho = reach.min(axis=-1)
    return rho ** (-2.0 * s) @ weights / (2.0 * s)


def _lattice_gagliardo(w: ScalarField, tau: RadialCutoff, half_width: float, params: FracParams, n: int) -> float:
    n_dim, s = params.dim, params.order
    points, h = lattice_midpoints(half_width, n_dim, n)

    def integrand(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(y - x, axis=-1)
        kernel = radial_cutoff_value(tau, r) / np.where(r > 0.0, r, 1.0) ** (n_dim + 2.0 * s)
        return kernel * (w.eval(x) - w.eval(y)) ** 2

    values = w.eval(points)
    inside = values != 0.0
    exterior = box_exterior_mass(points[inside], half_width, params)
    return lattice_pair_sum(integrand, points, h) + 2.0 * h**n_dim * float(values[inside] ** 2 @ exterior)


def gagliardo_functional_grid(
    u: ScalarField,
    eta: CutoffField,
    tau: RadialCutoff,
    params: FracParams,
    n: int = 64,
) -> tuple[float, float]:
    """G^s(u) as a midpoint double sum over the cube of half-width support + tau plus the exact exterior.

    Cost grows as n^{2N}. The error estimate is the change from n/2 cells per axis.
    """
    w = _localized(u, eta)
    half_width = eta.support + tau.tau
    fine = _lattice_gagliardo(w, tau, half_width, params, n)
    coarse = _lattice_gagliardo(w, tau, half_width, params, n // 2)
    logger.debug({"event": "gagliardo_functional_grid", "tau": tau.tau, "value": fine, "coarse": coarse})
    return fine, abs(fine - coarse)


def _lattice_quotient(
    w: ScalarField, tau: RadialCutoff, x: np.ndarray, half_width: float, params: FracParams, n: int
) -> tuple[float, float]:
    n_dim, s = params.dim, params.order
    points, h = lattice_midpoints(half_width, n_dim, n)
    r = np.linalg.norm(points - x, axis=-1)
    kernel = radial_cutoff_value(tau, r) / np.where(r > 0.0, r, 1.0) ** (n_dim + 2.0 * s)
    wx = float(w.eval(x))
    body = h**n_dim * float(kernel @ (wx - w.eval(points)))
    return body, wx * float(box_exterior_mass(x, half_width, params)[0])


def diff_quotient_grid(
    u: ScalarField,
    eta: CutoffField,
    tau: RadialCutoff,
    x: np.ndarray,
    params: FracParams,
    n: int = 256,
) -> OperatorResult:
    """D^s u(x) as a midpoint sum of eta_tau(|z|) (w(x) - w(x+z)) |z|^{-N-2s} over a cube plus the exact exterior.

    x must lie in B_support; the cube has half-width support + tau. The error
    estimate is the change from n/2 cells per axis.
    """
    x = np.asarray(x, dtype=float)
    if np.linalg.norm(x) > eta.support:
        raise ValueError(f"x must lie in the cutoff support B_{eta.support:g}")
    w = _localized(u, eta)
    half_width = eta.support + tau.tau
    body, exterior = _lattice_quotient(w, tau, x, half_width, params, n)
    coarse_body, _ = _lattice_quotient(w, tau, x, half_width, params, n // 2)
    return OperatorResult(
        value=body + exterior,
        err_est=abs(body - coarse_body),
        zones={"lattice": body, "exterior": exterior},
    )
