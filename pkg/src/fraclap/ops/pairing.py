"""Very weak pairing: integral of u (-D)^s phi for compactly supported phi."""

import numpy as np
from scipy.special import roots_legendre

from fraclap.core.fields import at_least
from fraclap.logging import get_logger
from fraclap.ops.laplacian import check_tail, frac_laplacian
from fraclap.quad.sphere import ball_cubature, sphere_rule
from fraclap.types import Decay, FracParams, OperatorResult, QuadratureSpec, ScalarField, Smoothness

logger = get_logger(__name__)


def _exterior_cubature(
    dim: int, start: float, order: float, n_radial: int, angular: int
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes for |x| > start: Gauss-Legendre on [start, 2 start], then w = r^{-2s} beyond."""
    gl_x, gl_w = roots_legendre(n_radial)
    dirs, dir_w = sphere_rule(dim, angular)

    near_r = start * (1.5 + 0.5 * gl_x)
    near_w = 0.5 * start * gl_w * near_r ** (dim - 1)

    beta = 2.0 * order
    top = (2.0 * start) ** (-beta)
    w = 0.5 * top * (gl_x + 1.0)
    far_r = w ** (-1.0 / beta)
    far_w = 0.5 * top * gl_w * far_r**dim / (beta * w)

    r = np.concatenate([near_r, far_r])
    rw = np.concatenate([near_w, far_w])
    points = (r[:, None, None] * dirs[None, :, :]).reshape(-1, dim)
    weights = (rw[:, None] * dir_w[None, :]).reshape(-1)
    return points, weights


def very_weak_pairing(
    u: ScalarField,
    phi: ScalarField,
    params: FracParams,
    spec: QuadratureSpec,
    n_radial: int = 12,
) -> OperatorResult:
    """Integral over R^N of u(x) (-D)^s phi(x), the very weak form of (-D)^s u tested with phi."""
    if phi.decay != Decay.COMPACT or not at_least(phi, Smoothness.C2):
        raise ValueError(f"test function {phi.name} must be C^2 with compact support")
    check_tail(u, params)

    dim, reach = params.dim, phi.radius
    angular = max(8, spec.angular_rule // 2)
    parts = {
        "ball": ball_cubature(dim, 2.0 * reach, n_radial, angular, splits=[reach]),
        "exterior": _exterior_cubature(dim, 2.0 * reach, params.order, n_radial, angular),
    }

    zones, err = {}, 0.0
    for name, (points, weights) in parts.items():
        uvals = u.eval(points)
        total = 0.0
        for point, weight, uv in zip(points, weights, uvals):
            if uv == 0.0:
                continue
            lap = frac_laplacian(phi, point, params, spec)
            total += weight * uv * lap.value
            err += abs(weight * uv) * lap.err_est
        zones[name] = total

    logger.debug({"event": "very_weak_pairing", "zones": zones, "err_est": err})
    return OperatorResult(value=sum(zones.values()), err_est=err, zones=zones)
