"""Independent oracles for the fractional Laplacian: Fourier multiplier and Kummer closed form."""

import math
from typing import Callable

import mpmath
import numpy as np
from scipy.special import jv

from fraclap.core.fields import gaussian_field
from fraclap.core.special import sphere_area
from fraclap.logging import get_logger
from fraclap.ops.laplacian import frac_laplacian
from fraclap.quad.radial import radial_integral
from fraclap.types import FracParams, QuadratureSpec

logger = get_logger(__name__)

SYMBOL_SCALES = (1.0, 2.0 * math.pi)


def gaussian_hat(rho: float) -> float:
    """Fourier transform of exp(-pi |x|^2) under the exp(-2 pi i x.xi) convention."""
    return math.exp(-math.pi * rho * rho)


def fourier_multiplier_oracle(
    profile_hat: Callable[[float], float],
    x: np.ndarray,
    params: FracParams,
    spec: QuadratureSpec,
    symbol_scale: float = 2.0 * math.pi,
    cutoff: float = 12.0,
) -> float:
    """Inverse Fourier transform of (scale |xi|)^{2s} u_hat for radial u, by Hankel quadrature."""
    n, s = params.dim, params.order
    r = float(np.linalg.norm(x))

    if r == 0.0:

        def fn(rho: float) -> float:
            return (symbol_scale * rho) ** (2.0 * s) * profile_hat(rho) * rho ** (n - 1)

        value, _ = radial_integral(fn, 0.0, cutoff, spec, zone="fourier")
        return sphere_area(n) * value

    def fn(rho: float) -> float:
        return (
            (symbol_scale * rho) ** (2.0 * s)
            * profile_hat(rho)
            * rho ** (n / 2.0)
            * jv(n / 2.0 - 1.0, 2.0 * math.pi * r * rho)
        )

    value, _ = radial_integral(fn, 0.0, cutoff, spec, points=[1.0, 2.0], zone="fourier")
    return 2.0 * math.pi * r ** (1.0 - n / 2.0) * value


def gaussian_laplacian_exact(x: np.ndarray, params: FracParams) -> float:
    """(-D)^s exp(-pi|x|^2) = pi^s 4^s Gamma(N/2+s)/Gamma(N/2) 1F1(N/2+s; N/2; -pi|x|^2)."""
    n, s = params.dim, params.order
    r2 = float(np.dot(x, x))
    with mpmath.workdps(30):
        a, b = mpmath.mpf(n) / 2 + s, mpmath.mpf(n) / 2
        value = (
            mpmath.power(mpmath.pi, s)
            * mpmath.power(4, s)
            * mpmath.gamma(a)
            / mpmath.gamma(b)
            * mpmath.hyp1f1(a, b, -mpmath.pi * r2)
        )
        return float(value)


def pin_fourier_convention(params: FracParams, spec: QuadratureSpec) -> float:
    """Symbol scale (1 or 2 pi) whose multiplier matches the quadrature at the origin."""
    origin = np.zeros(params.dim)
    quadrature = frac_laplacian(gaussian_field(), origin, params, spec).value
    mismatch = {
        scale: abs(fourier_multiplier_oracle(gaussian_hat, origin, params, spec, scale) / quadrature - 1.0)
        for scale in SYMBOL_SCALES
    }
    scale = min(mismatch, key=mismatch.__getitem__)
    logger.info({"event": "fourier_convention_pinned", "symbol_scale": scale, "mismatch": mismatch})
    return scale
