"""Closed-form fractional Poisson kernel of B_rho and its x-derivatives."""

import math
from typing import Sequence

import numpy as np
from scipy.stats import linregress

from fraclap.core.special import gamma_fn
from fraclap.logging import get_logger
from fraclap.poisson.jets import (
    factorial,
    jet_compose,
    jet_mul,
    power_coefficients,
    quadratic_jet,
)
from fraclap.types import FracParams

logger = get_logger(__name__)

MAX_DERIVATIVE_ORDER = 6


def poisson_constant(params: FracParams) -> float:
    """Gamma(N/2) sin(pi s) / pi^{N/2+1}, the constant giving the kernel unit mass."""
    n, s = params.dim, params.order
    return gamma_fn(n / 2.0) * math.sin(math.pi * s) / math.pi ** (n / 2.0 + 1.0)


def check_interior(rho: float, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if not rho > 0.0:
        raise ValueError(f"ball radius must be positive, got {rho}")
    if np.any(np.linalg.norm(x, axis=-1) >= rho):
        raise ValueError(f"x must lie inside B_{rho:g}")
    return x


def _check_exterior(rho: float, y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if np.any(np.linalg.norm(y, axis=-1) <= rho):
        raise ValueError(f"y must lie outside the closed ball B_{rho:g}")
    return y


def poisson_kernel(
    rho: float,
    x: np.ndarray,
    y: np.ndarray,
    params: FracParams,
    constant: float | None = None,
) -> np.ndarray:
    """C ((rho^2 - |x|^2) / (|y|^2 - rho^2))^s |x - y|^{-N}; C defaults to C_{N,s}.

    Vectorized over y of shape (..., N).
    """
    x, y = check_interior(rho, x), _check_exterior(rho, y)
    n, s = params.dim, params.order
    c = params.c_ns if constant is None else constant
    inner = rho * rho - float(x @ x)
    outer = np.sum(y * y, axis=-1) - rho * rho
    return c * (inner / outer) ** s * np.linalg.norm(x - y, axis=-1) ** (-n)


def radial_factor_jet(rho: float, x: np.ndarray, order_s: float, order: int) -> np.ndarray:
    """Taylor jet of h -> (rho^2 - |x + h|^2)^s."""
    dim = len(x)
    base = rho * rho - float(x @ x)
    delta = quadratic_jet(-2.0 * x, -1.0, dim, order)
    return jet_compose(power_coefficients(base, order_s, order), delta, dim, order)


def distance_jet(x: np.ndarray, y: np.ndarray, order: int) -> np.ndarray:
    """Taylor jet of h -> |x + h - y|^{-N}, batched over y."""
    dim = len(x)
    diff = x - np.asarray(y, dtype=float)
    delta = quadratic_jet(2.0 * diff, 1.0, dim, order)
    coeffs = power_coefficients(np.sum(diff * diff, axis=-1), -dim / 2.0, order)
    return jet_compose(coeffs, delta, dim, order)


def _check_iota(iota: Sequence[int], dim: int) -> tuple[int, ...]:
    iota = tuple(int(k) for k in iota)
    if len(iota) != dim or any(k < 0 for k in iota):
        raise ValueError(f"multi-index {iota} does not match dimension {dim}")
    if sum(iota) > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"derivative order {sum(iota)} exceeds {MAX_DERIVATIVE_ORDER}")
    return iota


def kernel_jet(
    rho: float,
    x: np.ndarray,
    y: np.ndarray,
    order: int,
    params: FracParams,
    constant: float | None = None,
) -> np.ndarray:
    """Taylor jet in x of the kernel, batched over y."""
    x, y = check_interior(rho, x), _check_exterior(rho, y)
    s = params.order
    c = params.c_ns if constant is None else constant
    product = jet_mul(
        radial_factor_jet(rho, x, s, order), distance_jet(x, y, order), params.dim, order
    )
    outer = (np.sum(y * y, axis=-1) - rho * rho) ** (-s)
    return c * outer[(Ellipsis, *(None,) * params.dim)] * product


def kernel_derivative(
    rho: float,
    x: np.ndarray,
    y: np.ndarray,
    iota: Sequence[int],
    params: FracParams,
    constant: float | None = None,
) -> np.ndarray:
    """Exact partial derivative d^iota_x of the kernel, |iota| <= 6."""
    iota = _check_iota(iota, params.dim)
    jet = kernel_jet(rho, x, y, sum(iota), params, constant)
    return factorial(iota) * jet[(Ellipsis, *iota)]


def derivative_growth_fit(
    rho: float,
    xs: np.ndarray,
    ys: np.ndarray,
    orders: Sequence[int],
    params: FracParams,
) -> tuple[float, float, float]:
    """Log-linear fit of max over pairs of |d_1^k P| / (k! P) against k.

    Returns (slope, intercept, max residual); exp(slope) is the fitted growth
    constant c in |d^iota P| <= C c^|iota| iota! P.
    """
    top = max(orders)
    if top > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"derivative order {top} exceeds {MAX_DERIVATIVE_ORDER}")
    if len(orders) < 2:
        raise ValueError("a growth fit needs at least two orders")
    ratios = np.zeros(len(orders))
    for x, y in zip(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)):
        jet = kernel_jet(rho, x, y, top, params)
        base = jet[(Ellipsis, *(0,) * params.dim)]
        for i, k in enumerate(orders):
            iota = (k,) + (0,) * (params.dim - 1)
            ratios[i] = max(ratios[i], abs(float(jet[iota])) / float(base))

    if np.any(ratios <= 0.0):
        raise ValueError("a derivative vanished at every sampled pair; log fit undefined")
    logs = np.log(ratios)
    fit = linregress(np.asarray(orders, dtype=float), logs)
    residual = float(np.max(np.abs(logs - (fit.slope * np.asarray(orders) + fit.intercept))))
    logger.debug({"event": "kernel_growth_fit", "slope": fit.slope, "residual": residual})
    return float(fit.slope), float(fit.intercept), residual
