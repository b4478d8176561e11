"""Gamma function and the normalization constants built from it."""

import math
from functools import lru_cache

from fraclap.logging import get_logger
from fraclap.types import FracParams

logger = get_logger(__name__)

LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Euler Gamma for x > 0 by the Lanczos approximation.

    The power t^{z+1/2} is applied in two halves around exp(-t) so that every
    intermediate stays finite wherever Gamma(x) itself is.
    """
    if not x > 0:
        raise ValueError(f"gamma_fn requires x > 0, got {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))

    z = x - 1.0
    acc = LANCZOS_COEFFS[0]
    for i, coeff in enumerate(LANCZOS_COEFFS[1:], start=1):
        acc += coeff / (z + i)
    t = z + LANCZOS_G + 0.5
    half = t ** (0.5 * (z + 0.5))
    return math.sqrt(2.0 * math.pi) * half * (half * math.exp(-t)) * acc


def _check_params(dim: int, order: float):
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim}")
    if not 0.0 < order < 1.0:
        raise ValueError(f"order must lie in (0, 1), got {order}")


@lru_cache(maxsize=None)
def normalization_constant(dim: int, order: float) -> float:
    """C_{N,s} = s 4^s Gamma(N/2+s) / (pi^{N/2} Gamma(1-s))."""
    _check_params(dim, order)
    s = order
    return (
        s
        * 4.0**s
        * gamma_fn(dim / 2.0 + s)
        / (math.pi ** (dim / 2.0) * gamma_fn(1.0 - s))
    )


def make_params(dim: int, order: float) -> FracParams:
    """Validated parameters with the constant computed once."""
    _check_params(dim, order)
    params = FracParams(dim=dim, order=order, c_ns=normalization_constant(dim, order))
    logger.debug({"event": "params_created", "dim": dim, "order": order, "c_ns": params.c_ns})
    return params


@lru_cache(maxsize=None)
def sphere_area(dim: int) -> float:
    """Surface measure of the unit sphere in R^dim."""
    return 2.0 * math.pi ** (dim / 2.0) / gamma_fn(dim / 2.0)
