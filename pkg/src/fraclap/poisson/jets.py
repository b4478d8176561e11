"""Truncated multivariate Taylor jets.

A jet of order K in N variables is a dense array whose trailing N axes have
length K+1; the entry at multi-index iota is the coefficient of h^iota. Leading
axes are batch axes. Entries of total degree above K are kept at zero.
"""

import itertools
import math
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import binom


@lru_cache(maxsize=32)
def multi_indices(dim: int, order: int) -> tuple[tuple[int, ...], ...]:
    """All multi-indices of total degree <= order, graded."""
    grid = itertools.product(range(order + 1), repeat=dim)
    return tuple(sorted((i for i in grid if sum(i) <= order), key=lambda i: (sum(i), i)))


@lru_cache(maxsize=32)
def degree_mask(dim: int, order: int) -> np.ndarray:
    axes = np.indices((order + 1,) * dim).sum(axis=0)
    mask = (axes <= order).astype(float)
    mask.setflags(write=False)
    return mask


def _origin(dim: int) -> tuple:
    return (Ellipsis, *(0,) * dim)


def constant_jet(value: np.ndarray | float, dim: int, order: int) -> np.ndarray:
    value = np.asarray(value, dtype=float)
    out = np.zeros(value.shape + (order + 1,) * dim)
    out[_origin(dim)] = value
    return out


def quadratic_jet(
    linear: np.ndarray, curvature: float, dim: int, order: int
) -> np.ndarray:
    """Jet of h -> linear . h + curvature |h|^2 (no constant term)."""
    linear = np.asarray(linear, dtype=float)
    out = np.zeros(linear.shape[:-1] + (order + 1,) * dim)
    for i in range(dim):
        unit = [0] * dim
        if order >= 1:
            unit[i] = 1
            out[(Ellipsis, *unit)] = linear[..., i]
        if order >= 2:
            unit[i] = 2
            out[(Ellipsis, *unit)] = curvature
    return out


def jet_mul(a: np.ndarray, b: np.ndarray, dim: int, order: int) -> np.ndarray:
    """Truncated product of two jets with broadcastable batch axes."""
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
    pad = (None,) * dim
    for alpha in multi_indices(dim, order):
        coeff = a[(Ellipsis, *alpha)]
        if not np.any(coeff):
            continue
        target = (Ellipsis, *(slice(k, None) for k in alpha))
        source = (Ellipsis, *(slice(0, order + 1 - k) for k in alpha))
        out[target] += coeff[(Ellipsis, *pad)] * b[source]
    return out * degree_mask(dim, order)


def jet_compose(
    coeffs: Sequence[np.ndarray | float], delta: np.ndarray, dim: int, order: int
) -> np.ndarray:
    """sum_m coeffs[m] * delta^m by Horner's rule; delta must have no constant term."""
    out = constant_jet(coeffs[order], dim, order)
    for m in range(order - 1, -1, -1):
        out = jet_mul(out, delta, dim, order)
        out[_origin(dim)] += coeffs[m]
    return out


def power_coefficients(base: np.ndarray | float, exponent: float, order: int) -> list[np.ndarray]:
    """Taylor coefficients of q -> q^exponent at q = base."""
    base = np.asarray(base, dtype=float)
    return [binom(exponent, m) * base ** (exponent - m) for m in range(order + 1)]


def factorial(iota: Sequence[int]) -> float:
    return float(math.prod(math.factorial(k) for k in iota))
