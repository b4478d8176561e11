"""Centrally symmetric quadrature on spheres and product cubature of balls."""

from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import roots_jacobi, roots_legendre


@lru_cache(maxsize=64)
def _circle_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Half-offset angles, so nodes avoid the axes and phi pairs with phi + pi for even n."""
    phi = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    nodes = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    weights = np.full(n, 2.0 * np.pi / n)
    return nodes, weights


@lru_cache(maxsize=64)
def _sphere_rule(dim: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    if dim == 2:
        return _circle_rule(n)

    a = (dim - 3) / 2.0
    heights, height_weights = roots_jacobi(max(4, n // 2), a, a)
    lower_nodes, lower_weights = _sphere_rule(dim - 1, n if dim == 3 else 2 * max(4, n // 4))

    ring = np.sqrt(1.0 - heights**2)
    nodes = np.empty((len(heights), len(lower_weights), dim))
    nodes[..., 0] = heights[:, None]
    nodes[..., 1:] = ring[:, None, None] * lower_nodes[None, :, :]
    nodes = nodes.reshape(-1, dim)
    weights = (height_weights[:, None] * lower_weights[None, :]).reshape(-1)
    return nodes, weights


def sphere_rule(dim: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (M, dim) and weights (M,) on the unit sphere, weights summing to its area.

    The rule is invariant under theta -> -theta; n must be even.
    """
    if dim < 2:
        raise ValueError(f"sphere rules need dim >= 2, got {dim}")
    if n < 2 or n % 2:
        raise ValueError(f"angular rule size must be even and >= 2, got {n}")
    nodes, weights = _sphere_rule(dim, n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def ball_cubature(
    dim: int,
    radius: float,
    n_radial: int = 12,
    angular: int = 32,
    splits: Sequence[float] = (),
) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre radial pieces times a sphere rule, for integrals over B_radius."""
    edges = sorted({0.0, radius, *(r for r in splits if 0.0 < r < radius)})
    gl_nodes, gl_weights = roots_legendre(n_radial)
    dirs, dir_weights = sphere_rule(dim, angular)

    radii, radial_weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        r = lo + half * (gl_nodes + 1.0)
        radii.append(r)
        radial_weights.append(half * gl_weights * r ** (dim - 1))
    r = np.concatenate(radii)
    w = np.concatenate(radial_weights)

    points = (r[:, None, None] * dirs[None, :, :]).reshape(-1, dim)
    weights = (w[:, None] * dir_weights[None, :]).reshape(-1)
    return points, weights
