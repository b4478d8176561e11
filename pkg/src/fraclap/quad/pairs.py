"""Monte Carlo and brute-force engines for double integrals over B_R x B_R or B_R x R^N."""

import math

import numpy as np

from fraclap.core.special import sphere_area
from fraclap.logging import get_logger
from fraclap.types import PairIntegrand, QuadratureSpec

logger = get_logger(__name__)


def stream(seed: int, batch: int, lane: int = 0) -> np.random.Generator:
    """Counter-based generator for one batch of one lane; independent of scheduling.

    Estimates that must not share samples draw from different lanes.
    """
    key = [seed, batch] if lane == 0 else [seed, batch, lane]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


def uniform_directions(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    g = rng.standard_normal((n, dim))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def uniform_ball(rng: np.random.Generator, n: int, dim: int, radius: float) -> np.ndarray:
    r = radius * rng.random(n) ** (1.0 / dim)
    return uniform_directions(rng, n, dim) * r[:, None]


def _stratified(rng: np.random.Generator, n: int) -> np.ndarray:
    """One draw per stratum of (0, 1], shuffled."""
    return rng.permutation((np.arange(n) + 1.0 - rng.random(n)) / n)


def _offset_law(dim: int, kappa: float, r_cut: float, tail: float | None) -> tuple[float, float]:
    """Probability of the inner piece and the density constant of the offset proposal.

    The proposal density is c |z|^{-kappa} for |z| <= r_cut and, when a tail
    exponent is given, c r_cut^{tail-kappa} |z|^{-tail} beyond.
    """
    inner = 1.0 / (dim - kappa)
    outer = 0.0 if tail is None else 1.0 / (tail - dim)
    c = 1.0 / (sphere_area(dim) * r_cut ** (dim - kappa) * (inner + outer))
    return inner / (inner + outer), c


def _offsets(
    rng: np.random.Generator,
    n: int,
    dim: int,
    kappa: float,
    r_cut: float,
    tail: float | None,
) -> tuple[np.ndarray, np.ndarray]:
    p_inner, c = _offset_law(dim, kappa, r_cut, tail)
    v = _stratified(rng, n)
    if tail is None:
        r = r_cut * v ** (1.0 / (dim - kappa))
    else:
        inside = v <= p_inner
        u_in = np.where(inside, v / p_inner, 1.0)
        u_out = np.where(inside, 1.0, (v - p_inner) / (1.0 - p_inner))
        r = np.where(
            inside,
            r_cut * u_in ** (1.0 / (dim - kappa)),
            r_cut * np.maximum(u_out, 1e-300) ** (-1.0 / (tail - dim)),
        )
    if tail is None:
        density = c * r ** (-kappa)
    else:
        density = np.where(
            r <= r_cut, c * r ** (-kappa), c * r_cut ** (tail - kappa) * r ** (-tail)
        )
    return uniform_directions(rng, n, dim) * r[:, None], density


def batch_moments(values: np.ndarray) -> tuple[int, float, float]:
    mean = float(values.mean())
    return len(values), mean, float(np.sum((values - mean) ** 2))


def merge_moments(a: tuple[int, float, float], b: tuple[int, float, float]) -> tuple[int, float, float]:
    na, ma, qa = a
    nb, mb, qb = b
    n = na + nb
    delta = mb - ma
    return n, ma + delta * nb / n, qa + qb + delta * delta * na * nb / n


def pair_integral(
    integrand: PairIntegrand,
    radius: float,
    dim: int,
    spec: QuadratureSpec,
    diagonal_exponent: float = 0.0,
    full_space: bool = False,
    tail_exponent: float | None = None,
    lane: int = 0,
) -> tuple[float, float]:
    """Monte Carlo estimate of the integral of integrand(x, y) over x in B_R.

    y ranges over B_R, or over R^N when full_space. Offsets y - x are drawn
    from a radial power law |z|^{-kappa} up to the diameter, with kappa the
    declared diagonal exponent of the integrand, and from |z|^{-tail} beyond
    when full_space. Samples come from the given stream lane. Returns (value, stderr).
    """
    kappa = max(diagonal_exponent, 0.0)
    if kappa >= dim:
        raise ValueError(
            f"diagonal exponent {diagonal_exponent} >= {dim}: singularity is not integrable"
        )
    tail = None
    if full_space:
        tail = tail_exponent if tail_exponent is not None else dim + 1.0
        if not tail > dim:
            raise ValueError(f"tail exponent must exceed the dimension, got {tail}")

    r_cut = 2.0 * radius
    volume = sphere_area(dim) * radius**dim / dim
    n_batches = math.ceil(spec.mc_samples / spec.batch_size)

    moments = (0, 0.0, 0.0)
    for batch in range(n_batches):
        size = min(spec.batch_size, spec.mc_samples - batch * spec.batch_size)
        rng = stream(spec.rng_seed, batch, lane)
        x = uniform_ball(rng, size, dim, radius)
        z, density = _offsets(rng, size, dim, kappa, r_cut, tail)
        y = x + z
        with np.errstate(divide="ignore", invalid="ignore"):
            values = integrand(x, y) * volume / density
        if not full_space:
            values = np.where(np.linalg.norm(y, axis=-1) <= radius, values, 0.0)
        moments = merge_moments(moments, batch_moments(values)) if batch else batch_moments(values)

    n, mean, q = moments
    stderr = math.sqrt(q / (n - 1) / n) if n > 1 else 0.0
    logger.debug(
        {"event": "pair_integral", "value": mean, "stderr": stderr, "samples": n, "kappa": kappa}
    )
    if stderr > spec.mc_rel_tol * abs(mean):
        raise RuntimeError(
            "pair integral did not converge",
            {"zone": "pair", "err_est": stderr, "value": mean},
        )
    return mean, stderr




def lattice_midpoints(half_width: float, dim: int, n: int) -> tuple[np.ndarray, float]:
    """Cell midpoints (n^N, N) of the cube [-L, L]^N cut into n cells per axis, and the cell width."""
    if n < 2:
        raise ValueError(f"grid needs at least 2 cells per axis, got {n}")
    h = 2.0 * half_width / n
    axis = -half_width + h * (np.arange(n) + 0.5)
    mesh = np.stack(np.meshgrid(*([axis] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    return mesh, h


def lattice_pair_sum(integrand: PairIntegrand, points: np.ndarray, h: float) -> float:
    """h^{2N} times the sum of integrand over ordered pairs of distinct lattice points."""
    dim = points.shape[-1]
    total = 0.0
    chunk = max(1, 2_000_000 // len(points))
    for start in range(0, len(points), chunk):
        x = points[start : start + chunk]
        xs = np.broadcast_to(x[:, None, :], (len(x), len(points), dim))
        ys = np.broadcast_to(points[None, :, :], (len(x), len(points), dim))
        with np.errstate(divide="ignore", invalid="ignore"):
            values = integrand(xs, ys)
        off_diagonal = np.any(xs != ys, axis=-1)
        total += float(np.sum(np.where(off_diagonal, values, 0.0)))
    return total * h ** (2 * dim)


def grid_pair_integral(integrand: PairIntegrand, radius: float, dim: int, n: int) -> float:
    """Midpoint-grid double sum over B_R x B_R, skipping coincident cells."""
    mesh, h = lattice_midpoints(radius, dim, n)
    return lattice_pair_sum(integrand, mesh[np.linalg.norm(mesh, axis=-1) <= radius], h)


def grid_pair_estimate(integrand: PairIntegrand, radius: float, dim: int, n: int = 64) -> tuple[float, float]:
    """Grid value over B_R x B_R at n cells per axis, with its change from n/2 cells as error."""
    fine = grid_pair_integral(integrand, radius, dim, n)
    coarse = grid_pair_integral(integrand, radius, dim, n // 2)
    logger.debug({"event": "grid_pair_estimate", "value": fine, "coarse": coarse, "cells": n})
    return fine, abs(fine - coarse)
