"""Empirical Hölder exponents from upper envelopes of sampled increments."""

import math
from typing import Callable

import numpy as np
from scipy.stats import linregress

from fraclap.core.cutoffs import cutoff_field, make_cutoff
from fraclap.core.exponents import holder_transfer_exponents
from fraclap.core.fields import gaussian_field, holder_cusp_field
from fraclap.logging import get_logger
from fraclap.ops.carre import carre_du_champ
from fraclap.quad.pairs import stream, uniform_ball, uniform_directions
from fraclap.quad.sphere import sphere_rule
from fraclap.types import FracParams, QuadratureSpec

logger = get_logger(__name__)

MIN_BINS = 8


def pointwise(fn: Callable[[np.ndarray], float], dim: int) -> Callable[[np.ndarray], np.ndarray]:
    """Lift a single-point function to the vectorized (..., N) -> (...) convention."""

    def lifted(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1, dim)
        return np.array([fn(p) for p in flat]).reshape(x.shape[:-1])

    return lifted


def holder_exponent_estimate(
    f: Callable[[np.ndarray], np.ndarray],
    radius: float,
    dim: int,
    pairs: int = 400,
    rng_seed: int = 0,
    bins: int = 16,
    min_distance: float = 1e-3,
    fit_fraction: float = 0.1,
) -> tuple[float, float]:
    """Slope of log max|f(x)-f(x')| against log|x-x'| over log-spaced distance bins.

    Each base point gets one partner per bin. Only bins whose upper edge is
    below fit_fraction times the diameter enter the fit. Returns
    (exponent, slope standard error); a constant f gives +inf.
    """
    diam = 2.0 * radius
    rng = stream(rng_seed, 0)
    edges = np.geomspace(min_distance, diam, bins + 1)

    base = uniform_ball(rng, pairs, dim, radius)
    dist = edges[:-1] * (edges[1:] / edges[:-1]) ** rng.random((pairs, bins))
    dirs = uniform_directions(rng, pairs * bins, dim).reshape(pairs, bins, dim)
    step = dist[..., None] * dirs
    partner = base[:, None, :] + step
    flipped = np.linalg.norm(partner, axis=-1) > radius
    partner = np.where(flipped[..., None], base[:, None, :] - step, partner)
    valid = np.linalg.norm(partner, axis=-1) <= radius

    increments = np.abs(f(partner) - f(base)[:, None])
    increments = np.where(valid, increments, -1.0)
    if not np.any(increments > 0.0):
        return math.inf, 0.0

    top = increments.max(axis=0)
    usable = (top > 0.0) & (edges[1:] <= fit_fraction * diam)
    if usable.sum() < MIN_BINS:
        raise ValueError(f"only {int(usable.sum())} occupied distance bins, need {MIN_BINS}")

    best = increments.argmax(axis=0)
    cols = np.flatnonzero(usable)
    fit = linregress(np.log(dist[best[cols], cols]), np.log(top[cols]))
    logger.debug({"event": "holder_fit", "slope": fit.slope, "stderr": fit.stderr, "bins": len(cols)})
    return float(fit.slope), float(fit.stderr)


def _cusp_crossings(x: np.ndarray, dim: int, angular: int) -> list[float]:
    """Radii at which rays from x cross the hyperplane x_1 = 0."""
    dirs, _ = sphere_rule(dim, angular)
    cos = np.abs(dirs[:, 0])
    hits = np.abs(x[0]) / cos[cos > 1e-12]
    return sorted(set(np.round(hits, 14).tolist()))


def holder_transfer_estimates(
    alpha: float,
    params: FracParams,
    spec: QuadratureSpec,
    pairs: int = 24,
    rng_seed: int = 0,
    domain: float = 0.5,
    delta: float = 0.1,
) -> dict[str, float]:
    """Predicted and measured exponents of I_s(f, g) and eta I_s(eta, f) for a cusp f."""
    gamma_is, beta, gamma_eta = holder_transfer_exponents(alpha, params.order)
    f = holder_cusp_field(alpha)
    g = gaussian_field(scale=0.8)
    eta_f = cutoff_field(make_cutoff(delta))

    def carre_fg(x: np.ndarray) -> float:
        cuts = _cusp_crossings(x, params.dim, spec.angular_rule)
        return carre_du_champ(f, g, x, params, spec, breakpoints=cuts).value

    def eta_carre(x: np.ndarray) -> float:
        cuts = _cusp_crossings(x, params.dim, spec.angular_rule)
        return float(eta_f.eval(x)) * carre_du_champ(eta_f, f, x, params, spec, breakpoints=cuts).value

    exponent_is, err_is = holder_exponent_estimate(
        pointwise(carre_fg, params.dim), domain, params.dim, pairs, rng_seed
    )
    exponent_eta, err_eta = holder_exponent_estimate(
        pointwise(eta_carre, params.dim), domain, params.dim, pairs, rng_seed
    )
    logger.info(
        {
            "event": "holder_transfer",
            "alpha": alpha,
            "order": params.order,
            "gamma_is": gamma_is,
            "exponent_is": exponent_is,
            "gamma_eta": gamma_eta,
            "exponent_eta": exponent_eta,
        }
    )
    return {
        "gamma_is": gamma_is,
        "beta": beta,
        "gamma_eta": gamma_eta,
        "exponent_is": exponent_is,
        "fit_err_is": err_is,
        "exponent_eta": exponent_eta,
        "fit_err_eta": err_eta,
    }
