"""One-step walk-on-spheres: exact draws from the Poisson kernel of a ball.

At the centre |y|^2 = rho^2 / U with U ~ Beta(s, 1 - s) and a uniform
direction. Off-centre draws reject centre proposals with acceptance
P(x, y) / (M P(0, y)), M = (1 - |x|^2/rho^2)^s (rho / (rho - |x|))^N.
"""

import math

import numpy as np

from fraclap.logging import get_logger
from fraclap.poisson.kernel import check_interior
from fraclap.quad.pairs import batch_moments, merge_moments, stream, uniform_directions
from fraclap.types import BallProblem, FracParams

logger = get_logger(__name__)

ACCEPTANCE_FLOOR = 1e-4
TINY = 1e-300


def envelope(rho: float, x: np.ndarray, params: FracParams) -> float:
    """Bound M on P(x, y) / P(0, y) over |y| > rho."""
    a = float(np.linalg.norm(x))
    return (1.0 - a * a / (rho * rho)) ** params.order * (rho / (rho - a)) ** params.dim


def _centre_draws(
    rng: np.random.Generator, n: int, rho: float, params: FracParams
) -> np.ndarray:
    u = np.maximum(rng.beta(params.order, 1.0 - params.order, n), TINY)
    return uniform_directions(rng, n, params.dim) * (rho / np.sqrt(u))[:, None]


def wos_points(
    rho: float, x: np.ndarray, n: int, rng: np.random.Generator, params: FracParams
) -> np.ndarray:
    """n exit points distributed with density P_rho(x, .)."""
    x = check_interior(rho, x)
    a = float(np.linalg.norm(x))
    if a == 0.0:
        return _centre_draws(rng, n, rho, params)

    m = envelope(rho, x, params)
    if 1.0 / m < ACCEPTANCE_FLOOR:
        logger.error({"event": "sampler_failed", "acceptance": 1.0 / m})
        raise RuntimeError(
            "rejection sampler acceptance too low", {"zone": "sampler", "acceptance": 1.0 / m}
        )

    accepted, have = [], 0
    while have < n:
        k = math.ceil(1.1 * (n - have) * m) + 16
        y = _centre_draws(rng, k, rho, params)
        scaled = np.linalg.norm(y, axis=-1) * (rho - a)
        ratio = (scaled / (rho * np.linalg.norm(y - x, axis=-1))) ** params.dim
        keep = y[rng.random(k) < ratio]
        accepted.append(keep)
        have += len(keep)
    return np.concatenate(accepted)[:n]


def wos_sample(rho: float, x: np.ndarray, rng: np.random.Generator, params: FracParams) -> np.ndarray:
    """A single exit point; deterministic given the generator state."""
    return wos_points(rho, x, 1, rng, params)[0]


def wos_solve(
    problem: BallProblem,
    x: np.ndarray,
    n_samples: int = 1_000_000,
    rng_seed: int | None = None,
) -> tuple[float, float]:
    """Monte Carlo mean of h at exit points and its standard error."""
    if n_samples < 2:
        raise ValueError(f"need at least two samples, got {n_samples}")
    seed = problem.spec.rng_seed if rng_seed is None else rng_seed
    size = problem.spec.batch_size
    n_batches = math.ceil(n_samples / size)

    moments = (0, 0.0, 0.0)
    for batch in range(n_batches):
        count = min(size, n_samples - batch * size)
        y = wos_points(problem.rho, x, count, stream(seed, batch), problem.params)
        values = problem.exterior.eval(y)
        moments = merge_moments(moments, batch_moments(values)) if batch else batch_moments(values)

    n, mean, q = moments
    stderr = math.sqrt(q / (n - 1) / n)
    logger.debug({"event": "wos_solve", "mean": mean, "stderr": stderr, "samples": n})
    return mean, stderr
