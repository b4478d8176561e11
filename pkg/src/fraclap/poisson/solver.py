"""Exterior Dirichlet problem in B_rho through the Poisson integral.

u_h(x) = c (rho^2 - |x|^2)^s * integral over t > rho of (t^2 - rho^2)^{-s} t^{N-1} A(t) dt,
A(t) = integral over the unit sphere of h(t theta) |x - t theta|^{-N}.

The radial integral is split into a near shell [rho, 1.25 rho], where
v = (t - rho)^{1-s} removes the boundary singularity, a middle shell up to
4 rho and a tail mapped by w = t^{-2s}. In the plane A(t) is summed exactly
from the Fourier coefficients of h on the circle of radius t.
"""

import math
from dataclasses import replace
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.stats import linregress

from fraclap.core.fields import at_least, constant_field, regularity
from fraclap.core.special import sphere_area
from fraclap.logging import get_logger
from fraclap.ops.laplacian import check_tail, frac_laplacian
from fraclap.poisson.jets import factorial, jet_mul
from fraclap.poisson.kernel import (
    MAX_DERIVATIVE_ORDER,
    check_interior,
    distance_jet,
    poisson_constant,
    radial_factor_jet,
)
from fraclap.quad.pairs import stream, uniform_ball
from fraclap.quad.radial import tail_integral, vector_integral
from fraclap.quad.sphere import sphere_rule
from fraclap.types import (
    AnalyticityProfile,
    BallProblem,
    Decay,
    FracParams,
    OperatorResult,
    QuadratureSpec,
    ScalarField,
    Smoothness,
)

logger = get_logger(__name__)

NEAR_SHELL = 1.25
FAR_SHELL = 4.0
FOURIER_NODES = 256
MAX_FOURIER_NODES = 2**16
SERIES_CUTOFF = 1e-12
CACHE_LIMIT = 200_000


def _reach(problem: BallProblem) -> float:
    h = problem.exterior
    return h.radius if h.decay == Decay.COMPACT else math.inf


def _check_problem(problem: BallProblem):
    if not 0.0 < problem.rho:
        raise ValueError(f"ball radius must be positive, got {problem.rho}")
    check_tail(problem.exterior, problem.params, "exterior datum")


def _shell_integral(
    angular: Callable[[float], np.ndarray],
    problem: BallProblem,
    spec: QuadratureSpec,
) -> tuple[np.ndarray, float, dict[str, np.ndarray]]:
    """Integral of (t^2 - rho^2)^{-s} t^{N-1} angular(t) over rho < t < reach."""
    rho, s, n = problem.rho, problem.params.order, problem.params.dim
    reach = _reach(problem)
    near_end = min(NEAR_SHELL * rho, reach)
    far_end = min(FAR_SHELL * rho, reach)
    cuts = [reach] if math.isfinite(reach) else []

    def middle(t: float) -> np.ndarray:
        return (t * t - rho * rho) ** (-s) * t ** (n - 1) * angular(t)

    def near(v: float) -> np.ndarray:
        t = rho + v ** (1.0 / (1.0 - s))
        return (t + rho) ** (-s) * t ** (n - 1) * angular(t) / (1.0 - s)

    zones: dict[str, np.ndarray] = {}
    errors: dict[str, float] = {}
    zones["near"], errors["near"] = vector_integral(
        near, 0.0, (near_end - rho) ** (1.0 - s), spec, zone="near"
    )
    stop = far_end if math.isinf(reach) else reach
    if stop > near_end:
        zones["middle"], errors["middle"] = vector_integral(
            middle, near_end, stop, spec, points=cuts, zone="middle"
        )
    if math.isinf(reach):

        def tail(w: float) -> np.ndarray:
            t = w ** (-0.5 / s)
            return middle(t) * t / (2.0 * s * w)

        zones["tail"], errors["tail"] = vector_integral(
            tail, 0.0, far_end ** (-2.0 * s), spec, zone="tail"
        )
    total = sum(zones.values())
    logger.debug({"event": "poisson_shells", "errors": errors})
    return np.asarray(total), sum(errors.values()), zones


def _fourier_nodes(ratio: float) -> int:
    """Circle nodes needed for the kernel series at |x|/t = ratio to drop below cutoff."""
    if ratio <= 0.0:
        return FOURIER_NODES
    modes = math.log(SERIES_CUTOFF) / math.log(ratio)
    nodes = FOURIER_NODES
    while nodes < 2.0 * modes and nodes < MAX_FOURIER_NODES:
        nodes *= 2
    return nodes


def _fourier_angular(h: ScalarField, xs: np.ndarray, nodes: int) -> Callable[[float], np.ndarray]:
    """A(t) in the plane from the expansion 1/|x - y|^2 = (1 + 2 sum (a/t)^k cos k gamma) / (t^2 - a^2)."""
    phi = 2.0 * np.pi * (np.arange(nodes) + 0.5) / nodes
    circle = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    modes = np.arange(nodes // 2)
    radius = np.linalg.norm(xs, axis=-1)
    phase = np.exp(1j * modes[None, :] * np.arctan2(xs[:, 1], xs[:, 0])[:, None])
    shift = np.exp(-1j * np.pi * modes / nodes) / nodes

    def angular(t: float) -> np.ndarray:
        coeffs = np.fft.fft(h.eval(t * circle))[: nodes // 2] * shift
        ratio = radius / t
        series = np.sum(ratio[:, None] ** modes[None, :] * phase * coeffs[None, :], axis=-1)
        return 2.0 * np.pi * (2.0 * series.real - coeffs[0].real) / (t * t - radius * radius)

    return angular


def _angular_rule(dim: int, spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    return sphere_rule(dim, FOURIER_NODES if dim == 2 else spec.angular_rule)


def _direct_angular(
    h: ScalarField, xs: np.ndarray, dim: int, spec: QuadratureSpec
) -> Callable[[float], np.ndarray]:
    dirs, weights = _angular_rule(dim, spec)

    def angular(t: float) -> np.ndarray:
        y = t * dirs
        dist = np.linalg.norm(xs[:, None, :] - y[None, :, :], axis=-1)
        return dist ** (-dim) @ (weights * h.eval(y))

    return angular


def _groups(problem: BallProblem, xs: np.ndarray) -> list[tuple[np.ndarray, int]]:
    """Points bucketed by the circle resolution their distance to the boundary needs."""
    if problem.params.dim != 2:
        return [(np.arange(len(xs)), 0)]
    ratios = np.linalg.norm(xs, axis=-1) / problem.rho
    nodes = np.array([_fourier_nodes(r) for r in ratios])
    return [(np.flatnonzero(nodes == k), int(k)) for k in np.unique(nodes)]


def solve_batch(problem: BallProblem, xs: np.ndarray) -> list[OperatorResult]:
    """Poisson integral at many interior points, one OperatorResult each."""
    _check_problem(problem)
    xs = check_interior(problem.rho, np.atleast_2d(np.asarray(xs, dtype=float)))
    rho, s, n = problem.rho, problem.params.order, problem.params.dim
    h, spec = problem.exterior, problem.spec

    if _reach(problem) <= rho:
        return [OperatorResult(value=0.0, err_est=0.0, zones={}) for _ in xs]

    results: list[OperatorResult | None] = [None] * len(xs)
    c = poisson_constant(problem.params)
    for idx, nodes in _groups(problem, xs):
        group = xs[idx]
        if n == 2:
            angular = _fourier_angular(h, group, nodes)
        else:
            angular = _direct_angular(h, group, n, spec)
        total, err, zones = _shell_integral(angular, problem, spec)
        scale = c * (rho * rho - np.sum(group * group, axis=-1)) ** s
        for j, i in enumerate(idx):
            results[i] = OperatorResult(
                value=float(scale[j] * total[j]),
                err_est=float(scale[j] * err),
                zones={k: float(scale[j] * v[j]) for k, v in zones.items()},
            )
    return results


def solve_dirichlet(problem: BallProblem, x: np.ndarray) -> OperatorResult:
    """u_h(x) for |x| < rho with zones near, middle and tail."""
    result = solve_batch(problem, np.asarray(x, dtype=float)[None, :])[0]
    logger.debug({"event": "solve_dirichlet", "value": result.value, "err_est": result.err_est})
    return result


def kernel_normalization(
    rho: float, x: np.ndarray, params: FracParams, spec: QuadratureSpec
) -> float:
    """Integral of the unit-mass kernel over the exterior; 1 up to quadrature error."""
    problem = BallProblem(rho=rho, exterior=constant_field(1.0), params=params, spec=spec)
    return solve_dirichlet(problem, x).value


def discover_kernel_constant(params: FracParams, spec: QuadratureSpec) -> tuple[float, float]:
    """(constant that normalizes the kernel, mass of the kernel printed with C_{N,s}).

    The mass at the centre of B_1 is C_{N,s} |S| int_1^inf (t^2 - 1)^{-s} t^{-1} dt,
    integrated here independently of the solver.
    """
    s = params.order
    near, near_err = quad(
        lambda t: (t + 1.0) ** (-s) / t,
        1.0,
        2.0,
        weight="alg",
        wvar=(-s, 0.0),
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
    )
    far, far_err = tail_integral(lambda t: (t * t - 1.0) ** (-s) / t, 2.0, 2.0 * s, spec)
    mass = params.c_ns * sphere_area(params.dim) * (near + far)
    constant = params.c_ns / mass
    logger.info(
        {
            "event": "kernel_constant",
            "printed_mass": mass,
            "constant": constant,
            "err_est": near_err + far_err,
        }
    )
    return constant, mass


def solution_taylor(problem: BallProblem, x: np.ndarray, order: int) -> tuple[np.ndarray, float]:
    """Taylor jet of u_h at x by differentiating under the Poisson integral."""
    _check_problem(problem)
    if not 0 <= order <= MAX_DERIVATIVE_ORDER:
        raise ValueError(f"derivative order {order} outside [0, {MAX_DERIVATIVE_ORDER}]")
    x = check_interior(problem.rho, np.asarray(x, dtype=float))
    rho, s, n = problem.rho, problem.params.order, problem.params.dim
    h, spec = problem.exterior, problem.spec
    shape = (order + 1,) * n

    if _reach(problem) <= rho:
        return np.zeros(shape), 0.0

    dirs, weights = _angular_rule(n, spec)

    def angular(t: float) -> np.ndarray:
        y = t * dirs
        jets = distance_jet(x, y, order).reshape(len(dirs), -1)
        return (weights * h.eval(y)) @ jets

    total, err, _ = _shell_integral(angular, problem, spec)
    radial = radial_factor_jet(rho, x, s, order)
    c = poisson_constant(problem.params)
    jet = c * jet_mul(radial, total.reshape(shape), n, order)
    return jet, c * err * float(np.sum(np.abs(radial)))


def solution_derivative(problem: BallProblem, x: np.ndarray, iota: Sequence[int]) -> OperatorResult:
    """D^iota u_h(x), |iota| <= 6."""
    iota = tuple(int(k) for k in iota)
    if len(iota) != problem.params.dim or any(k < 0 for k in iota):
        raise ValueError(f"multi-index {iota} does not match dimension {problem.params.dim}")
    jet, err = solution_taylor(problem, x, sum(iota))
    scale = factorial(iota)
    return OperatorResult(value=scale * float(jet[iota]), err_est=scale * err, zones={})


def solution_field(problem: BallProblem) -> ScalarField:
    """u_h inside B_rho and h outside, as a ScalarField; interior values are memoized.

    u_h is smooth inside the ball but only C^s across its boundary, so the
    field carries Hölder exponent min(s, alpha_h).
    """
    _check_problem(problem)
    rho, h, dim = problem.rho, problem.exterior, problem.params.dim
    cache: dict[bytes, float] = {}

    def value(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1, dim)
        out = np.empty(len(flat))
        inside = np.linalg.norm(flat, axis=-1) < rho
        if np.any(~inside):
            out[~inside] = h.eval(flat[~inside])

        idx = np.flatnonzero(inside)
        keys = [flat[i].tobytes() for i in idx]
        pending = {k: i for k, i in zip(keys, idx) if k not in cache}
        if pending:
            if len(cache) > CACHE_LIMIT:
                cache.clear()
            solved = solve_batch(problem, flat[list(pending.values())])
            cache.update(zip(pending, (r.value for r in solved)))
        out[idx] = [cache[k] for k in keys]
        return out.reshape(x.shape[:-1])

    reach = max(rho, h.radius)
    return ScalarField(
        eval=value,
        smoothness=Smoothness.HOLDER if at_least(h, Smoothness.HOLDER) else h.smoothness,
        alpha=min(problem.params.order, regularity(h)),
        decay=h.decay,
        radius=reach if h.decay == Decay.COMPACT else math.inf,
        bound=h.bound,
        growth=h.growth,
        name=f"u[{h.name}]",
    )


def sharmonicity_residual(
    problem: BallProblem, x: np.ndarray, spec: QuadratureSpec
) -> OperatorResult:
    """(-Laplacian)^s of the computed u_h at x, |x| < 0.8 rho; zero for an exact solver."""
    x = np.asarray(x, dtype=float)
    norm_x = float(np.linalg.norm(x))
    if norm_x >= 0.8 * problem.rho:
        raise ValueError(f"residual points must satisfy |x| < 0.8 rho, got |x| = {norm_x:g}")
    u = solution_field(problem)
    outer_spec = replace(spec, inner_cut=max(spec.inner_cut, 0.05 * problem.rho))
    result = frac_laplacian(
        u,
        x,
        problem.params,
        outer_spec,
        breakpoints=[problem.rho - norm_x, problem.rho + norm_x],
        smooth_radius=problem.rho - norm_x,
    )
    logger.info({"event": "sharmonicity_residual", "x": x.tolist(), "value": result.value})
    return result


def analyticity_profile(
    problem: BallProblem,
    r0: float,
    orders: Sequence[int] = (1, 2, 3, 4),
    scan: int = 20,
) -> AnalyticityProfile:
    """Sup over a scan of B_{r0} of |d_1^k u_h| / k! and its log-linear fit in k."""
    if not 0.0 < r0 < problem.rho:
        raise ValueError(f"need 0 < r0 < rho, got r0 = {r0}")
    orders = sorted(int(k) for k in orders)
    if len(orders) < 2:
        raise ValueError("a growth fit needs at least two orders")
    dim = problem.params.dim
    top = orders[-1]

    points = uniform_ball(stream(problem.spec.rng_seed, 0), scan, dim, r0)
    sups = np.zeros(len(orders))
    for x in points:
        jet, _ = solution_taylor(problem, x, top)
        for i, k in enumerate(orders):
            sups[i] = max(sups[i], abs(float(jet[(k,) + (0,) * (dim - 1)])))

    if np.any(sups <= 0.0):
        raise ValueError("a derivative vanished on the whole scan; log fit undefined")
    logs = np.log(sups)
    fit = linregress(np.asarray(orders, dtype=float), logs)
    residual = float(np.max(np.abs(logs - (fit.slope * np.asarray(orders) + fit.intercept))))
    logger.info(
        {"event": "analyticity_profile", "slope": fit.slope, "max_residual": residual}
    )
    return AnalyticityProfile(
        orders=orders,
        sups=sups.tolist(),
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        max_residual=residual,
    )
