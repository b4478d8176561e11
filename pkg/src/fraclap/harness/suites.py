"""Check builders for every verification suite.

A builder turns a SuiteConfig into deferred Checks. One-sided properties are
encoded as a shortfall measured against an oracle of zero.
"""

import math
import threading
from typing import Any, Callable

import mpmath
import numpy as np

from fraclap.core.cutoffs import cutoff_field, make_cutoff, make_radial_cutoff
from fraclap.core.exponents import radii_schedule
from fraclap.core.fields import (
    affine_field,
    bump_field,
    constant_field,
    gaussian_field,
    product_field,
    weight_profile_field,
)
from fraclap.core.special import make_params, normalization_constant, sphere_area
from fraclap.harness.presets import preset_field, random_bump_pair
from fraclap.logging import get_logger
from fraclap.norms.holder import holder_exponent_estimate, holder_transfer_estimates
from fraclap.norms.seminorm import (
    full_space_seminorm,
    gagliardo_seminorm,
    gagliardo_seminorm_grid,
    linear_seminorm_exact,
)
from fraclap.norms.weighted import nonlocal_tail, weighted_l1s_norm, weighted_linf_norm
from fraclap.ops.carre import leibniz_residual
from fraclap.ops.laplacian import frac_laplacian, frac_laplacian_pv
from fraclap.ops.oracles import (
    fourier_multiplier_oracle,
    gaussian_hat,
    gaussian_laplacian_exact,
    pin_fourier_convention,
)
from fraclap.ops.pairing import very_weak_pairing
from fraclap.ops.quotient import (
    cauchy_schwarz_gap,
    diff_quotient,
    diff_quotient_grid,
    gagliardo_functional,
    gagliardo_functional_grid,
    polarization_check,
)
from fraclap.poisson.kernel import derivative_growth_fit, poisson_constant
from fraclap.poisson.solver import (
    analyticity_profile,
    discover_kernel_constant,
    kernel_normalization,
    sharmonicity_residual,
    solve_batch,
    solve_dirichlet,
)
from fraclap.poisson.walk import wos_solve
from fraclap.quad.pairs import stream, uniform_ball
from fraclap.quad.sphere import ball_cubature
from fraclap.types import BallProblem, Check, FracParams, Outcome, ScalarField, Suite, SuiteConfig

logger = get_logger(__name__)

SuiteBuilder = Callable[[SuiteConfig], list[Check]]

RANDOM_PAIR_LANE = 1


def _shared(fn: Callable[[], Any]) -> Callable[[], Any]:
    """Run fn once even when several checks running on threads ask for it."""
    lock = threading.Lock()
    box: list[Any] = []

    def get() -> Any:
        with lock:
            if not box:
                box.append(fn())
            return box[0]

    return get


def _grid(config: SuiteConfig) -> list[FracParams]:
    return [make_params(dim, order) for dim in config.dims for order in config.orders]


def _tag(params: FracParams) -> str:
    return f"N{params.dim}/s{params.order:g}"


def _points(config: SuiteConfig, dim: int, radius: float, stream_id: int = 0) -> np.ndarray:
    return uniform_ball(stream(config.seed, stream_id), config.points, dim, radius)


def _relative(
    value: float, oracle: float, err: float, rel: float, details: dict[str, Any] | None = None
) -> Outcome:
    return Outcome(
        value=value,
        oracle=oracle,
        err_est=err,
        tol=rel * max(abs(oracle), 1e-300),
        details=details or {},
    )


def _shortfall(measured: float, floor: float, err: float) -> Outcome:
    """Passes exactly when measured >= floor."""
    return Outcome(value=max(0.0, floor - measured), oracle=0.0, err_est=err, tol=0.0)


def _constant_oracle(params: FracParams) -> float:
    n, s = params.dim, params.order
    with mpmath.workdps(30):
        value = (
            s
            * mpmath.power(4, s)
            * mpmath.gamma(mpmath.mpf(n) / 2 + s)
            / (mpmath.power(mpmath.pi, mpmath.mpf(n) / 2) * mpmath.gamma(1 - s))
        )
        return float(value)


def laplacian_checks(config: SuiteConfig) -> list[Check]:
    tol = config.tolerances
    spec = config.spec
    checks = []
    for params in _grid(config):
        tag = _tag(params)
        symbol_scale = _shared(lambda p=params: pin_fourier_convention(p, spec))
        checks.append(
            Check(
                id=f"laplacian/constant/{tag}",
                suite=Suite.LAPLACIAN,
                inputs={"dim": params.dim, "order": params.order},
                run=lambda p=params: _relative(
                    normalization_constant(p.dim, p.order), _constant_oracle(p), 0.0, tol["constant"]
                ),
            )
        )
        for name in config.presets:
            u = preset_field(name, params)
            for i, x in enumerate(_points(config, params.dim, 1.5)):

                def run(u=u, x=x, p=params, name=name, symbol_scale=symbol_scale) -> Outcome:
                    result = frac_laplacian(u, x, p, spec)
                    if name != "gaussian":
                        oracle = frac_laplacian_pv(u, x, p, spec).value
                        return _relative(result.value, oracle, result.err_est, tol["rel"], {"oracle": "pv"})
                    scale = symbol_scale()
                    oracle = fourier_multiplier_oracle(gaussian_hat, x, p, spec, symbol_scale=scale)
                    details = {"oracle": "fourier", "symbol_scale": scale}
                    return _relative(result.value, oracle, result.err_est, tol["rel"], details)

                checks.append(
                    Check(
                        id=f"laplacian/{name}/{tag}/p{i:02d}",
                        suite=Suite.LAPLACIAN,
                        inputs={"preset": name, "dim": params.dim, "order": params.order, "x": x.tolist()},
                        run=run,
                    )
                )

        def kummer(p=params) -> Outcome:
            origin = np.zeros(p.dim)
            result = frac_laplacian(gaussian_field(), origin, p, spec)
            return _relative(result.value, gaussian_laplacian_exact(origin, p), result.err_est, tol["rel"])

        def pairing(p=params) -> Outcome:
            """Very weak pairing of a Gaussian against a bump, compared with the strong form."""
            u, phi = gaussian_field(), bump_field(0.8)
            weak = very_weak_pairing(u, phi, p, spec)
            points, weights = ball_cubature(p.dim, 0.8, n_radial=16, angular=32)
            strong = sum(
                w * float(phi.eval(x)) * gaussian_laplacian_exact(x, p) for x, w in zip(points, weights)
            )
            return _relative(weak.value, strong, weak.err_est, 1e3 * tol["rel"])

        checks.append(
            Check(f"laplacian/kummer/{tag}", Suite.LAPLACIAN, {"dim": params.dim, "order": params.order}, kummer)
        )
        checks.append(
            Check(f"laplacian/pairing/{tag}", Suite.LAPLACIAN, {"dim": params.dim, "order": params.order}, pairing)
        )
    return checks


def _leibniz_check(
    check_id: str,
    f: ScalarField,
    g: ScalarField,
    x: np.ndarray,
    p: FracParams,
    inputs: dict[str, Any],
    config: SuiteConfig,
) -> Check:
    rel = config.tolerances["rel"]

    def run() -> Outcome:
        result = leibniz_residual(f, g, x, p, config.spec)
        scale = max(abs(v) for v in result.zones.values())
        return Outcome(value=result.value, oracle=0.0, err_est=result.err_est, tol=rel * scale)

    return Check(check_id, Suite.LEIBNIZ, {**inputs, "order": p.order, "x": x.tolist()}, run)


def leibniz_checks(config: SuiteConfig) -> list[Check]:
    """Each check draws its own bump pair and point from the batch of its index; named presets add fixed pairs."""
    opts = config.options
    checks = []
    for params in _grid(config):
        tag = _tag(params)
        for i in range(config.points):
            rng = stream(config.seed, i, RANDOM_PAIR_LANE)
            settings = random_bump_pair(rng, params.dim, opts["max_offset"], tuple(opts["radii"]))
            x = uniform_ball(rng, 1, params.dim, opts["point_radius"])[0]
            f, g = (bump_field(**b) for b in settings)
            checks.append(
                _leibniz_check(
                    f"leibniz/random-bumps/{tag}/p{i:02d}", f, g, x, params, {"f": settings[0], "g": settings[1]}, config
                )
            )
        for f_name, g_name in zip(config.presets[:-1], config.presets[1:]):
            f, g = preset_field(f_name, params), preset_field(g_name, params)
            for i, x in enumerate(_points(config, params.dim, opts["point_radius"])):
                checks.append(
                    _leibniz_check(
                        f"leibniz/{f_name}*{g_name}/{tag}/p{i:02d}", f, g, x, params, {"f": f_name, "g": g_name}, config
                    )
                )
    return checks


def polarization_checks(config: SuiteConfig) -> list[Check]:
    sigmas = config.tolerances["sigmas"]
    eta = make_cutoff(config.options["delta"])
    checks = []
    for params in _grid(config):
        for tau_value in config.options["taus"]:
            tau = make_radial_cutoff(tau_value)
            for name in config.presets:

                def run(name=name, p=params, tau=tau) -> Outcome:
                    result = polarization_check(preset_field(name, p), eta, tau, p, config.spec)
                    return Outcome(result.value, 0.0, result.err_est, sigmas * result.err_est)

                checks.append(
                    Check(
                        id=f"polarization/{name}/{_tag(params)}/tau{tau_value:g}",
                        suite=Suite.POLARIZATION,
                        inputs={"preset": name, "order": params.order, "tau": tau_value},
                        run=run,
                    )
                )
            for a, b in zip(config.presets[:-1], config.presets[1:]):

                def gap(a=a, b=b, p=params, tau=tau) -> Outcome:
                    eta_f = cutoff_field(eta)
                    w = product_field(eta_f, preset_field(a, p))
                    z = product_field(eta_f, preset_field(b, p))
                    value, stderr = cauchy_schwarz_gap(w, z, tau, eta.support, p, config.spec)
                    return _shortfall(value + sigmas * stderr, 0.0, stderr)

                checks.append(
                    Check(
                        id=f"polarization/cauchy-schwarz/{a}|{b}/{_tag(params)}/tau{tau_value:g}",
                        suite=Suite.POLARIZATION,
                        inputs={"w": a, "z": b, "order": params.order, "tau": tau_value},
                        run=gap,
                    )
                )
    return checks


def gagliardo_limit_checks(config: SuiteConfig) -> list[Check]:
    """Every tau draws G^s from its own lane and the limit reference from one more, so no comparison shares samples."""
    tol, opts = config.tolerances, config.options
    sigmas, limit_rel = tol["sigmas"], tol["limit_rel"]
    eta = make_cutoff(opts["delta"])
    taus = sorted(opts["taus"], reverse=True)
    quotient_taus = sorted(opts["quotient_taus"], reverse=True)
    checks = []
    for params in _grid(config):
        tag = _tag(params)
        for name in config.presets:
            base = {"preset": name, "order": params.order}

            def family(name=name, p=params) -> list[tuple[float, float]]:
                u = preset_field(name, p)
                return [
                    gagliardo_functional(u, eta, make_radial_cutoff(t), p, config.spec, lane=i + 1)
                    for i, t in enumerate(taus)
                ]

            series = _shared(family)
            for i in range(len(taus) - 1):

                def step(i=i, series=series) -> Outcome:
                    (g_big, e_big), (g_small, e_small) = series()[i], series()[i + 1]
                    return _shortfall(g_small + sigmas * (e_big + e_small), g_big, e_big + e_small)

                checks.append(
                    Check(
                        f"gagliardo-limit/{name}/{tag}/monotone{i}",
                        Suite.GAGLIARDO_LIMIT,
                        {**base, "taus": [taus[i], taus[i + 1]]},
                        step,
                    )
                )

            for i, t in enumerate(taus):

                def grid(i=i, t=t, name=name, p=params, series=series) -> Outcome:
                    g, g_err = series()[i]
                    oracle, grid_err = gagliardo_functional_grid(
                        preset_field(name, p), eta, make_radial_cutoff(t), p, opts["grid_cells"]
                    )
                    band = sigmas * g_err + grid_err + tol["grid_rel"] * abs(oracle)
                    return Outcome(g, oracle, g_err + grid_err, band, {"grid_err": grid_err})

                checks.append(
                    Check(
                        f"gagliardo-limit/{name}/{tag}/grid/tau{t:g}",
                        Suite.GAGLIARDO_LIMIT,
                        {**base, "tau": t, "cells": opts["grid_cells"]},
                        grid,
                    )
                )

            def limit(name=name, p=params, series=series) -> Outcome:
                w = product_field(cutoff_field(eta), preset_field(name, p))
                seminorm, stderr = full_space_seminorm(w, eta.support, p, config.spec, lane=len(taus) + 1)
                g, g_err = series()[-1]
                return _relative(g, seminorm, g_err + stderr, limit_rel)

            checks.append(
                Check(f"gagliardo-limit/{name}/{tag}/limit", Suite.GAGLIARDO_LIMIT, {**base, "tau": taus[-1]}, limit)
            )

            origin = np.zeros(params.dim)
            quotients = {}
            for t in quotient_taus:
                cut = make_radial_cutoff(t)
                quotients[t] = _shared(
                    lambda name=name, p=params, cut=cut, x=origin: diff_quotient(
                        preset_field(name, p), eta, cut, x, p, config.spec
                    )
                )

                def quotient(name=name, p=params, cut=cut, x=origin, quadrature=quotients[t]) -> Outcome:
                    result = quadrature()
                    oracle = diff_quotient_grid(preset_field(name, p), eta, cut, x, p, opts["quotient_cells"])
                    err = result.err_est + oracle.err_est
                    band = err + tol["grid_rel"] * abs(oracle.value)
                    return Outcome(result.value, oracle.value, err, band, {"grid_err": oracle.err_est})

                checks.append(
                    Check(
                        f"gagliardo-limit/{name}/{tag}/quotient/tau{t:g}",
                        Suite.GAGLIARDO_LIMIT,
                        {**base, "tau": t, "x": origin.tolist(), "cells": opts["quotient_cells"]},
                        quotient,
                    )
                )

            for big, small in zip(quotient_taus[:-1], quotient_taus[1:]):

                def quotient_step(big=quotients[big], small=quotients[small]) -> Outcome:
                    d_big, d_small = big(), small()
                    err = d_big.err_est + d_small.err_est
                    return _shortfall(d_small.value + err, d_big.value, err)

                checks.append(
                    Check(
                        f"gagliardo-limit/{name}/{tag}/quotient-monotone/tau{big:g}-{small:g}",
                        Suite.GAGLIARDO_LIMIT,
                        {**base, "taus": [big, small], "x": origin.tolist()},
                        quotient_step,
                    )
                )
    return checks


def holder_transfer_checks(config: SuiteConfig) -> list[Check]:
    slack = config.tolerances["slack"]
    checks = []
    for dim in config.dims:
        for alpha, order in config.options["cases"]:
            params = make_params(dim, order)
            estimates = _shared(
                lambda a=alpha, p=params: holder_transfer_estimates(
                    a, p, config.spec, pairs=config.options["pairs"], rng_seed=config.seed
                )
            )

            def carre(estimates=estimates) -> Outcome:
                e = estimates()
                return _shortfall(e["exponent_is"], e["gamma_is"] - slack, e["fit_err_is"])

            def localized(estimates=estimates) -> Outcome:
                e = estimates()
                return _shortfall(e["exponent_eta"], e["gamma_eta"] - slack, e["fit_err_eta"])

            inputs = {"alpha": alpha, "order": order, "dim": dim}
            tag = f"N{dim}/a{alpha:g}/s{order:g}"
            checks.append(Check(f"holder-transfer/carre/{tag}", Suite.HOLDER_TRANSFER, inputs, carre))
            checks.append(Check(f"holder-transfer/localized/{tag}", Suite.HOLDER_TRANSFER, inputs, localized))
    return checks


def poisson_checks(config: SuiteConfig) -> list[Check]:
    tol, opts = config.tolerances, config.options
    rho = float(opts["rho"])

    def problem_for(h: ScalarField, p: FracParams) -> BallProblem:
        return BallProblem(rho=rho, exterior=h, params=p, spec=config.spec)

    checks = []
    for params in _grid(config):
        tag = _tag(params)

        for ratio in (0.0, 0.5, 0.9):
            x = np.zeros(params.dim)
            x[0] = ratio * rho

            def normalization(x=x, p=params) -> Outcome:
                value = kernel_normalization(rho, x, p, config.spec)
                return Outcome(value, 1.0, 0.0, tol["abs"])

            checks.append(
                Check(f"poisson/normalization/{tag}/r{ratio:g}", Suite.POISSON, {"x": x.tolist()}, normalization)
            )

        interior = _points(config, params.dim, 0.9 * rho)
        if len(interior):
            interior[-1] = 0.9 * rho * np.eye(params.dim)[0]
        constant_solves = _shared(
            lambda pts=interior, p=params: solve_batch(problem_for(constant_field(1.0), p), pts)
        )
        for i, x in enumerate(interior):

            def constant_datum(i=i, solves=constant_solves) -> Outcome:
                result = solves()[i]
                return Outcome(result.value, 1.0, result.err_est, tol["abs"])

            checks.append(
                Check(f"poisson/constant/{tag}/p{i:02d}", Suite.POISSON, {"x": x.tolist()}, constant_datum)
            )

        def symmetry(p=params) -> Outcome:
            h = preset_field("halfspace-indicator", p)
            result = solve_dirichlet(problem_for(h, p), np.zeros(p.dim))
            return Outcome(result.value, 0.5, result.err_est, tol["abs"])

        def symmetry_wos(p=params) -> Outcome:
            h = preset_field("halfspace-indicator", p)
            mean, stderr = wos_solve(problem_for(h, p), np.zeros(p.dim), opts["wos_samples"], config.seed)
            return Outcome(mean, 0.5, stderr, tol["sigmas"] * stderr)

        def constant(p=params) -> Outcome:
            discovered, _ = discover_kernel_constant(p, config.spec)
            return _relative(discovered, poisson_constant(p), 0.0, 1e-6)

        checks.append(Check(f"poisson/symmetry/{tag}/quadrature", Suite.POISSON, {}, symmetry))
        checks.append(Check(f"poisson/symmetry/{tag}/wos", Suite.POISSON, {}, symmetry_wos))
        checks.append(Check(f"poisson/kernel-constant/{tag}", Suite.POISSON, {}, constant))

        triangle_points = uniform_ball(stream(config.seed, 1), len(config.presets), params.dim, 0.8 * rho)
        for name, x in zip(config.presets, triangle_points):

            def triangle(name=name, x=x, p=params) -> Outcome:
                problem = problem_for(preset_field(name, p), p)
                quad_result = solve_dirichlet(problem, x)
                mean, stderr = wos_solve(problem, x, opts["wos_samples"], config.seed)
                err = stderr + quad_result.err_est
                return Outcome(quad_result.value, mean, err, tol["sigmas"] * stderr + quad_result.err_est)

            checks.append(
                Check(
                    f"poisson/triangle/{name}/{tag}",
                    Suite.POISSON,
                    {"preset": name, "x": x.tolist()},
                    triangle,
                )
            )
    return checks


def sharmonicity_checks(config: SuiteConfig) -> list[Check]:
    rel, rho = config.tolerances["rel"], float(config.options["rho"])
    checks = []
    for params in _grid(config):
        for name in config.presets:
            h = preset_field(name, params)
            problem = BallProblem(rho=rho, exterior=h, params=params, spec=config.spec)
            for i, x in enumerate(_points(config, params.dim, 0.75 * rho)):

                def run(problem=problem, x=x, h=h) -> Outcome:
                    result = sharmonicity_residual(problem, x, config.spec)
                    return Outcome(result.value, 0.0, result.err_est, rel * max(1.0, h.bound))

                checks.append(
                    Check(
                        f"sharmonicity/{name}/{_tag(params)}/p{i:02d}",
                        Suite.SHARMONICITY,
                        {"preset": name, "order": params.order, "x": x.tolist()},
                        run,
                    )
                )
    return checks


def analyticity_checks(config: SuiteConfig) -> list[Check]:
    limit, opts = config.tolerances["residual"], config.options
    _, r, r0 = radii_schedule(opts["delta"])
    orders = [int(k) for k in opts["derivative_orders"]]
    checks = []
    for params in _grid(config):
        for name in config.presets:
            problem = BallProblem(rho=r, exterior=preset_field(name, params), params=params, spec=config.spec)

            def run(problem=problem) -> Outcome:
                profile = analyticity_profile(problem, r0, orders, opts["scan"])
                return Outcome(profile.max_residual, 0.0, 0.0, limit)

            checks.append(
                Check(
                    f"analyticity/{name}/{_tag(params)}",
                    Suite.ANALYTICITY,
                    {"preset": name, "rho": r, "r0": r0, "orders": orders},
                    run,
                )
            )

        def kernel(p=params) -> Outcome:
            rng = stream(config.seed, 2)
            rho = 0.75
            xs = uniform_ball(rng, 20, p.dim, 0.5)
            dirs = rng.standard_normal((20, p.dim))
            ys = dirs / np.linalg.norm(dirs, axis=-1, keepdims=True) * (rho + 0.1 + rng.random((20, 1)))
            _, _, residual = derivative_growth_fit(rho, xs, ys, orders, p)
            return Outcome(residual, 0.0, 0.0, limit)

        checks.append(Check(f"analyticity/kernel/{_tag(params)}", Suite.ANALYTICITY, {"rho": 0.75}, kernel))
    return checks


def norms_checks(config: SuiteConfig) -> list[Check]:
    tol, spec = config.tolerances, config.spec
    checks = []
    for params in _grid(config):
        tag = _tag(params)
        n, s = params.dim, params.order
        for radius in config.options["radii"]:

            def tail(radius=radius, p=params) -> Outcome:
                result = nonlocal_tail(constant_field(), np.zeros(p.dim), radius, p, spec)
                oracle = sphere_area(p.dim) / (2.0 * p.order)
                return Outcome(result.value, oracle, result.stderr, tol["tail"] * max(1.0, oracle))

            checks.append(Check(f"norms/tail/{tag}/R{radius:g}", Suite.NORMS, {"radius": radius}, tail))

        def l1s(p=params) -> Outcome:
            result = weighted_l1s_norm(constant_field(), p, spec)
            q = p.dim + 2.0 * p.order
            oracle = sphere_area(p.dim) * math.pi / (q * math.sin(math.pi * p.dim / q))
            return Outcome(result.value, oracle, result.stderr, tol["l1s"])

        def linf(p=params) -> Outcome:
            return Outcome(weighted_linf_norm(weight_profile_field(p), p), 1.0, 0.0, tol["tail"])

        def linear(p=params) -> Outcome:
            slope = [1.0] + [0.0] * (p.dim - 1)
            mc = gagliardo_seminorm(affine_field(slope), 1.0, p.order, 2.0, spec, p.dim)
            exact = linear_seminorm_exact(slope, 1.0, p.order, 2.0, p.dim)
            return Outcome(mc.value, exact.value, mc.stderr, tol["sigmas"] * mc.stderr + exact.stderr)

        def linear_grid(p=params) -> Outcome:
            u = affine_field([1.0] + [0.0] * (p.dim - 1))
            mc = gagliardo_seminorm(u, 1.0, p.order, 2.0, spec, p.dim)
            grid = gagliardo_seminorm_grid(u, 1.0, p.order, 2.0, p.dim, config.options["grid_cells"])
            band = tol["sigmas"] * mc.stderr + grid.stderr + tol["grid_rel"] * grid.value
            return Outcome(mc.value, grid.value, mc.stderr + grid.stderr, band, {"grid_err": grid.stderr})

        checks.append(Check(f"norms/l1s/{tag}", Suite.NORMS, {"dim": n, "order": s}, l1s))
        checks.append(
            Check(
                f"norms/linear-seminorm-grid/{tag}",
                Suite.NORMS,
                {"dim": n, "order": s, "cells": config.options["grid_cells"]},
                linear_grid,
            )
        )
        checks.append(Check(f"norms/linf/{tag}", Suite.NORMS, {"dim": n, "order": s}, linf))
        checks.append(Check(f"norms/linear-seminorm/{tag}", Suite.NORMS, {"dim": n, "order": s}, linear))

        for name in config.presets:
            u = preset_field(name, params)
            if u.alpha >= 1.0:
                continue

            def holder(u=u, dim=n) -> Outcome:
                exponent, err = holder_exponent_estimate(u.eval, 0.9, dim, rng_seed=config.seed)
                return Outcome(exponent, u.alpha, err, tol["exponent"])

            checks.append(Check(f"norms/holder/{name}/N{n}", Suite.NORMS, {"preset": name}, holder))
    return checks


SUITES: dict[Suite, SuiteBuilder] = {
    Suite.LAPLACIAN: laplacian_checks,
    Suite.LEIBNIZ: leibniz_checks,
    Suite.POLARIZATION: polarization_checks,
    Suite.GAGLIARDO_LIMIT: gagliardo_limit_checks,
    Suite.HOLDER_TRANSFER: holder_transfer_checks,
    Suite.POISSON: poisson_checks,
    Suite.SHARMONICITY: sharmonicity_checks,
    Suite.ANALYTICITY: analyticity_checks,
    Suite.NORMS: norms_checks,
}


def build_checks(config: SuiteConfig) -> list[Check]:
    builder = SUITES.get(config.suite)
    if not builder:
        raise ValueError(f"Unsupported suite: {config.suite}")
    checks = builder(config)
    logger.info({"event": "checks_built", "suite": config.suite.value, "count": len(checks)})
    return checks
