"""Poisson kernel, Taylor jets, Dirichlet solver and walk-on-spheres."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad
from scipy.special import comb
from scipy.stats import chisquare

from fraclap.core.fields import (
    affine_field,
    bump_field,
    constant_field,
    gaussian_field,
    halfspace_indicator_field,
    lorentzian_field,
    regularity,
)
from fraclap.core.special import make_params
from fraclap.harness.presets import preset_field
from fraclap.poisson.jets import (
    constant_jet,
    jet_compose,
    jet_mul,
    multi_indices,
    power_coefficients,
    quadratic_jet,
)
from fraclap.poisson.kernel import (
    MAX_DERIVATIVE_ORDER,
    derivative_growth_fit,
    kernel_derivative,
    kernel_jet,
    poisson_constant,
    poisson_kernel,
)
from fraclap.poisson.solver import (
    analyticity_profile,
    discover_kernel_constant,
    kernel_normalization,
    sharmonicity_residual,
    solution_derivative,
    solution_field,
    solution_taylor,
    solve_batch,
    solve_dirichlet,
)
from fraclap.poisson.walk import envelope, wos_points, wos_sample, wos_solve
from fraclap.quad.pairs import stream, uniform_ball
from fraclap.quad.radial import make_spec
from fraclap.ops.laplacian import frac_laplacian
from fraclap.types import BallProblem, Smoothness


def _problem(h, params, spec, rho=1.0):
    return BallProblem(rho=rho, exterior=h, params=params, spec=spec)


@pytest.mark.parametrize("dim,order", [(2, 3), (3, 4)])
def test_multi_indices_are_graded(dim, order):
    indices = multi_indices(dim, order)
    assert len(indices) == comb(dim + order, order, exact=True)
    assert [sum(i) for i in indices] == sorted(sum(i) for i in indices)


def test_jet_product_and_composition():
    dim, order = 2, 4
    a = constant_jet(1.0, dim, order)
    a[1, 0] = 1.0
    b = constant_jet(1.0, dim, order)
    b[0, 1] = 1.0
    ab = jet_mul(a, b, dim, order)
    assert ab[0, 0] == ab[1, 0] == ab[0, 1] == ab[1, 1] == 1.0
    assert np.count_nonzero(ab) == 4

    delta = quadratic_jet(np.array([1.0, 0.0]), 1.0, dim, order)
    jet = jet_compose(power_coefficients(1.0, -0.5, order), delta, dim, order)
    expected = mpmath.taylor(lambda t: (1 + t + t * t) ** -0.5, 0, order)
    assert jet[:, 0] == pytest.approx([float(c) for c in expected], rel=1e-12)


def test_poisson_constant():
    assert poisson_constant(make_params(2, 0.5)) == pytest.approx(1.0 / math.pi**2)


@pytest.mark.parametrize("order", [0.25, 0.5, 0.75])
def test_discovered_constant_matches_unit_mass_constant(spec, order):
    params = make_params(3, order)
    constant, mass = discover_kernel_constant(params, spec)
    assert constant == pytest.approx(poisson_constant(params), rel=1e-8)
    assert mass == pytest.approx(params.c_ns / poisson_constant(params), rel=1e-8)


def test_kernel_rejects_points_on_the_wrong_side(params):
    with pytest.raises(ValueError):
        poisson_kernel(1.0, np.array([1.0, 0.0]), np.array([2.0, 0.0]), params)
    with pytest.raises(ValueError):
        poisson_kernel(1.0, np.array([0.2, 0.0]), np.array([0.5, 0.5]), params)
    with pytest.raises(ValueError):
        poisson_kernel(0.0, np.zeros(2), np.array([2.0, 0.0]), params)


def test_kernel_is_positive_and_vectorized(params):
    y = np.array([[1.5, 0.0], [0.0, -3.0], [2.0, 2.0]])
    values = poisson_kernel(1.0, np.array([0.3, 0.4]), y, params)
    assert values.shape == (3,)
    assert np.all(values > 0.0)


@pytest.mark.parametrize("iota", [(1, 0), (0, 2), (2, 1), (3, 3)])
def test_kernel_derivative_matches_mpmath(iota):
    params = make_params(2, 0.3)
    rho, x, y = 1.0, np.array([0.2, -0.1]), np.array([1.3, 0.4])
    c = poisson_constant(params)

    def kernel(x1, x2):
        inner = rho**2 - x1**2 - x2**2
        outer = 1.3**2 + 0.4**2 - rho**2
        return c * (inner / outer) ** 0.3 / ((x1 - 1.3) ** 2 + (x2 - 0.4) ** 2)

    with mpmath.workdps(30):
        expected = float(mpmath.diff(kernel, (0.2, -0.1), iota))
    assert float(kernel_derivative(rho, x, y, iota, params, c)) == pytest.approx(expected, rel=1e-9)


def test_kernel_jet_is_batched_over_exterior_points(params):
    y = np.array([[1.5, 0.0], [0.0, -3.0]])
    jet = kernel_jet(1.0, np.array([0.1, 0.2]), y, 3, params)
    assert jet.shape == (2, 4, 4)
    assert jet[:, 0, 0] == pytest.approx(poisson_kernel(1.0, np.array([0.1, 0.2]), y, params))


def test_kernel_derivative_order_is_capped(params):
    with pytest.raises(ValueError):
        kernel_derivative(1.0, np.zeros(2), np.array([2.0, 0.0]), (4, 3), params)
    with pytest.raises(ValueError):
        kernel_derivative(1.0, np.zeros(2), np.array([2.0, 0.0]), (1, 0, 0), params)
    assert MAX_DERIVATIVE_ORDER == 6


def test_kernel_derivative_growth_is_geometric(params):
    rng = stream(11, 0)
    xs = uniform_ball(rng, 20, 2, 0.5)
    dirs = rng.standard_normal((20, 2))
    ys = dirs / np.linalg.norm(dirs, axis=-1, keepdims=True) * (0.85 + rng.random((20, 1)))
    slope, intercept, residual = derivative_growth_fit(0.75, xs, ys, [1, 2, 3, 4], params)
    assert math.isfinite(slope) and math.isfinite(intercept)
    assert residual < 0.2
    with pytest.raises(ValueError):
        derivative_growth_fit(0.75, xs, ys, [2], params)


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("ratio", [0.0, 0.5, 0.9])
def test_kernel_has_unit_mass(spec, dim, ratio):
    params = make_params(dim, 0.5)
    x = np.zeros(dim)
    x[0] = ratio
    assert kernel_normalization(1.0, x, params, spec) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("order", [0.25, 0.75])
def test_constant_datum_is_reproduced(spec, order):
    params = make_params(2, order)
    xs = np.array([[0.0, 0.0], [0.5, 0.5], [-0.9, 0.0], [0.0, 0.95]])
    results = solve_batch(_problem(constant_field(2.0), params, spec), xs)
    assert [r.value for r in results] == pytest.approx([2.0] * 4, abs=1e-6)


@pytest.mark.parametrize("order", [0.25, 0.5, 0.75])
def test_halfspace_datum_at_centre(spec, order):
    params = make_params(2, order)
    result = solve_dirichlet(_problem(halfspace_indicator_field(), params, spec), np.zeros(2))
    assert result.value == pytest.approx(0.5, abs=1e-6)


def test_datum_supported_inside_the_ball_gives_zero(spec, params):
    result = solve_dirichlet(_problem(bump_field(0.5), params, spec), np.array([0.1, 0.1]))
    assert result.value == 0.0


def test_complementary_data_add_to_one(spec, params):
    x = np.array([0.3, -0.4])
    inside = solve_dirichlet(_problem(preset_field("ball-indicator(2)", params), params, spec), x)
    outside = solve_dirichlet(_problem(preset_field("ball-complement(2)", params), params, spec), x)
    assert inside.value + outside.value == pytest.approx(1.0, abs=1e-5)
    assert 0.0 < outside.value < inside.value


def test_solver_rejects_boundary_points(spec, params):
    with pytest.raises(ValueError):
        solve_dirichlet(_problem(constant_field(), params, spec), np.array([1.0, 0.0]))


def test_solution_of_radial_datum_is_radial(spec, params):
    problem = _problem(lorentzian_field(), params, spec)
    a = solve_dirichlet(problem, np.array([0.6, 0.0])).value
    b = solve_dirichlet(problem, np.array([0.0, -0.6])).value
    assert a == pytest.approx(b, rel=1e-8)


def test_solution_taylor_of_constant_datum(spec, params):
    jet, err = solution_taylor(_problem(constant_field(), params, spec), np.array([0.2, 0.1]), 3)
    assert jet[0, 0] == pytest.approx(1.0, abs=1e-7)
    assert np.abs(jet.ravel()[1:]).max() < 1e-6
    assert err >= 0.0


def test_solution_derivative_matches_differences(spec, params):
    problem = _problem(gaussian_field(center=[1.2, 0.0]), params, spec)
    x, h = np.array([0.1, 0.2]), 1e-3
    numeric = (
        solve_dirichlet(problem, x + [h, 0.0]).value - solve_dirichlet(problem, x - [h, 0.0]).value
    ) / (2 * h)
    assert solution_derivative(problem, x, (1, 0)).value == pytest.approx(numeric, rel=1e-4)


def test_solution_field_glues_datum_outside(spec, params):
    u = solution_field(_problem(lorentzian_field(), params, spec))
    points = np.array([[0.0, 0.0], [2.0, 0.0]])
    values = u.eval(points)
    assert values[1] == pytest.approx(0.2)
    assert u.eval(points)[0] == values[0]


def test_sharmonicity_residual_for_constant_datum(params):
    spec = make_spec(rel_tol=1e-6, angular_rule=16)
    result = sharmonicity_residual(_problem(constant_field(), params, spec), np.array([0.2, 0.1]), spec)
    assert abs(result.value) < 1e-4


def test_sharmonicity_residual_needs_interior_point(spec, params):
    with pytest.raises(ValueError):
        sharmonicity_residual(_problem(constant_field(), params, spec), np.array([0.85, 0.0]), spec)


def test_analyticity_profile(params):
    spec = make_spec(rel_tol=1e-8, rng_seed=3)
    h = gaussian_field(center=[0.8, 0.3], scale=math.sqrt(math.pi))
    profile = analyticity_profile(_problem(h, params, spec, rho=0.8), 0.6, scan=4)
    assert profile.orders == [1, 2, 3, 4]
    assert all(v > 0.0 for v in profile.sups)
    assert profile.max_residual < 0.5
    with pytest.raises(ValueError):
        analyticity_profile(_problem(h, params, spec, rho=0.8), 0.9)


def test_envelope_at_centre_is_one(params):
    assert envelope(1.0, np.zeros(2), params) == 1.0
    assert envelope(1.0, np.array([0.5, 0.0]), params) > 1.0


@pytest.mark.parametrize("x", [np.zeros(2), np.array([0.4, -0.3])])
def test_exit_points_leave_the_ball(params, x):
    points = wos_points(1.0, x, 5000, stream(1, 0), params)
    assert points.shape == (5000, 2)
    assert np.all(np.linalg.norm(points, axis=-1) >= 1.0)


def test_single_sample_is_deterministic(params):
    a = wos_sample(1.0, np.array([0.2, 0.2]), stream(4, 0), params)
    b = wos_sample(1.0, np.array([0.2, 0.2]), stream(4, 0), params)
    assert np.array_equal(a, b)


def test_walk_reproduces_constants_exactly(params):
    spec = make_spec(batch_size=10_000)
    mean, stderr = wos_solve(_problem(constant_field(3.0), params, spec), np.array([0.3, 0.1]), 25_000, 9)
    assert mean == pytest.approx(3.0, rel=1e-14)
    assert stderr == 0.0


def test_walk_is_reproducible_for_a_fixed_seed(params):
    problem = _problem(lorentzian_field(), params, make_spec(batch_size=10_000))
    x = np.array([0.3, 0.1])
    assert wos_solve(problem, x, 20_000, 9) == wos_solve(problem, x, 20_000, 9)


@pytest.mark.parametrize("order", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("x", [np.zeros(2), np.array([0.5, -0.2])], ids=["centre", "offset"])
def test_walk_agrees_with_quadrature(spec, order, x):
    params = make_params(2, order)
    problem = _problem(lorentzian_field(), params, spec)
    quadrature = solve_dirichlet(problem, x)
    mean, stderr = wos_solve(problem, x, 200_000, 21)
    assert mean == pytest.approx(quadrature.value, abs=4.0 * stderr + quadrature.err_est)


def test_walk_rejects_low_acceptance(spec, params):
    with pytest.raises(RuntimeError) as exc:
        wos_solve(_problem(constant_field(), params, spec), np.array([0.999, 0.0]), 100)
    assert exc.value.args[1]["zone"] == "sampler"


def test_walk_needs_two_samples(spec, params):
    with pytest.raises(ValueError):
        wos_solve(_problem(constant_field(), params, spec), np.zeros(2), 1)


def test_kernel_at_closed_form_point():
    params = make_params(2, 0.5)
    value = poisson_kernel(1.0, np.zeros(2), np.array([2.0, 0.0]), params)
    assert value == pytest.approx(1.0 / (8.0 * math.pi * math.sqrt(3.0)), rel=1e-12)


@given(st.floats(min_value=0.0, max_value=2.0 * math.pi))
@settings(max_examples=25)
def test_kernel_is_rotation_invariant(angle):
    params = make_params(3, 0.25)
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    x, ys = np.array([0.3, -0.2, 0.1]), np.array([[1.5, 0.2, -0.4], [0.0, -2.0, 1.0]])
    assert poisson_kernel(1.0, rot @ x, ys @ rot.T, params) == pytest.approx(
        poisson_kernel(1.0, x, ys, params), rel=1e-12
    )


@given(st.floats(min_value=0.0, max_value=0.9), st.floats(min_value=0.0, max_value=2.0 * math.pi))
@settings(max_examples=10, deadline=None)
def test_solution_obeys_the_maximum_principle(radius, angle):
    params = make_params(2, 0.5)
    spec = make_spec(rel_tol=1e-8)
    x = radius * np.array([math.cos(angle), math.sin(angle)])
    result = solve_dirichlet(_problem(gaussian_field(center=[1.5, 0.0]), params, spec), x)
    assert -result.err_est <= result.value <= 1.0 + result.err_est


def test_walk_exit_directions_are_uniform_from_the_centre(params):
    points = wos_points(1.0, np.zeros(2), 16_000, stream(17, 0), params)
    sectors = np.floor((np.arctan2(points[:, 1], points[:, 0]) + math.pi) / (2.0 * math.pi) * 16).astype(int)
    counts = np.bincount(np.minimum(sectors, 15), minlength=16)
    assert counts.sum() == 16_000
    assert chisquare(counts).pvalue > 0.01


def test_walk_escape_probability_matches_quadrature(params):
    points = wos_points(1.0, np.zeros(2), 1_000_000, stream(19, 0), params)
    empirical = float(np.mean(np.linalg.norm(points, axis=-1) > 2.0))
    c = poisson_constant(params)
    radial, _ = quad(
        lambda r: 2.0 * math.pi * r * float(poisson_kernel(1.0, np.zeros(2), np.array([r, 0.0]), params, c)),
        2.0,
        math.inf,
    )
    assert radial == pytest.approx(1.0 / 3.0, rel=1e-8)
    sigma = math.sqrt(radial * (1.0 - radial) / len(points))
    assert empirical == pytest.approx(radial, abs=3.0 * sigma)


def test_solution_field_is_only_holder_across_the_sphere(spec):
    params = make_params(2, 0.25)
    u = solution_field(_problem(lorentzian_field(), params, spec))
    assert u.smoothness == Smoothness.HOLDER
    assert regularity(u) == 0.25
    with pytest.raises(ValueError, match="C\\^2"):
        frac_laplacian(u, np.zeros(2), params, spec)


def test_solution_field_inherits_a_rough_datum(spec, params):
    u = solution_field(_problem(halfspace_indicator_field(), params, spec))
    assert u.smoothness == Smoothness.PIECEWISE
    assert regularity(u) == 0.0


def test_affine_datum_is_its_own_extension_above_half():
    params = make_params(2, 0.75)
    spec = make_spec(rel_tol=1e-6, angular_rule=16)
    problem = _problem(affine_field([1.0, 0.0]), params, spec)
    assert solve_dirichlet(problem, np.array([0.3, 0.1])).value == pytest.approx(0.3, abs=1e-5)
    assert solve_dirichlet(problem, np.zeros(2)).value == pytest.approx(0.0, abs=1e-6)
    result = sharmonicity_residual(problem, np.array([0.2, -0.1]), spec)
    assert abs(result.value) < 1e-3
