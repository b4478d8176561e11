"""Weighted norms, nonlocal tail, Gagliardo seminorms and Hölder exponent estimates."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fraclap.core.exponents import holder_transfer_exponents
from fraclap.core.fields import (
    affine_field,
    ball_indicator_field,
    bump_field,
    constant_field,
    gaussian_field,
    holder_cusp_field,
    lorentzian_field,
    scale_field,
    sum_field,
    weight_profile_field,
)
from fraclap.core.special import make_params, sphere_area
from fraclap.norms.holder import holder_exponent_estimate, holder_transfer_estimates, pointwise
from fraclap.norms.seminorm import (
    gagliardo_seminorm,
    gagliardo_seminorm_grid,
    linear_seminorm_exact,
    sobolev_norm,
)
from fraclap.norms.weighted import nonlocal_tail, weighted_l1s_norm, weighted_linf_norm
from fraclap.quad.pairs import stream, uniform_ball
from fraclap.quad.radial import make_spec
from fraclap.types import Method


@pytest.mark.parametrize("dim,order", [(2, 0.25), (2, 0.5), (3, 0.75)])
def test_l1s_norm_of_constant(spec, dim, order):
    params = make_params(dim, order)
    q = dim + 2.0 * order
    expected = sphere_area(dim) * math.pi / (q * math.sin(math.pi * dim / q))
    result = weighted_l1s_norm(constant_field(), params, spec)
    assert result.value == pytest.approx(expected, rel=1e-8)
    assert result.method == Method.RADIAL_EXACT


def test_l1s_norm_of_compact_field_is_below_its_support_area(spec, params):
    result = weighted_l1s_norm(bump_field(0.5), params, spec)
    assert 0.0 < result.value < math.pi * 0.25


def test_l1s_norm_diverges_for_growing_field(spec):
    result = weighted_l1s_norm(affine_field([1.0, 0.0]), make_params(2, 0.25), spec)
    assert result.value == math.inf


@pytest.mark.parametrize("radius", [0.5, 1.0, 2.0])
def test_nonlocal_tail_of_constant(spec, params, radius):
    result = nonlocal_tail(constant_field(), np.zeros(2), radius, params, spec)
    assert result.value == pytest.approx(sphere_area(2) / (2.0 * params.order), rel=1e-8)


def test_nonlocal_tail_rejects_radius(spec, params):
    with pytest.raises(ValueError):
        nonlocal_tail(constant_field(), np.zeros(2), 0.0, params, spec)


def test_linf_norm_of_weight_profile(params):
    assert weighted_linf_norm(weight_profile_field(params), params) == pytest.approx(1.0, rel=1e-9)


def test_linf_norm_of_bump_is_its_peak(params):
    assert weighted_linf_norm(bump_field(1.0), params) == pytest.approx(1.0, rel=1e-9)


def test_linf_norm_infinite_for_bounded_field(params):
    assert weighted_linf_norm(constant_field(), params) == math.inf


@pytest.mark.parametrize("order", [0.25, 0.5, 0.75])
def test_linear_seminorm_monte_carlo(mc_spec, order):
    slope = [1.0, -0.5]
    mc = gagliardo_seminorm(affine_field(slope), 1.0, order, 2.0, mc_spec, 2)
    exact = linear_seminorm_exact(slope, 1.0, order, 2.0, 2)
    assert mc.method == Method.MC_PAIR
    assert mc.value == pytest.approx(exact.value, abs=4.0 * mc.stderr + exact.stderr)


def test_linear_seminorm_of_flat_field():
    assert linear_seminorm_exact([0.0, 0.0], 1.0, 0.5, 2.0).value == 0.0


def test_seminorm_of_constant_is_zero(mc_spec):
    assert gagliardo_seminorm(constant_field(2.0), 1.0, 0.5, 2.0, mc_spec).value == 0.0


def test_seminorm_rejects_rough_fields(mc_spec):
    with pytest.raises(ValueError, match="diverges"):
        gagliardo_seminorm(holder_cusp_field(0.3), 1.0, 0.4, 2.0, mc_spec)
    with pytest.raises(ValueError, match="Lipschitz"):
        gagliardo_seminorm(holder_cusp_field(0.9), 1.0, 0.75, 2.0, mc_spec)
    with pytest.raises(ValueError):
        gagliardo_seminorm(gaussian_field(), 1.0, 0.5, 0.5, mc_spec)


def test_sobolev_norm_dominates_seminorm(mc_spec):
    u = gaussian_field()
    semi = gagliardo_seminorm(u, 1.0, 0.5, 2.0, mc_spec)
    full = sobolev_norm(u, 1.0, 0.5, 2.0, mc_spec)
    assert full.value > semi.value


def test_holder_exponent_of_cusp():
    alpha = 0.5
    u = holder_cusp_field(alpha)
    exponent, err = holder_exponent_estimate(u.eval, 0.9, 2, rng_seed=3)
    assert exponent == pytest.approx(alpha, abs=0.05)
    assert err >= 0.0


def test_holder_exponent_of_constant_is_infinite():
    exponent, _ = holder_exponent_estimate(constant_field().eval, 0.9, 2)
    assert exponent == math.inf


def test_holder_exponent_needs_enough_bins():
    with pytest.raises(ValueError, match="bins"):
        holder_exponent_estimate(gaussian_field().eval, 0.9, 2, bins=4)


def test_pointwise_lifts_scalar_functions():
    lifted = pointwise(lambda x: float(x[0] * x[1]), 2)
    x = np.arange(12.0).reshape(2, 3, 2)
    assert lifted(x) == pytest.approx(x[..., 0] * x[..., 1])


def test_holder_transfer_meets_predicted_exponents():
    params = make_params(2, 0.5)
    spec = make_spec(rel_tol=1e-7, angular_rule=32)
    estimates = holder_transfer_estimates(0.8, params, spec, pairs=12, rng_seed=5)
    gamma_is, beta, gamma_eta = holder_transfer_exponents(0.8, 0.5)
    assert estimates["gamma_is"] == gamma_is
    assert estimates["beta"] == beta
    assert estimates["exponent_is"] >= gamma_is - 0.05
    assert estimates["exponent_eta"] >= gamma_eta - 0.05


@given(st.floats(min_value=-4.0, max_value=4.0).filter(lambda c: abs(c) > 1e-3))
@settings(max_examples=15, deadline=None)
def test_norms_are_absolutely_homogeneous(c):
    params = make_params(2, 0.5)
    spec = make_spec(rel_tol=1e-9, mc_samples=20_000, batch_size=10_000, mc_rel_tol=math.inf)
    u = gaussian_field(center=[0.2, 0.1])
    cu = scale_field(u, c)
    assert weighted_l1s_norm(cu, params, spec).value == pytest.approx(
        abs(c) * weighted_l1s_norm(u, params, spec).value, rel=1e-8
    )
    assert weighted_linf_norm(cu, params) == pytest.approx(abs(c) * weighted_linf_norm(u, params), rel=1e-6)
    assert gagliardo_seminorm(cu, 1.0, 0.5, 2.0, spec).value == pytest.approx(
        abs(c) * gagliardo_seminorm(u, 1.0, 0.5, 2.0, spec).value, rel=1e-10
    )


@given(st.floats(min_value=-2.0, max_value=2.0), st.floats(min_value=-2.0, max_value=2.0))
@settings(max_examples=15, deadline=None)
def test_norms_satisfy_the_triangle_inequality(a, b):
    params = make_params(2, 0.5)
    spec = make_spec(rel_tol=1e-9, mc_samples=20_000, batch_size=10_000, mc_rel_tol=math.inf)
    f = scale_field(gaussian_field(center=[0.3, 0.0]), a)
    g = scale_field(bump_field(0.8, center=[-0.2, 0.1]), b)
    fg = sum_field(f, g)
    l1s = [weighted_l1s_norm(v, params, spec) for v in (fg, f, g)]
    slack = sum(r.stderr for r in l1s) + 1e-9 * (l1s[1].value + l1s[2].value)
    assert l1s[0].value <= l1s[1].value + l1s[2].value + slack
    radial = [scale_field(gaussian_field(), a), scale_field(bump_field(0.8), b)]
    linf = [weighted_linf_norm(v, params) for v in (sum_field(*radial), *radial)]
    assert linf[0] <= linf[1] + linf[2] + 1e-9
    semi = [gagliardo_seminorm(v, 1.0, 0.5, 2.0, spec).value for v in (fg, f, g)]
    assert semi[0] <= semi[1] + semi[2] + 1e-12


def test_l1s_norm_of_a_slowly_decaying_sum_is_subadditive(spec):
    params = make_params(2, 0.5)
    f, g = lorentzian_field(), scale_field(gaussian_field(), -1.5)
    total = weighted_l1s_norm(sum_field(f, g), params, spec).value
    assert total <= weighted_l1s_norm(f, params, spec).value + weighted_l1s_norm(g, params, spec).value


@pytest.mark.parametrize("order", [0.25, 0.75])
def test_l1s_norm_of_ball_indicator_matches_monte_carlo(spec, order):
    params = make_params(2, order)
    q = 2.0 + 2.0 * order
    points = uniform_ball(stream(13, 0), 200_000, 2, 1.0)
    samples = math.pi / (1.0 + np.linalg.norm(points, axis=-1) ** q)
    mean, stderr = float(samples.mean()), float(samples.std(ddof=1) / math.sqrt(len(samples)))
    result = weighted_l1s_norm(ball_indicator_field(1.0), params, spec)
    assert result.value == pytest.approx(mean, abs=4.0 * stderr)


def test_seminorm_of_first_coordinate_matches_grid(mc_spec):
    u = affine_field([1.0, 0.0])
    mc = gagliardo_seminorm(u, 1.0, 0.25, 2.0, mc_spec, 2)
    grid = gagliardo_seminorm_grid(u, 1.0, 0.25, 2.0, 2, n=64)
    exact = linear_seminorm_exact([1.0, 0.0], 1.0, 0.25, 2.0, 2)
    assert grid.method == Method.GRID
    assert mc.value == pytest.approx(grid.value, abs=3.0 * mc.stderr + grid.stderr)
    assert grid.value == pytest.approx(exact.value, abs=grid.stderr + 1e-3 * exact.value)


def test_holder_exponent_of_first_coordinate_is_one():
    exponent, err = holder_exponent_estimate(affine_field([1.0, 0.0]).eval, 0.9, 2, rng_seed=4)
    assert exponent == pytest.approx(1.0, abs=0.05)
    assert err >= 0.0
