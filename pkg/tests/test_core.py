"""Gamma, normalization constants, exponent bookkeeping, cutoffs and field algebra."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fraclap.core.cutoffs import (
    cutoff_gradient,
    cutoff_value,
    make_cutoff,
    make_radial_cutoff,
    radial_cutoff_value,
)
from fraclap.core.exponents import holder_transfer_exponents, radii_schedule
from fraclap.core.fields import (
    affine_field,
    at_least,
    bump_field,
    constant_field,
    dilate_field,
    gaussian_field,
    holder_cusp_field,
    product_field,
    regularity,
    scale_field,
    sum_field,
    weight_profile_field,
)
from fraclap.core.special import gamma_fn, make_params, normalization_constant, sphere_area
from fraclap.quad.pairs import stream, uniform_ball
from fraclap.types import Decay, Smoothness


@given(st.floats(min_value=0.01, max_value=30.0))
def test_gamma_matches_mpmath(x):
    expected = float(mpmath.gamma(x))
    assert gamma_fn(x) == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("x", [142.5, 150.0, 170.0, 171.5])
def test_gamma_stays_finite_for_large_arguments(x):
    expected = float(mpmath.gamma(x))
    value = gamma_fn(x)
    assert math.isfinite(value)
    assert value == pytest.approx(expected, rel=1e-11)


@given(st.floats(min_value=30.0, max_value=171.0))
@settings(max_examples=50)
def test_gamma_matches_math_gamma_on_the_upper_range(x):
    assert gamma_fn(x) == pytest.approx(math.gamma(x), rel=1e-11)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_gamma_rejects_nonpositive(x):
    with pytest.raises(ValueError):
        gamma_fn(x)


@given(st.integers(min_value=2, max_value=6), st.floats(min_value=0.01, max_value=0.99))
@settings(max_examples=50)
def test_normalization_constant_matches_mpmath(dim, s):
    with mpmath.workdps(30):
        expected = float(
            s * mpmath.power(4, s) * mpmath.gamma(mpmath.mpf(dim) / 2 + s)
            / (mpmath.power(mpmath.pi, mpmath.mpf(dim) / 2) * mpmath.gamma(1 - s))
        )
    assert normalization_constant(dim, s) == pytest.approx(expected, rel=1e-10)


def test_normalization_constant_half_laplacian_in_plane():
    assert normalization_constant(2, 0.5) == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-13)


@pytest.mark.parametrize("dim,order", [(1, 0.5), (2, 0.0), (2, 1.0), (3, -0.2)])
def test_invalid_params(dim, order):
    with pytest.raises(ValueError):
        make_params(dim, order)


def test_make_params_caches_constant():
    params = make_params(3, 0.25)
    assert params.c_ns == normalization_constant(3, 0.25)


@pytest.mark.parametrize("dim,area", [(2, 2.0 * math.pi), (3, 4.0 * math.pi), (4, 2.0 * math.pi**2)])
def test_sphere_area(dim, area):
    assert sphere_area(dim) == pytest.approx(area, rel=1e-13)


@pytest.mark.parametrize(
    "alpha,order,expected",
    [
        (0.4, 0.25, (0.3, 0.4 / 1.4, 0.9 * 0.4 / 1.4)),
        (0.8, 0.5, (0.6, 0.8 / 1.8, 0.8 * 0.8 / 1.8)),
        (0.9, 0.75, (0.4, 0.9 / 1.9, 0.4 * 0.9 / 1.9)),
    ],
)
def test_holder_transfer_exponents(alpha, order, expected):
    assert holder_transfer_exponents(alpha, order) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("alpha,order", [(0.6, 0.25), (0.2, 0.25), (1.0, 0.75), (0.5, 1.0)])
def test_holder_transfer_exponents_reject_out_of_range(alpha, order):
    with pytest.raises(ValueError):
        holder_transfer_exponents(alpha, order)


def test_radii_schedule():
    assert radii_schedule(0.4) == pytest.approx((0.9, 0.8, 0.6))
    with pytest.raises(ValueError):
        radii_schedule(1.0)


def test_cutoff_profile():
    eta = make_cutoff(0.1)
    assert (eta.plateau, eta.support) == pytest.approx((0.6, 0.8))
    points = np.array([[0.0, 0.0], [0.59, 0.0], [0.0, 0.7], [0.81, 0.0], [3.0, 3.0]])
    values = cutoff_value(eta, points)
    assert values[0] == values[1] == 1.0
    assert 0.0 < values[2] < 1.0
    assert values[3] == values[4] == 0.0


def test_cutoff_gradient_matches_differences():
    eta = make_cutoff(0.1)
    x = np.array([0.5, 0.4])
    h = 1e-6
    numeric = np.array(
        [(cutoff_value(eta, x + h * e) - cutoff_value(eta, x - h * e)) / (2 * h) for e in np.eye(2)]
    )
    assert cutoff_gradient(eta, x) == pytest.approx(numeric, abs=1e-6)


@pytest.mark.parametrize("delta", [0.05, 0.1, 0.2])
def test_cutoff_gradient_is_bounded_by_inverse_delta(delta):
    eta = make_cutoff(delta)
    x = uniform_ball(stream(1, 0), 10_000, 2, 1.0)
    assert np.linalg.norm(cutoff_gradient(eta, x), axis=-1).max() <= 1.0 / delta
    r = np.linspace(0.0, 1.0, 10_001)
    slopes = np.abs(np.diff(cutoff_value(eta, r[:, None] * np.array([1.0, 0.0])))) / np.diff(r)
    assert slopes.max() <= 1.0 / delta
    assert slopes.max() == pytest.approx(0.9375 / delta, rel=1e-3)


@pytest.mark.parametrize("delta", [0.0, 0.25, 0.3])
def test_cutoff_rejects_delta(delta):
    with pytest.raises(ValueError):
        make_cutoff(delta)


def test_radial_cutoff():
    cut = make_radial_cutoff(0.2)
    assert radial_cutoff_value(cut, np.array([0.05, 0.1, 0.15, 0.2, 1.0])) == pytest.approx(
        [0.0, 0.0, 0.5, 1.0, 1.0]
    )
    with pytest.raises(ValueError):
        make_radial_cutoff(0.5)


@given(
    st.floats(min_value=0.0, max_value=2.0),
    st.floats(min_value=0.01, max_value=0.49),
    st.floats(min_value=0.01, max_value=0.49),
)
def test_radial_cutoff_decreases_in_tau(t, tau_a, tau_b):
    small, large = sorted((tau_a, tau_b))
    assert radial_cutoff_value(make_radial_cutoff(small), t) >= radial_cutoff_value(make_radial_cutoff(large), t)


def test_fields_are_vectorized():
    x = np.random.default_rng(0).standard_normal((4, 3, 2))
    for u in (constant_field(2.0), gaussian_field(), bump_field(0.8), holder_cusp_field(0.5)):
        assert u.eval(x).shape == (4, 3)


def test_gaussian_derivatives_match_differences():
    u = gaussian_field(center=[0.2, -0.1], scale=0.9)
    x = np.array([0.3, 0.4])
    h = 1e-5
    for i, e in enumerate(np.eye(2)):
        iota = tuple(int(k) for k in e)
        numeric = (u.eval(x + h * e) - u.eval(x - h * e)) / (2 * h)
        assert float(u.derivative(iota)(x)) == pytest.approx(float(numeric), rel=1e-7)
    second = (u.eval(x + h * np.eye(2)[0]) - 2 * u.eval(x) + u.eval(x - h * np.eye(2)[0])) / h**2
    assert float(u.derivative((2, 0))(x)) == pytest.approx(float(second), rel=1e-4)


def test_bump_peak_and_support():
    u = bump_field(0.8)
    assert float(u.eval(np.zeros(2))) == 1.0
    assert float(u.eval(np.array([0.8, 0.0]))) == 0.0
    assert u.decay == Decay.COMPACT and u.radius == 0.8


def test_zero_constant_is_compact():
    assert constant_field(0.0).decay == Decay.COMPACT
    assert constant_field(1.0).decay == Decay.BOUNDED


def test_product_tags():
    cusp, gauss = holder_cusp_field(0.4), gaussian_field()
    w = product_field(cusp, gauss)
    assert w.smoothness == Smoothness.HOLDER
    assert regularity(w) == 0.4
    assert w.decay == Decay.COMPACT and w.radius == 1.0

    smooth = product_field(gauss, affine_field([1.0, 0.0]))
    assert smooth.decay == Decay.WEIGHTED_L1
    assert smooth.growth == -math.inf
    assert at_least(smooth, Smoothness.C2)


def test_sum_scale_dilate():
    u = sum_field(gaussian_field(), constant_field(1.0), 2.0, -1.0)
    x = np.array([0.1, 0.2])
    assert float(u.eval(x)) == pytest.approx(2.0 * math.exp(-math.pi * 0.05) - 1.0)
    assert u.decay == Decay.BOUNDED

    v = scale_field(gaussian_field(), 3.0)
    assert float(v.derivative((1, 0))(x)) == pytest.approx(3.0 * float(gaussian_field().derivative((1, 0))(x)))

    d = dilate_field(bump_field(1.0), 2.0)
    assert d.radius == 0.5
    assert float(d.eval(x)) == pytest.approx(float(bump_field(1.0).eval(2.0 * x)))
    with pytest.raises(ValueError):
        dilate_field(d, 0.0)


def test_weight_profile_tags():
    params = make_params(2, 0.5)
    u = weight_profile_field(params)
    assert u.growth == -3.0
    assert float(u.eval(np.array([1.0, 0.0]))) == pytest.approx(0.5)
