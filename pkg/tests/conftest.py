"""Test fixtures and configuration."""
import pytest
from pathlib import Path

from fraclap.core.special import make_params
from fraclap.quad.radial import make_spec
from fraclap.types import FracParams, QuadratureSpec


@pytest.fixture
def params() -> FracParams:
    """N = 2, s = 1/2."""
    return make_params(2, 0.5)


@pytest.fixture
def spec() -> QuadratureSpec:
    """Tight deterministic quadrature settings."""
    return make_spec(rel_tol=1e-9, abs_tol=1e-13, rng_seed=7)


@pytest.fixture
def mc_spec() -> QuadratureSpec:
    """Small Monte Carlo budget for pair integrals."""
    return make_spec(mc_samples=100_000, batch_size=25_000, rng_seed=7)


@pytest.fixture
def fixture_path() -> Path:
    """Get path to test fixtures directory."""
    return Path(__file__).parent.parent / "fixtures_data"
