"""Smooth ball cutoff and the piecewise-linear radial cutoff."""

import math

import numpy as np

from fraclap.types import CutoffField, Decay, RadialCutoff, ScalarField, Smoothness


def _smoothstep(t: np.ndarray) -> np.ndarray:
    t = np.clip(t, 0.0, 1.0)
    return t**3 * (10.0 - 15.0 * t + 6.0 * t * t)


def _smoothstep_slope(t: np.ndarray) -> np.ndarray:
    inside = (t > 0.0) & (t < 1.0)
    return np.where(inside, 30.0 * t * t * (1.0 - t) ** 2, 0.0)


def make_cutoff(delta: float) -> CutoffField:
    """Cutoff equal to 1 on B_{1-4delta} and 0 outside B_{1-2delta}."""
    if not 0.0 < delta < 0.25:
        raise ValueError(f"cutoff delta must lie in (0, 1/4), got {delta}")
    return CutoffField(delta=delta, plateau=1.0 - 4.0 * delta, support=1.0 - 2.0 * delta)


def cutoff_profile(eta: CutoffField, r: np.ndarray) -> np.ndarray:
    """Radial profile of eta, quintic smoothstep across the transition."""
    width = eta.support - eta.plateau
    return 1.0 - _smoothstep((np.asarray(r, dtype=float) - eta.plateau) / width)


def cutoff_profile_slope(eta: CutoffField, r: np.ndarray) -> np.ndarray:
    width = eta.support - eta.plateau
    return -_smoothstep_slope((np.asarray(r, dtype=float) - eta.plateau) / width) / width


def cutoff_value(eta: CutoffField, x: np.ndarray) -> np.ndarray:
    """eta at points of shape (..., N)."""
    return cutoff_profile(eta, np.linalg.norm(x, axis=-1))


def cutoff_gradient(eta: CutoffField, x: np.ndarray) -> np.ndarray:
    """Gradient of eta, shape (..., N)."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    slope = cutoff_profile_slope(eta, r)
    safe = np.where(r > 0.0, r, 1.0)
    return (slope / safe)[..., None] * x


def cutoff_field(eta: CutoffField) -> ScalarField:
    """eta as a compactly supported C^2 field."""
    return ScalarField(
        eval=lambda x: cutoff_value(eta, x),
        smoothness=Smoothness.C2,
        decay=Decay.COMPACT,
        radius=eta.support,
        bound=1.0,
        growth=-math.inf,
        name=f"cutoff({eta.delta:g})",
    )


def make_radial_cutoff(tau: float) -> RadialCutoff:
    if not 0.0 < tau < 0.5:
        raise ValueError(f"radial cutoff tau must lie in (0, 1/2), got {tau}")
    return RadialCutoff(tau=tau)


def radial_cutoff_value(cut: RadialCutoff, t: np.ndarray) -> np.ndarray:
    """0 below tau/2, 2t/tau - 1 up to tau, 1 beyond."""
    return np.clip(2.0 * np.asarray(t, dtype=float) / cut.tau - 1.0, 0.0, 1.0)
