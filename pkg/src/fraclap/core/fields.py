"""Field constructors and the algebra that keeps their tags consistent.

Every evaluator is vectorized: it takes points of shape (..., N) and returns
values of shape (...). Tags describe what the operators may assume about a
field; combinators derive the tags of the result from the tags of the inputs.
"""

import math
from typing import Sequence

import numpy as np
from scipy.special import eval_hermite

from fraclap.types import Decay, Evaluator, FracParams, ScalarField, Smoothness

SMOOTHNESS_RANK = {
    Smoothness.PIECEWISE: 0,
    Smoothness.HOLDER: 1,
    Smoothness.LIPSCHITZ: 2,
    Smoothness.C2: 3,
    Smoothness.SMOOTH: 4,
    Smoothness.ANALYTIC: 5,
}


def regularity(u: ScalarField) -> float:
    """Hölder exponent implied by the smoothness tag, capped at 1."""
    if u.smoothness == Smoothness.PIECEWISE:
        return 0.0
    if u.smoothness == Smoothness.HOLDER:
        return u.alpha
    return 1.0


def at_least(u: ScalarField, level: Smoothness) -> bool:
    return SMOOTHNESS_RANK[u.smoothness] >= SMOOTHNESS_RANK[level]


def _norm2(x: np.ndarray, center: np.ndarray | None) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if center is not None:
        x = x - center
    return np.sum(x * x, axis=-1)


def _zero_like(x: np.ndarray) -> np.ndarray:
    return np.zeros(np.shape(x)[:-1])


def constant_field(value: float = 1.0) -> ScalarField:
    value = float(value)

    def derivative(iota: tuple[int, ...]) -> Evaluator:
        if sum(iota) == 0:
            return lambda x: np.full(np.shape(x)[:-1], value)
        return _zero_like

    if value == 0.0:
        return ScalarField(
            eval=_zero_like,
            smoothness=Smoothness.ANALYTIC,
            decay=Decay.COMPACT,
            radius=0.0,
            bound=0.0,
            growth=-math.inf,
            derivative=derivative,
            name="zero",
        )
    return ScalarField(
        eval=lambda x: np.full(np.shape(x)[:-1], value),
        smoothness=Smoothness.ANALYTIC,
        decay=Decay.BOUNDED,
        bound=abs(value),
        growth=0.0,
        derivative=derivative,
        name="constant" if value == 1.0 else f"constant({value:g})",
    )


def affine_field(slope: Sequence[float], offset: float = 0.0) -> ScalarField:
    """x -> a.x + b, in L^1_s only when s > 1/2."""
    a = np.asarray(slope, dtype=float)

    def derivative(iota: tuple[int, ...]) -> Evaluator:
        order = sum(iota)
        if order == 0:
            return lambda x: np.asarray(x, dtype=float) @ a + offset
        if order == 1:
            return lambda x: np.full(np.shape(x)[:-1], a[iota.index(1)])
        return _zero_like

    return ScalarField(
        eval=lambda x: np.asarray(x, dtype=float) @ a + offset,
        smoothness=Smoothness.ANALYTIC,
        decay=Decay.WEIGHTED_L1,
        bound=float(np.linalg.norm(a)) + abs(offset),
        growth=1.0,
        derivative=derivative,
        name="affine",
    )


def gaussian_field(
    center: Sequence[float] | None = None, scale: float = 1.0, amplitude: float = 1.0
) -> ScalarField:
    """A * exp(-pi |x - c|^2 / scale^2), with Hermite-product derivatives."""
    c = None if center is None else np.asarray(center, dtype=float)
    rate = math.pi / scale**2

    def value(x: np.ndarray) -> np.ndarray:
        return amplitude * np.exp(-rate * _norm2(x, c))

    def derivative(iota: tuple[int, ...]) -> Evaluator:
        a = math.sqrt(rate)

        def partial(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=float)
            shifted = x if c is None else x - c
            out = value(x)
            for i, k in enumerate(iota):
                if k:
                    out = out * (-a) ** k * eval_hermite(k, a * shifted[..., i])
            return out

        return partial

    return ScalarField(
        eval=value,
        smoothness=Smoothness.ANALYTIC,
        decay=Decay.WEIGHTED_L1,
        bound=abs(amplitude),
        growth=-math.inf,
        derivative=derivative,
        name="gaussian" if c is None and scale == 1.0 and amplitude == 1.0 else "gaussian-bump",
    )


def _bump_values(q: np.ndarray) -> np.ndarray:
    inside = q < 1.0
    gap = np.where(inside, 1.0 - q, 1.0)
    return np.where(inside, np.exp(1.0 - 1.0 / gap), 0.0)


def bump_field(
    radius: float = 1.0, center: Sequence[float] | None = None, amplitude: float = 1.0
) -> ScalarField:
    """C-infinity bump exp(1 - 1/(1 - |x-c|^2/r^2)), peak value amplitude."""
    c = None if center is None else np.asarray(center, dtype=float)
    reach = radius + (0.0 if c is None else float(np.linalg.norm(c)))
    return ScalarField(
        eval=lambda x: amplitude * _bump_values(_norm2(x, c) / radius**2),
        smoothness=Smoothness.SMOOTH,
        decay=Decay.COMPACT,
        radius=reach,
        bound=abs(amplitude),
        growth=-math.inf,
        name=f"bump({radius:g})",
    )


def holder_cusp_field(alpha: float = 0.5, radius: float = 1.0) -> ScalarField:
    """|x_1|^alpha times the unit bump of the given radius."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"cusp exponent must lie in (0, 1], got {alpha}")

    def value(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.abs(x[..., 0]) ** alpha * _bump_values(_norm2(x, None) / radius**2)

    return ScalarField(
        eval=value,
        smoothness=Smoothness.HOLDER if alpha < 1.0 else Smoothness.LIPSCHITZ,
        decay=Decay.COMPACT,
        alpha=alpha,
        radius=radius,
        bound=radius**alpha,
        growth=-math.inf,
        name=f"holder-cusp({alpha:g})",
    )


def halfspace_indicator_field(axis: int = 0) -> ScalarField:
    return ScalarField(
        eval=lambda x: (np.asarray(x, dtype=float)[..., axis] > 0.0).astype(float),
        smoothness=Smoothness.PIECEWISE,
        decay=Decay.BOUNDED,
        alpha=0.0,
        bound=1.0,
        growth=0.0,
        name="halfspace-indicator",
    )


def ball_indicator_field(radius: float = 1.0) -> ScalarField:
    return ScalarField(
        eval=lambda x: (_norm2(x, None) < radius * radius).astype(float),
        smoothness=Smoothness.PIECEWISE,
        decay=Decay.COMPACT,
        alpha=0.0,
        radius=radius,
        bound=1.0,
        growth=-math.inf,
        name=f"ball-indicator({radius:g})",
    )


def ball_complement_field(radius: float) -> ScalarField:
    """Indicator of |x| > radius."""
    return ScalarField(
        eval=lambda x: (_norm2(x, None) > radius * radius).astype(float),
        smoothness=Smoothness.PIECEWISE,
        decay=Decay.BOUNDED,
        alpha=0.0,
        bound=1.0,
        growth=0.0,
        name=f"ball-complement({radius:g})",
    )


def getoor_field(order: float) -> ScalarField:
    """(1 - |x|^2)_+^s, Hölder of exponent s at the unit sphere."""
    return ScalarField(
        eval=lambda x: np.maximum(1.0 - _norm2(x, None), 0.0) ** order,
        smoothness=Smoothness.HOLDER,
        decay=Decay.COMPACT,
        alpha=order,
        radius=1.0,
        bound=1.0,
        growth=-math.inf,
        name="getoor",
    )


def cosine_field(frequency: float = 1.0, axis: int = 0) -> ScalarField:
    return ScalarField(
        eval=lambda x: np.cos(frequency * np.asarray(x, dtype=float)[..., axis]),
        smoothness=Smoothness.ANALYTIC,
        decay=Decay.BOUNDED,
        bound=1.0,
        growth=0.0,
        name=f"cosine({frequency:g})",
    )


def lorentzian_field(width: float = 1.0) -> ScalarField:
    """1 / (1 + |x|^2 / width^2)."""
    return ScalarField(
        eval=lambda x: 1.0 / (1.0 + _norm2(x, None) / width**2),
        smoothness=Smoothness.ANALYTIC,
        decay=Decay.BOUNDED,
        bound=1.0,
        growth=-2.0,
        name="lorentzian",
    )


def weight_profile_field(params: FracParams) -> ScalarField:
    """1 / (1 + |x|^{N+2s}), the reciprocal of the L^inf_s weight."""
    q = params.dim + 2.0 * params.order
    return ScalarField(
        eval=lambda x: 1.0 / (1.0 + _norm2(x, None) ** (q / 2.0)),
        smoothness=Smoothness.C2,
        decay=Decay.WEIGHTED_L1,
        bound=1.0,
        growth=-q,
        name="weight-profile",
    )


def _weaker(f: ScalarField, g: ScalarField) -> tuple[Smoothness, float]:
    smoothness = min(f.smoothness, g.smoothness, key=SMOOTHNESS_RANK.__getitem__)
    return smoothness, min(regularity(f), regularity(g)) if smoothness == Smoothness.HOLDER else 1.0


def _times(a: float, b: float) -> float:
    return 0.0 if a == 0.0 or b == 0.0 else a * b


def product_field(f: ScalarField, g: ScalarField) -> ScalarField:
    smoothness, alpha = _weaker(f, g)
    compact = [u.radius for u in (f, g) if u.decay == Decay.COMPACT]
    if compact:
        decay, radius = Decay.COMPACT, min(compact)
    elif Decay.WEIGHTED_L1 in (f.decay, g.decay):
        decay, radius = Decay.WEIGHTED_L1, math.inf
    else:
        decay, radius = Decay.BOUNDED, math.inf

    return ScalarField(
        eval=lambda x: f.eval(x) * g.eval(x),
        smoothness=smoothness,
        decay=decay,
        alpha=alpha,
        radius=radius,
        bound=_times(f.bound, g.bound),
        growth=-math.inf if decay == Decay.COMPACT else f.growth + g.growth,
        name=f"{f.name}*{g.name}",
    )


def sum_field(f: ScalarField, g: ScalarField, a: float = 1.0, b: float = 1.0) -> ScalarField:
    """a f + b g."""
    smoothness, alpha = _weaker(f, g)
    if f.decay == Decay.COMPACT and g.decay == Decay.COMPACT:
        decay, radius = Decay.COMPACT, max(f.radius, g.radius)
    elif Decay.BOUNDED in (f.decay, g.decay):
        decay, radius = Decay.BOUNDED, math.inf
    else:
        decay, radius = Decay.WEIGHTED_L1, math.inf

    derivative = None
    if f.derivative is not None and g.derivative is not None:
        fd, gd = f.derivative, g.derivative

        def derivative(iota: tuple[int, ...]) -> Evaluator:
            df, dg = fd(iota), gd(iota)
            return lambda x: a * df(x) + b * dg(x)

    return ScalarField(
        eval=lambda x: a * f.eval(x) + b * g.eval(x),
        smoothness=smoothness,
        decay=decay,
        alpha=alpha,
        radius=radius,
        bound=_times(abs(a), f.bound) + _times(abs(b), g.bound),
        growth=max(f.growth, g.growth),
        derivative=derivative,
        name=f"{f.name}+{g.name}",
    )


def scale_field(f: ScalarField, c: float) -> ScalarField:
    derivative = None
    if f.derivative is not None:
        fd = f.derivative

        def derivative(iota: tuple[int, ...]) -> Evaluator:
            df = fd(iota)
            return lambda x: c * df(x)

    return ScalarField(
        eval=lambda x: c * f.eval(x),
        smoothness=f.smoothness,
        decay=f.decay,
        alpha=f.alpha,
        radius=f.radius,
        bound=_times(abs(c), f.bound),
        growth=f.growth,
        derivative=derivative,
        name=f"{c:g}*{f.name}",
    )


def dilate_field(f: ScalarField, lam: float) -> ScalarField:
    """x -> f(lam x)."""
    if not lam > 0.0:
        raise ValueError(f"dilation factor must be positive, got {lam}")
    derivative = None
    if f.derivative is not None:
        fd = f.derivative

        def derivative(iota: tuple[int, ...]) -> Evaluator:
            df = fd(iota)
            return lambda x: lam ** sum(iota) * df(lam * np.asarray(x, dtype=float))

    return ScalarField(
        eval=lambda x: f.eval(lam * np.asarray(x, dtype=float)),
        smoothness=f.smoothness,
        decay=f.decay,
        alpha=f.alpha,
        radius=f.radius / lam,
        bound=f.bound,
        growth=f.growth,
        derivative=derivative,
        name=f"{f.name}@{lam:g}",
    )
