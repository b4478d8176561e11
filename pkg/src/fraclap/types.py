"""Core type definitions"""

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, TypeAlias

import numpy as np

Evaluator: TypeAlias = Callable[[np.ndarray], np.ndarray]
PairIntegrand: TypeAlias = Callable[[np.ndarray, np.ndarray], np.ndarray]
ShellIntegrand: TypeAlias = Callable[[float, np.ndarray], np.ndarray]


class Smoothness(Enum):
    """Declared regularity class of a field, weakest first"""
    PIECEWISE = 'piecewise'
    HOLDER = 'holder'
    LIPSCHITZ = 'lipschitz'
    C2 = 'c2'
    SMOOTH = 'smooth'
    ANALYTIC = 'analytic'


class Decay(Enum):
    """Declared behaviour of a field at infinity"""
    COMPACT = 'compact'
    BOUNDED = 'bounded'
    WEIGHTED_L1 = 'weighted-l1'


class Method(Enum):
    """How a norm value was obtained"""
    RADIAL_EXACT = 'radial-exact'
    MC_PAIR = 'mc-pair'
    GRID = 'grid'


class Suite(Enum):
    """Verification suites known to the harness"""
    LAPLACIAN = 'laplacian'
    LEIBNIZ = 'leibniz'
    POLARIZATION = 'polarization'
    GAGLIARDO_LIMIT = 'gagliardo-limit'
    HOLDER_TRANSFER = 'holder-transfer'
    POISSON = 'poisson'
    SHARMONICITY = 'sharmonicity'
    ANALYTICITY = 'analyticity'
    NORMS = 'norms'


@dataclass(frozen=True)
class FracParams:
    """Dimension, order and cached normalization constant"""
    dim: int
    order: float
    c_ns: float


@dataclass(frozen=True)
class ScalarField:
    """Vectorized real field on R^N with regularity and decay tags.

    `growth` is the exponent q in |u(x)| <= bound * |x|^q for large |x|;
    -inf for compactly supported or super-polynomially decaying fields.
    """
    eval: Evaluator
    smoothness: Smoothness
    decay: Decay
    alpha: float = 1.0
    radius: float = math.inf
    bound: float = math.inf
    growth: float = 0.0
    derivative: Callable[[tuple[int, ...]], Evaluator] | None = None
    name: str = "field"


@dataclass(frozen=True)
class CutoffField:
    """Smooth cutoff: 1 on the plateau ball, 0 outside the support ball"""
    delta: float
    plateau: float
    support: float


@dataclass(frozen=True)
class RadialCutoff:
    """Piecewise-linear cutoff vanishing below tau/2 and equal to 1 above tau"""
    tau: float


@dataclass(frozen=True)
class QuadratureSpec:
    """Numerical knobs shared by every engine"""
    rel_tol: float = 1e-6
    abs_tol: float = 1e-10
    max_subdivisions: int = 200
    inner_cut: float = 1e-3
    outer_cut: float = 8.0
    angular_rule: int = 64
    mc_samples: int = 200_000
    rng_seed: int = 42
    mc_rel_tol: float = 2e-2
    batch_size: int = 50_000


@dataclass(frozen=True)
class OperatorResult:
    """Pointwise operator value with error estimate and zone breakdown"""
    value: float
    err_est: float
    zones: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class SourceResult:
    """Direct and decomposed forms of the cutoff source field"""
    direct: OperatorResult
    decomposed: OperatorResult


@dataclass(frozen=True)
class SeminormResult:
    """Norm value, its standard error and the method used"""
    value: float
    stderr: float
    method: Method


@dataclass(frozen=True)
class BallProblem:
    """Exterior Dirichlet problem for the fractional Laplacian in B_rho"""
    rho: float
    exterior: ScalarField
    params: FracParams
    spec: QuadratureSpec


@dataclass(frozen=True)
class AnalyticityProfile:
    """Derivative sups along e_1 and their log-linear fit"""
    orders: list[int]
    sups: list[float]
    slope: float
    intercept: float
    max_residual: float


@dataclass(frozen=True)
class SuiteConfig:
    """Suite selection, parameter grid and tolerances"""
    suite: Suite
    dims: list[int]
    orders: list[float]
    points: int
    seed: int
    presets: list[str]
    tolerances: dict[str, float]
    spec: QuadratureSpec
    output: Path | None = None
    options: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Outcome:
    """What a single check measured; details are settled at run time and echoed with the inputs"""
    value: float
    oracle: float
    err_est: float
    tol: float
    details: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Check:
    """A named, deferred verification"""
    id: str
    suite: Suite
    inputs: dict[str, Any]
    run: Callable[[], Outcome]


@dataclass(frozen=True)
class CheckRecord:
    """Result row of a report"""
    id: str
    suite: str
    inputs: dict[str, Any]
    value: float
    oracle: float
    err_est: float
    tol: float
    passed: bool
    ms: float
    diagnostic: str | None = None


@dataclass(frozen=True)
class Report:
    """Suite report with config echo and summary"""
    version: str
    config: dict[str, Any]
    records: list[CheckRecord]
    summary: dict[str, int]
