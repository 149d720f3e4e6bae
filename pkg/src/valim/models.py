"""Normal sampling models and the contours they induce without prior input.

Two models cover everything here: a scalar normal mean with known precision
index n (one observation worth Y ~ N(theta, 1/n)) and an identity-covariance
multivariate normal mean.  Their no-prior contours are exactly valid: the
contour evaluated at the true mean is uniformly distributed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import RadialContour, UnimodalContour
from .numerics import chisq_cdf, std_normal_cdf, std_normal_quantile

__all__ = [
    "Observation",
    "ScalarNormalModel",
    "MvNormalModel",
    "vacuous_contour_scalar",
    "vacuous_contour_mv",
    "vacuous_contour",
    "sample",
    "sample_each",
    "sample_reps",
]


@dataclass(frozen=True)
class Observation:
    """Observed data: a finite real vector (length 1 for scalar models)."""

    value: tuple

    def __post_init__(self):
        v = tuple(float(x) for x in np.atleast_1d(np.asarray(self.value, dtype=float)))
        if not all(math.isfinite(x) for x in v):
            raise ValueError("observation entries must be finite")
        object.__setattr__(self, "value", v)

    @property
    def dim(self) -> int:
        return len(self.value)

    @property
    def scalar(self) -> float:
        if len(self.value) != 1:
            raise ValueError("not a scalar observation")
        return self.value[0]


def _as_scalar(y) -> float:
    if isinstance(y, Observation):
        return y.scalar
    return float(y)


def _as_vector(y, dim: int) -> np.ndarray:
    v = np.asarray(y.value if isinstance(y, Observation) else y, dtype=float).reshape(-1)
    if v.shape[0] != dim:
        raise ValueError(f"observation dimension {v.shape[0]} != model dimension {dim}")
    return v


@dataclass(frozen=True)
class ScalarNormalModel:
    """Y ~ N(theta, 1/n) for a known precision index n >= 1."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("precision index n must be a positive integer")
        object.__setattr__(self, "n", int(self.n))

    @property
    def dim(self) -> int:
        return 1

    @property
    def sd(self) -> float:
        return 1.0 / math.sqrt(self.n)


@dataclass(frozen=True)
class MvNormalModel:
    """Y ~ N_d(theta, I) with identity covariance."""

    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dimension must be a positive integer")
        object.__setattr__(self, "dim", int(self.dim))


def vacuous_contour_scalar(m: ScalarNormalModel, y) -> UnimodalContour:
    """2 {1 - Phi(sqrt(n) |y - theta|)}: the no-prior contour, peaking at y.

    Its alpha-cut is the usual z-interval y +/- Phi^{-1}(1 - alpha/2) / sqrt(n).
    """
    yv = _as_scalar(y)
    rt = math.sqrt(m.n)

    def fn(t):
        return 2.0 * (1.0 - std_normal_cdf(rt * np.abs(np.asarray(t, dtype=float) - yv)))

    def radius(level):
        if level <= 0.0:
            return math.inf
        return std_normal_quantile(1.0 - 0.5 * level) / rt

    half = 4.0 / rt
    return UnimodalContour(fn=fn, peak=yv, box=((yv - half, yv + half),),
                           radius=radius, breakpoints=(yv,))


def vacuous_contour_mv(m: MvNormalModel, y) -> RadialContour:
    """1 - G_d(||y - theta||^2) with G_d the ChiSq(d) CDF; exp(-r^2/2) for d=2."""
    yv = _as_vector(y, m.dim)

    def profile(r2):
        return 1.0 - chisq_cdf(np.asarray(r2, dtype=float), m.dim)

    box = tuple((c - 4.0, c + 4.0) for c in yv)
    return RadialContour(profile=profile, center=tuple(yv), box=box)


def vacuous_contour(m, y):
    if isinstance(m, ScalarNormalModel):
        return vacuous_contour_scalar(m, y)
    if isinstance(m, MvNormalModel):
        return vacuous_contour_mv(m, y)
    raise TypeError(f"unknown model type {type(m).__name__}")


def sample(m, theta, rng) -> Observation:
    """One draw from P_{Y|theta}, deterministic given the caller's stream."""
    if isinstance(m, ScalarNormalModel):
        return Observation((float(theta) + rng.standard_normal() * m.sd,))
    th = np.asarray(theta, dtype=float).reshape(m.dim)
    return Observation(tuple(th + rng.standard_normal(m.dim)))


def sample_each(m, thetas, rng) -> np.ndarray:
    """One draw per theta in a batch; the workhorse for joint (Theta, Y) MC."""
    th = np.asarray(thetas, dtype=float)
    if isinstance(m, ScalarNormalModel):
        return th + rng.standard_normal(th.shape) * m.sd
    th = th.reshape(-1, m.dim)
    return th + rng.standard_normal(th.shape)


def sample_reps(m, theta, size, rng) -> np.ndarray:
    """size draws at a fixed theta."""
    if isinstance(m, ScalarNormalModel):
        return float(theta) + rng.standard_normal(size) * m.sd
    th = np.asarray(theta, dtype=float).reshape(m.dim)
    return th + rng.standard_normal((size, m.dim))
