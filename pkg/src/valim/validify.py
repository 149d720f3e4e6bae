"""Validification: make any generator contour strongly valid.

The transform replaces a generator h with

    theta -> upper probability over the prior of { h_Y(Theta) <= h_y(theta) },

a Choquet integral over the prior contour's level sets.  For a
piecewise-constant prior with levels 1 = L_0 > L_1 > ... > L_m it is the
finite sum

    sum_k (L_{k-1} - L_k) * sup over {q >= L_{k-1}} of F_theta(t)
        + L_m * sup over all theta of F_theta(t),      t = h_y(theta-query),

where F_theta is the CDF of h_Y(theta) under Y ~ P_{Y|theta}.  The inner
CDFs never involve the observed data, so their Monte Carlo tables are built
once and reused across every query point and every outer replication.

All tables share one standard-normal batch (common random numbers in theta
as well as in the query): a supremum over hundreds of independently-noisy
empirical CDFs would be biased upward by roughly sqrt(2 log #theta) Monte
Carlo standard errors, visibly breaking the transform's invariance on
exactly valid generators; with a shared batch the sup of identical CDFs
collapses to a single empirical CDF and the bias vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Contour, FunctionContour, Region, plausibility_region
from .models import Observation, ScalarNormalModel
from .priors import FocalPrior, IntervalPrior
from .rng import stream

__all__ = [
    "ValidifyConfig",
    "GeneratorContour",
    "ValidifiedTransform",
    "build_transform",
    "validify",
    "validified_region",
]


@dataclass(frozen=True)
class ValidifyConfig:
    mc_reps: int = 10_000
    seed: int = 0
    level_points: int = 201   # theta grid per bounded prior level set
    outer_points: int = 401   # theta grid for the unbounded outermost level

    def __post_init__(self):
        if self.mc_reps < 1:
            raise ValueError("mc_reps must be positive")
        if self.level_points < 2 or self.outer_points < 2:
            raise ValueError("theta grids need at least two points")


@dataclass(frozen=True)
class GeneratorContour:
    """h_y(theta) as a joint, vectorized function of (y, theta)."""

    fn: object

    def __call__(self, ys, ths):
        return np.asarray(self.fn(np.asarray(ys, dtype=float), np.asarray(ths, dtype=float)))

    @classmethod
    def from_family(cls, family) -> "GeneratorContour":
        if family.paired is None:
            raise ValueError(f"family {family.name!r} has no contour to validify")
        return cls(family.paired)


def _focal(prior) -> FocalPrior:
    return prior.focal() if isinstance(prior, IntervalPrior) else prior


def _level_sets(q_step, model, center: float, cfg: ValidifyConfig):
    """(weight, theta-grid) pairs realizing the finite Choquet sum."""
    levels = sorted({*q_step.piece_values, *q_step.break_values}, reverse=True)
    finite = [b for b in q_step.breaks]
    if finite:
        span_lo, span_hi = finite[0], finite[-1]
    else:
        span_lo = span_hi = center
    pad = 5.0 * model.sd
    outer = np.linspace(span_lo - pad, span_hi + pad, cfg.outer_points)

    out = []
    for k in range(1, len(levels)):
        weight = levels[k - 1] - levels[k]
        if weight <= 0.0:
            continue
        pieces = []
        for kind, lo, hi, v in q_step.segments():
            if v < levels[k - 1]:
                continue
            if kind == "point":
                pieces.append(np.array([lo]))
            elif math.isfinite(lo) and math.isfinite(hi):
                pieces.append(np.linspace(lo, hi, cfg.level_points))
            else:
                pieces.append(outer)
        out.append((weight, np.unique(np.concatenate(pieces))))
    tail = levels[-1]
    if tail > 0.0:
        out.append((tail, outer))
    return out


@dataclass(frozen=True)
class ValidifiedTransform:
    """Precomputed per-theta CDF tables plus the level weights.

    apply maps generator values t to validified values; it is nondecreasing
    in t by construction, which carries the generator's ordering through.
    """

    groups: tuple  # ((weight, (sorted h_Y(theta) table, ...)), ...)
    reps: int

    def apply(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for weight, tables in self.groups:
            best = np.zeros(t.shape)
            for table in tables:
                best = np.maximum(best, np.searchsorted(table, t, side="right"))
            out += (weight / self.reps) * best
        return out

    def apply_with_stderr(self, t):
        """Values plus a binomial-style standard error per query point."""
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        var = np.zeros(t.shape)
        for weight, tables in self.groups:
            best = np.zeros(t.shape)
            for table in tables:
                best = np.maximum(best, np.searchsorted(table, t, side="right"))
            frac = best / self.reps
            out += weight * frac
            var += weight * weight * frac * (1.0 - frac) / self.reps
        return out, np.sqrt(var)


def build_transform(h: GeneratorContour, prior, model: ScalarNormalModel,
                    cfg: ValidifyConfig = None) -> ValidifiedTransform:
    cfg = cfg or ValidifyConfig()
    focal = _focal(prior)
    q_step = focal.contour()
    breaks = q_step.breaks
    center = 0.5 * (breaks[0] + breaks[-1]) if breaks else 0.0

    probe = np.linspace(center - 5.0, center + 5.0, 101)
    probed = h(np.full(probe.shape, center), probe)
    if float(np.max(probed) - np.min(probed)) < 1e-9:
        raise ValueError("generator contour is constant; nothing to validify")

    z = stream(cfg.seed).standard_normal(cfg.mc_reps)
    tables = {}

    def table_for(theta: float):
        if theta not in tables:
            ys = theta + z * model.sd
            tables[theta] = np.sort(h(ys, np.full(ys.shape, theta)))
        return tables[theta]

    groups = []
    for weight, grid in _level_sets(q_step, model, center, cfg):
        groups.append((weight, tuple(table_for(float(t)) for t in grid)))
    return ValidifiedTransform(groups=tuple(groups), reps=cfg.mc_reps)


def validify(h: GeneratorContour, prior, model: ScalarNormalModel, y,
             cfg: ValidifyConfig = None) -> Contour:
    """The strongly valid contour generated by h at the observed y."""
    cfg = cfg or ValidifyConfig()
    tr = build_transform(h, prior, model, cfg)
    yv = y.scalar if isinstance(y, Observation) else float(y)
    q_step = _focal(prior).contour()

    def fn(ths):
        ths = np.asarray(ths, dtype=float)
        t = h(np.full(ths.shape, yv), ths)
        return tr.apply(t)

    (q_lo, q_hi), = q_step.box
    pad = 4.0 * model.sd
    box = ((min(q_lo, yv - pad), max(q_hi, yv + pad)),)
    breakpoints = tuple(sorted({*q_step.breaks, yv}))
    return FunctionContour(fn=fn, dim=1, box=box, breakpoints=breakpoints)


def validified_region(h: GeneratorContour, prior, model: ScalarNormalModel, y,
                      alpha: float, cfg: ValidifyConfig = None) -> Region:
    return plausibility_region(validify(h, prior, model, y, cfg), alpha)
