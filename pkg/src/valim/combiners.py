"""Rules for combining a data contour with partial prior information.

Five rules, all returning plausibility contours or upper-probability
evaluators over the same parameter space:

  aggregate_hose      1 ^ (1-w)^{-1} pi_y ^ w^{-1} q          (not renormalized)
  aggregate_squared   [1 - (1-q)^2] ^ [1 - (1-pi_y)^2]
  tnorm_combine       pi_y * q / sup(pi_y * q)                (consonance-preserving)
  dempster_combine    random-set conditioning with its denominator
  gbayes_upper        upper envelope of conjugate posteriors

For the scalar-normal data contour and a piecewise-constant prior contour the
suprema, normalizers, and alpha-cuts are all exact; a pointwise fallback
covers everything else.  Vectorized per-family evaluators back the Monte
Carlo diagnostics, which evaluate millions of (y, theta) pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Assertion,
    CombinedContour,
    Contour,
    DegenerateContourError,
    FunctionContour,
    StepContour,
    UnimodalContour,
    _interval_parts,
    full_line,
    intersect,
    normalize,
    upper_prob,
)
from .models import Observation, ScalarNormalModel, vacuous_contour_scalar
from .numerics import std_normal_cdf
from .priors import FiniteCredalSet, FocalPrior, IntervalPrior

__all__ = [
    "ConflictError",
    "TNorm",
    "PRODUCT",
    "MINIMUM",
    "aggregate_hose",
    "aggregate_squared",
    "tnorm_combine",
    "DempsterIM",
    "dempster_combine",
    "dempster_upper",
    "gbayes_upper",
    "gbayes_upper_each",
    "product_test_pvalue",
    "ContourFamily",
    "combiner_family",
]


class ConflictError(DegenerateContourError):
    """Total conflict between prior and data: a normalizer vanished."""


@dataclass(frozen=True)
class TNorm:
    tag: str

    def __post_init__(self):
        if self.tag not in ("product", "minimum"):
            raise ValueError(f"unknown t-norm {self.tag!r}")

    def __call__(self, a, b):
        if self.tag == "product":
            return a * b
        return np.minimum(a, b)


PRODUCT = TNorm("product")
MINIMUM = TNorm("minimum")


def _structured_pair(pi_y, q) -> bool:
    return isinstance(pi_y, UnimodalContour) and isinstance(q, StepContour)


# --- aggregation (linear-in-weights fusion) --------------------------------


def aggregate_hose(pi_y: Contour, q: Contour, w: float = 0.5, renormalize: bool = False):
    """min(1, pi_y/(1-w), q/w).  Strongly valid without renormalization;
    an optional renormalization pass does not affect validity."""
    if not 0.0 < w < 1.0:
        raise ValueError("weight w must lie strictly in (0, 1)")

    def g(p, v):
        return np.minimum(1.0, np.minimum(p / (1.0 - w), v / w))

    def g_threshold(v, t):
        if t >= 1.0 or v <= t * w:
            return None
        return t * (1.0 - w)

    if _structured_pair(pi_y, q):
        out = CombinedContour(base=pi_y, step=q, g=g, g_threshold=g_threshold)
        if renormalize:
            s = out.sup_on(full_line())
            if s <= 0.0:
                raise ConflictError("aggregated contour is identically zero")
            out = CombinedContour(base=pi_y, step=q, g=g, g_threshold=g_threshold, norm=s)
        return out
    fused = FunctionContour(
        fn=lambda t: g(np.asarray(pi_y(t)), np.asarray(q(t))),
        dim=pi_y.dim,
        box=pi_y.box,
        breakpoints=tuple(sorted(set(pi_y.breakpoints) | set(q.breakpoints))),
    )
    return normalize(fused) if renormalize else fused


def aggregate_squared(pi_y: Contour, q: Contour):
    """min over the two sources of 1 - (1 - value)^2; no normalization."""

    def g(p, v):
        return np.minimum(1.0 - (1.0 - v) ** 2, 1.0 - (1.0 - p) ** 2)

    def g_threshold(v, t):
        if t >= 1.0 or 1.0 - (1.0 - v) ** 2 <= t:
            return None
        return 1.0 - math.sqrt(1.0 - t)

    if _structured_pair(pi_y, q):
        return CombinedContour(base=pi_y, step=q, g=g, g_threshold=g_threshold)
    return FunctionContour(
        fn=lambda t: g(np.asarray(pi_y(t)), np.asarray(q(t))),
        dim=pi_y.dim,
        box=pi_y.box,
        breakpoints=tuple(sorted(set(pi_y.breakpoints) | set(q.breakpoints))),
    )


# --- t-norm combination -----------------------------------------------------


def tnorm_combine(pi_y: Contour, q: Contour, t: TNorm = PRODUCT):
    """pi_y * q (or min) divided by its supremum.

    For the scalar-normal contour against a piecewise-constant prior the
    supremum is found exactly by checking each prior piece at the projected
    peak, so no grid enters the normalizer.
    """

    def g(p, v):
        return t(p, v)

    if t.tag == "product":
        def g_threshold(v, thr):
            if v <= 0.0:
                return None
            return thr / v
    else:
        def g_threshold(v, thr):
            if v <= thr:
                return None
            return thr

    if _structured_pair(pi_y, q):
        raw = CombinedContour(base=pi_y, step=q, g=g, g_threshold=g_threshold)
        s = raw.sup_on(full_line())
        if s <= 0.0:
            raise ConflictError("zero normalizer: prior and data in total conflict")
        return CombinedContour(base=pi_y, step=q, g=g, g_threshold=g_threshold, norm=s)
    fused = FunctionContour(
        fn=lambda x: g(np.asarray(pi_y(x)), np.asarray(q(x))),
        dim=pi_y.dim,
        box=pi_y.box,
        breakpoints=tuple(sorted(set(pi_y.breakpoints) | set(q.breakpoints))),
    )
    return normalize(fused)


# --- Dempster's rule --------------------------------------------------------


@dataclass(frozen=True)
class DempsterIM:
    """Random-set conditioning of a focal prior on the data contour.

    upper implements

        sum over focal T meeting A of m(T) Pl_y(A & T), over the denominator
        sum over focal T of m(T) Pl_y(T),

    and the point function (upper on singletons) is pi_y * q / denominator.
    The upper probability is not consonant in general; the contour is what
    enters validity diagnostics and plots.
    """

    prior: FocalPrior
    pi_y: Contour
    denominator: float

    def upper(self, a: Assertion) -> float:
        total = 0.0
        for elem, mass in self.prior.elements:
            piece = intersect(a, elem)
            if not piece.is_empty:
                total += mass * upper_prob(self.pi_y, piece)
        return min(total / self.denominator, 1.0)

    def contour(self) -> Contour:
        q = self.prior.contour()
        if isinstance(self.pi_y, UnimodalContour):
            return CombinedContour(
                base=self.pi_y,
                step=q,
                g=lambda p, v: p * v,
                g_threshold=lambda v, t: (t / v) if v > 0.0 else None,
                norm=self.denominator,
            )
        d = self.denominator
        return FunctionContour(
            fn=lambda x: np.asarray(self.pi_y(x)) * np.asarray(q(x)) / d,
            dim=self.pi_y.dim,
            box=self.pi_y.box,
            breakpoints=tuple(sorted(set(self.pi_y.breakpoints) | set(q.breakpoints))),
        )


def dempster_combine(prior, model, y) -> DempsterIM:
    if isinstance(prior, IntervalPrior):
        prior = prior.focal()
    pi_y = vacuous_contour_scalar(model, y)
    denom = math.fsum(mass * upper_prob(pi_y, elem) for elem, mass in prior.elements)
    if denom <= 0.0:
        raise ConflictError("total conflict: every focal element has zero plausibility")
    return DempsterIM(prior=prior, pi_y=pi_y, denominator=denom)


def dempster_upper(im: DempsterIM, a: Assertion) -> float:
    return im.upper(a)


# --- generalized Bayes ------------------------------------------------------


def _posterior_params(member, model: ScalarNormalModel, y):
    m, v = member
    n = model.n
    mean = (n * v * np.asarray(y, dtype=float) + m) / (n * v + 1.0)
    return mean, math.sqrt(v / (n * v + 1.0))


def _normal_prob(parts, mean, sd):
    total = 0.0
    for p in parts:
        hi = std_normal_cdf((p.hi - mean) / sd) if math.isfinite(p.hi) else 1.0
        lo = std_normal_cdf((p.lo - mean) / sd) if math.isfinite(p.lo) else 0.0
        total = total + hi - lo
    return total


def gbayes_upper(credal: FiniteCredalSet, model: ScalarNormalModel, y, a: Assertion) -> float:
    """sup over the credal set of the conjugate posterior probability of A."""
    if a.is_empty:
        return 0.0
    parts = _interval_parts(a)
    if parts is None:
        raise ValueError("generalized Bayes needs an interval or union assertion")
    yv = y.scalar if isinstance(y, Observation) else float(y)
    best = 0.0
    for member in credal.members:
        mean, sd = _posterior_params(member, model, yv)
        best = max(best, float(_normal_prob(parts, mean, sd)))
    return min(best, 1.0)


def gbayes_upper_each(credal: FiniteCredalSet, model: ScalarNormalModel, a: Assertion, ys):
    """Vectorized gbayes_upper over a batch of observations."""
    parts = _interval_parts(a)
    if parts is None:
        raise ValueError("generalized Bayes needs an interval or union assertion")
    ys = np.asarray(ys, dtype=float)
    best = np.zeros(ys.shape)
    for member in credal.members:
        mean, sd = _posterior_params(member, model, ys)
        best = np.maximum(best, _normal_prob(parts, mean, sd))
    return np.minimum(best, 1.0)


def product_test_pvalue(plaus: float, prior_upper: float) -> float:
    """Pl(A) * Q-bar(A): a valid p-value for 'Theta in A' under the prior."""
    for v in (plaus, prior_upper):
        if not 0.0 <= v <= 1.0:
            raise ValueError("inputs must lie in [0, 1]")
    return plaus * prior_upper


# --- vectorized families for diagnostics and the CLI ------------------------


@dataclass(frozen=True)
class ContourFamily:
    """One combination rule bound to a model and prior.

    build maps an observation to the contour; paired evaluates contour_y(th)
    elementwise over equal-length draw vectors; upper_each evaluates the
    consonant upper probability of a fixed assertion over a batch of y.
    """

    name: str
    build: object
    paired: object
    upper_each: object


def _pair_fn(model: ScalarNormalModel):
    rt = math.sqrt(model.n)

    def pair(y, th):
        return 2.0 * (1.0 - std_normal_cdf(rt * np.abs(np.asarray(y) - np.asarray(th))))

    return pair


def _seg_sup(pair, q_step: StepContour, g, ys, parts):
    """max over assertion parts and prior segments of g(pi_y(projection), q).

    Exact for the unimodal data contour: within any interval the contour is
    maximized at the peak y clipped into it.
    """
    ys = np.asarray(ys, dtype=float)
    best = np.zeros(ys.shape)
    for p in parts:
        if p.is_empty:
            continue
        if p.lo == p.hi:
            best = np.maximum(best, g(pair(ys, p.lo), float(q_step(p.lo))))
            continue
        for kind, lo, hi, v in q_step.segments():
            if kind == "point":
                if p.contains(lo):
                    best = np.maximum(best, g(pair(ys, lo), v))
            else:
                o_lo, o_hi = max(lo, p.lo), min(hi, p.hi)
                if o_lo < o_hi:
                    best = np.maximum(best, g(pair(ys, np.clip(ys, o_lo, o_hi)), v))
    return best


def combiner_family(spec: str, model: ScalarNormalModel, prior=None) -> ContourFamily:
    """Build a named family from a CLI combiner string.

    Accepted: vacuous | hose[:w] | squared | dempster | tnorm[:product|:min]
    | gbayes.  gbayes has no contour, only assertion uppers.
    """
    name, _, arg = spec.partition(":")
    pair = _pair_fn(model)
    full = (full_line(),)

    if name == "vacuous":
        def build(y):
            return vacuous_contour_scalar(model, y)

        def paired(ys, ths):
            return pair(ys, ths)

        def upper_each(ys, a):
            parts = _interval_parts(a)
            if parts is None:
                raise ValueError("need an interval or union assertion")
            return _seg_sup(pair, _vacuous_step(), lambda p, v: p, ys, parts)

        return ContourFamily("vacuous", build, paired, upper_each)

    if name == "gbayes":
        if not isinstance(prior, FiniteCredalSet):
            raise ValueError("gbayes requires a credal prior (credal:m,v;...)")

        def upper_each(ys, a):
            return gbayes_upper_each(prior, model, a, ys)

        return ContourFamily("gbayes", None, None, upper_each)

    if not isinstance(prior, (IntervalPrior, FocalPrior)):
        raise ValueError(f"combiner {spec!r} requires a focal prior")
    focal = prior.focal() if isinstance(prior, IntervalPrior) else prior
    q_step = focal.contour()

    if name == "hose":
        w = float(arg) if arg else 0.5
        if not 0.0 < w < 1.0:
            raise ValueError("hose weight must lie strictly in (0, 1)")

        def build(y):
            return aggregate_hose(vacuous_contour_scalar(model, y), q_step, w)

        def paired(ys, ths):
            return np.minimum(
                1.0, np.minimum(pair(ys, ths) / (1.0 - w), q_step(ths) / w)
            )

        def g(p, v):
            return np.minimum(1.0, np.minimum(p / (1.0 - w), v / w))

    elif name == "squared":
        def build(y):
            return aggregate_squared(vacuous_contour_scalar(model, y), q_step)

        def paired(ys, ths):
            return np.minimum(
                1.0 - (1.0 - q_step(ths)) ** 2, 1.0 - (1.0 - pair(ys, ths)) ** 2
            )

        def g(p, v):
            return np.minimum(1.0 - (1.0 - v) ** 2, 1.0 - (1.0 - p) ** 2)

    elif name == "dempster":
        def build(y):
            return dempster_combine(focal, model, y).contour()

        def _denom(ys):
            return _seg_sup_focal_sum(pair, focal, ys)

        def paired(ys, ths):
            return pair(ys, ths) * q_step(ths) / _denom(ys)

        def upper_each(ys, a):
            parts = _interval_parts(a)
            if parts is None:
                raise ValueError("need an interval or union assertion")
            return _seg_sup(pair, q_step, lambda p, v: p * v, ys, parts) / _denom(ys)

        return ContourFamily("dempster", build, paired, upper_each)

    elif name == "tnorm":
        t = PRODUCT if arg in ("", "product") else MINIMUM if arg == "min" else None
        if t is None:
            raise ValueError(f"unknown t-norm {arg!r}")

        def build(y):
            return tnorm_combine(vacuous_contour_scalar(model, y), q_step, t)

        def g(p, v):
            return t(p, v)

        def paired(ys, ths):
            z = _seg_sup(pair, q_step, g, ys, full)
            return t(pair(ys, ths), q_step(ths)) / z

    else:
        raise ValueError(f"unknown combiner {spec!r}")

    if name in ("hose", "squared", "tnorm"):
        def upper_each(ys, a, _g=g):
            parts = _interval_parts(a)
            if parts is None:
                raise ValueError("need an interval or union assertion")
            out = _seg_sup(pair, q_step, _g, ys, parts)
            if name == "tnorm":
                out = out / _seg_sup(pair, q_step, _g, ys, full)
            return out

    return ContourFamily(spec.replace(":", "_"), build, paired, upper_each)


def _vacuous_step() -> StepContour:
    return StepContour(breaks=(), piece_values=(1.0,), break_values=(), box=((-0.5, 0.5),))


def _seg_sup_focal_sum(pair, focal: FocalPrior, ys):
    """Dempster denominator over a batch: sum of m(T) sup_T pi_y."""
    ys = np.asarray(ys, dtype=float)
    total = np.zeros(ys.shape)
    for elem, mass in focal.elements:
        total = total + mass * pair(ys, np.clip(ys, elem.lo, elem.hi))
    return total
