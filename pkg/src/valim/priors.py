"""Partial prior information: nested random sets, sparsity, finite credal sets.

A partial prior is weaker than a single distribution.  The working encodings
are (i) a finite nested random set with its piecewise-constant contour q and
upper probability Q-bar, (ii) the expert interval prior "theta is in [a, b]
with probability 1 - beta", (iii) the sparsity prior keyed on the count of
nonzero coordinates, and (iv) finite credal sets of conjugate normal priors
for the generalized-Bayes path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Assertion,
    IntervalAssertion,
    StepContour,
    full_line,
    intersect,
    interval,
)
from .numerics import binom_cdf

__all__ = [
    "FocalPrior",
    "IntervalPrior",
    "SparsityPrior",
    "FiniteCredalSet",
    "CompatiblePrior",
    "interval_prior_contour",
    "sparsity_prior_contour",
    "prior_upper_prob",
    "interval_compatible",
    "normal_compatible",
    "sample_compatible",
    "parse_prior",
]

_MASS_TOL = 1e-12


def _covers(outer: IntervalAssertion, inner: IntervalAssertion) -> bool:
    lo_ok = outer.lo < inner.lo or (outer.lo == inner.lo and (not outer.open_lo or inner.open_lo))
    hi_ok = outer.hi > inner.hi or (outer.hi == inner.hi and (not outer.open_hi or inner.open_hi))
    return lo_ok and hi_ok


@dataclass(frozen=True)
class FocalPrior:
    """Nested focal intervals T_1 subset ... subset T_m with positive masses.

    The contour is q(theta) = sum of masses of focal elements containing
    theta; the upper probability of an assertion is the mass reaching it.
    """

    elements: tuple  # ((IntervalAssertion, mass), ...) innermost first

    def __post_init__(self):
        elems = tuple((e, float(m)) for e, m in self.elements)
        if not elems:
            raise ValueError("need at least one focal element")
        total = math.fsum(m for _, m in elems)
        if abs(total - 1.0) > _MASS_TOL:
            raise ValueError(f"focal masses sum to {total}, not 1")
        for _, m in elems:
            if m <= 0.0:
                raise ValueError("focal masses must be positive")
        for inner, outer in zip(elems, elems[1:]):
            if not _covers(outer[0], inner[0]):
                raise ValueError("focal elements must be nested, innermost first")
        object.__setattr__(self, "elements", elems)

    def contour(self) -> StepContour:
        breaks = sorted(
            {v for e, _ in self.elements for v in (e.lo, e.hi) if math.isfinite(v)}
        )

        def q_at(x: float) -> float:
            return math.fsum(m for e, m in self.elements if e.contains(x))

        if not breaks:
            return StepContour(
                breaks=(), piece_values=(q_at(0.0),), break_values=(), box=((-0.5, 0.5),)
            )
        probes = [breaks[0] - 1.0]
        for left, right in zip(breaks, breaks[1:]):
            probes.append(0.5 * (left + right))
        probes.append(breaks[-1] + 1.0)
        piece_values = tuple(q_at(p) for p in probes)
        break_values = tuple(q_at(b) for b in breaks)
        box = ((breaks[0] - 0.5, breaks[-1] + 0.5),)
        return StepContour(
            breaks=tuple(breaks),
            piece_values=piece_values,
            break_values=break_values,
            box=box,
        )


def prior_upper_prob(p, a: Assertion) -> float:
    """Q-bar(A): total mass of focal elements meeting A."""
    if isinstance(p, IntervalPrior):
        p = p.focal()
    if a.is_empty:
        return 0.0
    return math.fsum(m for e, m in p.elements if not intersect(e, a).is_empty)


@dataclass(frozen=True)
class IntervalPrior:
    """Expert prior: theta in [a, b] with probability 1 - beta, else anywhere."""

    a: float
    b: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or self.a > self.b:
            raise ValueError("need finite a <= b")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")

    def focal(self) -> FocalPrior:
        elems = []
        if self.beta < 1.0:
            elems.append((interval(self.a, self.b), 1.0 - self.beta))
        if self.beta > 0.0:
            elems.append((full_line(), self.beta))
        return FocalPrior(tuple(elems))

    def contour(self) -> StepContour:
        return interval_prior_contour(self)


def interval_prior_contour(p: IntervalPrior) -> StepContour:
    """q(theta) = beta + (1 - beta) 1{theta in [a, b]}, closed at the ends."""
    box = ((p.a - 0.5, p.b + 0.5),)
    if p.a == p.b:
        return StepContour(
            breaks=(p.a,), piece_values=(p.beta, p.beta), break_values=(1.0,), box=box
        )
    return StepContour(
        breaks=(p.a, p.b),
        piece_values=(p.beta, 1.0, p.beta),
        break_values=(1.0, 1.0),
        box=box,
    )


@dataclass(frozen=True)
class SparsityPrior:
    """q(theta) = 1 - F_{dim,varpi}(#nonzero(theta) - 1), F binomial.

    The origin is perfectly plausible; plausibility drops with each nonzero
    coordinate.  Zero means exactly zero: the demo evaluates q at points
    constructed with literal zeros.
    """

    dim: int
    varpi: float

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dim must be a positive integer")
        if not 0.0 < self.varpi < 1.0:
            raise ValueError("varpi must lie strictly in (0, 1)")
        object.__setattr__(self, "dim", int(self.dim))

    def levels(self) -> tuple:
        """q value per nonzero count k = 0 .. dim; levels[0] = 1."""
        return tuple(1.0 - binom_cdf(k - 1, self.dim, self.varpi) for k in range(self.dim + 1))

    def q_values(self, theta) -> np.ndarray:
        th = np.asarray(theta, dtype=float)
        k = np.count_nonzero(th.reshape(-1, self.dim), axis=-1)
        out = np.asarray(self.levels())[k]
        return out if th.ndim > 1 else out[0]


def sparsity_prior_contour(p: SparsityPrior):
    """The sparsity contour as an evaluable object on d-vectors."""
    from .core import FunctionContour

    box = tuple((-4.0, 4.0) for _ in range(p.dim))
    return FunctionContour(fn=p.q_values, dim=p.dim, box=box)


@dataclass(frozen=True)
class FiniteCredalSet:
    """Finitely many conjugate priors N(mean_i, var_i) for generalized Bayes."""

    members: tuple  # ((mean, var), ...)

    def __post_init__(self):
        members = tuple((float(m), float(v)) for m, v in self.members)
        if not members:
            raise ValueError("credal set must be non-empty")
        for _, v in members:
            if v <= 0.0:
                raise ValueError("prior variances must be positive")
        object.__setattr__(self, "members", members)


@dataclass(frozen=True)
class CompatiblePrior:
    """A sampler for Theta from one concrete distribution compatible with
    the partial prior; diagnostics draw from it to probe worst cases."""

    draw: object  # (rng, size) -> ndarray
    label: str = ""


def interval_compatible(p: IntervalPrior) -> CompatiblePrior:
    """beta * point mass at 0 + (1 - beta) * Unif(a, b)."""

    def draw(rng, size):
        pick = rng.random(size)
        pos = p.a + (p.b - p.a) * rng.random(size)
        return np.where(pick < p.beta, 0.0, pos)

    return CompatiblePrior(draw=draw, label=f"{p.beta}*delta0+{1 - p.beta}*unif({p.a},{p.b})")


def normal_compatible(mean: float, var: float) -> CompatiblePrior:
    if var <= 0.0:
        raise ValueError("variance must be positive")
    sd = math.sqrt(var)

    def draw(rng, size):
        return mean + sd * rng.standard_normal(size)

    return CompatiblePrior(draw=draw, label=f"normal({mean},{var})")


def sample_compatible(q: CompatiblePrior, rng, size=None):
    out = q.draw(rng, 1 if size is None else size)
    return float(out[0]) if size is None else out


def parse_prior(spec: str):
    """Parse the CLI mini-syntax:

        interval:a,b,beta   sparsity:dim,varpi   credal:m1,v1;m2,v2;...
    """
    kind, _, rest = spec.partition(":")
    try:
        if kind == "interval":
            a, b, beta = (float(v) for v in rest.split(","))
            return IntervalPrior(a, b, beta)
        if kind == "sparsity":
            dim, varpi = rest.split(",")
            return SparsityPrior(int(dim), float(varpi))
        if kind == "credal":
            members = []
            for part in rest.split(";"):
                m, v = (float(x) for x in part.split(","))
                members.append((m, v))
            return FiniteCredalSet(tuple(members))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad prior spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown prior kind {kind!r} in {spec!r}")
