"""Monte Carlo validity diagnostics.

Every notion of validity in use reduces to the distribution of the contour
evaluated at the true parameter: validity CDFs (at or below the diagonal
means strongly valid), conditional validity for precise-prior posteriors,
coverage/length of plausibility regions, and the almost-sure contraction
check that exposes invalid combinations.

Replication is block-wise with one counter-based stream per block, so
reports are bitwise identical for a given (seed, reps) no matter how many
threads run the blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Assertion, plausibility_region
from .models import sample_each, sample_reps
from .priors import CompatiblePrior, prior_upper_prob
from .rng import map_blocks, stream

__all__ = [
    "JointSampler",
    "CdfReport",
    "CoverageReport",
    "ContractionReport",
    "default_alpha_grid",
    "validity_cdf",
    "conditional_validity",
    "coverage_length",
    "contraction_check",
]


def default_alpha_grid() -> np.ndarray:
    return np.round(np.arange(0.0, 1.0 + 1e-12, 0.01), 10)


@dataclass(frozen=True)
class JointSampler:
    """(Theta, Y) draws: Theta from a compatible prior, Y from the model."""

    prior: CompatiblePrior
    model: object
    reps: int
    seed: int

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be positive")


@dataclass(frozen=True)
class CdfReport:
    alphas: np.ndarray
    cdf: np.ndarray
    stderr: np.ndarray
    reps: int
    seed: int
    hits: int = None
    low_hits: bool = False

    def __post_init__(self):
        if np.any(np.diff(self.cdf) < 0.0):
            raise ValueError("estimated CDF must be non-decreasing")
        if np.any((self.cdf < 0.0) | (self.cdf > 1.0)):
            raise ValueError("CDF values must lie in [0, 1]")


@dataclass(frozen=True)
class CoverageReport:
    alpha: float
    coverage: float
    mean_length: float
    stderr_cov: float
    stderr_len: float
    reps: int
    seed: int
    im: str = ""


@dataclass(frozen=True)
class ContractionReport:
    thetas: np.ndarray
    alphas: np.ndarray
    estimates: np.ndarray  # (theta, alpha) estimates of P{upper <= alpha}
    q_upper: float
    reps: int
    flagged: bool = field(init=False)
    flag_alpha: float = field(init=False)

    def __post_init__(self):
        sigma = np.sqrt(self.estimates * (1.0 - self.estimates) / self.reps)
        certain = self.estimates + 3.0 * sigma >= 1.0
        eligible = self.alphas < self.q_upper
        common = eligible & np.all(certain, axis=0)
        object.__setattr__(self, "flagged", bool(np.any(common)))
        idx = np.argmax(common) if np.any(common) else -1
        object.__setattr__(self, "flag_alpha", float(self.alphas[idx]) if idx >= 0 else math.nan)


def _draw_joint(js: JointSampler, threads: int = 1):
    """Block-deterministic (theta, y) draws, concatenated in block order."""

    def block(idx, start, size):
        rng = stream(js.seed, idx)
        th = js.prior.draw(rng, size)
        ys = sample_each(js.model, th, rng)
        return th, ys

    parts = map_blocks(block, js.reps, threads)
    th = np.concatenate([p[0] for p in parts])
    ys = np.concatenate([p[1] for p in parts])
    return th, ys


def _ecdf_on_grid(values: np.ndarray, grid: np.ndarray):
    values = np.sort(values)
    n = values.shape[0]
    cdf = np.searchsorted(values, grid, side="right") / n
    stderr = np.sqrt(cdf * (1.0 - cdf) / n)
    return cdf, stderr


def validity_cdf(im, js: JointSampler, grid=None, threads: int = 1) -> CdfReport:
    """Empirical CDF of contour_Y(Theta) under the joint sampler.

    im is a ContourFamily (fast, vectorized) or a plain y -> Contour builder.
    """
    grid = default_alpha_grid() if grid is None else np.asarray(grid, dtype=float)
    th, ys = _draw_joint(js, threads)
    paired = getattr(im, "paired", None)
    if paired is not None:
        values = paired(ys, th)
    else:
        values = np.array([float(im(y)(t)) for y, t in zip(ys, th)])
    cdf, stderr = _ecdf_on_grid(values, grid)
    return CdfReport(alphas=grid, cdf=cdf, stderr=stderr, reps=js.reps, seed=js.seed)


def conditional_validity(post_prob, prior: CompatiblePrior, model, a: Assertion,
                         grid=None, reps: int = 100_000, seed: int = 0,
                         threads: int = 1) -> CdfReport:
    """Empirical CDF of the posterior probability of A, given Theta in A.

    post_prob maps a batch of observations to posterior probabilities of A
    under the (single, precise) prior.  Fewer than 500 conditioning hits is
    reported with doubled error bars rather than refused.
    """
    grid = default_alpha_grid() if grid is None else np.asarray(grid, dtype=float)
    js = JointSampler(prior=prior, model=model, reps=reps, seed=seed)
    th, ys = _draw_joint(js, threads)
    mask = np.asarray(a.contains(th))
    hits = int(np.count_nonzero(mask))
    if hits == 0:
        raise ValueError("no draws landed in the conditioning assertion")
    values = np.asarray(post_prob(ys[mask]), dtype=float)
    cdf = np.searchsorted(np.sort(values), grid, side="right") / hits
    stderr = np.sqrt(cdf * (1.0 - cdf) / hits)
    low = hits < 500
    if low:
        stderr = 2.0 * stderr
    return CdfReport(alphas=grid, cdf=cdf, stderr=stderr, reps=reps, seed=seed,
                     hits=hits, low_hits=low)


def coverage_length(im, js: JointSampler, alpha: float, threads: int = 1) -> CoverageReport:
    """Coverage of the alpha-cut region and its mean total length.

    Coverage uses the contour criterion Theta in C_alpha(Y) iff
    contour_Y(Theta) > alpha; lengths come from the exact interval cuts when
    the contour has them, else grid measure.
    """
    th, ys = _draw_joint(js, threads)
    paired = getattr(im, "paired", None)
    build = getattr(im, "build", im)
    if paired is not None:
        values = paired(ys, th)
    else:
        values = np.array([float(build(y)(t)) for y, t in zip(ys, th)])
    covered = values > alpha
    coverage = float(np.mean(covered))
    lengths = np.array([plausibility_region(build(y), alpha).measure for y in ys])
    mean_len = float(np.mean(lengths))
    stderr_cov = math.sqrt(coverage * (1.0 - coverage) / js.reps)
    stderr_len = float(np.std(lengths, ddof=1) / math.sqrt(js.reps)) if js.reps > 1 else 0.0
    return CoverageReport(alpha=float(alpha), coverage=coverage, mean_length=mean_len,
                          stderr_cov=stderr_cov, stderr_len=stderr_len,
                          reps=js.reps, seed=js.seed,
                          im=getattr(im, "name", ""))


def contraction_check(im, prior, model, a: Assertion, theta_grid, alpha_grid,
                      reps: int = 2000, seed: int = 0) -> ContractionReport:
    """Probe almost-sure contraction: does the combined upper probability
    of a true assertion sit below some alpha < Q-bar(A) with conditional
    probability one?

    A flag requires every theta in A (on the grid) to give an estimate of
    P_{Y|theta}{upper(A) <= alpha} within 3 MC sigma of 1 at a common alpha.
    Valid IMs never flag; precise-prior posteriors on far-out assertions do.
    """
    q_bar = prior_upper_prob(prior, a)
    thetas = np.array([t for t in np.asarray(theta_grid, dtype=float) if a.contains(t)])
    if thetas.size == 0:
        raise ValueError("theta grid does not meet the assertion")
    alphas = np.asarray(alpha_grid, dtype=float)
    upper_each = getattr(im, "upper_each", None)
    estimates = np.empty((thetas.size, alphas.size))
    for j, theta in enumerate(thetas):
        rng = stream(seed, j)
        ys = sample_reps(model, theta, reps, rng)
        if upper_each is not None:
            uppers = np.asarray(upper_each(ys, a), dtype=float)
        else:
            uppers = np.array([float(im(y).sup_on(a)) for y in ys])
        estimates[j] = np.mean(uppers[:, None] <= alphas[None, :], axis=0)
    return ContractionReport(thetas=thetas, alphas=alphas, estimates=estimates,
                             q_upper=q_bar, reps=reps)
