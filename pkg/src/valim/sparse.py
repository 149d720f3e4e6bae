"""Sparse normal mean demo: sparsity prior, product t-norm, exact normalizer.

The observation is one draw Y ~ N_d(theta, I) and the prior says most
coordinates of theta are zero.  The product-t-norm normalizer has a closed
combinatorial form: the supremum of pi_y * q is attained at one of the d+1
candidates that keep the k largest |y| coordinates and zero the rest, so no
search over the plane is needed.  The validified contour for d = 2 reduces
to a three-point mixture anchored at (0,0), (0,eps), (eps,eps).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Contour, FunctionContour, GridSpec
from .models import MvNormalModel, vacuous_contour_mv
from .numerics import chisq_cdf
from .priors import SparsityPrior
from .rng import stream

__all__ = [
    "SparseDemoConfig",
    "topk_argmax",
    "sparse_normalizer",
    "sparse_tnorm_contour",
    "sparse_validified_contour",
    "region_area",
]


@dataclass(frozen=True)
class SparseDemoConfig:
    dim: int = 2
    varpi: float = 0.5
    y: tuple = (1.0, 0.3)
    mc_reps: int = 100_000
    seed: int = 0
    eps: float = 0.01
    grid: GridSpec = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        y = tuple(float(v) for v in self.y)
        if len(y) != self.dim:
            raise ValueError("y must have length dim")
        object.__setattr__(self, "y", y)
        if self.grid is None:
            object.__setattr__(
                self, "grid", GridSpec(tuple((-2.5, 4.5, 0.05) for _ in range(self.dim)))
            )

    @property
    def prior(self) -> SparsityPrior:
        return SparsityPrior(self.dim, self.varpi)

    @property
    def model(self) -> MvNormalModel:
        return MvNormalModel(self.dim)


def topk_argmax(y, k: int) -> np.ndarray:
    """Keep the k largest-|y| coordinates, zero the rest; ties keep the
    lowest index (stable sort), so the map is total even on tied data."""
    y = np.asarray(y, dtype=float)
    if not 0 <= k <= y.shape[0]:
        raise ValueError(f"k must lie in [0, {y.shape[0]}]")
    order = np.argsort(-np.abs(y), kind="stable")
    out = np.zeros_like(y)
    keep = order[:k]
    out[keep] = y[keep]
    return out


def _pi_of_r2(r2, dim: int):
    return 1.0 - chisq_cdf(np.asarray(r2, dtype=float), dim)


def sparse_normalizer(y, prior: SparsityPrior):
    """sup of pi_y * q and the candidate index k attaining it.

    Candidate k zeroes all but the k largest |y| entries; its distance from
    y collects the dropped coordinates, and its prior plausibility counts
    the kept nonzero ones.
    """
    y = np.asarray(y, dtype=float)
    levels = np.asarray(prior.levels())
    s = np.sort(y * y)[::-1]
    kept_nonzero = np.concatenate(([0], np.cumsum(s > 0.0)))
    tail_r2 = np.concatenate((np.cumsum(s[::-1])[::-1], [0.0]))
    cands = _pi_of_r2(tail_r2, prior.dim) * levels[kept_nonzero]
    k = int(np.argmax(cands))
    return float(cands[k]), k


def _normalizer_each(ymat: np.ndarray, prior: SparsityPrior) -> np.ndarray:
    """sparse_normalizer vectorized over rows of a draw matrix."""
    levels = np.asarray(prior.levels())
    s = np.sort(ymat * ymat, axis=1)[:, ::-1]
    kept = np.concatenate(
        (np.zeros((s.shape[0], 1), dtype=int), np.cumsum(s > 0.0, axis=1)), axis=1
    )
    tails = np.concatenate(
        (np.cumsum(s[:, ::-1], axis=1)[:, ::-1], np.zeros((s.shape[0], 1))), axis=1
    )
    cands = _pi_of_r2(tails, prior.dim) * levels[kept]
    return np.max(cands, axis=1)


def sparse_tnorm_contour(cfg: SparseDemoConfig) -> Contour:
    """pi_y(theta) q(theta) / sup(pi_y q), the consonant sparse-prior IM."""
    prior = cfg.prior
    y = np.asarray(cfg.y)
    norm, _ = sparse_normalizer(y, prior)

    def fn(th):
        th = np.asarray(th, dtype=float)
        pts = th.reshape(-1, cfg.dim)
        r2 = np.sum((pts - y) ** 2, axis=-1)
        vals = _pi_of_r2(r2, cfg.dim) * prior.q_values(pts) / norm
        return vals if th.ndim > 1 else vals[0]

    box = tuple((lo, hi) for lo, hi, _ in cfg.grid.axes)
    return FunctionContour(fn=fn, dim=cfg.dim, box=box)


def sparse_validified_contour(cfg: SparseDemoConfig) -> Contour:
    """The validified sparse IM for dim = 2.

    Three Monte Carlo CDFs — of the t-norm contour at (0,0), (0,eps),
    (eps,eps) under their own sampling distributions — are mixed with
    weights (1-q_1, q_1-q_2, q_2) and evaluated at the t-norm contour value.
    A shared draw batch keeps the mixture exactly monotone in that value.
    """
    if cfg.dim != 2:
        raise ValueError("the validified sparse contour is defined for dim = 2")
    if cfg.mc_reps < 10_000:
        raise ValueError("mc_reps must be at least 10000")
    prior = cfg.prior
    levels = prior.levels()
    q1, q2 = levels[1], levels[2]
    weights = (1.0 - q1, q1 - q2, q2)
    anchors = (
        np.array([0.0, 0.0]),
        np.array([0.0, cfg.eps]),
        np.array([cfg.eps, cfg.eps]),
    )

    zmat = stream(cfg.seed).standard_normal((cfg.mc_reps, 2))
    pi_at_anchor = _pi_of_r2(np.sum(zmat * zmat, axis=1), 2)
    tables = []
    for v in anchors:
        draws = v + zmat
        qv = float(prior.q_values(v))
        tables.append(np.sort(pi_at_anchor * qv / _normalizer_each(draws, prior)))

    base = sparse_tnorm_contour(cfg)
    reps = cfg.mc_reps

    def fn(th):
        t = np.asarray(base(th), dtype=float)
        out = np.zeros(t.shape)
        for w, table in zip(weights, tables):
            out += w * (np.searchsorted(table, t, side="right") / reps)
        return out

    return FunctionContour(fn=fn, dim=2, box=base.box)


def region_area(c: Contour, alpha: float, grid: GridSpec) -> float:
    """Grid-cell area of the superlevel set {c > alpha}."""
    pts = grid.points()
    vals = np.asarray(c(pts))
    return float(np.count_nonzero(vals > alpha) * grid.cell)
