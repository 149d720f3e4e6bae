"""Parameter-space geometry and possibility-measure calculus.

The central object is the plausibility contour: a map from parameter points
to [0, 1] that determines a consonant upper probability by suprema,

    Pl(A) = sup_{theta in A} contour(theta),

with the lower probability given by duality, 1 - Pl(complement of A).
Assertions are structured subsets (intervals, finite unions, half-spaces,
predicates); suprema are exact whenever the assertion and the contour's
structure allow (unimodal over an interval, piecewise constant, and their
monotone combinations), and otherwise fall back to a bounding-box grid with
the contour's breakpoints injected so that jump locations are never missed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Assertion",
    "IntervalAssertion",
    "UnionAssertion",
    "HalfSpaceAssertion",
    "PredicateAssertion",
    "interval",
    "union",
    "singleton",
    "full_line",
    "empty",
    "intersect",
    "Contour",
    "FunctionContour",
    "UnimodalContour",
    "StepContour",
    "CombinedContour",
    "RadialContour",
    "ScaledContour",
    "GridSpec",
    "Region",
    "upper_prob",
    "lower_prob",
    "plausibility_region",
    "normalize",
    "DegenerateContourError",
    "DEFAULT_STEP",
]

DEFAULT_STEP = 0.005

_INF = float("inf")


class DegenerateContourError(ValueError):
    """Raised when an operation needs a positive supremum and finds none."""


# ---------------------------------------------------------------------------
# Assertions
# ---------------------------------------------------------------------------


class Assertion:
    """A structured subset of the parameter space."""

    dim: int = 1

    @property
    def is_empty(self) -> bool:
        raise NotImplementedError

    def contains(self, x):
        raise NotImplementedError

    def complement(self) -> "Assertion":
        raise NotImplementedError


@dataclass(frozen=True)
class IntervalAssertion(Assertion):
    """A scalar interval with explicit endpoint openness.

    Infinite endpoints are always open.  lo == hi with both endpoints closed
    is the singleton {lo}.
    """

    lo: float
    hi: float
    open_lo: bool = False
    open_hi: bool = False
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError("interval requires lo <= hi")
        if math.isinf(self.lo):
            object.__setattr__(self, "open_lo", True)
        if math.isinf(self.hi):
            object.__setattr__(self, "open_hi", True)

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi and (self.open_lo or self.open_hi)

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        lo_ok = x > self.lo if self.open_lo else x >= self.lo
        hi_ok = x < self.hi if self.open_hi else x <= self.hi
        out = lo_ok & hi_ok
        return bool(out) if out.ndim == 0 else out

    def complement(self) -> Assertion:
        if self.is_empty:
            return full_line()
        parts = []
        if not (math.isinf(self.lo) and self.lo < 0):
            parts.append(IntervalAssertion(-_INF, self.lo, True, not self.open_lo))
        if not (math.isinf(self.hi) and self.hi > 0):
            parts.append(IntervalAssertion(self.hi, _INF, not self.open_hi, True))
        if not parts:
            return empty()
        if len(parts) == 1:
            return parts[0]
        return UnionAssertion(tuple(parts))

    def intersect(self, other: "IntervalAssertion") -> "IntervalAssertion":
        if self.lo > other.lo or (self.lo == other.lo and self.open_lo):
            lo, open_lo = self.lo, self.open_lo
        else:
            lo, open_lo = other.lo, other.open_lo
        if self.hi < other.hi or (self.hi == other.hi and self.open_hi):
            hi, open_hi = self.hi, self.open_hi
        else:
            hi, open_hi = other.hi, other.open_hi
        if lo > hi or (lo == hi and (open_lo or open_hi)):
            return empty()
        return IntervalAssertion(lo, hi, open_lo, open_hi)


@dataclass(frozen=True)
class UnionAssertion(Assertion):
    """A finite union of disjoint scalar intervals, stored sorted."""

    parts: tuple
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        parts = sorted((p for p in self.parts if not p.is_empty), key=lambda p: (p.lo, p.hi))
        for left, right in zip(parts, parts[1:]):
            touching = left.hi == right.lo and not (left.open_hi and right.open_lo)
            if left.hi > right.lo or touching:
                raise ValueError("union parts must be disjoint")
        object.__setattr__(self, "parts", tuple(parts))

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=bool)
        for p in self.parts:
            out |= p.contains(x)
        return bool(out) if out.ndim == 0 else out

    def complement(self) -> Assertion:
        if not self.parts:
            return full_line()
        gaps = []
        first = self.parts[0]
        if not (math.isinf(first.lo) and first.lo < 0):
            gaps.append(IntervalAssertion(-_INF, first.lo, True, not first.open_lo))
        for left, right in zip(self.parts, self.parts[1:]):
            gaps.append(
                IntervalAssertion(left.hi, right.lo, not left.open_hi, not right.open_lo)
            )
        last = self.parts[-1]
        if not (math.isinf(last.hi) and last.hi > 0):
            gaps.append(IntervalAssertion(last.hi, _INF, not last.open_hi, True))
        if len(gaps) == 1:
            return gaps[0]
        return UnionAssertion(tuple(gaps))


@dataclass(frozen=True)
class HalfSpaceAssertion(Assertion):
    """{x : normal . x >= offset} (strict when open)."""

    normal: tuple
    offset: float
    open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(float(v) for v in self.normal))
        if not any(v != 0.0 for v in self.normal):
            raise ValueError("half-space normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def is_empty(self) -> bool:
        return False

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        proj = x @ np.asarray(self.normal)
        out = proj > self.offset if self.open else proj >= self.offset
        return bool(out) if out.ndim == 0 else out

    def complement(self) -> Assertion:
        return HalfSpaceAssertion(
            tuple(-v for v in self.normal), -self.offset, open=not self.open
        )


@dataclass(frozen=True)
class PredicateAssertion(Assertion):
    """Arbitrary membership test; suprema over it always take the grid path."""

    fn: object
    dim: int = 1

    @property
    def is_empty(self) -> bool:
        return False

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        try:
            out = np.asarray(self.fn(x), dtype=bool)
            if out.shape == x.shape[: x.ndim - (self.dim > 1)]:
                return bool(out) if out.ndim == 0 else out
        except Exception:
            pass
        pts = np.atleast_2d(x) if self.dim > 1 else np.atleast_1d(x)
        out = np.array([bool(self.fn(p)) for p in pts])
        return bool(out[0]) if np.asarray(x).ndim <= (1 if self.dim > 1 else 0) else out

    def complement(self) -> Assertion:
        inner = self.fn
        return PredicateAssertion(lambda x: np.logical_not(inner(x)), dim=self.dim)


def interval(lo, hi, open_lo=False, open_hi=False) -> IntervalAssertion:
    return IntervalAssertion(float(lo), float(hi), open_lo, open_hi)


def singleton(x) -> IntervalAssertion:
    return IntervalAssertion(float(x), float(x))


def full_line() -> IntervalAssertion:
    return IntervalAssertion(-_INF, _INF)


def empty() -> UnionAssertion:
    return UnionAssertion(())


def union(*parts) -> UnionAssertion:
    return UnionAssertion(tuple(parts))


def intersect(a: Assertion, b: Assertion) -> Assertion:
    """Intersection, structural for intervals and unions."""
    if a.is_empty or b.is_empty:
        return empty()
    if isinstance(a, UnionAssertion):
        pieces = [intersect(p, b) for p in a.parts]
        flat = []
        for piece in pieces:
            if isinstance(piece, UnionAssertion):
                flat.extend(piece.parts)
            elif not piece.is_empty:
                flat.append(piece)
        return UnionAssertion(tuple(flat))
    if isinstance(b, UnionAssertion):
        return intersect(b, a)
    if isinstance(a, IntervalAssertion) and isinstance(b, IntervalAssertion):
        return a.intersect(b)
    # generic fallback: conjunction of membership tests
    dim = max(a.dim, b.dim)
    return PredicateAssertion(lambda x: np.logical_and(a.contains(x), b.contains(x)), dim=dim)


def _interval_parts(a: Assertion):
    """The interval pieces of a scalar structured assertion, or None."""
    if isinstance(a, IntervalAssertion):
        return (a,)
    if isinstance(a, UnionAssertion):
        return a.parts
    return None


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Per-dimension (lo, hi, step) evaluation grids."""

    axes: tuple

    def __post_init__(self):
        axes = tuple((float(lo), float(hi), float(st)) for lo, hi, st in self.axes)
        for lo, hi, st in axes:
            if st <= 0:
                raise ValueError("grid step must be positive")
            if lo >= hi:
                raise ValueError("grid requires lo < hi")
        object.__setattr__(self, "axes", axes)

    @property
    def dim(self) -> int:
        return len(self.axes)

    @classmethod
    def make(cls, lo, hi, step) -> "GridSpec":
        return cls(((lo, hi, step),))

    @classmethod
    def from_box(cls, box, step=DEFAULT_STEP) -> "GridSpec":
        return cls(tuple((lo, hi, step) for lo, hi in box))

    def axis_points(self, i=0) -> np.ndarray:
        lo, hi, st = self.axes[i]
        count = int(math.floor((hi - lo) / st + 1e-9)) + 1
        return lo + st * np.arange(count)

    def points(self) -> np.ndarray:
        """Flattened evaluation points: shape (N,) in 1-D, (N, dim) otherwise."""
        if self.dim == 1:
            return self.axis_points(0)
        axes = [self.axis_points(i) for i in range(self.dim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    @property
    def cell(self) -> float:
        out = 1.0
        for _, _, st in self.axes:
            out *= st
        return out

    def points_with(self, extra) -> np.ndarray:
        """1-D grid points joined with any extra points inside the range."""
        if self.dim != 1:
            raise ValueError("breakpoint injection is one-dimensional")
        lo, hi, _ = self.axes[0]
        extra = np.asarray(extra, dtype=float)
        extra = extra[(extra >= lo) & (extra <= hi)]
        return np.unique(np.concatenate([self.axis_points(0), extra]))


# ---------------------------------------------------------------------------
# Contours
# ---------------------------------------------------------------------------


class Contour:
    """Plausibility contour: evaluable on parameter points, valued in [0, 1].

    Subclasses may advertise structure through sup_on (exact suprema over
    structured assertions) and cut (exact level sets); returning None from
    either means "no analytic path here", and callers fall back to grids.
    """

    dim: int = 1
    box: tuple = ()
    breakpoints: tuple = ()

    def __call__(self, theta):
        raise NotImplementedError

    def sup_on(self, a: Assertion):
        return None

    def cut(self, alpha: float):
        """Exact alpha-cut {theta : contour > alpha} as interval list, or None."""
        return None

    def sup(self) -> float:
        s = self.sup_on(full_line()) if self.dim == 1 else None
        if s is None:
            s = _grid_sup(self, _everything(self.dim))
        return s


def _everything(dim: int) -> Assertion:
    if dim == 1:
        return full_line()
    return PredicateAssertion(lambda x: np.ones(np.asarray(x).shape[:-1], dtype=bool), dim=dim)


@dataclass(frozen=True)
class FunctionContour(Contour):
    """A contour given by an arbitrary evaluator; grid paths only."""

    fn: object
    dim: int = 1
    box: tuple = ()
    breakpoints: tuple = ()

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.asarray(self.fn(theta), dtype=float)
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class UnimodalContour(Contour):
    """Scalar contour that increases up to a peak and decreases after it.

    radius, when given, maps a level p to the half-width r of the superlevel
    set {contour > p} = (peak - r, peak + r); it makes alpha-cuts exact.
    """

    fn: object
    peak: float
    box: tuple
    radius: object = None
    dim: int = field(default=1, init=False)
    breakpoints: tuple = ()

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.asarray(self.fn(theta), dtype=float)
        return float(out) if out.ndim == 0 else out

    def sup_on(self, a: Assertion):
        parts = _interval_parts(a)
        if parts is None:
            return None
        best = 0.0
        for p in parts:
            if p.is_empty:
                continue
            best = max(best, float(self(min(max(self.peak, p.lo), p.hi))))
        return best

    def cut(self, alpha: float):
        if self.radius is None:
            return None
        r = self.radius(alpha)
        if r <= 0.0:
            return []
        return [(self.peak - r, self.peak + r)]


@dataclass(frozen=True)
class StepContour(Contour):
    """Piecewise-constant scalar contour.

    breaks are the m jump locations; piece_values the m+1 values on the open
    pieces between them; break_values the values at the breakpoints
    themselves (so closed plateaus like q = 1 on [a, b] are represented
    exactly).
    """

    breaks: tuple
    piece_values: tuple
    break_values: tuple
    box: tuple
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        if len(self.piece_values) != len(self.breaks) + 1:
            raise ValueError("need one piece value per open piece")
        if len(self.break_values) != len(self.breaks):
            raise ValueError("need one value per breakpoint")
        if list(self.breaks) != sorted(self.breaks):
            raise ValueError("breakpoints must be sorted")

    @property
    def breakpoints(self) -> tuple:
        return tuple(self.breaks)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if not self.breaks:
            out = np.full(theta.shape, float(self.piece_values[0]))
            return float(out) if out.ndim == 0 else out
        breaks = np.asarray(self.breaks)
        idx = np.searchsorted(breaks, theta, side="left")
        out = np.asarray(self.piece_values, dtype=float)[idx]
        safe = np.minimum(idx, len(self.breaks) - 1)
        exact = theta == breaks[safe]
        if np.any(exact):
            out = np.where(exact, np.asarray(self.break_values, dtype=float)[safe], out)
        return float(out) if out.ndim == 0 else out

    def segments(self):
        """Alternating open pieces and breakpoint singletons with their values."""
        edges = (-_INF,) + tuple(self.breaks) + (_INF,)
        out = []
        for i, v in enumerate(self.piece_values):
            out.append(("piece", edges[i], edges[i + 1], v))
            if i < len(self.breaks):
                out.append(("point", self.breaks[i], self.breaks[i], self.break_values[i]))
        return out

    def sup_on(self, a: Assertion):
        parts = _interval_parts(a)
        if parts is None:
            return None
        best = 0.0
        for p in parts:
            if p.is_empty:
                continue
            if p.lo == p.hi:
                best = max(best, float(self(p.lo)))
                continue
            for kind, lo, hi, v in self.segments():
                if kind == "point":
                    if p.contains(lo):
                        best = max(best, v)
                elif max(lo, p.lo) < min(hi, p.hi):
                    best = max(best, v)
        return best

    def cut(self, alpha: float):
        out = []
        for kind, lo, hi, v in self.segments():
            if v > alpha:
                out.append((lo, hi))
        return _merge_intervals(out)


@dataclass(frozen=True)
class CombinedContour(Contour):
    """g(base(theta), step(theta)) / norm for g nondecreasing in its first slot.

    This covers every pointwise combination used here: products, minima with
    clipping, and squared-complement fusion of a unimodal data contour with a
    piecewise-constant prior contour.  Monotonicity of g in the base value
    makes suprema exact piece by piece (project the peak into the piece), and
    g_threshold makes alpha-cuts exact: g_threshold(v, t) is the least p with
    g(p, v) > t, or None when no p in [0, 1] qualifies.
    """

    base: UnimodalContour
    step: StepContour
    g: object
    g_threshold: object = None
    norm: float = 1.0

    def __post_init__(self):
        if self.norm <= 0.0:
            raise DegenerateContourError("normalizer must be positive")

    @property
    def dim(self) -> int:
        return 1

    @property
    def box(self) -> tuple:
        (b_lo, b_hi), (s_lo, s_hi) = self.base.box[0], self.step.box[0]
        return ((min(b_lo, s_lo), max(b_hi, s_hi)),)

    @property
    def breakpoints(self) -> tuple:
        return tuple(sorted(set(self.base.breakpoints) | set(self.step.breakpoints) | {self.base.peak}))

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.asarray(self.g(self.base(theta), self.step(theta)), dtype=float) / self.norm
        return float(out) if out.ndim == 0 else out

    def sup_on(self, a: Assertion):
        parts = _interval_parts(a)
        if parts is None:
            return None
        peak = self.base.peak
        best = 0.0
        for p in parts:
            if p.is_empty:
                continue
            if p.lo == p.hi:
                best = max(best, float(self.g(self.base(p.lo), self.step(p.lo))))
                continue
            for kind, lo, hi, v in self.step.segments():
                if kind == "point":
                    if p.contains(lo):
                        best = max(best, float(self.g(self.base(lo), v)))
                else:
                    o_lo, o_hi = max(lo, p.lo), min(hi, p.hi)
                    if o_lo < o_hi:
                        at = min(max(peak, o_lo), o_hi)
                        best = max(best, float(self.g(self.base(at), v)))
        return best / self.norm

    def cut(self, alpha: float):
        if self.g_threshold is None or self.base.radius is None:
            return None
        target = alpha * self.norm
        peak = self.base.peak
        out = []
        for kind, lo, hi, v in self.step.segments():
            if kind == "point":
                if float(self.g(self.base(lo), v)) > target:
                    out.append((lo, lo))
                continue
            thr = self.g_threshold(v, target)
            if thr is None or thr >= 1.0:
                continue
            if thr <= 0.0:
                c_lo, c_hi = lo, hi
            else:
                r = self.base.radius(thr)
                if r <= 0.0:
                    continue
                c_lo, c_hi = max(lo, peak - r), min(hi, peak + r)
            if c_lo < c_hi:
                out.append((c_lo, c_hi))
        return _merge_intervals(out)


@dataclass(frozen=True)
class RadialContour(Contour):
    """Contour depending on theta only through its distance from a center.

    profile maps squared distance to the contour value and is decreasing;
    radius2, when given, maps a level to the squared radius of its cut.
    """

    profile: object
    center: tuple
    box: tuple
    radius2: object = None

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in self.center))

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def peak(self):
        return self.center

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        diff = theta - np.asarray(self.center)
        r2 = np.sum(diff * diff, axis=-1)
        out = np.asarray(self.profile(r2), dtype=float)
        return float(out) if out.ndim == 0 else out

    def sup_on(self, a: Assertion):
        if isinstance(a, HalfSpaceAssertion):
            n = np.asarray(a.normal)
            gap = a.offset - float(n @ np.asarray(self.center))
            d2 = max(gap, 0.0) ** 2 / float(n @ n)
            return float(self.profile(d2))
        return None


@dataclass(frozen=True)
class ScaledContour(Contour):
    """A contour divided by a positive constant, clipped back into [0, 1]."""

    inner: Contour
    scale: float

    def __post_init__(self):
        if self.scale <= 0.0:
            raise DegenerateContourError("scale must be positive")

    @property
    def dim(self) -> int:
        return self.inner.dim

    @property
    def box(self) -> tuple:
        return self.inner.box

    @property
    def breakpoints(self) -> tuple:
        return self.inner.breakpoints

    def __call__(self, theta):
        out = np.minimum(np.asarray(self.inner(theta), dtype=float) / self.scale, 1.0)
        return float(out) if out.ndim == 0 else out

    def sup_on(self, a: Assertion):
        s = self.inner.sup_on(a)
        return None if s is None else min(s / self.scale, 1.0)

    def cut(self, alpha: float):
        if alpha >= 1.0:
            return []
        return self.inner.cut(alpha * self.scale)


def _merge_intervals(pieces):
    """Join touching or overlapping (lo, hi) pairs; keeps isolated points."""
    pieces = sorted(pieces)
    out = []
    for lo, hi in pieces:
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


# ---------------------------------------------------------------------------
# Upper/lower probabilities and regions
# ---------------------------------------------------------------------------


def _grid_sup(c: Contour, a: Assertion) -> float:
    if not c.box:
        raise ValueError("contour has no bounding box for grid evaluation")
    if c.dim == 1:
        grid = GridSpec.from_box(c.box)
        inject = list(c.breakpoints)
        for p in _interval_parts(a) or ():
            for v in (p.lo, p.hi):
                if math.isfinite(v):
                    inject.append(v)
        pts = grid.points_with(inject)
    else:
        pts = GridSpec.from_box(c.box).points()
    mask = np.asarray(a.contains(pts))
    if not mask.any():
        return 0.0
    return float(np.max(c(pts[mask])))


def upper_prob(c: Contour, a: Assertion) -> float:
    """sup of the contour over the assertion: the consonant upper probability."""
    if a.dim != c.dim:
        raise ValueError(f"assertion dimension {a.dim} != contour dimension {c.dim}")
    if a.is_empty:
        return 0.0
    s = c.sup_on(a)
    if s is None:
        s = _grid_sup(c, a)
    return min(max(float(s), 0.0), 1.0)


def lower_prob(c: Contour, a: Assertion) -> float:
    """Dual lower probability: 1 - upper_prob of the structural complement."""
    if a.dim != c.dim:
        raise ValueError(f"assertion dimension {a.dim} != contour dimension {c.dim}")
    return 1.0 - upper_prob(c, a.complement())


@dataclass(frozen=True)
class Region:
    """A plausibility region {theta : contour(theta) > alpha}.

    Membership always defers to the contour, so it is exact even when the
    stored representation (intervals or grid points) is approximate; measure
    is the summed interval length on the exact path and cell * count on the
    grid path.
    """

    contour: Contour
    alpha: float
    intervals: tuple = None
    grid_points: np.ndarray = None
    cell: float = None

    @property
    def dim(self) -> int:
        return self.contour.dim

    def contains(self, theta):
        val = self.contour(theta)
        out = np.asarray(val) > self.alpha
        return bool(out) if out.ndim == 0 else out

    @property
    def measure(self) -> float:
        if self.intervals is not None:
            return float(sum(hi - lo for lo, hi in self.intervals))
        if self.grid_points is None:
            return 0.0
        n = self.grid_points.shape[0] if self.grid_points.ndim else 0
        return float(n * self.cell)

    @property
    def is_empty(self) -> bool:
        if self.intervals is not None:
            return len(self.intervals) == 0
        return self.grid_points is None or self.grid_points.shape[0] == 0


def plausibility_region(c: Contour, alpha: float, grid: GridSpec = None) -> Region:
    """The alpha-cut of a contour, exact when the structure allows."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    exact = c.cut(alpha)
    if exact is not None:
        return Region(contour=c, alpha=alpha, intervals=tuple(exact))
    if grid is None:
        grid = GridSpec.from_box(c.box)
    pts = grid.points()
    vals = c(pts)
    mask = np.asarray(vals) > alpha
    return Region(contour=c, alpha=alpha, grid_points=pts[mask], cell=grid.cell)


def normalize(c: Contour, grid: GridSpec = None) -> Contour:
    """Divide a contour by its supremum (analytic when available, else grid).

    Idempotent on contours whose supremum is already 1.
    """
    s = c.sup_on(full_line()) if c.dim == 1 else None
    if s is None:
        if grid is not None:
            pts = grid.points()
            if c.dim == 1 and c.breakpoints:
                pts = np.unique(np.concatenate([pts, np.asarray(c.breakpoints)]))
            s = float(np.max(c(pts)))
        else:
            s = _grid_sup(c, _everything(c.dim))
    if s <= 0.0:
        raise DegenerateContourError("cannot normalize a contour that is zero everywhere")
    if abs(s - 1.0) <= 1e-12:
        return c
    return ScaledContour(c, s)
