import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from valim import (
    GridSpec,
    SparseDemoConfig,
    SparsityPrior,
    region_area,
    sparse_normalizer,
    sparse_tnorm_contour,
    sparse_validified_contour,
    topk_argmax,
    vacuous_contour_mv,
)
from valim.models import MvNormalModel
from valim.sparse import _pi_of_r2

CFG = SparseDemoConfig(y=(1.0, 0.3), mc_reps=20_000, seed=0)
PRIOR = SparsityPrior(2, 0.5)

# exp oracle values for y=(1, 0.3), dim 2, varpi 0.5
NORM = 0.7169981113748249          # exp(-0.045) * 0.75, the k=1 candidate
AT_ORIGIN = 0.8087075462835113     # exp(-0.545) / NORM
AT_Y = 0.34867595330290563         # 0.25 / NORM


def test_topk_argmax():
    y = np.array([1.0, 0.3])
    assert np.array_equal(topk_argmax(y, 0), [0.0, 0.0])
    assert np.array_equal(topk_argmax(y, 1), [1.0, 0.0])
    assert np.array_equal(topk_argmax(y, 2), y)
    # ties keep the lowest index
    assert np.array_equal(topk_argmax(np.array([2.0, -2.0]), 1), [2.0, 0.0])
    with pytest.raises(ValueError):
        topk_argmax(y, 3)
    with pytest.raises(ValueError):
        topk_argmax(y, -1)


def test_normalizer_frozen_values():
    norm, k = sparse_normalizer((1.0, 0.3), PRIOR)
    assert k == 1
    assert norm == pytest.approx(NORM, abs=1e-15)
    assert norm == pytest.approx(math.exp(-0.045) * 0.75, abs=1e-15)


def test_normalizer_at_origin_is_one():
    norm, k = sparse_normalizer((0.0, 0.0), PRIOR)
    assert norm == 1.0 and k == 0


def test_normalizer_tiny_varpi_forces_origin():
    norm, k = sparse_normalizer((1.0, 0.3), SparsityPrior(2, 1e-9))
    assert k == 0
    assert norm == pytest.approx(math.exp(-0.545), abs=1e-6)


def test_normalizer_against_grid_search():
    # independent maximization of pi_y * q over a dense grid augmented with
    # the axis lines and the coordinate-masked copies of y
    y1, y2 = 1.0, 0.3
    levels = (1.0, 0.75, 0.25)
    axis = [round(-3.0 + 0.05 * i, 10) for i in range(141)]

    def value(t1, t2):
        r2 = (t1 - y1) ** 2 + (t2 - y2) ** 2
        nz = (t1 != 0.0) + (t2 != 0.0)
        return math.exp(-0.5 * r2) * levels[nz]

    cands = [(t1, t2) for t1 in axis for t2 in axis]
    cands += [(t1, 0.0) for t1 in axis] + [(0.0, t2) for t2 in axis]
    cands += [(0.0, 0.0), (y1, 0.0), (0.0, y2), (y1, y2)]
    brute = max(value(t1, t2) for t1, t2 in cands)
    norm, _ = sparse_normalizer((y1, y2), PRIOR)
    assert norm == pytest.approx(brute, abs=1e-12)


@given(
    st.integers(2, 4).flatmap(
        lambda d: st.lists(
            st.one_of(st.just(0.0), st.floats(-3.0, 3.0)), min_size=d, max_size=d
        )
    ),
    st.floats(0.05, 0.95),
)
def test_normalizer_equals_support_enumeration(y, varpi):
    # every support pattern, not only the nested top-k family
    d = len(y)
    prior = SparsityPrior(d, varpi)
    levels = prior.levels()
    y = np.asarray(y)
    best = 0.0
    for pattern in itertools.product((0, 1), repeat=d):
        mask = np.asarray(pattern, dtype=bool)
        theta = np.where(mask, y, 0.0)
        r2 = float(np.sum((y - theta) ** 2))
        nz = int(np.count_nonzero(theta))
        best = max(best, float(_pi_of_r2(r2, d)) * levels[nz])
    norm, _ = sparse_normalizer(y, prior)
    assert norm == pytest.approx(best, abs=1e-12)


def test_contour_frozen_values():
    c = sparse_tnorm_contour(CFG)
    assert c((0.0, 0.0)) == pytest.approx(AT_ORIGIN, abs=1e-12)
    assert c((1.0, 0.3)) == pytest.approx(AT_Y, abs=1e-12)
    # the attaining candidate keeps the larger coordinate only
    assert c((1.0, 0.0)) == pytest.approx(1.0, abs=1e-12)


def test_contour_batch_evaluation():
    c = sparse_tnorm_contour(CFG)
    pts = np.array([[0.0, 0.0], [1.0, 0.3], [1.0, 0.0]])
    got = c(pts)
    assert got == pytest.approx([AT_ORIGIN, AT_Y, 1.0], abs=1e-12)


DIHEDRAL = [
    (perm, signs)
    for perm in ((0, 1), (1, 0))
    for signs in itertools.product((1.0, -1.0), repeat=2)
]


@pytest.mark.parametrize("perm,signs", DIHEDRAL)
def test_contour_symmetry_under_signed_permutations(perm, signs):
    y = np.array([1.0, 0.3])
    ty = np.array([signs[i] * y[perm[i]] for i in range(2)])
    base = sparse_tnorm_contour(CFG)
    moved = sparse_tnorm_contour(SparseDemoConfig(y=tuple(ty), mc_reps=20_000, seed=0))
    for th in ([0.2, -0.7], [0.0, 1.1], [1.0, 0.3], [0.0, 0.0]):
        th = np.asarray(th)
        tth = np.array([signs[i] * th[perm[i]] for i in range(2)])
        assert moved(tth) == pytest.approx(base(th), abs=1e-12)
    assert sparse_normalizer(ty, PRIOR)[0] == pytest.approx(NORM, abs=1e-14)


def test_prior_levels_nested_and_weights_sum():
    levels = PRIOR.levels()
    assert levels[0] == 1.0 >= levels[1] >= levels[2] > 0.0
    q1, q2 = levels[1], levels[2]
    weights = (1.0 - q1, q1 - q2, q2)
    assert math.fsum(weights) == 1.0
    assert all(w >= 0.0 for w in weights)


def test_validified_values():
    v = sparse_validified_contour(CFG)
    # at the attaining candidate the base value is the table maximum
    assert v((1.0, 0.0)) == 1.0
    assert v((40.0, -40.0)) == 0.0
    got = v(np.array([[0.0, 0.0], [1.0, 0.3]]))
    assert np.all((got >= 0.0) & (got <= 1.0))


def test_validified_monotone_in_base_value():
    base = sparse_tnorm_contour(CFG)
    v = sparse_validified_contour(CFG)
    pts = CFG.grid.points()[::97]
    b = np.asarray(base(pts))
    out = np.asarray(v(pts))
    order = np.argsort(b, kind="stable")
    assert np.all(np.diff(out[order]) >= 0.0)


def test_validified_deterministic():
    a = sparse_validified_contour(CFG)
    b = sparse_validified_contour(CFG)
    pts = np.array([[0.0, 0.0], [0.4, 0.1], [1.0, 0.3], [2.0, -1.0]])
    assert np.array_equal(np.asarray(a(pts)), np.asarray(b(pts)))


def test_validified_rejects_bad_configs():
    with pytest.raises(ValueError):
        sparse_validified_contour(SparseDemoConfig(dim=3, y=(1.0, 0.3, 0.0)))
    with pytest.raises(ValueError):
        sparse_validified_contour(SparseDemoConfig(y=(1.0, 0.3), mc_reps=5_000))


def test_config_validation():
    with pytest.raises(ValueError):
        SparseDemoConfig(y=(1.0, 0.3, 0.5))
    with pytest.raises(ValueError):
        SparseDemoConfig(eps=0.0)
    with pytest.raises(ValueError):
        SparseDemoConfig(dim=0, y=())


def test_region_area_full_grid_for_constant_contour():
    from valim.core import FunctionContour

    ones = FunctionContour(fn=lambda t: np.ones(np.asarray(t).shape[:-1]), dim=2,
                           box=((-2.5, 4.5), (-2.5, 4.5)))
    area = region_area(ones, 0.9, CFG.grid)
    assert area == pytest.approx(CFG.grid.points().shape[0] * CFG.grid.cell, abs=1e-9)


def test_region_area_matches_disc():
    c = vacuous_contour_mv(MvNormalModel(2), (1.0, 0.3))
    got = region_area(c, 0.1, CFG.grid)
    want = math.pi * (-2.0 * math.log(0.1))
    assert abs(got - want) <= 0.02 * want


def test_sparse_region_smaller_than_vacuous():
    vac = region_area(vacuous_contour_mv(MvNormalModel(2), (1.0, 0.3)), 0.1, CFG.grid)
    tno = region_area(sparse_tnorm_contour(CFG), 0.1, CFG.grid)
    assert tno < vac
