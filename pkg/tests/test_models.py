import numpy as np
import pytest
from hypothesis import given, strategies as st

import _oracles as oracle
from valim import (
    MvNormalModel,
    Observation,
    ScalarNormalModel,
    plausibility_region,
    sample,
    vacuous_contour,
    vacuous_contour_mv,
    vacuous_contour_scalar,
)
from valim.models import sample_reps
from valim.numerics import std_normal_quantile
from valim.rng import stream

M10 = ScalarNormalModel(10)
MV2 = MvNormalModel(2)


def test_scalar_contour_values():
    c = vacuous_contour_scalar(M10, 1.5)
    assert c(1.5) == 1.0
    # 0.0015654022580025018 = 2(1 - Phi(sqrt(10))), erf oracle
    assert c(0.5) == pytest.approx(0.0015654022580025018, abs=1e-12)
    assert c(1.5 + 0.6197950323045613) == pytest.approx(0.05, abs=1e-9)
    assert c(1.5 - 0.6197950323045613) == pytest.approx(0.05, abs=1e-9)


def test_mv_contour_values():
    c = vacuous_contour_mv(MV2, (1.0, 0.3))
    assert c((1.0, 0.3)) == 1.0
    assert c((1.0, 0.0)) == pytest.approx(0.9559974818331, abs=1e-10)
    assert c((0.0, 0.0)) == pytest.approx(0.5798417833398464, abs=1e-10)


@given(st.floats(-2.0, 2.0), st.floats(0.001, 2.0), st.floats(0.001, 2.0))
def test_scalar_contour_decreasing_in_distance(y, d1, d2):
    c = vacuous_contour_scalar(M10, y)
    near, far = sorted((d1, d2))
    if near == far:
        return
    assert c(y + near) > c(y + far) - 1e-15
    assert c(y - near) == pytest.approx(c(y + near), abs=1e-12)


@given(st.floats(0.001, 2.0), st.floats(0.001, 2.0))
def test_mv_contour_decreasing_in_distance(r1, r2):
    c = vacuous_contour_mv(MV2, (0.0, 0.0))
    near, far = sorted((r1, r2))
    if near == far:
        return
    assert c((near, 0.0)) > c((far, 0.0)) - 1e-15
    # radial symmetry: same norm, same value
    assert c((0.0, near)) == pytest.approx(c((near, 0.0)), abs=1e-12)


def test_half_width_is_quantile_over_root_n():
    c = vacuous_contour_scalar(M10, 0.7)
    (lo, hi), = plausibility_region(c, 0.05).intervals
    hw = std_normal_quantile(0.975) / np.sqrt(10.0)
    assert hi - 0.7 == hw
    assert 0.7 - lo == hw


def test_ks_uniformity_scalar():
    # pi_Y(theta) = pi_theta(Y) by symmetry, so one contour serves all draws
    th = 0.4
    ys = sample_reps(M10, th, 100_000, stream(11, 0))
    u = np.sort(vacuous_contour_scalar(M10, th)(ys))
    assert oracle.ks_distance(u) <= 1.36 / np.sqrt(100_000) * 1.5


def test_ks_uniformity_mv():
    th = (1.0, 0.3)
    ys = sample_reps(MV2, th, 100_000, stream(12, 0))
    u = np.sort(vacuous_contour_mv(MV2, th)(ys))
    assert oracle.ks_distance(u) <= 1.36 / np.sqrt(100_000) * 1.5


def test_sampling_moments():
    ys = sample_reps(M10, 0.0, 1_000_000, stream(13, 0))
    assert ys.var(ddof=1) == pytest.approx(0.1, abs=3 * np.sqrt(2.0) * 0.1 / 1000.0)
    zs = sample_reps(MV2, (1.0, 0.3), 1_000_000, stream(14, 0))
    assert np.allclose(zs.mean(axis=0), (1.0, 0.3), atol=3e-3)


def test_sample_deterministic():
    a = sample(M10, 0.0, stream(5, 0))
    b = sample(M10, 0.0, stream(5, 0))
    assert a == b
    assert a.scalar == pytest.approx(float(sample_reps(M10, 0.0, 1, stream(5, 0))[0]))


def test_dispatch_and_validation():
    assert vacuous_contour(M10, 1.5).peak == 1.5
    assert vacuous_contour(MV2, (0.0, 0.0)).dim == 2
    with pytest.raises(ValueError):
        ScalarNormalModel(0)
    with pytest.raises(ValueError):
        MvNormalModel(-1)
    with pytest.raises(ValueError):
        Observation((np.nan,))
    with pytest.raises(ValueError):
        vacuous_contour_mv(MV2, (1.0, 2.0, 3.0))
