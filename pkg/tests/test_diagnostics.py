import math
from types import SimpleNamespace

import numpy as np
import pytest

from valim import (
    CdfReport,
    FiniteCredalSet,
    IntervalPrior,
    JointSampler,
    ScalarNormalModel,
    combiner_family,
    conditional_validity,
    contraction_check,
    coverage_length,
    validity_cdf,
)
from valim.combiners import gbayes_upper_each
from valim.core import full_line, interval
from valim.diagnostics import default_alpha_grid
from valim.priors import FocalPrior, interval_compatible, normal_compatible

M10 = ScalarNormalModel(10)
P12 = IntervalPrior(1.0, 2.0, 0.1)
VAC = combiner_family("vacuous", M10)


def _js(reps, seed):
    return JointSampler(prior=interval_compatible(P12), model=M10, reps=reps, seed=seed)


def test_default_alpha_grid():
    g = default_alpha_grid()
    assert g[0] == 0.0 and g[-1] == 1.0 and g.size == 101
    assert 0.05 in g


def test_joint_sampler_validation():
    with pytest.raises(ValueError):
        JointSampler(prior=interval_compatible(P12), model=M10, reps=0, seed=0)


def test_cdf_report_validation():
    g = np.array([0.0, 0.5, 1.0])
    CdfReport(alphas=g, cdf=np.array([0.0, 0.4, 1.0]), stderr=np.zeros(3), reps=10, seed=0)
    with pytest.raises(ValueError):
        CdfReport(alphas=g, cdf=np.array([0.0, 0.6, 0.5]), stderr=np.zeros(3), reps=10, seed=0)
    with pytest.raises(ValueError):
        CdfReport(alphas=g, cdf=np.array([0.0, 0.5, 1.2]), stderr=np.zeros(3), reps=10, seed=0)


def test_vacuous_validity_cdf_is_uniform():
    rep = validity_cdf(VAC, _js(100_000, 2))
    ks = float(np.max(np.abs(rep.cdf - rep.alphas)))
    assert ks <= 1.36 / math.sqrt(100_000) * 1.5


def test_paired_fast_path_matches_plain_builder():
    js = _js(200, 4)
    fast = validity_cdf(VAC, js)
    slow = validity_cdf(VAC.build, js)
    assert np.array_equal(fast.cdf, slow.cdf)


def test_constant_contour_cdf_is_step():
    fam = SimpleNamespace(paired=lambda ys, ths: np.ones(np.asarray(ys).shape), build=None)
    rep = validity_cdf(fam, _js(500, 1))
    assert np.all(rep.cdf[rep.alphas < 1.0] == 0.0)
    assert rep.cdf[-1] == 1.0


def test_coverage_matches_one_minus_cdf():
    js = _js(4_000, 3)
    cov = coverage_length(VAC, js, alpha=0.05)
    cdf = validity_cdf(VAC, js)
    at = float(cdf.cdf[np.where(cdf.alphas == 0.05)[0][0]])
    # same draws on both paths, so the identity is exact
    assert cov.coverage == pytest.approx(1.0 - at, abs=1e-12)
    assert abs(cov.coverage - 0.95) <= 3.0 * cov.stderr_cov + 0.005


def test_vacuous_region_length_is_constant():
    cov = coverage_length(VAC, _js(300, 6), alpha=0.05)
    assert cov.mean_length == pytest.approx(1.2395900646091227, abs=1e-12)
    # endpoints are y +/- radius, so lengths agree only to rounding error
    assert cov.stderr_len <= 1e-15
    assert cov.im == "vacuous"


def test_reports_identical_across_thread_counts():
    js = _js(30_000, 7)
    one = validity_cdf(VAC, js, threads=1)
    four = validity_cdf(VAC, js, threads=4)
    assert np.array_equal(one.cdf, four.cdf)
    c1 = coverage_length(VAC, _js(2_000, 8), alpha=0.1, threads=1)
    c2 = coverage_length(VAC, _js(2_000, 8), alpha=0.1, threads=2)
    assert c1.coverage == c2.coverage and c1.mean_length == c2.mean_length


def _posterior_prob(a):
    credal = FiniteCredalSet(((0.0, 1.0),))

    def post(ys):
        return gbayes_upper_each(credal, M10, a, ys)

    return post


def test_conditional_validity_wide_assertion_holds():
    a = interval(1.0, 5.0)
    rep = conditional_validity(_posterior_prob(a), normal_compatible(0.0, 1.0), M10, a,
                               reps=20_000, seed=5)
    assert rep.hits > 500 and not rep.low_hits
    assert np.all(rep.cdf <= rep.alphas + 3.0 * rep.stderr + 1e-12)


def test_conditional_validity_tight_assertion_fails():
    a = interval(1.0, 1.5)
    rep = conditional_validity(_posterior_prob(a), normal_compatible(0.0, 1.0), M10, a,
                               reps=20_000, seed=5)
    assert np.any(rep.cdf > rep.alphas + 3.0 * rep.stderr)


def test_conditional_validity_full_space_trivial():
    a = full_line()
    rep = conditional_validity(_posterior_prob(a), normal_compatible(0.0, 1.0), M10, a,
                               reps=2_000, seed=5)
    assert np.all(rep.cdf[rep.alphas < 1.0] == 0.0)


def test_conditional_validity_low_hits_widens_errors():
    a = interval(3.0, 3.3)
    rep = conditional_validity(_posterior_prob(a), normal_compatible(0.0, 1.0), M10, a,
                               reps=20_000, seed=5)
    assert 0 < rep.hits < 500
    assert rep.low_hits


def test_conditional_validity_no_hits_raises():
    a = interval(50.0, 60.0)
    with pytest.raises(ValueError):
        conditional_validity(_posterior_prob(a), normal_compatible(0.0, 1.0), M10, a,
                             reps=1_000, seed=5)


ALPHAS = np.linspace(0.05, 0.95, 19)


def test_contraction_vacuous_never_flags():
    rep = contraction_check(VAC, P12, M10, interval(1.2, 1.8),
                            theta_grid=np.linspace(1.2, 1.8, 7),
                            alpha_grid=ALPHAS, reps=1_500, seed=0)
    assert not rep.flagged
    assert math.isnan(rep.flag_alpha)


def test_contraction_constant_contour_flags_at_its_level():
    fam = SimpleNamespace(upper_each=lambda ys, a: np.full(np.asarray(ys).shape, 0.3))
    rep = contraction_check(fam, P12, M10, interval(1.2, 1.8),
                            theta_grid=np.linspace(1.2, 1.8, 7),
                            alpha_grid=np.linspace(0.1, 0.9, 9), reps=200, seed=0)
    assert rep.flagged
    assert rep.flag_alpha == pytest.approx(0.3)


def test_contraction_flags_precise_bayes_on_far_assertion():
    # the conjugate posterior of (4, 4.5) is capped near 0.59 whatever the
    # data, so relative to vacuous prior knowledge it contracts almost surely
    vac_prior = FocalPrior(((full_line(), 1.0),))
    fam = combiner_family("gbayes", M10, FiniteCredalSet(((0.0, 1.0),)))
    rep = contraction_check(fam, vac_prior, M10, interval(4.0, 4.5),
                            theta_grid=np.linspace(4.0, 4.5, 6),
                            alpha_grid=ALPHAS, reps=2_000, seed=0)
    assert rep.flagged
    assert rep.q_upper == 1.0
    assert rep.flag_alpha == pytest.approx(0.6)


def test_contraction_empty_grid_raises():
    with pytest.raises(ValueError):
        contraction_check(VAC, P12, M10, interval(1.2, 1.8),
                          theta_grid=np.array([0.0, 3.0]),
                          alpha_grid=ALPHAS, reps=100, seed=0)
