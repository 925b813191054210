"""Tests for the end-to-end pipeline, ARL mapping, and confidence bounds."""

import warnings

import numpy as np
import pytest

from threshold_machine import (
    DtmConfig,
    GeneratorSpec,
    InvalidConfigError,
    TooFewExceedancesError,
    arl_to_alpha,
    confidence_bounds,
    generate,
    model_max_cdf,
    run_dtm,
)


def chi2_series(n=5000, seed=0):
    return generate(GeneratorSpec.chi_square(1, n, seed))


class TestDtmConfig:
    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.1, 1.1])
    def test_alpha_domain(self, alpha):
        with pytest.raises(InvalidConfigError):
            DtmConfig(alpha=alpha)

    def test_quantile_domain(self):
        with pytest.raises(InvalidConfigError):
            DtmConfig(alpha=0.05, cutoff_quantile=1.0)

    def test_bootstrap_reps_floor(self):
        with pytest.raises(InvalidConfigError):
            DtmConfig(alpha=0.05, bootstrap_reps=0)


class TestRunDtm:
    def test_construction_identity(self):
        rep = run_dtm(chi2_series(), DtmConfig(alpha=0.05, seed=1))
        assert model_max_cdf(rep.model, rep.threshold) == pytest.approx(0.95, abs=1e-6)

    def test_monotone_in_alpha(self):
        s = chi2_series(seed=2)
        x_strict = run_dtm(s, DtmConfig(alpha=0.01, seed=3)).threshold
        x_loose = run_dtm(s, DtmConfig(alpha=0.05, seed=3)).threshold
        assert x_strict > x_loose

    def test_explicit_cutoff_respected(self):
        s = chi2_series(seed=4)
        rep = run_dtm(s, DtmConfig(alpha=0.05, cutoff=4.0, seed=5))
        assert rep.model.cutoff == 4.0

    def test_affine_equivariance(self):
        s = chi2_series(n=2000, seed=6)
        cfg = DtmConfig(alpha=0.05, seed=7)
        x = run_dtm(s, cfg).threshold
        a, b = 2.5, -1.0
        x_moved = run_dtm(a * s + b, cfg).threshold
        assert x_moved == pytest.approx(a * x + b, rel=1e-6)

    def test_bootstrap_averaging_changes_fit(self):
        s = chi2_series(seed=8)
        r1 = run_dtm(s, DtmConfig(alpha=0.05, seed=9, bootstrap_reps=1))
        r5 = run_dtm(s, DtmConfig(alpha=0.05, seed=9, bootstrap_reps=5))
        assert r1.model.params != r5.model.params
        assert model_max_cdf(r5.model, r5.threshold) == pytest.approx(0.95, abs=1e-6)

    def test_deterministic_given_seed(self):
        s = chi2_series(seed=10)
        cfg = DtmConfig(alpha=0.1, seed=11)
        assert run_dtm(s, cfg).threshold == run_dtm(s, cfg).threshold

    def test_too_few_exceedances_raises(self):
        with pytest.raises(TooFewExceedancesError):
            run_dtm(chi2_series(n=50, seed=12), DtmConfig(alpha=0.05))

    def test_small_sample_warning_code(self):
        # alpha = 0.01 needs n of order 1e4 by the heuristic bound
        rep = run_dtm(chi2_series(n=2000, seed=13), DtmConfig(alpha=0.01, seed=13))
        assert "small-sample" in rep.warnings

    def test_fixed_shape_passthrough(self):
        rep = run_dtm(chi2_series(seed=14), DtmConfig(alpha=0.05, seed=14, fix_xi=0.0))
        assert rep.model.params.xi == 0.0


class TestArlToAlpha:
    def test_known_mapping_value(self):
        assert arl_to_alpha(2000, 5000) == pytest.approx(1 - np.exp(-0.4), abs=1e-12)

    def test_first_order_limit(self):
        assert arl_to_alpha(1, 1_000_000) == pytest.approx(1e-6, rel=1e-3)

    def test_equal_window_and_arl(self):
        assert arl_to_alpha(1000, 1000.0) == pytest.approx(1 - np.exp(-1), abs=1e-12)

    def test_invalid_arl(self):
        with pytest.raises(InvalidConfigError):
            arl_to_alpha(100, 0.0)
        with pytest.raises(InvalidConfigError):
            arl_to_alpha(0, 100.0)


class TestConfidenceBounds:
    def test_bounds_ordered_for_small_delta(self):
        s = generate(GeneratorSpec.pareto(3.5, 500, 15))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            lcb, ucb = confidence_bounds(s, 0.005, DtmConfig(alpha=0.005, seed=16))
        assert lcb < ucb

    def test_bounds_coincide_at_half(self):
        s = chi2_series(n=2000, seed=17)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            lcb, ucb = confidence_bounds(s, 0.5, DtmConfig(alpha=0.5, seed=18))
        assert lcb == pytest.approx(ucb, rel=1e-12)

    def test_ucb_is_the_threshold(self):
        s = chi2_series(n=2000, seed=19)
        cfg = DtmConfig(alpha=0.1, seed=20)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            _, ucb = confidence_bounds(s, 0.1, cfg)
            rep = run_dtm(s, cfg)
        assert ucb == rep.threshold


class TestCoverage:
    def test_chi2_coverage_statistical(self):
        # fraction of fresh paths whose max exceeds the fitted threshold
        cfg = DtmConfig(alpha=0.05, seed=100)
        rep = run_dtm(generate(GeneratorSpec.chi_square(1, 10_000, 555)), cfg)
        exceed = 0
        trials = 200
        for j in range(trials):
            s = generate(GeneratorSpec.chi_square(1, 10_000, 70_000 + j))
            exceed += float(np.max(s)) > rep.threshold
        assert 0.01 <= exceed / trials <= 0.12
