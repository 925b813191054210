"""Tests for the marked Poisson likelihood and the simplex fit."""

import math
import warnings

import numpy as np
import pytest

from threshold_machine import (
    DegenerateHeightsError,
    ExceedanceSet,
    FitOptions,
    GevParams,
    SmallSampleWarning,
    TooFewExceedancesError,
    extract,
    fit,
    mom_init,
    neg_log_likelihood,
    quantile_cutoff,
)
from threshold_machine.gev_fit import EULER_GAMMA
from threshold_machine.resample import make_rng


def exc_set(heights, u, n=None):
    heights = np.asarray(heights, dtype=float)
    n = n or len(heights) + 10
    return ExceedanceSet(
        cutoff=u,
        indices=np.arange(1, len(heights) + 1, dtype=np.int64),
        heights=heights,
        source_len=n,
    )


def gumbel_sample(mu, sigma, n, seed):
    u = make_rng(seed).random(n)
    return mu - sigma * np.log(-np.log(u))


class TestNegLogLikelihood:
    def test_gumbel_single_height(self):
        # exp(0) + (log 1 + (1.0 - 0)/1) = 2
        nll = neg_log_likelihood(GevParams(0, 1, 0), exc_set([1.0], u=0.0))
        assert nll == pytest.approx(2.0, abs=1e-12)

    def test_frechet_single_height(self):
        # C(u)=1, term = log 1 + 2 log 2
        nll = neg_log_likelihood(GevParams(0, 1, 1), exc_set([1.0], u=0.0))
        assert nll == pytest.approx(1 + 2 * math.log(2), abs=1e-12)

    def test_support_violation_is_inf_sentinel(self):
        # heights below the lower endpoint for positive shape
        p = GevParams(10.0, 0.5, 0.5)  # lower endpoint 10 - 1 = 9
        assert neg_log_likelihood(p, exc_set([8.0, 11.0], u=7.5)) == np.inf

    def test_cutoff_violation_is_inf_sentinel(self):
        p = GevParams(0.0, 1.0, -0.5)  # upper endpoint 2
        assert neg_log_likelihood(p, exc_set([1.5], u=2.5)) == np.inf

    def test_independent_of_indices(self):
        heights = [2.0, 3.0, 2.5]
        a = ExceedanceSet(1.0, np.array([1, 2, 3]), np.array(heights), 100)
        b = ExceedanceSet(1.0, np.array([10, 55, 90]), np.array(heights), 100)
        p = GevParams(2.0, 1.0, 0.1)
        assert neg_log_likelihood(p, a) == neg_log_likelihood(p, b)


class TestMomInit:
    def test_formula_inversion(self):
        # two points with sample stdev pi/sqrt(6): sigma0 = 1, mu0 = 10 - gamma
        half = math.pi / math.sqrt(6) / math.sqrt(2)  # ddof=1 stdev of {10-h, 10+h} is h*sqrt(2)
        h = np.array([10 - half, 10 + half])
        init = mom_init(exc_set(h, u=5.0))
        assert init.sigma == pytest.approx(1.0, rel=1e-12)
        assert init.mu == pytest.approx(10 - EULER_GAMMA, rel=1e-12)
        assert init.xi == 0.0

    def test_degenerate_heights(self):
        with pytest.raises(DegenerateHeightsError):
            mom_init(exc_set([4.0, 4.0, 4.0], u=1.0))

    def test_recovers_gumbel_parameters(self):
        h = gumbel_sample(3.0, 2.0, 500, seed=21)
        init = mom_init(exc_set(h, u=float(h.min()) - 1))
        assert init.mu == pytest.approx(3.0, abs=0.3)
        assert init.sigma == pytest.approx(2.0, abs=0.3)


class TestFit:
    def fit_tail(self, values, q, seed=0, **kw):
        u = quantile_cutoff(values, q)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return fit(extract(values, u), FitOptions(**kw))

    def test_exponential_type_tail(self):
        s = make_rng(31).chisquare(1, size=10_000)
        params, diag = self.fit_tail(s, 0.95)
        assert diag.converged
        assert abs(params.xi) <= 0.15

    def test_heavy_tail_sign(self):
        s = make_rng(32).standard_t(4, size=10_000)
        params, _ = self.fit_tail(s, 0.95)
        assert params.xi > 0

    def test_short_tail_sign(self):
        s = make_rng(33).beta(2, 5, size=10_000)
        params, _ = self.fit_tail(s, 0.95)
        assert params.xi < 0

    def test_monotone_improvement(self):
        s = make_rng(34).chisquare(1, size=5_000)
        u = quantile_cutoff(s, 0.95)
        e = extract(s, u)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            params, diag = fit(e)
        assert diag.neg_log_lik <= neg_log_likelihood(diag.init, e) + 1e-9

    def test_stationarity_at_interior_optimum(self):
        s = make_rng(35).chisquare(1, size=10_000)
        u = quantile_cutoff(s, 0.95)
        e = extract(s, u)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            params, diag = fit(e)
        assert diag.converged
        steps = (1e-5 * max(abs(params.mu), 1.0), 1e-5 * params.sigma, 1e-6)
        grads = []
        for i, h in enumerate(steps):
            delta = np.zeros(3)
            delta[i] = h
            hi = GevParams(params.mu + delta[0], params.sigma + delta[1], params.xi + delta[2])
            lo = GevParams(params.mu - delta[0], params.sigma - delta[1], params.xi - delta[2])
            grads.append((neg_log_likelihood(hi, e) - neg_log_likelihood(lo, e)) / (2 * h))
        # scale gradients by the parameter magnitudes and the sample size
        scaled = np.array([
            grads[0] * max(abs(params.mu), 1.0),
            grads[1] * params.sigma,
            grads[2],
        ]) / diag.n_u_used
        assert np.linalg.norm(scaled) <= 1e-3

    def test_affine_equivariance(self):
        s = make_rng(36).chisquare(1, size=5_000)
        u = quantile_cutoff(s, 0.95)
        a, b = 3.7, -2.2
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            p1, _ = fit(extract(s, u))
            p2, _ = fit(extract(a * s + b, a * u + b))
        assert p2.mu == pytest.approx(a * p1.mu + b, abs=1e-6 * max(1, abs(a * p1.mu + b)))
        assert p2.sigma == pytest.approx(a * p1.sigma, rel=1e-6)
        assert p2.xi == pytest.approx(p1.xi, abs=1e-6)

    def test_fixed_shape_fit(self):
        s = make_rng(37).chisquare(1, size=5_000)
        u = quantile_cutoff(s, 0.95)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            params, diag = fit(extract(s, u), FitOptions(fix_xi=0.0))
        assert params.xi == 0.0
        assert diag.converged

    def test_too_few_exceedances(self):
        with pytest.raises(TooFewExceedancesError):
            fit(exc_set([1.0, 2.0], u=0.5))

    def test_small_sample_warning(self):
        h = gumbel_sample(0, 1, 15, seed=38)
        with pytest.warns(SmallSampleWarning):
            fit(exc_set(h, u=float(h.min()) - 0.5))
