"""The three-stage threshold pipeline.

Given a stationary series and a level alpha, the pipeline (i) bootstraps the
series to break local dependence, (ii) fits the tail parameters on the
bootstrap exceedances above a single cutoff u, (iii) estimates the extremal
index from the original series' inter-exceedance times above the same u, and
returns the threshold

    x = C^-1( -log(1 - alpha) / theta )

so that the fitted max distribution satisfies G(x)^theta = 1 - alpha.

Also provides the ARL <-> alpha mapping used by sequential detection and
upper/lower confidence bounds for the maximum of a sequence.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidConfigError, TooFewExceedancesError
from .evt_core import GevParams, TailModel, invert_tail
from .exceedance import WARN_EXCEEDANCES, extract, gaps, quantile_cutoff
from .extremal_index import ThetaEstimate, theta_closed_form
from .gev_fit import FitDiagnostics, FitOptions, fit
from .resample import as_series, bootstrap

__all__ = ["DtmConfig", "ThresholdReport", "run_dtm", "arl_to_alpha", "confidence_bounds"]


@dataclass(frozen=True)
class DtmConfig:
    """Configuration of one pipeline run.

    The cutoff is the ``cutoff_quantile`` empirical quantile of the input
    unless an explicit ``cutoff`` overrides it.  With ``bootstrap_reps > 1``
    the tail parameters are averaged over that many bootstrap fits, replicate
    r drawing from seed + r.
    """

    alpha: float
    cutoff_quantile: float = 0.95
    cutoff: float | None = None
    seed: int = 0
    bootstrap_reps: int = 1
    min_exceedances: int = 10
    fix_xi: float | None = None

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise InvalidConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (0.0 < self.cutoff_quantile < 1.0):
            raise InvalidConfigError(
                f"cutoff_quantile must lie in (0, 1), got {self.cutoff_quantile}"
            )
        if self.bootstrap_reps < 1:
            raise InvalidConfigError("bootstrap_reps must be >= 1")
        if self.min_exceedances < 2:
            raise InvalidConfigError("min_exceedances must be >= 2")


@dataclass(frozen=True)
class ThresholdReport:
    """Pipeline output: the threshold plus everything needed to audit it."""

    threshold: float
    model: TailModel
    gev_diag: FitDiagnostics
    theta_est: ThetaEstimate
    warnings: tuple[str, ...]
    config: DtmConfig


def _sample_size_bound(alpha: float) -> float:
    # Heuristic floor on n for the alpha-tail of the max to be resolvable;
    # grows like 1/alpha^2 for small alpha.
    tau = -math.log1p(-alpha)
    return math.exp(tau) / (tau * tau)


def run_dtm(series, cfg: DtmConfig) -> ThresholdReport:
    """Run the full pipeline and return the threshold report.

    A single cutoff computed from the original series is reused for both the
    bootstrap fit and the extremal index stage.  Non-fatal issues (few
    exceedances, non-convergence, clamped theta, small sample) are reported
    as warning codes; hard failures raise.
    """
    s = as_series(series)
    n = s.size
    warn_codes: list[str] = []

    u = cfg.cutoff if cfg.cutoff is not None else quantile_cutoff(s, cfg.cutoff_quantile)

    if n < _sample_size_bound(cfg.alpha):
        warn_codes.append("small-sample")

    opts = FitOptions(min_exceedances=cfg.min_exceedances, fix_xi=cfg.fix_xi)
    fits: list[GevParams] = []
    diags: list[FitDiagnostics] = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for r in range(cfg.bootstrap_reps):
            star = bootstrap(s, cfg.seed + r)
            params_r, diag_r = fit(extract(star, u), opts)
            fits.append(params_r)
            diags.append(diag_r)
    params = GevParams(
        mu=float(np.mean([p.mu for p in fits])),
        sigma=float(np.mean([p.sigma for p in fits])),
        xi=float(np.mean([p.xi for p in fits])),
    )
    diag = diags[0]
    if not all(d.converged for d in diags):
        warn_codes.append("non-convergence")
        diag = replace(diag, converged=False)
    if diag.n_u_used < WARN_EXCEEDANCES:
        warn_codes.append("few-exceedances")

    exc = extract(s, u)
    if exc.n_u < cfg.min_exceedances:
        raise TooFewExceedancesError(
            f"original series has {exc.n_u} exceedances above u={u}, "
            f"need {cfg.min_exceedances}"
        )
    theta_est = theta_closed_form(gaps(exc))
    if theta_est.clamped:
        warn_codes.append("theta-clamped")

    y = -math.log1p(-cfg.alpha) / theta_est.theta
    threshold = invert_tail(params, y)
    model = TailModel(params=params, theta=theta_est.theta, cutoff=float(u), horizon=n)
    return ThresholdReport(
        threshold=float(threshold),
        model=model,
        gev_diag=diag,
        theta_est=theta_est,
        warnings=tuple(warn_codes),
        config=cfg,
    )


def arl_to_alpha(n: int, arl: float) -> float:
    """Map an average run length constraint to a level for an n-long window.

    A sequential detector whose stopping time is asymptotically exponential
    false-alarms within n steps with probability 1 - exp(-n / ARL).
    """
    if n < 1:
        raise InvalidConfigError(f"window length must be >= 1, got {n}")
    if not (arl > 0) or not math.isfinite(arl):
        raise InvalidConfigError(f"arl must be positive, got {arl}")
    return -math.expm1(-n / arl)


def confidence_bounds(series, delta: float, cfg: DtmConfig) -> tuple[float, float]:
    """(lcb, ucb) for the maximum of a series at confidence delta.

    ucb solves P{max > x} = delta (the pipeline threshold at alpha = delta);
    lcb solves P{max < x} = delta on the same fitted model.  For delta < 1/2
    lcb < ucb; at delta = 1/2 the two coincide at the median of the fitted
    max distribution.
    """
    report = run_dtm(series, replace(cfg, alpha=delta))
    theta = report.theta_est.theta
    lcb = invert_tail(report.model.params, -math.log(delta) / theta)
    return float(lcb), report.threshold
