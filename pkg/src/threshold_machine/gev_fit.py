"""Tail parameter estimation from exceedance heights.

The likelihood is that of a marked Poisson process over normalized time
(0, 1] with intensity ``C(x)`` above the cutoff: exceedance indices carry no
information once the cutoff is fixed, so the negative log likelihood depends
only on the heights and the cutoff,

    NLL = C(u) + sum_k [ log sigma + (1/xi + 1) * log(1 + xi*(h_k - mu)/sigma) ]

with the Gumbel limit substituted when ``|xi|`` is below the branch tolerance.

The optimizer is a derivative-free simplex descent (Nelder-Mead) over
``(mu, log sigma, xi)``.  Fitting happens in a standardized frame (heights
centered and scaled by the moment initializer), which makes the optimizer
trajectory invariant under affine transformations of the data, so fitted
parameters are affine-equivariant to floating-point precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import DegenerateHeightsError, FitWarning, SmallSampleWarning, TooFewExceedancesError
from .evt_core import XI_GUMBEL_TOL, GevParams
from .exceedance import MIN_EXCEEDANCES, WARN_EXCEEDANCES, ExceedanceSet

__all__ = ["FitOptions", "FitDiagnostics", "neg_log_likelihood", "mom_init", "fit"]

EULER_GAMMA = 0.57721566490153286

# Simplex vertices around the standardized init (mu', log sigma', xi) = 0.
_INIT_STEPS = np.array([
    [0.0, 0.0, 0.0],
    [0.5, 0.0, 0.0],
    [0.0, 0.5, 0.0],
    [0.0, 0.0, 0.1],
])


@dataclass(frozen=True)
class FitOptions:
    """Knobs of the simplex fit; defaults match the module contract.

    ``fix_xi`` pins the shape parameter and fits only location and scale:
    the standard restriction for series whose exceedances cannot identify
    curvature (bounded kernel statistics, lattice-valued data).
    """

    min_exceedances: int = MIN_EXCEEDANCES
    fatol: float = 1e-9
    xatol: float = 1e-6
    max_iter: int = 2000
    restart: bool = True
    fix_xi: float | None = None


@dataclass(frozen=True)
class FitDiagnostics:
    neg_log_lik: float
    iterations: int
    converged: bool
    init: GevParams
    n_u_used: int


def _nll_heights(mu: float, sigma: float, xi: float, heights: np.ndarray, u: float) -> float:
    """NLL evaluated on raw (mu, sigma, xi); +inf outside the support."""
    if sigma <= 0 or not np.isfinite(sigma):
        return math.inf
    if abs(xi) < XI_GUMBEL_TOL:
        zu = (u - mu) / sigma
        # exp(-zu) can overflow for absurd mu; treat as infeasible
        if -zu > 700:
            return math.inf
        return math.exp(-zu) + heights.size * math.log(sigma) + float(np.sum((heights - mu) / sigma))
    bu = 1.0 + xi * (u - mu) / sigma
    bh = 1.0 + xi * (heights - mu) / sigma
    if bu <= 0 or np.any(bh <= 0):
        return math.inf
    cu = math.exp(-math.log(bu) / xi)
    return cu + heights.size * math.log(sigma) + (1.0 / xi + 1.0) * float(np.sum(np.log(bh)))


def neg_log_likelihood(params: GevParams, exc: ExceedanceSet) -> float:
    """Negative log likelihood of the marked Poisson model.

    Returns the +inf sentinel when the support constraint is violated, so
    optimizers see the constraint as a barrier rather than an exception.
    """
    if exc.n_u < 1:
        raise TooFewExceedancesError("likelihood needs at least one exceedance")
    return _nll_heights(params.mu, params.sigma, params.xi, exc.heights, exc.cutoff)


def mom_init(exc: ExceedanceSet) -> GevParams:
    """Gumbel method-of-moments start: avoids the discontinuity at xi = 0.

    sigma0 = sqrt(6) * stdev / pi,  mu0 = mean - gamma * sigma0,  xi0 = 0.
    """
    if exc.n_u < 2:
        raise TooFewExceedancesError("moment initialization needs at least 2 exceedances")
    sd = float(np.std(exc.heights, ddof=1))
    if sd == 0.0:
        raise DegenerateHeightsError("all exceedance heights are equal")
    sigma0 = math.sqrt(6.0) * sd / math.pi
    mu0 = float(np.mean(exc.heights)) - EULER_GAMMA * sigma0
    return GevParams(mu=mu0, sigma=sigma0, xi=0.0)


def _minimize_from(x0: np.ndarray, heights: np.ndarray, u: float, opts: FitOptions):
    if opts.fix_xi is None:
        def objective(v):
            return _nll_heights(v[0], math.exp(v[1]), v[2], heights, u)
        steps = _INIT_STEPS
    else:
        def objective(v):
            return _nll_heights(v[0], math.exp(v[1]), opts.fix_xi, heights, u)
        x0 = x0[:2]
        steps = _INIT_STEPS[:3, :2]

    return minimize(
        objective,
        x0=x0,
        method="Nelder-Mead",
        options={
            "fatol": opts.fatol,
            "xatol": opts.xatol,
            "maxiter": opts.max_iter,
            "initial_simplex": x0 + steps,
        },
    )


def fit(exc: ExceedanceSet, opts: FitOptions | None = None) -> tuple[GevParams, FitDiagnostics]:
    """Maximum likelihood fit of (mu, sigma, xi) from exceedance heights.

    Starts at the moment initializer and descends in the standardized frame.
    If the first descent does not converge, one restart runs from a perturbed
    start (sigma scaled by 1.1, xi shifted by 0.1) and the lower of the two
    minima wins.  The returned NLL never exceeds the NLL at initialization.
    """
    opts = opts or FitOptions()
    if exc.n_u < opts.min_exceedances:
        raise TooFewExceedancesError(
            f"fit needs at least {opts.min_exceedances} exceedances, got {exc.n_u}"
        )
    if exc.n_u < WARN_EXCEEDANCES:
        warnings.warn(
            f"only {exc.n_u} exceedances; tail estimates may be unstable",
            SmallSampleWarning,
            stacklevel=2,
        )

    init = mom_init(exc)
    # standardized frame: center = mu0, scale = sigma0, so the start is (0,0,0)
    center, scale = init.mu, init.sigma
    h = (exc.heights - center) / scale
    u = (exc.cutoff - center) / scale

    res = _minimize_from(np.zeros(3), h, u, opts)
    best = res
    if not res.success and opts.restart:
        restart_x0 = np.array([0.0, math.log(1.1), 0.1])
        res2 = _minimize_from(restart_x0, h, u, opts)
        if res2.fun < best.fun:
            best = res2

    xi_init = opts.fix_xi if opts.fix_xi is not None else 0.0
    nll_init = _nll_heights(0.0, 1.0, xi_init, h, u)
    if best.fun <= nll_init:
        mu_s, log_sigma_s = best.x[0], best.x[1]
        xi_hat = best.x[2] if opts.fix_xi is None else opts.fix_xi
        nll_std = float(best.fun)
    else:
        mu_s, log_sigma_s, xi_hat = 0.0, 0.0, xi_init
        nll_std = nll_init

    params = GevParams(
        mu=center + scale * mu_s,
        sigma=scale * math.exp(log_sigma_s),
        xi=float(xi_hat),
    )
    converged = bool(best.success)
    if not converged:
        warnings.warn("simplex descent hit the iteration limit", FitWarning, stacklevel=2)
    # NLL in data units: standardization shifts it by n_u * log(scale)
    diag = FitDiagnostics(
        neg_log_lik=nll_std + exc.n_u * math.log(scale),
        iterations=int(best.nit),
        converged=converged,
        init=init,
        n_u_used=exc.n_u,
    )
    return params, diag
