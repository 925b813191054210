"""Evaluation of the generalized extreme value family.

The family is parameterized by location ``mu``, scale ``sigma`` and shape
``xi``.  ``xi > 0`` gives the Frechet (heavy) tail, ``xi < 0`` the Weibull
(bounded) tail and ``xi = 0`` the Gumbel limit.  Shapes with ``|xi|`` below
:data:`XI_GUMBEL_TOL` are evaluated on the Gumbel branch to avoid catastrophic
cancellation near zero.

All functions are pure and accept scalars or arrays in ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParamsError, InvalidTargetError, OutOfSupportError

__all__ = [
    "XI_GUMBEL_TOL",
    "GevParams",
    "TailModel",
    "gev_cdf",
    "tail_fn",
    "invert_tail",
    "model_max_cdf",
]

# Shapes closer to zero than this are treated as exactly Gumbel.
XI_GUMBEL_TOL = 1e-8


@dataclass(frozen=True)
class GevParams:
    """Location / scale / shape triple of the extreme value family."""

    mu: float
    sigma: float
    xi: float

    def __post_init__(self):
        if not (np.isfinite(self.mu) and np.isfinite(self.sigma) and np.isfinite(self.xi)):
            raise InvalidParamsError(f"parameters must be finite, got {self}")
        if self.sigma <= 0:
            raise InvalidParamsError(f"sigma must be > 0, got {self.sigma}")

    @property
    def is_gumbel(self) -> bool:
        return abs(self.xi) < XI_GUMBEL_TOL


@dataclass(frozen=True)
class TailModel:
    """Fitted tail model: G(x)^theta evaluated over a horizon of n samples.

    ``theta`` is the extremal index in (0, 1]; ``cutoff`` is the exceedance
    level the parameters were fitted above; ``horizon`` the series length the
    max distribution refers to.
    """

    params: GevParams
    theta: float
    cutoff: float
    horizon: int

    def __post_init__(self):
        if not (0 < self.theta <= 1) or not np.isfinite(self.theta):
            raise InvalidParamsError(f"theta must lie in (0, 1], got {self.theta}")
        if self.horizon < 1:
            raise InvalidParamsError(f"horizon must be >= 1, got {self.horizon}")


def _as_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def gev_cdf(params: GevParams, x):
    """CDF G(x) of the extreme value family.

    Outside the support the value is clamped by continuity: 0 below the lower
    endpoint (xi > 0) and 1 above the upper endpoint (xi < 0).
    """
    arr, scalar = _as_array(x)
    z = (arr - params.mu) / params.sigma
    if params.is_gumbel:
        out = np.exp(-np.exp(-z))
    else:
        bracket = 1.0 + params.xi * z
        out = np.empty_like(z)
        inside = bracket > 0
        # log-space evaluation of bracket**(-1/xi) keeps accuracy near the edge
        out[inside] = np.exp(-np.exp(-np.log(bracket[inside]) / params.xi))
        out[~inside] = 0.0 if params.xi > 0 else 1.0
    return float(out) if scalar else out


def tail_fn(params: GevParams, x):
    """Tail function C(x) = -log G(x), strictly decreasing on the support.

    Unlike :func:`gev_cdf` this errors outside the support because the
    likelihoods built on top of it are undefined there.
    """
    arr, scalar = _as_array(x)
    z = (arr - params.mu) / params.sigma
    if params.is_gumbel:
        out = np.exp(-z)
    else:
        bracket = 1.0 + params.xi * z
        if np.any(bracket <= 0):
            raise OutOfSupportError(
                f"x outside support of {params}: 1 + xi*(x-mu)/sigma must be > 0"
            )
        out = np.exp(-np.log(bracket) / params.xi)
    return float(out) if scalar else out


def invert_tail(params: GevParams, y):
    """Solve C(x) = y for x.

    ``y`` must be positive and finite; round-trips with :func:`tail_fn` to
    relative error below 1e-9.
    """
    arr, scalar = _as_array(y)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise InvalidTargetError(f"inversion target must be positive and finite, got {y}")
    if params.is_gumbel:
        out = params.mu - params.sigma * np.log(arr)
    else:
        out = params.mu + params.sigma / params.xi * (arr ** (-params.xi) - 1.0)
    return float(out) if scalar else out


def model_max_cdf(model: TailModel, x):
    """P{max of the modeled series <= x}, i.e. G(x)**theta."""
    g = gev_cdf(model.params, x)
    return g ** model.theta
