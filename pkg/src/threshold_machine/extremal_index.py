"""Extremal index estimation from inter-exceedance times.

At high cutoffs the normalized inter-exceedance times of a dependent
stationary sequence follow a mixture: with probability 1 - theta a point mass
at zero (same-cluster arrivals), otherwise an exponential with rate theta.
Writing T_1..T_{n_u - 1} for the index gaps, p for the exceedance rate,
n_c for the count of gaps with T - 1 != 0, and

    a = n_u - n_c - 1,   b = 2 * n_c,   c = p * sum(T_k - 1),

the log likelihood is

    log L(theta) = a*log(1 - theta) + b*log(theta) - theta*c

with the convention 0*log 0 = 0 at the boundaries.  Its exact maximizer over
(0, 1] is the smaller root of the stationarity quadratic

    c*theta^2 - (a + b + c)*theta + b = 0,

computed here in the cancellation-free form 2b / (s + sqrt(s^2 - 4bc)) with
s = a + b + c.  (The discriminant equals (a + b - c)^2 + 4ac >= 0, and the
smaller root always lies in (0, 1]: the quadratic is positive at 0 and
non-positive at 1.)
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DtmError, FitWarning, NoClustersError
from .exceedance import GapSet

__all__ = ["ThetaEstimate", "theta_log_likelihood", "theta_closed_form"]


class InvalidThetaError(DtmError):
    code = "invalid-theta"


@dataclass(frozen=True)
class ThetaEstimate:
    """Estimated extremal index with its gap bookkeeping."""

    theta: float  # in (0, 1]
    n_u: int
    n_c: int  # gaps with T - 1 != 0
    clamped: bool


def _gap_stats(g: GapSet) -> tuple[int, int, int, float]:
    n_u = g.n_u
    n_c = int(np.sum(g.gaps > 1))
    a = n_u - n_c - 1
    c = g.rate * float(np.sum(g.gaps - 1))
    return n_u, n_c, a, c


def theta_log_likelihood(theta: float, g: GapSet) -> float:
    """Log likelihood of the exponential/point-mass mixture at ``theta``."""
    if not (0.0 < theta <= 1.0) or not np.isfinite(theta):
        raise InvalidThetaError(f"theta must lie in (0, 1], got {theta}")
    if len(g.gaps) < 1:
        raise InvalidThetaError("need at least one gap")
    _, n_c, a, c = _gap_stats(g)
    b = 2 * n_c
    if theta == 1.0:
        first = 0.0 if a == 0 else -math.inf
    else:
        first = a * math.log1p(-theta)
    second = 0.0 if b == 0 else b * math.log(theta)
    return first + second - theta * c


def theta_closed_form(g: GapSet) -> ThetaEstimate:
    """Closed-form maximizer of the mixture likelihood over (0, 1].

    Requires at least one gap with T - 1 != 0 (``n_c >= 1``); otherwise the
    likelihood degenerates toward theta = 0 and a no-clusters error is raised.
    """
    if len(g.gaps) < 1:
        raise InvalidThetaError("need at least one gap")
    n_u, n_c, a, c = _gap_stats(g)
    if n_c == 0:
        raise NoClustersError(
            "every inter-exceedance gap equals 1; extremal index degenerates at 0"
        )
    b = 2 * n_c
    if c <= 0:
        # unreachable when n_c >= 1 (some gap exceeds 1, so sum(T-1) > 0 and
        # rate > 0); kept as a defensive report
        warnings.warn("degenerate denominator in extremal index estimate", FitWarning,
                      stacklevel=2)
        return ThetaEstimate(theta=1.0, n_u=n_u, n_c=n_c, clamped=True)
    s = a + b + c
    raw = 2.0 * b / (s + math.sqrt(s * s - 4.0 * b * c))
    clamped = not (0.0 < raw <= 1.0)
    theta = min(max(raw, np.finfo(float).tiny), 1.0)
    return ThetaEstimate(theta=float(theta), n_u=n_u, n_c=n_c, clamped=clamped)
