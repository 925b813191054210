"""Brute-force ground truth for the distribution of the series maximum.

Simulates L independent series from a generator spec (replicate j drawing
from seed + j), records each maximum, and exposes the empirical distribution:
the expensive reference that the one-sample pipeline is meant to replace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidQuantileError, InvalidSpecError
from .evt_core import TailModel, model_max_cdf
from .generators import GeneratorSpec, generate

__all__ = ["EmpiricalMaxDist", "empirical_max_cdf", "mc_threshold", "sup_norm_gap"]


@dataclass(frozen=True)
class EmpiricalMaxDist:
    """Sorted maxima of L independently generated series."""

    maxima: np.ndarray  # sorted nondecreasing, length L
    L: int
    spec: GeneratorSpec

    def cdf(self, x) -> np.ndarray:
        """Right-continuous empirical CDF of the maxima."""
        return np.searchsorted(self.maxima, np.asarray(x, dtype=float), side="right") / self.L

    def to_csv(self, path) -> None:
        """Dump (max, empirical CDF) rows for external plotting."""
        rows = np.column_stack([self.maxima, self.cdf(self.maxima)])
        np.savetxt(path, rows, delimiter=",", comments="", header="max,empirical_cdf")


def empirical_max_cdf(spec: GeneratorSpec, L: int) -> EmpiricalMaxDist:
    """Empirical distribution of the max over L replicates of ``spec``."""
    if L < 1:
        raise InvalidSpecError(f"L must be >= 1, got {L}")
    maxima = np.empty(L)
    for j in range(L):
        maxima[j] = np.max(generate(spec.with_seed(spec.seed + j)))
    maxima.sort()
    return EmpiricalMaxDist(maxima=maxima, L=L, spec=spec)


def mc_threshold(dist: EmpiricalMaxDist, alpha: float) -> float:
    """Nearest-rank (1 - alpha) quantile of the simulated maxima."""
    if not (0.0 < alpha < 1.0):
        raise InvalidQuantileError(f"alpha must lie in (0, 1), got {alpha}")
    q = (1.0 - alpha) * dist.L
    nearest = round(q)
    k = nearest if abs(q - nearest) < 1e-9 * max(1.0, q) and nearest >= 1 else math.ceil(q)
    k = min(max(k, 1), dist.L)
    return float(dist.maxima[k - 1])


def sup_norm_gap(dist: EmpiricalMaxDist, model: TailModel) -> float:
    """Sup over the simulated maxima of |empirical CDF - model max CDF|."""
    emp = dist.cdf(dist.maxima)
    mod = model_max_cdf(model, dist.maxima)
    return float(np.max(np.abs(emp - mod)))
