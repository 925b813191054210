"""Series validation, the package PRNG, and bootstrap resampling.

Every stochastic component in the package draws from numpy's PCG64 bit
generator seeded explicitly, so any (input, seed) pair reproduces bit-for-bit
across runs and platforms.  Derived streams (bootstrap replicates, oracle
replicates, harness arms) offset the base seed by a documented integer.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidSeriesError

__all__ = ["as_series", "make_rng", "bootstrap"]


def as_series(values) -> np.ndarray:
    """Validate and return a series as a float ndarray.

    Accepts any one-dimensional array-like of finite reals with length >= 1.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise InvalidSeriesError(f"series must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise InvalidSeriesError("series must contain at least one value")
    if not np.all(np.isfinite(arr)):
        raise InvalidSeriesError("series contains non-finite values")
    return arr


def make_rng(seed: int) -> np.random.Generator:
    """The package-wide PRNG: numpy Generator over PCG64 with explicit seed."""
    return np.random.Generator(np.random.PCG64(seed))


def bootstrap(values, seed: int) -> np.ndarray:
    """Sample-with-replacement copy of the series, same length.

    Indices are drawn rather than values, so affine transformations of the
    input commute with resampling under a fixed seed.  Every output element
    equals some input element bitwise.
    """
    arr = as_series(values)
    rng = make_rng(seed)
    idx = rng.integers(0, arr.size, size=arr.size)
    return arr[idx]
