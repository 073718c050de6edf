"""
Mathematical helpers used throughout the application.
Reused by estimators, the test statistic, resampling and experiments - one implementation.
"""

import math
from typing import Iterable

import numpy as np
from scipy import stats


def falling_factorial(n: int, k: int) -> int:
    """
    n(n-1)...(n-k+1), the number of ordered k-tuples of distinct indices.

    Args:
        n: Population size
        k: Tuple length

    Returns:
        The falling factorial (0 when k > n)
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return math.perm(n, k)


def exact_sum(values: Iterable[float]) -> float:
    """Exactly rounded sum (math.fsum); the result does not depend on summation order."""
    return math.fsum(values)


def exact_mean(values: np.ndarray) -> float:
    """Mean built on exact_sum"""
    values = np.asarray(values, dtype=np.float64).ravel()
    return exact_sum(values.tolist()) / values.size


def sample_variance(values: np.ndarray) -> float:
    """
    Sample variance with divisor n - 1.

    Args:
        values: At least two finite numbers

    Returns:
        (1 / (n - 1)) * sum (x - mean)^2, exactly 0.0 when all values coincide
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size < 2:
        raise ValueError(f"Sample variance needs at least 2 values, got {values.size}")
    # fsum mean of equal values can round off the value itself
    if np.all(values == values[0]):
        return 0.0
    center = exact_mean(values)
    return exact_sum(((values - center) ** 2).tolist()) / (values.size - 1)


def normal_upper_tail(z: float) -> float:
    """1 - Phi(z), evaluated through the complementary error function (scipy)"""
    return float(stats.norm.sf(z))


def normal_quantile(p: float) -> float:
    """z such that Phi(z) = p"""
    return float(stats.norm.ppf(p))


def mc_standard_error(rate: float, replications: int) -> float:
    """Monte Carlo standard error sqrt(p(1-p)/J) of an estimated proportion"""
    if replications < 1:
        raise ValueError(f"Replications must be positive, got {replications}")
    return math.sqrt(rate * (1.0 - rate) / replications)
