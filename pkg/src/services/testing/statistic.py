"""
Homogeneity statistic - T_k, its studentizer S_lhat and the normalized statistic.
One-sided: large values of the normalized statistic speak against equal parameters.
"""

import math
from typing import Optional, Sequence

import numpy as np

from ...config import constants
from ...errors import DegenerateVarianceError, InputError, InsufficientGroupsError
from ...kernels.base import Kernel
from ...models import Dataset, GroupEstimates, LinearComponents, TestResult
from ...stat_types import TestMethod
from ...utils import (
    exact_mean,
    exact_sum,
    get_logger,
    normal_quantile,
    normal_upper_tail,
    sample_variance,
)
from ..estimation import estimate_groups

logger = get_logger(__name__)

DEGENERATE_WARNING = "degenerate variance: S_lhat = 0, the normalized statistic is undefined; cannot reject"


def _require_groups(estimates: Sequence[GroupEstimates]) -> int:
    k = len(estimates)
    if k < 2:
        raise InsufficientGroupsError(f"The statistic needs at least 2 groups, got {k}")
    return k


def validate_alpha(alpha: float) -> float:
    """Nominal level must lie strictly between 0 and 1"""
    if not (0.0 < alpha < 1.0):
        raise InputError(f"alpha must be in (0, 1), got {alpha}")
    return float(alpha)


def compute_T_k(estimates: Sequence[GroupEstimates]) -> float:
    """
    Unbiased estimator of the dispersion D_k of the group parameters.

    Uses (1/k - 1/k^2) sum theta_sq_hat - (sum theta_hat / k)^2 + (1/k^2) sum theta_hat^2,
    equal to the pairwise form without its O(k^2) double sum.

    Args:
        estimates: Per-group estimates, k >= 2

    Returns:
        T_k
    """
    k = _require_groups(estimates)
    theta = [est.theta_hat for est in estimates]
    sum_sq_hat = exact_sum(est.theta_sq_hat for est in estimates)
    sum_theta = exact_sum(theta)
    sum_theta_sq = exact_sum(t * t for t in theta)
    return (1.0 / k - 1.0 / k**2) * sum_sq_hat - (sum_theta / k) ** 2 + sum_theta_sq / k**2


def compute_linear_components(estimates: Sequence[GroupEstimates]) -> LinearComponents:
    """
    l_hat_i = theta_sq_hat_i - 2 * theta_bar_hat * theta_hat_i.

    Args:
        estimates: Per-group estimates, k >= 2

    Returns:
        LinearComponents with l_hat, their mean and theta_bar_hat
    """
    k = _require_groups(estimates)
    theta = np.array([est.theta_hat for est in estimates], dtype=np.float64)
    theta_sq = np.array([est.theta_sq_hat for est in estimates], dtype=np.float64)
    theta_bar = exact_sum(theta.tolist()) / k
    l_hat = theta_sq - 2.0 * theta_bar * theta
    return LinearComponents(l_hat=l_hat, l_bar=exact_mean(l_hat), theta_bar_hat=theta_bar)


def compute_S_lhat(components: LinearComponents) -> float:
    """
    Square root of the sample variance (divisor k - 1) of the linear components.
    Exactly 0.0 when every l_hat coincides; callers treat that as degenerate.
    """
    if components.k < 2:
        raise InsufficientGroupsError(f"S_lhat needs at least 2 groups, got {components.k}")
    return math.sqrt(sample_variance(components.l_hat))


def standardized_statistic(T_k: float, S_lhat: float, k: int) -> float:
    """
    sqrt(k) * T_k / S_lhat.

    Raises:
        DegenerateVarianceError: S_lhat is zero
    """
    if S_lhat == 0.0:
        raise DegenerateVarianceError(
            "S_lhat is zero; the normalized statistic is undefined",
            diagnostics={"T_k": T_k, "k": k},
        )
    return math.sqrt(k) * T_k / S_lhat


def asymptotic_p_value(script_T: float) -> float:
    """One-sided p-value 1 - Phi(script_T)"""
    return normal_upper_tail(script_T)


def statistic_from_estimates(
    estimates: Sequence[GroupEstimates],
    alpha: float = constants.DEFAULT_ALPHA,
    seed: Optional[int] = None
) -> TestResult:
    """
    Asymptotic test from precomputed per-group estimates.

    A zero S_lhat gives a degenerate result (p = 1, not rejected, one warning)
    instead of raising, so batch callers can keep going.

    Args:
        estimates: Per-group estimates, k >= 2
        alpha: One-sided nominal level
        seed: Seed to record on the result, when randomness was involved

    Returns:
        TestResult with method ASYMPTOTIC
    """
    alpha = validate_alpha(alpha)
    estimates = list(estimates)
    k = _require_groups(estimates)
    T_k = compute_T_k(estimates)
    components = compute_linear_components(estimates)
    S_lhat = compute_S_lhat(components)

    if S_lhat == 0.0:
        logger.warning(f"Degenerate variance at k={k}: all {k} linear components equal {components.l_bar!r}")
        return TestResult(
            T_k=T_k,
            S_lhat=0.0,
            script_T=None,
            p_value=1.0,
            k=k,
            estimates=estimates,
            method=TestMethod.ASYMPTOTIC,
            alpha=alpha,
            rejected=False,
            degenerate=True,
            warnings=[DEGENERATE_WARNING],
            seed=seed,
        )

    script_T = standardized_statistic(T_k, S_lhat, k)
    return TestResult(
        T_k=T_k,
        S_lhat=S_lhat,
        script_T=script_T,
        p_value=asymptotic_p_value(script_T),
        k=k,
        estimates=estimates,
        method=TestMethod.ASYMPTOTIC,
        alpha=alpha,
        rejected=script_T > normal_quantile(1.0 - alpha),
        seed=seed,
    )


def degenerate_diagnostics(result: TestResult) -> dict:
    """Payload for a DegenerateVarianceError raised on a degenerate result"""
    components = compute_linear_components(result.estimates)
    return {"T_k": result.T_k, "k": result.k, "l_hat": components.l_hat.tolist()}


def run_asymptotic_test(
    dataset: Dataset,
    kernel: Kernel,
    alpha: float = constants.DEFAULT_ALPHA,
    threads: int = 1,
    budget: Optional[int] = None
) -> TestResult:
    """
    Estimate every group, then test equality of the group parameters
    against the standard normal limit.

    Args:
        dataset: k >= 2 groups with n_i >= 2m
        kernel: Kernel defining the parameter
        alpha: One-sided nominal level
        threads: Worker threads for per-group estimation
        budget: Complexity budget passed to the estimators

    Returns:
        TestResult (degenerate when S_lhat = 0)
    """
    validate_alpha(alpha)
    estimates = estimate_groups(kernel, dataset, budget=budget, threads=threads)
    result = statistic_from_estimates(estimates, alpha)
    logger.info(
        f"Asymptotic test ({kernel.name}, k={result.k}): T_k={result.T_k:.6g}, "
        f"statistic={result.script_T}, p={result.p_value:.6g}, rejected={result.rejected}"
    )
    return result
