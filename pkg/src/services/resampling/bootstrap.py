"""
Linear bootstrap for the normalized homogeneity statistic.

Only the centered linear components are resampled, so a replicate costs O(k)
and never touches the kernel or the theta^2 estimator.
"""

import dataclasses
import math
from typing import Optional, Sequence

import numpy as np

from ...config import constants
from ...errors import (
    BootstrapDegenerateError,
    ConfigurationError,
    DegenerateVarianceError,
    InputError,
)
from ...kernels.base import Kernel
from ...models import BootstrapResult, Dataset, GroupEstimates
from ...stat_types import BootstrapMode, TestMethod
from ...utils import exact_mean, get_logger, keyed_stream, ordered_map, sample_variance
from ...utils.rng import STREAM_BOOTSTRAP
from ..estimation import estimate_groups
from ..testing import (
    compute_linear_components,
    degenerate_diagnostics,
    statistic_from_estimates,
    validate_alpha,
)
from .config import BootstrapConfig

logger = get_logger(__name__)


def linear_bootstrap_replicate(
    centered: np.ndarray,
    rng: np.random.Generator,
    max_redraws: int = constants.MAX_BOOTSTRAP_REDRAWS
) -> float:
    """
    One replicate sqrt(k) * mean(L*) / sqrt(V*) from k draws with replacement.

    A draw whose sample variance V* (divisor k - 1) is zero is discarded and
    redrawn, at most max_redraws times.

    Args:
        centered: l_hat - l_bar, length k >= 2
        rng: Stream for this replicate
        max_redraws: Redraw cap after the first draw

    Returns:
        The replicate statistic

    Raises:
        BootstrapDegenerateError: every draw had zero variance
    """
    centered = np.asarray(centered, dtype=np.float64)
    k = centered.shape[0]
    if k < 2:
        raise InputError(f"The linear bootstrap needs k >= 2, got {k}")

    for attempt in range(max_redraws + 1):
        draw = centered[rng.integers(0, k, size=k)]
        variance = sample_variance(draw)
        if variance > 0.0:
            return math.sqrt(k) * exact_mean(draw) / math.sqrt(variance)
        logger.debug(f"Zero-variance bootstrap draw (attempt {attempt + 1}), redrawing")

    raise BootstrapDegenerateError(
        f"All {max_redraws + 1} bootstrap draws had zero variance",
        diagnostics={"k": k, "distinct_values": int(np.unique(centered).size)},
    )


def bootstrap_replicates(
    centered: np.ndarray,
    B: int,
    seed: int,
    threads: int = 1
) -> np.ndarray:
    """
    B replicates, replicate b drawn from the stream (seed, b).

    Returns:
        (B,) replicates in replicate order, independent of the thread count
    """
    if B < 1:
        raise InputError(f"B must be >= 1, got {B}")
    centered = np.asarray(centered, dtype=np.float64)
    values = ordered_map(
        lambda b: linear_bootstrap_replicate(centered, keyed_stream(seed, STREAM_BOOTSTRAP, b)),
        range(B),
        threads,
    )
    return np.array(values, dtype=np.float64)


def pooled_pvalues(statistics: Sequence[float], pool: Sequence[float]) -> np.ndarray:
    """
    (1 + #{r in pool: r >= t}) / (len(pool) + 1) for each statistic t.
    Ties count toward the null.
    """
    pool = np.sort(np.asarray(pool, dtype=np.float64))
    if pool.size < 1:
        raise InputError("The replicate pool is empty")
    statistics = np.asarray(statistics, dtype=np.float64)
    exceed = pool.size - np.searchsorted(pool, statistics, side="left")
    return (1.0 + exceed) / (pool.size + 1.0)


def bootstrap_p_value(observed: float, replicates: Sequence[float]) -> float:
    """(1 + #{b: replicate_b >= observed}) / (B + 1)"""
    return float(pooled_pvalues([observed], replicates)[0])


def warp_speed_pvalues(statistics: Sequence[float], replicates: Sequence[float]) -> np.ndarray:
    """
    Warp-speed p-values: each iteration's statistic against the pool of all
    iterations' single replicates.

    Args:
        statistics: Observed statistic per Monte Carlo iteration
        replicates: One bootstrap replicate per iteration

    Returns:
        (J,) p-values
    """
    if len(statistics) != len(replicates):
        raise InputError(
            f"Need one replicate per statistic, got {len(statistics)} statistics and {len(replicates)} replicates"
        )
    if len(statistics) < 1:
        raise InputError("Warp-speed p-values need at least one iteration")
    return pooled_pvalues(statistics, replicates)


def bootstrap_from_estimates(
    estimates: Sequence[GroupEstimates],
    config: BootstrapConfig,
    alpha: float = constants.DEFAULT_ALPHA
) -> BootstrapResult:
    """
    Standard-mode linear bootstrap given per-group estimates.

    Raises:
        DegenerateVarianceError: S_lhat is zero on the observed data
    """
    asymptotic = statistic_from_estimates(estimates, alpha, seed=config.seed)
    if asymptotic.degenerate:
        raise DegenerateVarianceError(
            "S_lhat is zero; the bootstrap has nothing to studentize",
            diagnostics=degenerate_diagnostics(asymptotic),
        )

    components = compute_linear_components(asymptotic.estimates)
    replicates = bootstrap_replicates(components.centered, config.B, config.seed, config.threads)
    p_value = bootstrap_p_value(asymptotic.script_T, replicates)
    test_result = dataclasses.replace(
        asymptotic,
        p_value=p_value,
        method=TestMethod.BOOTSTRAP,
        rejected=p_value <= alpha,
    )
    return BootstrapResult(
        observed=asymptotic.script_T,
        replicates=replicates,
        p_value=p_value,
        test_result=test_result,
        seed=config.seed,
    )


def run_bootstrap_test(
    dataset: Dataset,
    kernel: Kernel,
    config: Optional[BootstrapConfig] = None,
    alpha: float = constants.DEFAULT_ALPHA,
    budget: Optional[int] = None
) -> BootstrapResult:
    """
    Linear bootstrap test on a dataset.

    Args:
        dataset: k >= 2 groups with n_i >= 2m
        kernel: Kernel defining the parameter
        config: B, seed and thread count (standard mode only)
        alpha: One-sided nominal level
        budget: Complexity budget passed to the estimators

    Returns:
        BootstrapResult with p = (1 + exceedances) / (B + 1)
    """
    config = config or BootstrapConfig()
    errors = config.validate()
    if errors:
        raise ConfigurationError("bootstrap", errors)
    if config.mode != BootstrapMode.STANDARD:
        raise InputError("Warp-speed mode pools replicates across simulation runs; use the experiments harness")
    validate_alpha(alpha)

    estimates = estimate_groups(kernel, dataset, budget=budget, threads=config.threads)
    result = bootstrap_from_estimates(estimates, config, alpha)
    logger.info(
        f"Bootstrap test ({kernel.name}, k={dataset.k}, B={config.B}): "
        f"statistic={result.observed:.6g}, p={result.p_value:.6g}, rejected={result.test_result.rejected}"
    )
    return result
