"""
Random subsampling for unbalanced or large groups.

Each of L draws keeps n_tilde observations per group (without replacement),
the test runs on every balanced draw, and the L p-values are combined into
p_adj = min_i (L / i) p_(i).
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from ...config import constants
from ...errors import BootstrapDegenerateError, ConfigurationError, InputError, InsufficientSampleError
from ...kernels.base import Kernel
from ...models import Dataset, DecisionTraceEntry, GroupSample, SubsampleResult, TestResult
from ...stat_types import TestMethod
from ...utils import derive_seed, get_logger, keyed_stream, log_execution_time, ordered_map
from ...utils.rng import STREAM_BOOTSTRAP, STREAM_SUBSAMPLE
from ..estimation import estimate_groups
from ..testing import statistic_from_estimates, validate_alpha
from .bootstrap import bootstrap_from_estimates
from .config import BootstrapConfig, SubsampleConfig

logger = get_logger(__name__)


def draw_subsample_indices(dataset: Dataset, n_tilde: int, rng: np.random.Generator) -> list[np.ndarray]:
    """
    n_tilde distinct source indices per group, groups drawn in order from one stream.

    Raises:
        InsufficientSampleError: naming the first group with fewer than n_tilde observations
    """
    for group in dataset.groups:
        if group.n < n_tilde:
            raise InsufficientSampleError(
                f"Group {group.group_id!r} has n={group.n}, cannot draw a subsample of {n_tilde}"
            )
    return [rng.choice(group.n, size=n_tilde, replace=False) for group in dataset.groups]


def draw_balanced_subsample(dataset: Dataset, n_tilde: int, rng: np.random.Generator) -> Dataset:
    """
    Dataset with every group replaced by n_tilde of its observations,
    sampled uniformly without replacement.
    """
    indices = draw_subsample_indices(dataset, n_tilde, rng)
    return Dataset([
        GroupSample(group.group_id, group.observations[idx])
        for group, idx in zip(dataset.groups, indices)
    ])


def adjust_pvalues(p_values: Sequence[float]) -> float:
    """
    min over i of (L / i) * p_(i) on the ascending p-values, capped at 1.

    Args:
        p_values: L >= 1 values in [0, 1]

    Returns:
        p_adj, between min(p) and min(1, L * min(p))
    """
    p = np.sort(np.asarray(p_values, dtype=np.float64))
    if p.size == 0:
        raise InputError("adjust_pvalues needs at least one p-value")
    if np.any((p < 0.0) | (p > 1.0)) or not np.all(np.isfinite(p)):
        raise InputError(f"p-values must lie in [0, 1], got {p.tolist()}")
    L = p.size
    scaled = (L / np.arange(1, L + 1)) * p
    return float(min(1.0, scaled.min()))


def _degenerate_draw(result: TestResult, warning: str) -> TestResult:
    return dataclasses.replace(
        result,
        script_T=None,
        p_value=1.0,
        rejected=False,
        degenerate=True,
        warnings=[*result.warnings, warning],
    )


def _test_draw(
    dataset: Dataset,
    kernel: Kernel,
    config: SubsampleConfig,
    alpha: float,
    draw: int,
    budget: Optional[int]
) -> TestResult:
    """Inner test on draw number `draw` at the configured n_tilde"""
    rng = keyed_stream(config.seed, STREAM_SUBSAMPLE, config.n_tilde, draw)
    subsample = draw_balanced_subsample(dataset, config.n_tilde, rng)
    estimates = estimate_groups(kernel, subsample, budget=budget)
    result = statistic_from_estimates(estimates, alpha, seed=config.seed)

    if result.degenerate or config.inner == TestMethod.ASYMPTOTIC:
        return result

    base = config.bootstrap or BootstrapConfig()
    inner = dataclasses.replace(
        base,
        seed=derive_seed(config.seed, STREAM_SUBSAMPLE, config.n_tilde, draw, STREAM_BOOTSTRAP),
        threads=1,
    )
    try:
        return bootstrap_from_estimates(estimates, inner, alpha).test_result
    except BootstrapDegenerateError as e:
        return _degenerate_draw(result, f"bootstrap degenerate: {e}")


@log_execution_time
def run_subsample_test(
    dataset: Dataset,
    kernel: Kernel,
    config: SubsampleConfig,
    alpha: float = constants.DEFAULT_ALPHA,
    budget: Optional[int] = None
) -> SubsampleResult:
    """
    L independent balanced draws, the inner test on each, one adjusted p-value.

    Degenerate draws contribute p = 1 and a warning instead of aborting.

    Args:
        dataset: Groups with n_i >= n_tilde
        kernel: Kernel defining the parameter
        config: n_tilde, L, seed, inner test
        alpha: Level for the p_adj <= alpha decision
        budget: Complexity budget passed to the estimators

    Returns:
        SubsampleResult with a one-entry decision trace
    """
    errors = config.validate(kernel.degree)
    if errors:
        raise ConfigurationError("subsample", errors)
    alpha = validate_alpha(alpha)

    draws = ordered_map(
        lambda l: _test_draw(dataset, kernel, config, alpha, l, budget),
        range(config.L),
        config.threads,
    )

    warnings = []
    for l, result in enumerate(draws):
        if result.degenerate:
            logger.warning(f"Subsample draw {l} (n_tilde={config.n_tilde}) is degenerate; counted as p = 1")
        warnings.extend(f"draw {l}: {w}" for w in result.warnings)

    p_values = [result.p_value for result in draws]
    p_adj = adjust_pvalues(p_values)
    rejected = p_adj <= alpha
    logger.info(
        f"Subsample test ({kernel.name}, n_tilde={config.n_tilde}, L={config.L}): "
        f"p_adj={p_adj:.6g}, rejected={rejected}"
    )

    return SubsampleResult(
        p_values=p_values,
        p_adj=p_adj,
        rejected=rejected,
        per_draw_results=draws,
        n_tilde=config.n_tilde,
        L=config.L,
        alpha=alpha,
        seed=config.seed,
        warnings=warnings,
        trace=[DecisionTraceEntry(config.n_tilde, p_adj, rejected)],
    )


def adaptive_n_tilde(
    dataset: Dataset,
    kernel: Kernel,
    config: SubsampleConfig,
    alpha: float = constants.DEFAULT_ALPHA,
    schedule: Optional[Sequence[int]] = None,
    budget: Optional[int] = None
) -> SubsampleResult:
    """
    Increase n_tilde along the schedule until two consecutive decisions agree.

    Draws at each n_tilde are independent of the other sizes. When the
    schedule runs out first, the last result is returned with stable=False.

    Args:
        dataset: Groups with n_i >= max(schedule)
        kernel: Kernel defining the parameter
        config: L, seed, inner test (n_tilde is taken from the schedule)
        alpha: Level for each decision
        schedule: Strictly increasing sizes (defaults to config.schedule)
        budget: Complexity budget passed to the estimators

    Returns:
        Final SubsampleResult carrying the full trace and the stability flag
    """
    schedule = list(schedule if schedule is not None else config.schedule)
    if not schedule:
        raise InputError("The n_tilde schedule is empty")
    if schedule != sorted(set(schedule)):
        raise InputError(f"The n_tilde schedule must be strictly increasing, got {schedule}")
    smallest = min(dataset.sizes)
    if schedule[0] < 2 * kernel.degree or schedule[-1] > smallest:
        raise InputError(
            f"Every n_tilde must lie in [{2 * kernel.degree}, {smallest}] for this dataset, got {schedule}"
        )

    trace: list[DecisionTraceEntry] = []
    result = None
    stable = False
    for n_tilde in schedule:
        result = run_subsample_test(dataset, kernel, dataclasses.replace(config, n_tilde=n_tilde), alpha, budget)
        previous = trace[-1].rejected if trace else None
        trace.append(DecisionTraceEntry(n_tilde, result.p_adj, result.rejected))
        if previous is not None and previous == result.rejected:
            stable = True
            break

    if not stable:
        logger.warning(f"Decision did not stabilize over n_tilde schedule {schedule}")
    warnings = list(result.warnings)
    if not stable:
        warnings.append(f"decision unstable over n_tilde schedule {schedule}")
    return dataclasses.replace(result, trace=trace, stable=stable, warnings=warnings)


@dataclass(frozen=True)
class GridCell:
    """Adjusted p-value and decision for one (n_tilde, L) pair"""
    n_tilde: int
    L: int
    p_adj: float
    rejected: bool
    degenerate_draws: int


@dataclass
class ResamplingGrid:
    """
    p_adj over a grid of draw counts L and subsample sizes n_tilde.

    Draws are nested along L: the cell (n_tilde, L) uses the first L draws
    at that n_tilde, so it equals run_subsample_test with the same seed.
    """

    kernel: str
    inner: TestMethod
    k: int
    alpha: float
    seed: int
    L_grid: tuple[int, ...]
    n_tilde_grid: tuple[int, ...]
    cells: list[GridCell]
    warnings: list[str] = field(default_factory=list)

    def cell(self, n_tilde: int, L: int) -> GridCell:
        for entry in self.cells:
            if entry.n_tilde == n_tilde and entry.L == L:
                return entry
        raise KeyError(f"No grid cell for n_tilde={n_tilde}, L={L}")

    @property
    def stable(self) -> bool:
        """Every cell reaches the same decision"""
        return len({entry.rejected for entry in self.cells}) == 1

    def stable_n_tilde(self) -> list[int]:
        """Subsample sizes whose decision does not depend on L"""
        return [
            n_tilde for n_tilde in self.n_tilde_grid
            if len({entry.rejected for entry in self.cells if entry.n_tilde == n_tilde}) == 1
        ]

    def to_frame(self) -> pd.DataFrame:
        """One row per cell, n_tilde-major"""
        return pd.DataFrame(
            [
                {
                    "kernel": self.kernel,
                    "method": self.inner.value,
                    "n_tilde": entry.n_tilde,
                    "L": entry.L,
                    "p_adj": entry.p_adj,
                    "rejected": entry.rejected,
                    "degenerate_draws": entry.degenerate_draws,
                }
                for entry in self.cells
            ]
        )

    def p_adj_table(self) -> pd.DataFrame:
        """p_adj with one row per n_tilde and one column per L"""
        return self.to_frame().pivot(index="n_tilde", columns="L", values="p_adj")


def _check_grid(name: str, values: Sequence[int], minimum: int) -> tuple[int, ...]:
    grid = tuple(int(v) for v in values)
    if not grid:
        raise InputError(f"The {name} grid is empty")
    if list(grid) != sorted(set(grid)):
        raise InputError(f"The {name} grid must be strictly increasing, got {list(grid)}")
    if grid[0] < minimum:
        raise InputError(f"Every {name} must be >= {minimum}, got {list(grid)}")
    return grid


@log_execution_time
def resampling_grid(
    dataset: Dataset,
    kernel: Kernel,
    L_grid: Sequence[int] = constants.DEFAULT_GRID_L,
    n_tilde_grid: Sequence[int] = constants.DEFAULT_GRID_N_TILDE,
    seed: int = 0,
    alpha: float = constants.DEFAULT_ALPHA,
    inner: TestMethod = TestMethod.ASYMPTOTIC,
    bootstrap: Optional[BootstrapConfig] = None,
    threads: int = 1,
    budget: Optional[int] = None
) -> ResamplingGrid:
    """
    Adjusted p-values of the subsample test for every (n_tilde, L) pair.

    max(L_grid) draws are made once per n_tilde and each L uses a prefix.

    Args:
        dataset: Groups with n_i >= max(n_tilde_grid)
        kernel: Kernel defining the parameter
        L_grid: Strictly increasing draw counts
        n_tilde_grid: Strictly increasing subsample sizes, each >= 2m
        seed: Base seed of the draw streams
        alpha: Level for each decision
        inner: Test run on each draw
        bootstrap: Bootstrap parameters when inner is BOOTSTRAP
        threads: Worker threads over draws
        budget: Complexity budget passed to the estimators

    Returns:
        ResamplingGrid, cells ordered by n_tilde then L
    """
    L_grid = _check_grid("L", L_grid, 1)
    n_tilde_grid = _check_grid("n_tilde", n_tilde_grid, 2 * kernel.degree)
    smallest = min(dataset.sizes)
    if n_tilde_grid[-1] > smallest:
        raise InputError(f"Every n_tilde must be <= the smallest group size {smallest}, got {list(n_tilde_grid)}")
    alpha = validate_alpha(alpha)

    warnings = []
    if L_grid[-1] > constants.MAX_SUBSAMPLE_L:
        warnings.append(f"L up to {L_grid[-1]} exceeds the recommended maximum of {constants.MAX_SUBSAMPLE_L}")

    L_max = L_grid[-1]
    cells: list[GridCell] = []
    for n_tilde in n_tilde_grid:
        config = SubsampleConfig(
            n_tilde=n_tilde, L=L_max, seed=seed, inner=inner, bootstrap=bootstrap, threads=threads
        )
        errors = config.validate(kernel.degree)
        if errors:
            raise ConfigurationError("subsample", errors)

        draws = ordered_map(
            lambda l: _test_draw(dataset, kernel, config, alpha, l, budget),
            range(L_max),
            threads,
        )
        p_values = [result.p_value for result in draws]
        degenerate = [result.degenerate for result in draws]
        for L in L_grid:
            p_adj = adjust_pvalues(p_values[:L])
            cells.append(GridCell(n_tilde, L, p_adj, p_adj <= alpha, sum(degenerate[:L])))
        logger.debug(f"Grid row n_tilde={n_tilde}: {[round(c.p_adj, 6) for c in cells[-len(L_grid):]]}")

    grid = ResamplingGrid(
        kernel=kernel.name,
        inner=inner,
        k=dataset.k,
        alpha=alpha,
        seed=seed,
        L_grid=L_grid,
        n_tilde_grid=n_tilde_grid,
        cells=cells,
        warnings=warnings,
    )
    for warning in warnings:
        logger.warning(warning)
    logger.info(
        f"Resampling grid ({kernel.name}, {len(n_tilde_grid)} x {len(L_grid)}): "
        f"stable={grid.stable}, stable n_tilde={grid.stable_n_tilde()}"
    )
    return grid
