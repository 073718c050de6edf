"""
Monte Carlo harness - empirical level and power of the asymptotic test and the
warp-speed linear bootstrap, plus diagnostics that check the theory on synthetic data.

Replication j draws its dataset from the stream (seed, j, data); every method
is applied to that same dataset, so the comparison between methods is paired.
"""

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy import stats

from ...config import constants
from ...errors import BootstrapDegenerateError, ConfigurationError, InputError
from ...kernels.base import Kernel
from ...models import (
    ContaminationDesign,
    Dataset,
    DecompositionDiagnostics,
    ExperimentDesign,
    PopulationSpec,
    Scenario,
)
from ...stat_types import TestMethod
from ...utils import (
    exact_sum,
    get_logger,
    keyed_stream,
    log_execution_time,
    mc_standard_error,
    normal_quantile,
    ordered_map,
)
from ...utils.rng import STREAM_BOOTSTRAP, STREAM_DATA
from ..estimation import estimate_groups
from ..resampling import linear_bootstrap_replicate, pooled_pvalues
from ..testing import compute_linear_components, compute_T_k, statistic_from_estimates
from .datagen import generate_null_dataset, generate_power_dataset

logger = get_logger(__name__)


@dataclass(frozen=True)
class RejectionRate:
    """Empirical rejection rate of one method at one level"""

    method: TestMethod
    alpha: float
    rejections: int
    replications: int

    @property
    def rate(self) -> float:
        return self.rejections / self.replications

    @property
    def standard_error(self) -> float:
        """sqrt(p (1 - p) / J)"""
        return mc_standard_error(self.rate, self.replications)


@dataclass
class ExperimentResult:
    """
    Rejection rates of a Monte Carlo run plus the per-replication statistics.
    statistics holds NaN where S_lhat was zero.
    """

    name: str
    replications: int
    D_k: float
    rates: list[RejectionRate]
    T_k_values: np.ndarray
    statistics: np.ndarray
    bootstrap_replicates: Optional[np.ndarray] = None
    seed: int = 0
    warnings: list[str] = field(default_factory=list)

    def rate(self, method: TestMethod, alpha: float) -> RejectionRate:
        """Look up one cell of the table"""
        for entry in self.rates:
            if entry.method == method and math.isclose(entry.alpha, alpha):
                return entry
        raise KeyError(f"No rate for {method.value} at alpha={alpha}")

    @property
    def degenerate_count(self) -> int:
        """Replications with S_lhat = 0"""
        return int(np.isnan(self.statistics).sum())

    @property
    def mean_T_k(self) -> float:
        return exact_sum(self.T_k_values.tolist()) / self.replications

    @property
    def T_k_standard_error(self) -> float:
        """Monte Carlo standard error of mean_T_k"""
        if self.replications < 2:
            return float("nan")
        return float(np.std(self.T_k_values, ddof=1) / math.sqrt(self.replications))

    def to_frame(self) -> pd.DataFrame:
        """One row per (method, alpha): rate and its standard error, in percent"""
        return pd.DataFrame(
            [
                {
                    "experiment": self.name,
                    "method": entry.method.value,
                    "alpha": entry.alpha,
                    "rate_pct": 100.0 * entry.rate,
                    "se_pct": 100.0 * entry.standard_error,
                    "rejections": entry.rejections,
                    "J": entry.replications,
                    "D_k": self.D_k,
                }
                for entry in self.rates
            ]
        )


@dataclass(frozen=True)
class _Replication:
    T_k: float
    statistic: float  # NaN when degenerate
    replicate: float  # NaN when not requested or degenerate


def _generate(scenario: Scenario, base: Optional[PopulationSpec], k: int, n0: int, rng) -> Dataset:
    if isinstance(scenario, ContaminationDesign):
        return generate_power_dataset(scenario, base, rng)
    return generate_null_dataset(scenario, k, n0, rng)


def _run_replication(design: ExperimentDesign, j: int) -> _Replication:
    dataset = _generate(design.scenario, design.base, design.k, design.n0, keyed_stream(design.seed, j, STREAM_DATA))
    estimates = estimate_groups(design.kernel, dataset)
    result = statistic_from_estimates(estimates, design.alpha_levels[0])
    if result.degenerate:
        return _Replication(result.T_k, math.nan, math.nan)

    replicate = math.nan
    if TestMethod.BOOTSTRAP in design.methods:
        centered = compute_linear_components(estimates).centered
        try:
            replicate = linear_bootstrap_replicate(centered, keyed_stream(design.seed, j, STREAM_BOOTSTRAP))
        except BootstrapDegenerateError:
            logger.warning(f"Replication {j}: bootstrap replicate degenerate, left out of the pool")
    return _Replication(result.T_k, result.script_T, replicate)


def _validated(design: ExperimentDesign) -> ExperimentDesign:
    errors = design.validate()
    if isinstance(design.scenario, ContaminationDesign) and design.base is None:
        errors.append("a contamination scenario needs a base population")
    if errors:
        raise ConfigurationError("experiment", errors)
    return design


@log_execution_time
def run_experiment(design: ExperimentDesign) -> ExperimentResult:
    """
    Run J replications and tabulate rejection rates per (method, alpha).

    The bootstrap column uses the warp-speed scheme: one linear-bootstrap
    replicate per replication, all replicates pooled for the p-values.

    Args:
        design: Validated Monte Carlo configuration

    Returns:
        ExperimentResult
    """
    design = _validated(design)
    J = design.replications
    logger.info(
        f"Experiment {design.name}: kernel={design.kernel.name}, k={design.k}, n0={design.n0}, "
        f"J={J}, methods={[m.value for m in design.methods]}"
    )

    runs = ordered_map(lambda j: _run_replication(design, j), range(J), design.threads)
    T_k = np.array([run.T_k for run in runs])
    statistics = np.array([run.statistic for run in runs])
    replicates = np.array([run.replicate for run in runs])
    valid = ~np.isnan(statistics)

    rates = []
    warnings = []
    if not valid.all():
        warnings.append(f"{int((~valid).sum())} of {J} replications had S_lhat = 0 and count as non-rejections")

    for method in design.methods:
        for alpha in design.alpha_levels:
            if method == TestMethod.ASYMPTOTIC:
                rejected = valid & (np.nan_to_num(statistics, nan=-np.inf) > normal_quantile(1.0 - alpha))
            else:
                pool = replicates[~np.isnan(replicates)]
                rejected = np.zeros(J, dtype=bool)
                if pool.size:
                    rejected[valid] = pooled_pvalues(statistics[valid], pool) <= alpha
            rates.append(RejectionRate(method, alpha, int(rejected.sum()), J))

    result = ExperimentResult(
        name=design.name,
        replications=J,
        D_k=design.D_k,
        rates=rates,
        T_k_values=T_k,
        statistics=statistics,
        bootstrap_replicates=replicates if TestMethod.BOOTSTRAP in design.methods else None,
        seed=design.seed,
        warnings=warnings,
    )
    for entry in rates:
        logger.info(
            f"{design.name}: {entry.method.value} at alpha={entry.alpha}: "
            f"{100 * entry.rate:.2f}% (se {100 * entry.standard_error:.2f})"
        )
    return result


def run_level_experiment(design: ExperimentDesign) -> ExperimentResult:
    """Empirical Type I error rates; the scenario must have equal group parameters"""
    if not design.is_null:
        raise InputError(f"Level experiments need a null scenario; {design.name} has D_k={design.D_k}")
    return run_experiment(design)


def run_power_experiment(design: ExperimentDesign) -> ExperimentResult:
    """Empirical power against a contamination alternative"""
    if not isinstance(design.scenario, ContaminationDesign):
        raise InputError("Power experiments need a ContaminationDesign scenario")
    return run_experiment(design)


def decomposition_check(dataset: Dataset, kernel: Kernel, true_thetas: Sequence[float]) -> DecompositionDiagnostics:
    """
    Split T_k into D_k + T_lin + R_k using the known group parameters.

    With d_i = theta_hat_i - theta_i and L_i = theta_sq_hat_i - theta_i^2 - 2 theta_bar d_i:
    T_lin = mean(L_i), and
    R_k = -(1/k^2) sum (theta_sq_hat_i - theta_i^2) + (2/k^2) sum theta_i d_i
          - (1/k^2) sum_{i != j} d_i d_j.

    Args:
        dataset: Synthetic dataset
        kernel: Kernel defining theta
        true_thetas: Population parameter of each group

    Returns:
        DecompositionDiagnostics with the residual of the identity
    """
    thetas = [float(t) for t in true_thetas]
    k = dataset.k
    if len(thetas) != k:
        raise InputError(f"Need one true theta per group: {len(thetas)} given for k={k}")

    estimates = estimate_groups(kernel, dataset)
    T_k = compute_T_k(estimates)
    theta_bar = exact_sum(thetas) / k

    d = [est.theta_hat - t for est, t in zip(estimates, thetas)]
    e = [est.theta_sq_hat - t * t for est, t in zip(estimates, thetas)]
    D_k = exact_sum((t - theta_bar) ** 2 for t in thetas) / k
    T_lin = exact_sum(ei - 2.0 * theta_bar * di for ei, di in zip(e, d)) / k

    sum_d = exact_sum(d)
    cross = sum_d * sum_d - exact_sum(di * di for di in d)
    R_k = (-exact_sum(e) + 2.0 * exact_sum(t * di for t, di in zip(thetas, d)) - cross) / k**2

    return DecompositionDiagnostics(
        T_k=T_k,
        D_k_true=D_k,
        T_lin=T_lin,
        R_k=R_k,
        residual=T_k - D_k - T_lin - R_k,
    )


@dataclass(frozen=True)
class SweepPoint:
    """Quantiles of |T_k - D_k| at one k"""

    k: int
    D_k: float
    quantiles: dict[float, float]

    @property
    def median(self) -> float:
        return self.quantiles[0.5]


def consistency_sweep(
    kernel: Kernel,
    scenario: Scenario,
    k_grid: Sequence[int],
    n0: int,
    replications: int = 200,
    seed: int = 0,
    base: Optional[PopulationSpec] = None,
    quantiles: Sequence[float] = (0.5, 0.9),
    threads: int = 1
) -> list[SweepPoint]:
    """
    Monte Carlo quantiles of |T_k - D_k| along an increasing grid of k.

    A ContaminationDesign scenario is re-sized to each k with its pi and thetas kept.

    Returns:
        One SweepPoint per k, in grid order
    """
    k_grid = list(k_grid)
    if k_grid != sorted(set(k_grid)) or not k_grid or k_grid[0] < 2:
        raise InputError(f"k_grid must be strictly increasing with k >= 2, got {k_grid}")
    if 0.5 not in quantiles:
        quantiles = (0.5, *quantiles)

    points = []
    for k in k_grid:
        if isinstance(scenario, ContaminationDesign):
            sized = dataclasses.replace(scenario, k=k, n0=n0)
            D_k = sized.D_k
        else:
            sized, D_k = scenario, 0.0

        def one(j: int, k: int = k, sized: Scenario = sized) -> float:
            data = _generate(sized, base, k, n0, keyed_stream(seed, STREAM_DATA, k, j))
            return compute_T_k(estimate_groups(kernel, data))

        gaps = np.abs(np.array(ordered_map(one, range(replications), threads)) - D_k)
        values = {q: float(np.quantile(gaps, q)) for q in quantiles}
        logger.info(f"Consistency sweep k={k}: median |T_k - D_k| = {values[0.5]:.3e}")
        points.append(SweepPoint(k=k, D_k=D_k, quantiles=values))
    return points


@dataclass(frozen=True)
class NullCalibration:
    """Kolmogorov-Smirnov comparison of null statistics with N(0, 1)"""

    ks_statistic: float
    p_value: float
    level: float
    sample_size: int

    @property
    def passed(self) -> bool:
        return self.p_value > self.level


def null_calibration(design: ExperimentDesign, level: float = 0.01) -> NullCalibration:
    """
    Run the asymptotic test on J null replications and KS-test the normalized
    statistics against the standard normal.
    """
    if not design.is_null:
        raise InputError("Null calibration needs a null scenario")
    result = run_experiment(dataclasses.replace(design, methods=(TestMethod.ASYMPTOTIC,)))
    values = result.statistics[~np.isnan(result.statistics)]
    ks = stats.kstest(values, "norm")
    logger.info(f"Null calibration {design.name}: KS D={ks.statistic:.4f}, p={ks.pvalue:.4f}")
    return NullCalibration(
        ks_statistic=float(ks.statistic),
        p_value=float(ks.pvalue),
        level=level,
        sample_size=int(values.size),
    )
