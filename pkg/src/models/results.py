"""
Result models - what the test, the bootstrap, the subsample procedure and the
diagnostics hand back. Serialized by src.cli.report.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..stat_types import TestMethod
from .estimates import GroupEstimates


@dataclass
class TestResult:
    """
    Outcome of one homogeneity test.
    script_T is None when the variance estimate is degenerate.
    """

    __test__ = False  # not a pytest class

    T_k: float
    S_lhat: float
    script_T: Optional[float]
    p_value: float
    k: int
    estimates: list[GroupEstimates]
    method: TestMethod
    alpha: float
    rejected: bool
    degenerate: bool = False
    warnings: list[str] = field(default_factory=list)
    seed: Optional[int] = None

    def __post_init__(self):
        """Validate result data"""
        if not (0.0 <= self.p_value <= 1.0):
            raise ValueError(f"p-value must be in [0, 1], got {self.p_value}")
        if self.S_lhat < 0:
            raise ValueError(f"S_lhat must be non-negative, got {self.S_lhat}")
        if self.degenerate and self.script_T is not None:
            raise ValueError("A degenerate result cannot carry a normalized statistic")
        if self.degenerate and self.rejected:
            raise ValueError("A degenerate result cannot reject")

    @property
    def theta_hats(self) -> np.ndarray:
        """theta_hat_i in group order"""
        return np.array([est.theta_hat for est in self.estimates])


@dataclass
class BootstrapResult:
    """
    Linear bootstrap outcome: observed statistic, its replicates and the p-value.
    """

    observed: float
    replicates: np.ndarray
    p_value: float
    test_result: TestResult  # Asymptotic quantities plus the bootstrap decision
    seed: int

    def __post_init__(self):
        """Validate bootstrap data"""
        if not (0.0 < self.p_value <= 1.0):
            raise ValueError(f"Bootstrap p-value must be in (0, 1], got {self.p_value}")
        if self.replicates.ndim != 1 or self.replicates.size < 1:
            raise ValueError("Replicates must be a non-empty vector")

    @property
    def B(self) -> int:
        """Number of replicates"""
        return int(self.replicates.size)


@dataclass(frozen=True)
class DecisionTraceEntry:
    """One step of the adaptive subsample-size schedule"""

    n_tilde: int
    p_adj: float
    rejected: bool


@dataclass
class SubsampleResult:
    """
    Random-subsampling outcome: one p-value per balanced draw and their adjustment.
    """

    p_values: list[float]
    p_adj: float
    rejected: bool
    per_draw_results: list[TestResult]
    n_tilde: int
    L: int
    alpha: float
    seed: int
    warnings: list[str] = field(default_factory=list)
    trace: list[DecisionTraceEntry] = field(default_factory=list)
    stable: Optional[bool] = None  # Set by the adaptive schedule only

    def __post_init__(self):
        """Validate p_adj bounds"""
        if len(self.p_values) != self.L:
            raise ValueError(f"Expected {self.L} p-values, got {len(self.p_values)}")
        smallest = min(self.p_values)
        if self.p_adj < smallest - 1e-15 or self.p_adj > min(1.0, self.L * smallest) + 1e-15:
            raise ValueError(f"p_adj={self.p_adj} outside [min p, min(1, L * min p)]")


@dataclass(frozen=True)
class DecompositionDiagnostics:
    """
    Terms of T_k = D_k + T_lin + R_k evaluated with known thetas.
    """

    T_k: float
    D_k_true: float
    T_lin: float
    R_k: float
    residual: float

    def within_tolerance(self, rtol: float) -> bool:
        """|residual| <= rtol * max(1, |T_k|)"""
        return abs(self.residual) <= rtol * max(1.0, abs(self.T_k))

    @property
    def is_finite(self) -> bool:
        """All terms finite"""
        return all(math.isfinite(v) for v in (self.T_k, self.D_k_true, self.T_lin, self.R_k))
