"""
Estimate models - per-group U-statistics and the linear components built from them.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class GroupEstimates:
    """
    Unbiased estimates of theta_i and theta_i^2 for one group.
    """

    theta_hat: float  # Degree-m U-statistic
    theta_sq_hat: float  # Degree-2m U-statistic with the product kernel H
    n: int  # Sample size used
    group_id: Optional[str] = None

    def __post_init__(self):
        """Validate estimates"""
        if not math.isfinite(self.theta_hat):
            raise ValueError(f"theta_hat must be finite, got {self.theta_hat}")
        if not math.isfinite(self.theta_sq_hat):
            raise ValueError(f"theta_sq_hat must be finite, got {self.theta_sq_hat}")
        if self.n < 1:
            raise ValueError(f"Sample size must be positive, got {self.n}")


@dataclass(frozen=True)
class LinearComponents:
    """
    l_hat_i = theta_sq_hat_i - 2 * theta_bar_hat * theta_hat_i for i = 1..k.
    """

    l_hat: np.ndarray  # (k,) linear components
    l_bar: float  # Mean of l_hat
    theta_bar_hat: float  # Mean of the theta_hat_i

    @property
    def k(self) -> int:
        """Number of groups"""
        return int(self.l_hat.shape[0])

    @property
    def centered(self) -> np.ndarray:
        """l_hat - l_bar, the pool resampled by the linear bootstrap"""
        return self.l_hat - self.l_bar
