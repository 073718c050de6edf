"""
Resampling configuration - parameters for the linear bootstrap and for random subsampling.
"""

from dataclasses import dataclass, field
from typing import Optional

from ...config import constants
from ...stat_types import BootstrapMode, TestMethod


@dataclass
class BootstrapConfig:
    """
    Linear bootstrap parameters.
    """

    B: int = constants.DEFAULT_BOOTSTRAP_B  # Replicates
    seed: int = 0  # Base of the per-replicate streams (seed, b)
    mode: BootstrapMode = BootstrapMode.STANDARD
    threads: int = 1

    def validate(self) -> list[str]:
        """Validate configuration parameters"""
        errors = []

        if self.B < 1:
            errors.append(f"B must be >= 1, got {self.B}")
        if not (0 <= self.seed < 2**64):
            errors.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.threads < 1:
            errors.append(f"threads must be >= 1, got {self.threads}")

        return errors


@dataclass
class SubsampleConfig:
    """
    Random subsampling parameters: L balanced draws of n_tilde observations per group.
    """

    n_tilde: int
    L: int = constants.DEFAULT_SUBSAMPLE_L
    seed: int = 0
    inner: TestMethod = TestMethod.ASYMPTOTIC  # Test run on each draw
    bootstrap: Optional[BootstrapConfig] = None  # Used when inner is BOOTSTRAP
    threads: int = 1
    schedule: tuple[int, ...] = field(default=constants.DEFAULT_N_TILDE_SCHEDULE)  # Adaptive mode only

    def validate(self, degree: Optional[int] = None) -> list[str]:
        """
        Validate configuration parameters.

        Args:
            degree: Kernel degree m, to check n_tilde >= 2m
        """
        errors = []

        if self.L < 1:
            errors.append(f"L must be >= 1, got {self.L}")
        if self.n_tilde < 1:
            errors.append(f"n_tilde must be >= 1, got {self.n_tilde}")
        if degree is not None and self.n_tilde < 2 * degree:
            errors.append(f"n_tilde must be >= 2m = {2 * degree}, got {self.n_tilde}")
        if not (0 <= self.seed < 2**64):
            errors.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.threads < 1:
            errors.append(f"threads must be >= 1, got {self.threads}")
        if self.inner == TestMethod.BOOTSTRAP and self.bootstrap is not None:
            errors.extend(f"bootstrap: {e}" for e in self.bootstrap.validate())
        if list(self.schedule) != sorted(set(self.schedule)):
            errors.append(f"schedule must be strictly increasing, got {list(self.schedule)}")

        return errors
