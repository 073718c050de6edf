"""
Universal type definitions used across the entire application.
Single source of truth for types - every module imports from here.
"""

from enum import Enum, IntEnum
from typing import TypeAlias

import numpy as np


# Kernel Enums
class KernelName(Enum):
    """Kernels shipped with the library"""
    GMD = "gmd"
    SPEARMAN = "spearman"
    MEAN = "mean"
    VARIANCE = "variance"


# Test Enums
class TestMethod(Enum):
    """How the null distribution of the normalized statistic is approximated"""
    __test__ = False  # not a pytest class

    ASYMPTOTIC = "asymptotic"
    BOOTSTRAP = "bootstrap"


class BootstrapMode(Enum):
    """Linear bootstrap flavour"""
    STANDARD = "standard"
    WARP_SPEED = "warp_speed"


# Population Enums
class Family(Enum):
    """Distribution families used by the data generators"""
    NORMAL = "normal"
    CHI_SQUARED = "chi_squared"
    STUDENT_T = "student_t"
    SCALED_MIXTURE = "scaled_mixture"
    BIVARIATE_NORMAL = "bivariate_normal"


# CLI Enums
class Command(Enum):
    """Top-level CLI commands"""
    TEST = "test"
    SIMULATE = "simulate"
    SUBSAMPLE_TEST = "subsample-test"


class ReportFormat(Enum):
    """Report serialization formats"""
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class ExitCode(IntEnum):
    """Process exit codes"""
    OK = 0
    INPUT_ERROR = 2
    COMPUTATIONAL_REFUSAL = 3
    DEGENERATE = 4


# Type Aliases for clarity
Observation: TypeAlias = tuple[float, ...]  # One data point (length = kernel input_dim)
Observations: TypeAlias = np.ndarray  # (n, input_dim) float64 array of a group
KernelBatch: TypeAlias = np.ndarray  # (..., m, input_dim) stack of kernel arguments
Seed: TypeAlias = int  # 64-bit unsigned seed
PValue: TypeAlias = float  # Probability in [0, 1]
