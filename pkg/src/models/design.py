"""
Simulation design models - populations, contamination alternatives and Monte Carlo runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from ..config import constants
from ..kernels.base import Kernel
from ..stat_types import Family, TestMethod


@dataclass(frozen=True)
class PopulationSpec:
    """
    One population law.
    For bivariate_normal, rho is the Pearson correlation; target_param, when
    given, is a Spearman's rho that the generator calibrates into a Pearson rho.
    """

    family: Family
    scale: float = 1.0
    df: Optional[float] = None  # chi_squared / student_t degrees of freedom
    rho: Optional[float] = None  # bivariate_normal Pearson correlation
    target_param: Optional[float] = None

    def __post_init__(self):
        """Validate population parameters"""
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError(f"Scale must be positive, got {self.scale}")
        if self.family in (Family.CHI_SQUARED, Family.STUDENT_T):
            if self.df is None or self.df < 1:
                raise ValueError(f"{self.family.value} needs df >= 1, got {self.df}")
        if self.family == Family.BIVARIATE_NORMAL:
            if self.rho is not None and not (-1 < self.rho < 1):
                raise ValueError(f"Bivariate normal needs |rho| < 1, got {self.rho}")
            if self.target_param is not None and not (-1 < self.target_param < 1):
                raise ValueError(f"Spearman target must satisfy |rho_s| < 1, got {self.target_param}")

    @property
    def input_dim(self) -> int:
        """Components per generated observation"""
        return 2 if self.family == Family.BIVARIATE_NORMAL else 1

    @classmethod
    def normal(cls, scale: float = 1.0) -> PopulationSpec:
        return cls(Family.NORMAL, scale=scale)

    @classmethod
    def chi_squared(cls, df: float = 3, scale: float = 1.0) -> PopulationSpec:
        return cls(Family.CHI_SQUARED, scale=scale, df=df)

    @classmethod
    def student_t(cls, df: float = 5, scale: float = 1.0) -> PopulationSpec:
        return cls(Family.STUDENT_T, scale=scale, df=df)

    @classmethod
    def scaled_mixture(cls, scale: float = 1.0) -> PopulationSpec:
        return cls(Family.SCALED_MIXTURE, scale=scale)

    @classmethod
    def bivariate_normal(cls, rho: float = 0.0, target_param: Optional[float] = None) -> PopulationSpec:
        return cls(Family.BIVARIATE_NORMAL, rho=rho, target_param=target_param)


def contaminated_count(pi: float, k: int) -> int:
    """round(pi * k), halves rounded up"""
    return int(math.floor(pi * k + 0.5))


@dataclass(frozen=True)
class ContaminationDesign:
    """
    Alternative where the first round(pi * k) groups carry theta_alt and the rest theta_null.
    """

    pi: float
    theta_alt: float
    theta_null: float
    k: int
    n0: int

    def __post_init__(self):
        """Validate contamination parameters"""
        if not (0.0 <= self.pi <= 1.0):
            raise ValueError(f"pi must be in [0, 1], got {self.pi}")
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if self.n0 < 1:
            raise ValueError(f"n0 must be positive, got {self.n0}")

    @property
    def n_contaminated(self) -> int:
        """Number of groups at theta_alt"""
        return contaminated_count(self.pi, self.k)

    @property
    def D_k(self) -> float:
        """
        Closed-form dispersion of the group parameters.
        Equals pi (1 - pi) (theta_alt - theta_null)^2 whenever pi * k is an integer.
        """
        fraction = self.n_contaminated / self.k
        return fraction * (1.0 - fraction) * (self.theta_alt - self.theta_null) ** 2

    @property
    def thetas(self) -> list[float]:
        """Per-group true parameters in group order"""
        return [self.theta_alt] * self.n_contaminated + [self.theta_null] * (self.k - self.n_contaminated)

    @property
    def is_null(self) -> bool:
        """No dispersion between groups"""
        return self.n_contaminated in (0, self.k) or self.theta_alt == self.theta_null


Scenario = Union[PopulationSpec, ContaminationDesign]


@dataclass
class ExperimentDesign:
    """
    Monte Carlo configuration.
    BOOTSTRAP in methods means the warp-speed linear bootstrap (one resample per replication).
    `base` is the population a ContaminationDesign perturbs.
    """

    scenario: Scenario
    kernel: Kernel
    k: int
    n0: int
    replications: int = constants.DEFAULT_REPLICATIONS
    alpha_levels: tuple[float, ...] = constants.DEFAULT_ALPHA_LEVELS
    methods: tuple[TestMethod, ...] = (TestMethod.ASYMPTOTIC, TestMethod.BOOTSTRAP)
    seed: int = 0
    base: Optional[PopulationSpec] = None
    threads: int = 1
    name: str = field(default="experiment")

    def validate(self) -> list[str]:
        """Validate configuration parameters"""
        errors = []

        if self.replications < 1:
            errors.append(f"replications must be >= 1, got {self.replications}")
        if self.k < 2:
            errors.append(f"k must be >= 2, got {self.k}")
        if self.n0 < 2 * self.kernel.degree:
            errors.append(f"n0 must be >= 2m = {2 * self.kernel.degree}, got {self.n0}")
        if not self.alpha_levels:
            errors.append("alpha_levels must not be empty")
        for alpha in self.alpha_levels:
            if not (0.0 < alpha < 1.0):
                errors.append(f"every alpha must be in (0, 1), got {alpha}")
        if not self.methods:
            errors.append("methods must not be empty")
        if self.threads < 1:
            errors.append(f"threads must be >= 1, got {self.threads}")
        if not (0 <= self.seed < 2**64):
            errors.append(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if isinstance(self.scenario, ContaminationDesign):
            if (self.scenario.k, self.scenario.n0) != (self.k, self.n0):
                errors.append(
                    f"contamination design (k={self.scenario.k}, n0={self.scenario.n0}) "
                    f"disagrees with experiment (k={self.k}, n0={self.n0})"
                )
        population = self.base if isinstance(self.scenario, ContaminationDesign) else self.scenario
        if population is not None and population.input_dim != self.kernel.input_dim:
            errors.append(
                f"{population.family.value} data is {population.input_dim}-dimensional, "
                f"kernel {self.kernel.name} expects {self.kernel.input_dim}"
            )

        return errors

    @property
    def is_null(self) -> bool:
        """True when every group shares the parameter"""
        if isinstance(self.scenario, ContaminationDesign):
            return self.scenario.is_null
        return True

    @property
    def D_k(self) -> float:
        """Closed-form D_k of the scenario (0 for identically distributed groups)"""
        if isinstance(self.scenario, ContaminationDesign):
            return self.scenario.D_k
        return 0.0
