"""
Base kernel interface - every symmetric kernel implements this.
Open/Closed Principle - add new kernels by extending, not modifying the estimators.
"""

from abc import ABC, abstractmethod
from typing import Callable

import numpy as np

from ..errors import DimensionMismatchError
from ..stat_types import KernelBatch


class Kernel(ABC):
    """
    Symmetric kernel h of fixed degree m acting on input_dim-component observations.
    Implementations are stateless, so one instance can be shared across threads.
    """

    def __init__(self, name: str, degree: int, input_dim: int):
        """
        Initialize kernel metadata.

        Args:
            name: Identifier used in logs and reports
            degree: Number of arguments m
            input_dim: Components per observation
        """
        if degree < 1:
            raise ValueError(f"Kernel degree must be >= 1, got {degree}")
        if input_dim < 1:
            raise ValueError(f"Kernel input_dim must be >= 1, got {input_dim}")
        self._name = name
        self._degree = degree
        self._input_dim = input_dim

    @property
    def name(self) -> str:
        return self._name

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def input_dim(self) -> int:
        return self._input_dim

    @abstractmethod
    def evaluate_batch(self, points: KernelBatch) -> np.ndarray:
        """
        Evaluate h on a stack of argument tuples.

        Args:
            points: Array of shape (..., m, input_dim)

        Returns:
            Array of shape (...) with one kernel value per tuple
        """
        pass

    def check_batch(self, points: KernelBatch) -> np.ndarray:
        """Coerce and shape-check a batch before evaluate_batch"""
        points = np.asarray(points, dtype=np.float64)
        if points.ndim < 2 or points.shape[-2:] != (self.degree, self.input_dim):
            raise DimensionMismatchError(
                f"Kernel {self.name} expects argument tuples of shape "
                f"({self.degree}, {self.input_dim}), got {points.shape}"
            )
        return points

    def evaluate(self, *observations) -> float:
        """
        Evaluate h on m observations.

        Args:
            observations: m scalars (input_dim 1) or m vectors of length input_dim

        Returns:
            Kernel value
        """
        if len(observations) != self.degree:
            raise DimensionMismatchError(
                f"Kernel {self.name} takes {self.degree} arguments, got {len(observations)}"
            )
        rows = []
        for obs in observations:
            row = np.atleast_1d(np.asarray(obs, dtype=np.float64))
            if row.shape != (self.input_dim,):
                raise DimensionMismatchError(
                    f"Kernel {self.name} expects observations of length {self.input_dim}, "
                    f"got shape {row.shape}"
                )
            rows.append(row)
        return float(self.evaluate_batch(np.stack(rows)))

    def __call__(self, *observations) -> float:
        return self.evaluate(*observations)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, degree={self.degree}, input_dim={self.input_dim})"


class FunctionKernel(Kernel):
    """
    User-defined kernel from a plain function of m observations.
    Symmetry is the caller's promise; check it with kernels.validator.check_symmetry.
    """

    def __init__(
        self,
        func: Callable[..., float],
        degree: int,
        input_dim: int = 1,
        name: str = "custom"
    ):
        """
        Args:
            func: Function taking m arrays of length input_dim and returning a real
            degree: Number of arguments m
            input_dim: Components per observation
            name: Identifier used in logs and reports
        """
        super().__init__(name, degree, input_dim)
        self._func = func

    def evaluate_batch(self, points: KernelBatch) -> np.ndarray:
        points = self.check_batch(points)
        leading = points.shape[:-2]
        flat = points.reshape(-1, self.degree, self.input_dim)
        values = np.fromiter(
            (float(self._func(*(row if self.input_dim > 1 else row[0] for row in args))) for args in flat),
            dtype=np.float64,
            count=flat.shape[0],
        )
        return values.reshape(leading)

