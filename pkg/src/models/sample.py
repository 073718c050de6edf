"""
Sample models - the test's input.
A Dataset is k independent groups; each group is an (n, input_dim) array of observations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np

from ..errors import (
    DimensionMismatchError,
    InputError,
    InsufficientGroupsError,
    InsufficientSampleError,
)

if TYPE_CHECKING:
    from ..kernels.base import Kernel


def as_observations(values) -> np.ndarray:
    """
    Coerce scalars-per-row or vectors-per-row into an (n, d) float64 array.

    Args:
        values: Sequence of numbers (d = 1) or of equal-length vectors

    Returns:
        Two-dimensional float64 array
    """
    array = np.asarray(values, dtype=np.float64)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise DimensionMismatchError(
            f"Observations must be scalars or fixed-length vectors, got array of shape {array.shape}"
        )
    return array


@dataclass
class GroupSample:
    """
    One group's ordered observations.
    """

    group_id: str  # Opaque label (CSV group column, or the group index)
    observations: np.ndarray  # (n, input_dim) float64

    def __post_init__(self):
        """Validate sample data"""
        self.group_id = str(self.group_id)
        self.observations = as_observations(self.observations)
        if not np.all(np.isfinite(self.observations)):
            raise InputError(f"Group {self.group_id!r} contains NaN or infinite values")

    @property
    def n(self) -> int:
        """Sample size"""
        return int(self.observations.shape[0])

    @property
    def input_dim(self) -> int:
        """Components per observation"""
        return int(self.observations.shape[1])

    def validate_for(self, kernel: Kernel, minimum: int | None = None) -> None:
        """
        Check dimensionality and size against a kernel.

        Args:
            kernel: Kernel that will consume the sample
            minimum: Required size (defaults to 2m, enough for both estimators)
        """
        if self.input_dim != kernel.input_dim:
            raise DimensionMismatchError(
                f"Group {self.group_id!r} has {self.input_dim}-dimensional observations, "
                f"kernel {kernel.name} expects {kernel.input_dim}"
            )
        required = 2 * kernel.degree if minimum is None else minimum
        if self.n < required:
            raise InsufficientSampleError(
                f"Group {self.group_id!r} has n={self.n}, kernel {kernel.name} "
                f"(degree {kernel.degree}) needs at least {required}"
            )


@dataclass
class Dataset:
    """
    k independent groups sharing one observation dimension.
    """

    groups: list[GroupSample] = field(default_factory=list)

    def __post_init__(self):
        """Validate dataset structure"""
        self.groups = list(self.groups)
        if len(self.groups) < 2:
            raise InsufficientGroupsError(f"A dataset needs at least 2 groups, got {len(self.groups)}")
        dims = {group.input_dim for group in self.groups}
        if len(dims) != 1:
            raise DimensionMismatchError(f"Groups disagree on observation dimension: {sorted(dims)}")

    @classmethod
    def from_arrays(cls, arrays: Sequence, group_ids: Sequence[str] | None = None) -> Dataset:
        """Build a dataset from per-group arrays, labelling groups by index when no ids are given"""
        if group_ids is None:
            group_ids = [str(i) for i in range(len(arrays))]
        return cls([GroupSample(gid, values) for gid, values in zip(group_ids, arrays)])

    @property
    def k(self) -> int:
        """Number of groups"""
        return len(self.groups)

    @property
    def input_dim(self) -> int:
        """Components per observation"""
        return self.groups[0].input_dim

    @property
    def sizes(self) -> list[int]:
        """Per-group sample sizes in group order"""
        return [group.n for group in self.groups]

    @property
    def is_balanced(self) -> bool:
        """All groups have the same size"""
        return len(set(self.sizes)) == 1

    @property
    def imbalance_ratio(self) -> float:
        """max n_i / min n_i"""
        sizes = self.sizes
        return max(sizes) / min(sizes)

    def validate_for(self, kernel: Kernel) -> None:
        """Every group must satisfy n_i >= 2m with the kernel's input_dim"""
        for group in self.groups:
            group.validate_for(kernel)

    def stacked(self) -> np.ndarray:
        """(k, n, d) view of a balanced dataset"""
        if not self.is_balanced:
            raise InputError("stacked() requires equal group sizes")
        return np.stack([group.observations for group in self.groups])

    def permuted(self, order: Sequence[int]) -> Dataset:
        """Dataset with groups reordered"""
        return Dataset([self.groups[i] for i in order])
