"""
Concrete kernels: Gini mean difference, Spearman's rho, mean and variance.
All evaluate vectorised over leading axes and are bit-exactly symmetric.
"""

from itertools import permutations

import numpy as np

from ..errors import InputError
from ..stat_types import KernelBatch, KernelName
from .base import Kernel

# Ordered triples (alpha, beta, gamma) of distinct indices in {0, 1, 2}
_SPEARMAN_TRIPLES = tuple(permutations(range(3)))


class GiniMeanDifferenceKernel(Kernel):
    """h(x1, x2) = |x1 - x2|; E[h] is the Gini mean difference."""

    def __init__(self):
        super().__init__(KernelName.GMD.value, degree=2, input_dim=1)

    def evaluate_batch(self, points: KernelBatch) -> np.ndarray:
        points = self.check_batch(points)
        return np.abs(points[..., 0, 0] - points[..., 1, 0])


class SpearmanKernel(Kernel):
    """
    Degree-3 kernel on bivariate observations:
    h = 1/2 * sum over ordered distinct (a, b, c) of sgn(x_a1 - x_b1) * sgn(x_a2 - x_c2).
    Ties contribute sgn(0) = 0. E[h] is Spearman's rho of the two components.
    """

    def __init__(self):
        super().__init__(KernelName.SPEARMAN.value, degree=3, input_dim=2)

    def evaluate_batch(self, points: KernelBatch) -> np.ndarray:
        points = self.check_batch(points)
        first = points[..., 0]
        second = points[..., 1]
        total = np.zeros(points.shape[:-2], dtype=np.float64)
        # Each term is -1, 0 or 1, so the sum is exact in any order
        for a, b, c in _SPEARMAN_TRIPLES:
            total += np.sign(first[..., a] - first[..., b]) * np.sign(second[..., a] - second[..., c])
        return 0.5 * total


class MeanKernel(Kernel):
    """h(x) = x; E[h] is the mean."""

    def __init__(self):
        super().__init__(KernelName.MEAN.value, degree=1, input_dim=1)

    def evaluate_batch(self, points: KernelBatch) -> np.ndarray:
        points = self.check_batch(points)
        return points[..., 0, 0].copy()


class VarianceKernel(Kernel):
    """h(x1, x2) = (x1 - x2)^2 / 2; E[h] is the variance."""

    def __init__(self):
        super().__init__(KernelName.VARIANCE.value, degree=2, input_dim=1)

    def evaluate_batch(self, points: KernelBatch) -> np.ndarray:
        points = self.check_batch(points)
        diff = points[..., 0, 0] - points[..., 1, 0]
        return 0.5 * diff * diff


def gmd_kernel() -> Kernel:
    """Gini mean difference kernel |x1 - x2|"""
    return GiniMeanDifferenceKernel()


def spearman_kernel() -> Kernel:
    """Spearman's rho kernel of degree 3 on bivariate data"""
    return SpearmanKernel()


def mean_kernel() -> Kernel:
    """Degree-1 identity kernel"""
    return MeanKernel()


def variance_kernel() -> Kernel:
    """Degree-2 half squared difference kernel"""
    return VarianceKernel()


_FACTORIES = {
    KernelName.GMD: gmd_kernel,
    KernelName.SPEARMAN: spearman_kernel,
    KernelName.MEAN: mean_kernel,
    KernelName.VARIANCE: variance_kernel,
}


def kernel_by_name(name: str) -> Kernel:
    """
    Resolve a shipped kernel from its CLI name.

    Args:
        name: One of gmd, spearman, mean, variance

    Returns:
        Fresh kernel instance
    """
    try:
        return _FACTORIES[KernelName(name)]()
    except ValueError:
        choices = ", ".join(k.value for k in KernelName)
        raise InputError(f"Unknown kernel {name!r}; choose one of: {choices}") from None
