"""
Kernels - symmetric functions whose expectation is the compared parameter.
Strategy pattern: estimators depend on the Kernel abstraction only.
"""

from .base import Kernel, FunctionKernel
from .builtin import (
    GiniMeanDifferenceKernel,
    SpearmanKernel,
    MeanKernel,
    VarianceKernel,
    gmd_kernel,
    spearman_kernel,
    mean_kernel,
    variance_kernel,
    kernel_by_name
)
from .validator import SymmetryReport, check_symmetry

__all__ = [
    'Kernel',
    'FunctionKernel',
    'GiniMeanDifferenceKernel',
    'SpearmanKernel',
    'MeanKernel',
    'VarianceKernel',
    'gmd_kernel',
    'spearman_kernel',
    'mean_kernel',
    'variance_kernel',
    'kernel_by_name',
    'SymmetryReport',
    'check_symmetry'
]
