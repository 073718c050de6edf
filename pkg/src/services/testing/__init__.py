"""
Testing service - the homogeneity statistic and its asymptotic calibration.
"""

from .statistic import (
    DEGENERATE_WARNING,
    validate_alpha,
    compute_T_k,
    compute_linear_components,
    compute_S_lhat,
    standardized_statistic,
    asymptotic_p_value,
    statistic_from_estimates,
    degenerate_diagnostics,
    run_asymptotic_test
)

__all__ = [
    'DEGENERATE_WARNING',
    'validate_alpha',
    'compute_T_k',
    'compute_linear_components',
    'compute_S_lhat',
    'standardized_statistic',
    'asymptotic_p_value',
    'statistic_from_estimates',
    'degenerate_diagnostics',
    'run_asymptotic_test'
]
