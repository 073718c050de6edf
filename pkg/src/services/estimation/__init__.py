"""
Estimation service - per-group U-statistics for theta and theta^2.
"""

from .ustat import (
    subset_index,
    disjoint_pairs,
    product_term_count,
    check_complexity,
    kernel_values,
    estimate_theta,
    estimate_theta_squared,
    estimate_group,
    estimate_groups,
    gmd_fast_path
)
from .oracle import estimate_theta_oracle, estimate_theta_squared_oracle

__all__ = [
    'subset_index',
    'disjoint_pairs',
    'product_term_count',
    'check_complexity',
    'kernel_values',
    'estimate_theta',
    'estimate_theta_squared',
    'estimate_group',
    'estimate_groups',
    'gmd_fast_path',
    'estimate_theta_oracle',
    'estimate_theta_squared_oracle'
]
