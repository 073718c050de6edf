"""
Resampling service - linear bootstrap and random subsampling.
"""

from .config import BootstrapConfig, SubsampleConfig
from .bootstrap import (
    linear_bootstrap_replicate,
    bootstrap_replicates,
    pooled_pvalues,
    bootstrap_p_value,
    warp_speed_pvalues,
    bootstrap_from_estimates,
    run_bootstrap_test
)
from .subsample import (
    draw_subsample_indices,
    draw_balanced_subsample,
    adjust_pvalues,
    run_subsample_test,
    adaptive_n_tilde,
    GridCell,
    ResamplingGrid,
    resampling_grid
)

__all__ = [
    'BootstrapConfig',
    'SubsampleConfig',
    'linear_bootstrap_replicate',
    'bootstrap_replicates',
    'pooled_pvalues',
    'bootstrap_p_value',
    'warp_speed_pvalues',
    'bootstrap_from_estimates',
    'run_bootstrap_test',
    'draw_subsample_indices',
    'draw_balanced_subsample',
    'adjust_pvalues',
    'run_subsample_test',
    'adaptive_n_tilde',
    'GridCell',
    'ResamplingGrid',
    'resampling_grid'
]
