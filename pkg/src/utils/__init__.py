"""
Shared utilities used across multiple modules.
Avoid duplication - define once, use everywhere.
"""

from .logger import setup_logger, get_logger, set_level
from .math import (
    falling_factorial,
    exact_sum,
    exact_mean,
    sample_variance,
    normal_upper_tail,
    normal_quantile,
    mc_standard_error
)
from .decorators import log_execution_time
from .rng import keyed_stream, derive_seed, fresh_seed, validate_seed
from .parallel import ordered_map

__all__ = [
    'setup_logger',
    'get_logger',
    'set_level',
    'falling_factorial',
    'exact_sum',
    'exact_mean',
    'sample_variance',
    'normal_upper_tail',
    'normal_quantile',
    'mc_standard_error',
    'log_execution_time',
    'keyed_stream',
    'derive_seed',
    'fresh_seed',
    'validate_seed',
    'ordered_map'
]
