"""
Simulation service - data generators and the Monte Carlo harness.
"""

from .datagen import (
    MIXTURE_COMPONENTS,
    population_gmd,
    gmd_scale_factor,
    mixture_assignment,
    generate_null_dataset,
    generate_power_dataset,
    spearman_kernel_expectation,
    spearman_kernel_expectation_mc,
    calibrate_spearman_target
)
from .experiments import (
    RejectionRate,
    ExperimentResult,
    SweepPoint,
    NullCalibration,
    run_experiment,
    run_level_experiment,
    run_power_experiment,
    decomposition_check,
    consistency_sweep,
    null_calibration
)

__all__ = [
    'MIXTURE_COMPONENTS',
    'population_gmd',
    'gmd_scale_factor',
    'mixture_assignment',
    'generate_null_dataset',
    'generate_power_dataset',
    'spearman_kernel_expectation',
    'spearman_kernel_expectation_mc',
    'calibrate_spearman_target',
    'RejectionRate',
    'ExperimentResult',
    'SweepPoint',
    'NullCalibration',
    'run_experiment',
    'run_level_experiment',
    'run_power_experiment',
    'decomposition_check',
    'consistency_sweep',
    'null_calibration'
]
