"""
Domain models - data classes for samples, estimates, results and designs.
Validation only, no computation.
"""

from .sample import GroupSample, Dataset, as_observations
from .estimates import GroupEstimates, LinearComponents
from .results import (
    TestResult,
    BootstrapResult,
    SubsampleResult,
    DecisionTraceEntry,
    DecompositionDiagnostics
)
from .design import PopulationSpec, ContaminationDesign, ExperimentDesign, Scenario, contaminated_count

__all__ = [
    'GroupSample',
    'Dataset',
    'as_observations',
    'GroupEstimates',
    'LinearComponents',
    'TestResult',
    'BootstrapResult',
    'SubsampleResult',
    'DecisionTraceEntry',
    'DecompositionDiagnostics',
    'PopulationSpec',
    'ContaminationDesign',
    'ExperimentDesign',
    'Scenario',
    'contaminated_count'
]
