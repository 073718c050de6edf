"""
Exception hierarchy.
Each family maps to one CLI exit code, so callers catch by family, not by message.
"""

from typing import Any, Optional, Sequence


class HomogeneityError(Exception):
    """Base class for all errors raised by the library"""


class InputError(HomogeneityError, ValueError):
    """Invalid data or configuration supplied by the caller"""


class DimensionMismatchError(InputError):
    """Observation length does not match the kernel's input_dim"""


class InsufficientSampleError(InputError):
    """A group is too small for the requested U-statistic"""


class InsufficientGroupsError(InputError):
    """Fewer than two groups"""


class ConfigurationError(InputError):
    """A configuration object failed validation"""

    def __init__(self, what: str, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__(f"Invalid {what} configuration: {self.errors}")


class CsvFormatError(InputError):
    """Malformed CSV input; `code` is a stable identifier, `row` the 1-based data row"""

    MISSING_HEADER = "missing_header"
    RAGGED_ROW = "ragged_row"
    NON_NUMERIC = "non_numeric"
    NON_FINITE = "non_finite"
    GROUP_TOO_SMALL = "group_too_small"
    EMPTY = "empty"

    def __init__(self, code: str, message: str, row: Optional[int] = None):
        self.code = code
        self.row = row
        prefix = f"row {row}: " if row is not None else ""
        super().__init__(f"[{code}] {prefix}{message}")


class ComplexityGuardError(HomogeneityError, RuntimeError):
    """Refusal to run an enumeration larger than the configured budget"""

    def __init__(self, message: str, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(message)


class DegenerateVarianceError(HomogeneityError):
    """S_lhat (or a bootstrap V*) is exactly zero, so the normalized statistic is undefined"""

    def __init__(self, message: str, diagnostics: Optional[dict[str, Any]] = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class BootstrapDegenerateError(DegenerateVarianceError):
    """Every redraw of a bootstrap replicate had zero variance"""


class CalibrationError(HomogeneityError):
    """A calibration root-find failed"""

    def __init__(self, message: str, trace: Optional[list[tuple[float, float]]] = None):
        self.trace = trace or []
        super().__init__(f"{message} (trace: {self.trace})")
