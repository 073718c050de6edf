"""
Report serialization - JSON, CSV and aligned text.
Floats are written with 17 significant digits, so JSON reports parse back bit-exactly.
"""

import json
from typing import Any, Union

import pandas as pd

from ..config import constants
from ..models import BootstrapResult, SubsampleResult, TestResult
from ..services.resampling import ResamplingGrid
from ..services.simulation import ExperimentResult
from ..stat_types import ReportFormat

Result = Union[TestResult, BootstrapResult, SubsampleResult, ExperimentResult, ResamplingGrid]

REPORT_KEYS = ("statistic", "T_k", "S_lhat", "p_value", "method", "k", "alpha", "rejected", "seed", "warnings")
SUBSAMPLE_KEYS = ("p_values", "p_adj", "n_tilde", "L", "trace")

_FLOAT_FORMAT = f"%.{constants.REPORT_SIGNIFICANT_DIGITS}g"


def format_float(value: float) -> str:
    """17 significant digits, always recognisable as a float"""
    text = _FLOAT_FORMAT % value
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _test_record(result: TestResult) -> dict[str, Any]:
    return {
        "statistic": result.script_T,
        "T_k": result.T_k,
        "S_lhat": result.S_lhat,
        "p_value": result.p_value,
        "method": result.method.value,
        "k": result.k,
        "alpha": result.alpha,
        "rejected": result.rejected,
        "seed": result.seed,
        "warnings": list(result.warnings),
    }


def to_record(result: Result) -> dict[str, Any]:
    """
    Flatten a result into the report's key/value layout.

    Args:
        result: Test, bootstrap, subsample or experiment result

    Returns:
        Ordered dict of JSON-compatible values
    """
    if isinstance(result, TestResult):
        return _test_record(result)

    if isinstance(result, BootstrapResult):
        record = _test_record(result.test_result)
        record["seed"] = result.seed
        record["B"] = result.B
        return record

    if isinstance(result, SubsampleResult):
        inner = result.per_draw_results[0]
        record = {
            "statistic": None,
            "T_k": None,
            "S_lhat": None,
            "p_value": result.p_adj,
            "method": f"subsample-{inner.method.value}",
            "k": inner.k,
            "alpha": result.alpha,
            "rejected": result.rejected,
            "seed": result.seed,
            "warnings": list(result.warnings),
            "p_values": list(result.p_values),
            "p_adj": result.p_adj,
            "n_tilde": result.n_tilde,
            "L": result.L,
            "trace": [
                {"n_tilde": entry.n_tilde, "p_adj": entry.p_adj, "rejected": entry.rejected}
                for entry in result.trace
            ],
        }
        if result.stable is not None:
            record["stable"] = result.stable
        return record

    if isinstance(result, ResamplingGrid):
        return {
            "method": f"subsample-grid-{result.inner.value}",
            "kernel": result.kernel,
            "k": result.k,
            "alpha": result.alpha,
            "seed": result.seed,
            "stable": result.stable,
            "stable_n_tilde": result.stable_n_tilde(),
            "grid": [
                {"n_tilde": cell.n_tilde, "L": cell.L, "p_adj": cell.p_adj, "rejected": cell.rejected}
                for cell in result.cells
            ],
            "warnings": list(result.warnings),
        }

    if isinstance(result, ExperimentResult):
        return {
            "experiment": result.name,
            "J": result.replications,
            "D_k": result.D_k,
            "mean_T_k": result.mean_T_k,
            "seed": result.seed,
            "rates": [
                {
                    "method": entry.method.value,
                    "alpha": entry.alpha,
                    "rate": entry.rate,
                    "standard_error": entry.standard_error,
                    "rejections": entry.rejections,
                }
                for entry in result.rates
            ],
            "warnings": list(result.warnings),
        }

    raise TypeError(f"Cannot report a {type(result).__name__}")


def _encode(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in value.items()) + "}"
    raise TypeError(f"Cannot encode {type(value).__name__}")


def _csv_cell(value: Any) -> Any:
    if isinstance(value, (list, tuple, dict)):
        return _encode(value)
    return value


def _text_value(value: Any) -> str:
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple, dict)) or value is None or isinstance(value, bool):
        return _encode(value)
    return str(value)


def emit_report(result: Result, report_format: ReportFormat = ReportFormat.JSON) -> bytes:
    """
    Serialize a result.

    Args:
        result: Any result the CLI produces
        report_format: json, csv or text

    Returns:
        UTF-8 encoded report ending in a newline
    """
    record = to_record(result)

    if report_format == ReportFormat.JSON:
        return (_encode(record) + "\n").encode("utf-8")

    if report_format == ReportFormat.CSV:
        if isinstance(result, (ExperimentResult, ResamplingGrid)):
            frame = result.to_frame()
            frame["seed"] = result.seed
        else:
            frame = pd.DataFrame([{key: _csv_cell(value) for key, value in record.items()}])
        return frame.to_csv(index=False, float_format=_FLOAT_FORMAT, lineterminator="\n").encode("utf-8")

    width = max(len(key) for key in record)
    lines = [f"{key.ljust(width)}: {_text_value(value)}" for key, value in record.items()]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_report(data: Union[bytes, str]) -> dict[str, Any]:
    """Parse a JSON report back into a dict"""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return json.loads(data)
