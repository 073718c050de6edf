"""
CSV ingestion - `group,v1[,v2]` files, one row per observation.
Errors carry a stable code and the 1-based data row they refer to.
"""

import re
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from ..errors import CsvFormatError, DimensionMismatchError, InputError
from ..kernels.base import Kernel
from ..models import Dataset, GroupSample
from ..utils import get_logger

logger = get_logger(__name__)

SCALAR_HEADER = ["group", "v1"]
BIVARIATE_HEADER = ["group", "v1", "v2"]
_NON_FINITE_LITERALS = {"nan", "inf", "+inf", "-inf", "infinity", "+infinity", "-infinity"}
_PARSER_LINE = re.compile(r"line (\d+)")


def _read_frame(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError:
        raise CsvFormatError(CsvFormatError.EMPTY, f"{path} is empty") from None
    except pd.errors.ParserError as e:
        # pandas counts file lines from 1 including the header
        match = _PARSER_LINE.search(str(e))
        row = int(match.group(1)) - 1 if match else None
        raise CsvFormatError(CsvFormatError.RAGGED_ROW, f"too many fields ({e})", row) from None
    except UnicodeDecodeError as e:
        raise CsvFormatError(CsvFormatError.NON_NUMERIC, f"{path} is not UTF-8: {e}") from None


def _parse_column(frame: pd.DataFrame, column: str) -> np.ndarray:
    raw = frame[column].str.strip()
    values = pd.to_numeric(raw, errors="coerce").to_numpy(dtype=np.float64)
    for i in np.flatnonzero(~np.isfinite(values)):
        cell = raw.iloc[i]
        if cell.lower() in _NON_FINITE_LITERALS or np.isinf(values[i]):
            code = CsvFormatError.NON_FINITE
        else:
            code = CsvFormatError.NON_NUMERIC
        raise CsvFormatError(code, f"column {column}: {cell!r} is not a finite number", row=int(i) + 1)
    return values


def ingest_csv(path: Union[str, Path], kernel: Optional[Kernel] = None) -> Dataset:
    """
    Load a dataset from CSV.

    Groups appear in order of first appearance. With a kernel, every group
    must have at least 2m rows and the column count must match its input_dim.

    Args:
        path: UTF-8 file with header `group,v1` or `group,v1,v2`
        kernel: Kernel the dataset is meant for

    Returns:
        Dataset

    Raises:
        CsvFormatError: with code missing_header, ragged_row, non_numeric,
            non_finite, group_too_small or empty
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"Input file not found: {path}")

    frame = _read_frame(path)
    header = [str(c).strip() for c in frame.columns]
    if header not in (SCALAR_HEADER, BIVARIATE_HEADER):
        raise CsvFormatError(
            CsvFormatError.MISSING_HEADER,
            f"expected header 'group,v1' or 'group,v1,v2', got {','.join(header)!r}",
        )
    frame.columns = header
    if frame.empty:
        raise CsvFormatError(CsvFormatError.EMPTY, f"{path} has a header but no data rows")

    short = frame.isna().any(axis=1).to_numpy()
    if short.any():
        row = int(np.argmax(short)) + 1
        raise CsvFormatError(CsvFormatError.RAGGED_ROW, f"expected {len(header)} fields", row=row)

    value_columns = header[1:]
    values = np.column_stack([_parse_column(frame, column) for column in value_columns])
    input_dim = len(value_columns)
    if kernel is not None and kernel.input_dim != input_dim:
        raise DimensionMismatchError(
            f"{path} has {input_dim} value column(s), kernel {kernel.name} expects {kernel.input_dim}"
        )

    labels = frame["group"].str.strip()
    order = pd.unique(labels)
    groups = [GroupSample(label, values[(labels == label).to_numpy()]) for label in order]

    if kernel is not None:
        required = 2 * kernel.degree
        for group in groups:
            if group.n < required:
                raise CsvFormatError(
                    CsvFormatError.GROUP_TOO_SMALL,
                    f"group {group.group_id!r} has {group.n} rows, kernel {kernel.name} needs at least {required}",
                )

    dataset = Dataset(groups)
    logger.info(f"Loaded {path}: k={dataset.k}, input_dim={input_dim}, sizes {min(dataset.sizes)}..{max(dataset.sizes)}")
    return dataset
