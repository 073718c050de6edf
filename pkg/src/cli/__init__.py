"""
CLI support - CSV ingestion, report serialization and TOML experiment designs.
"""

from .ingest import ingest_csv
from .report import REPORT_KEYS, SUBSAMPLE_KEYS, emit_report, format_float, parse_report, to_record
from .design_loader import design_from_mapping, load_experiment_design

__all__ = [
    'ingest_csv',
    'REPORT_KEYS',
    'SUBSAMPLE_KEYS',
    'emit_report',
    'format_float',
    'parse_report',
    'to_record',
    'design_from_mapping',
    'load_experiment_design'
]
