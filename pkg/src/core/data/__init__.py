"""Tabular ingestion, preprocessing, splitting and case-record bridges."""

from .schema import ColumnKind, ColumnSchema, load_schema
from .table import RawTable, format_cell, load_csv, write_csv_rows
from .preprocessing import (
    CategoryVocabulary, ColumnStats, ScalerMode, ScalerStats,
    apply_scaler, fit_scaler, fit_vocabulary, one_hot,
)
from .split import SplitSpec, split, split_indices
from .records import (
    PreparedCases, attach_image_features, load_case_file, prepare_table_cases,
    to_case_records, write_case_file,
)

__all__ = [
    'ColumnKind', 'ColumnSchema', 'load_schema',
    'RawTable', 'format_cell', 'load_csv', 'write_csv_rows',
    'CategoryVocabulary', 'ColumnStats', 'ScalerMode', 'ScalerStats',
    'apply_scaler', 'fit_scaler', 'fit_vocabulary', 'one_hot',
    'SplitSpec', 'split', 'split_indices',
    'PreparedCases', 'attach_image_features', 'load_case_file', 'prepare_table_cases',
    'to_case_records', 'write_case_file',
]
