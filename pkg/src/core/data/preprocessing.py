"""
Feature scaling and categorical encoding.

Statistics and vocabularies are fitted on training rows only and then
applied, unchanged, to validation and test rows.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from ..errors import ConfigurationError, DataError, SchemaError
from .schema import ColumnKind, ColumnSchema
from .table import RawTable


class ScalerMode(str, Enum):
    MINMAX = "MINMAX"
    STANDARD = "STANDARD"


def _mode(mode) -> ScalerMode:
    if isinstance(mode, ScalerMode):
        return mode
    try:
        return ScalerMode(str(mode).upper())
    except ValueError as e:
        raise ConfigurationError(f"Unknown scaler mode {mode!r}") from e


@dataclass(frozen=True)
class ColumnStats:
    min: float
    max: float
    mean: float
    std: float


@dataclass(frozen=True)
class ScalerStats:
    mode: ScalerMode
    columns: Dict[str, ColumnStats]

    def __getitem__(self, name: str) -> ColumnStats:
        return self.columns[name]


def fit_scaler(table: RawTable, mode=ScalerMode.MINMAX) -> ScalerStats:
    mode = _mode(mode)
    if len(table) == 0:
        raise DataError("Cannot fit a scaler on an empty table")
    stats = {}
    for name in table.names_of(ColumnKind.NUMERIC):
        values = table.column(name).astype(np.float64)
        stats[name] = ColumnStats(
            min=float(values.min()), max=float(values.max()),
            mean=float(values.mean()), std=float(values.std()),
        )
    return ScalerStats(mode, stats)


def apply_scaler(table: RawTable, stats: ScalerStats, mode=None) -> RawTable:
    """MINMAX: (x - min) / (max - min); STANDARD: (x - mean) / std. Degenerate columns map to 0, nothing is clipped."""
    mode = _mode(mode) if mode is not None else stats.mode
    frame = table.frame
    for name in table.names_of(ColumnKind.NUMERIC):
        if name not in stats.columns:
            raise SchemaError(f"No scaler statistics for column '{name}'")
        s = stats.columns[name]
        values = frame[name].to_numpy(dtype=np.float64)
        if mode is ScalerMode.MINMAX:
            span = s.max - s.min
            frame[name] = (values - s.min) / span if span > 0 else np.zeros_like(values)
        else:
            frame[name] = (values - s.mean) / s.std if s.std > 0 else np.zeros_like(values)
    return table.with_frame(frame)


@dataclass(frozen=True)
class CategoryVocabulary:
    """Per CATEGORICAL column, its categories in order of first appearance."""

    categories: Dict[str, Tuple[str, ...]]

    def __getitem__(self, name: str) -> Tuple[str, ...]:
        return self.categories[name]


def fit_vocabulary(table: RawTable) -> CategoryVocabulary:
    return CategoryVocabulary({
        name: tuple(pd.unique(table.column(name).astype(str)))
        for name in table.names_of(ColumnKind.CATEGORICAL)
    })


def one_hot(table: RawTable, vocabulary: Optional[CategoryVocabulary] = None) -> RawTable:
    """
    Replace each CATEGORICAL column, in place, with NUMERIC indicator columns
    named "<column>=<category>". Categories missing from the vocabulary encode
    as all zeros. Without a vocabulary the table's own categories are used.
    """
    if vocabulary is None:
        vocabulary = fit_vocabulary(table)
    source = table.frame
    columns, schema = {}, []
    for column in table.schema:
        if column.kind is not ColumnKind.CATEGORICAL:
            columns[column.name] = source[column.name]
            schema.append(column)
            continue
        if column.name not in vocabulary.categories:
            raise SchemaError(f"No vocabulary for categorical column '{column.name}'")
        values = source[column.name].astype(str)
        for category in vocabulary[column.name]:
            name = f"{column.name}={category}"
            columns[name] = (values == category).astype(np.float64)
            schema.append(ColumnSchema(name, ColumnKind.NUMERIC))
    frame = pd.DataFrame(columns, index=source.index)
    return table.with_frame(frame, schema)
