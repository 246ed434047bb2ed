"""
Typed tabular data loaded from RFC-4180 CSV files.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..errors import DataError, SchemaError
from .schema import ColumnKind, ColumnSchema, check_schema

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RawTable:
    """
    Schema plus typed cells. NUMERIC columns hold finite float64 values, all
    other columns hold strings. The frame is private; accessors return copies.
    """

    schema: Tuple[ColumnSchema, ...]
    _frame: pd.DataFrame = field(repr=False)
    dropped_rows: int = 0

    def __post_init__(self):
        schema = tuple(check_schema(self.schema))
        object.__setattr__(self, "schema", schema)
        if list(self._frame.columns) != [c.name for c in schema]:
            raise SchemaError(
                f"Frame columns {list(self._frame.columns)} do not match schema {[c.name for c in schema]}"
            )

    @classmethod
    def from_rows(cls, schema: Sequence[ColumnSchema], rows: Sequence[Sequence]) -> "RawTable":
        schema = check_schema(schema)
        for i, row in enumerate(rows):
            if len(row) != len(schema):
                raise SchemaError(f"Row {i} has {len(row)} cells, schema has {len(schema)} columns")
        frame = pd.DataFrame([list(r) for r in rows], columns=[c.name for c in schema])
        frame, dropped = _coerce(frame, schema)
        return cls(tuple(schema), frame, dropped)

    def __len__(self):
        return len(self._frame)

    @property
    def frame(self) -> pd.DataFrame:
        return self._frame.copy()

    @property
    def columns(self) -> List[str]:
        return [c.name for c in self.schema]

    @property
    def rows(self) -> List[list]:
        return self._frame.values.tolist()

    def kind(self, name: str) -> ColumnKind:
        for column in self.schema:
            if column.name == name:
                return column.kind
        raise SchemaError(f"Unknown column '{name}'")

    def names_of(self, kind: ColumnKind) -> List[str]:
        return [c.name for c in self.schema if c.kind is kind]

    def column(self, name: str) -> np.ndarray:
        if name not in self._frame.columns:
            raise SchemaError(f"Unknown column '{name}'")
        return self._frame[name].to_numpy(copy=True)

    def take(self, indices) -> "RawTable":
        """Rows at the given positions; the original row labels are kept."""
        return RawTable(self.schema, self._frame.iloc[np.asarray(indices, dtype=np.int64)].copy())

    def with_frame(self, frame: pd.DataFrame, schema: Sequence[ColumnSchema] = None) -> "RawTable":
        return RawTable(tuple(schema or self.schema), frame, self.dropped_rows)


def _coerce(frame: pd.DataFrame, schema: Sequence[ColumnSchema]) -> Tuple[pd.DataFrame, int]:
    """Parse NUMERIC columns; rows with unparseable or non-finite values are dropped."""
    frame = frame.copy()
    bad = np.zeros(len(frame), dtype=bool)
    for column in schema:
        if column.kind is ColumnKind.NUMERIC:
            values = pd.to_numeric(frame[column.name].astype(str).str.strip(), errors="coerce").astype(np.float64)
            bad |= ~np.isfinite(values.to_numpy())
            frame[column.name] = values
        else:
            frame[column.name] = frame[column.name].fillna("").astype(str).str.strip()
    return frame.loc[~bad], int(bad.sum())


def load_csv(path: Union[str, Path], schema: Sequence[ColumnSchema]) -> RawTable:
    """
    Load a comma-delimited UTF-8 file whose header equals the schema names in
    order. Rows with malformed NUMERIC cells are dropped; the count is kept on
    the returned table and logged.
    """
    path = Path(path)
    schema = check_schema(schema)
    if not path.exists():
        raise DataError(f"Input CSV not found: {path}")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as e:
        raise SchemaError(f"{path} is empty; expected header {[c.name for c in schema]}") from e
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataError(f"Cannot parse {path}: {e}") from e

    expected = [c.name for c in schema]
    header = [str(c).strip() for c in frame.columns]
    if header != expected:
        raise SchemaError(f"Header of {path} is {header}, schema expects {expected}")
    frame.columns = expected

    frame, dropped = _coerce(frame, schema)
    if dropped:
        logger.warning(f"Dropped {dropped} malformed row(s) from {path}")
    logger.info(f"Loaded {len(frame)} rows from {path}")
    return RawTable(tuple(schema), frame, dropped)


def format_cell(value: Any) -> str:
    """CSV text for one cell; floats use repr so they read back bit-exactly, None and NaN stay empty."""
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return "" if np.isnan(value) else repr(float(value))
    return str(value)


def write_csv_rows(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Header plus rows as UTF-8 CSV with LF line endings; every CSV the toolkit writes goes through here."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cells = [[format_cell(value) for value in row] for row in rows]
    frame = pd.DataFrame(cells, columns=list(header), dtype=object)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    return path
