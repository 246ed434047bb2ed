"""
Column schemas for tabular case data and the YAML sidecar that declares them.
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import List, Sequence, Union

import yaml

from ..errors import DataError, SchemaError


class ColumnKind(str, Enum):
    NUMERIC = "NUMERIC"
    CATEGORICAL = "CATEGORICAL"
    IDENTIFIER = "IDENTIFIER"
    LABEL = "LABEL"


@dataclass(frozen=True)
class ColumnSchema:
    name: str
    kind: ColumnKind

    def __post_init__(self):
        if not self.name:
            raise SchemaError("Column name must be non-empty")
        try:
            object.__setattr__(self, "kind", ColumnKind(str(getattr(self.kind, "value", self.kind)).upper()))
        except ValueError as e:
            raise SchemaError(f"Column '{self.name}' has unknown kind {self.kind!r}") from e


def check_schema(schema: Sequence[ColumnSchema]) -> List[ColumnSchema]:
    schema = list(schema)
    if not schema:
        raise SchemaError("Schema declares no columns")
    names = [c.name for c in schema]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise SchemaError(f"Schema declares duplicate columns: {duplicates}")
    return schema


def load_schema(path: Union[str, Path]) -> List[ColumnSchema]:
    """
    Read a sidecar mapping column name -> kind, in file order, e.g.

        case_id: IDENTIFIER
        murders: NUMERIC
        state: CATEGORICAL
        culprit: LABEL
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"Schema file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            mapping = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise SchemaError(f"Cannot parse schema {path}: {e}") from e
    if not isinstance(mapping, dict):
        raise SchemaError(f"Schema {path} must be a mapping of column name to kind")
    return check_schema(ColumnSchema(str(name), kind) for name, kind in mapping.items())
