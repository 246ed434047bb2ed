"""
Bridges from tables and files to CaseRecords.

Case file layout: header `case_id, culprit_index, n_suspects, f0, f1, ...`,
one case per row.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import pandas as pd

from ..env.culprit_env import CaseRecord
from ..errors import CulpritError, DataError, SchemaError
from ..vision.features import DescriptorKind, FeatureVector, concat_features
from .preprocessing import (
    CategoryVocabulary, ScalerMode, ScalerStats, apply_scaler, fit_scaler, fit_vocabulary, one_hot,
)
from .schema import ColumnKind
from .split import SplitSpec, split
from .table import RawTable, write_csv_rows

logger = logging.getLogger(__name__)

CASE_COLUMNS = ["case_id", "culprit_index", "n_suspects"]
DESCRIPTOR_COLUMNS = ["image_id", "descriptor_kind"]


def _label(value, row_id: str) -> int:
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        raise DataError(f"Row {row_id}: label {value!r} is not an integer") from e
    if not number.is_integer():
        raise DataError(f"Row {row_id}: label {value!r} is not an integer")
    return int(number)


def to_case_records(table: RawTable, label_column: str, n_suspects: int) -> List[CaseRecord]:
    """
    One CaseRecord per row. Features are the non-IDENTIFIER, non-label columns
    in table order and must all be NUMERIC (encode categoricals first). The
    case id is the first IDENTIFIER column, or the row label when there is none.
    """
    if label_column not in table.columns:
        raise SchemaError(f"Label column '{label_column}' is not in the table")
    identifiers = table.names_of(ColumnKind.IDENTIFIER)
    feature_columns = [
        c.name for c in table.schema
        if c.kind is not ColumnKind.IDENTIFIER and c.name != label_column
    ]
    not_numeric = [name for name in feature_columns if table.kind(name) is not ColumnKind.NUMERIC]
    if not_numeric:
        raise SchemaError(f"Columns {not_numeric} must be numeric before building cases")
    if not feature_columns:
        raise SchemaError("Table has no feature columns")

    frame = table.frame
    features = frame[feature_columns].to_numpy(dtype=np.float64)
    ids = frame[identifiers[0]].astype(str).tolist() if identifiers else [str(i) for i in frame.index]
    labels = frame[label_column].tolist()

    records = []
    for case_id, row, label in zip(ids, features, labels):
        culprit = _label(label, case_id)
        if not 0 <= culprit < n_suspects:
            raise DataError(f"Case {case_id}: label {culprit} outside [0, {n_suspects})")
        records.append(CaseRecord(case_id, FeatureVector(row, DescriptorKind.TABULAR), n_suspects, culprit))
    return records


@dataclass
class PreparedCases:
    train: List[CaseRecord]
    validation: List[CaseRecord]
    test: List[CaseRecord]
    scaler: ScalerStats
    vocabulary: CategoryVocabulary


def prepare_table_cases(table: RawTable, label_column: str, n_suspects: int,
                        split_spec: SplitSpec = SplitSpec(), scaler_mode=ScalerMode.MINMAX) -> PreparedCases:
    """Split, fit scaler and vocabulary on the training rows, then encode all three partitions."""
    train, validation, test = split(table, split_spec)
    scaler = fit_scaler(train, scaler_mode)
    vocabulary = fit_vocabulary(train)
    logger.info(f"Split {len(table)} rows into {len(train)}/{len(validation)}/{len(test)}")

    def encode(part: RawTable) -> List[CaseRecord]:
        if len(part) == 0:
            return []
        return to_case_records(one_hot(apply_scaler(part, scaler), vocabulary), label_column, n_suspects)

    return PreparedCases(encode(train), encode(validation), encode(test), scaler, vocabulary)


def write_case_file(records: Sequence[CaseRecord], path: Union[str, Path]) -> Path:
    records = list(records)
    width = len(records[0].features) if records else 0
    if any(len(r.features) != width for r in records):
        raise DataError("Case records disagree on feature length")
    rows = [[r.case_id, r.culprit_index, r.n_suspects, *r.features.values.tolist()] for r in records]
    return write_csv_rows(path, CASE_COLUMNS + [f"f{j}" for j in range(width)], rows)


def load_case_file(path: Union[str, Path]) -> List[CaseRecord]:
    path = Path(path)
    if not path.exists():
        raise DataError(f"Case file not found: {path}")
    try:
        frame = pd.read_csv(path, dtype={"case_id": str}, keep_default_na=False,
                            float_precision="round_trip", encoding="utf-8")
    except pd.errors.EmptyDataError as e:
        raise SchemaError(f"Case file {path} is empty") from e
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataError(f"Cannot parse case file {path}: {e}") from e

    header = list(frame.columns)
    feature_columns = header[len(CASE_COLUMNS):]
    if header[:len(CASE_COLUMNS)] != CASE_COLUMNS or feature_columns != [f"f{j}" for j in range(len(feature_columns))]:
        raise SchemaError(f"Case file {path} has header {header}, expected {CASE_COLUMNS} + f0, f1, ...")
    if not feature_columns:
        raise SchemaError(f"Case file {path} has no feature columns")

    try:
        features = frame[feature_columns].to_numpy(dtype=np.float64)
        records = [
            CaseRecord(str(case_id), FeatureVector(row, DescriptorKind.TABULAR), int(n_suspects), int(culprit))
            for case_id, culprit, n_suspects, row in zip(
                frame["case_id"], frame["culprit_index"], frame["n_suspects"], features
            )
        ]
    except (ValueError, TypeError, CulpritError) as e:
        raise DataError(f"Invalid case in {path}: {e}") from e
    logger.info(f"Loaded {len(records)} cases from {path}")
    return records


def attach_image_features(records: Sequence[CaseRecord], descriptor_csv: Union[str, Path]) -> List[CaseRecord]:
    """Append each case's image descriptor (joined on case_id == image_id) to its features."""
    path = Path(descriptor_csv)
    if not path.exists():
        raise DataError(f"Descriptor file not found: {path}")
    frame = pd.read_csv(path, dtype={"image_id": str, "descriptor_kind": str}, keep_default_na=False,
                        float_precision="round_trip", encoding="utf-8")
    if list(frame.columns[:2]) != DESCRIPTOR_COLUMNS:
        raise SchemaError(f"Descriptor file {path} must start with columns {DESCRIPTOR_COLUMNS}")
    value_columns = list(frame.columns[2:])
    descriptors = {
        image_id: FeatureVector(values, DescriptorKind(kind))
        for image_id, kind, values in zip(
            frame["image_id"], frame["descriptor_kind"], frame[value_columns].to_numpy(dtype=np.float64)
        )
    }

    fused = []
    for record in records:
        if record.case_id not in descriptors:
            raise DataError(f"No image descriptor for case {record.case_id} in {path}")
        fused.append(CaseRecord(
            record.case_id,
            concat_features(record.features, descriptors[record.case_id]),
            record.n_suspects,
            record.culprit_index,
        ))
    return fused
