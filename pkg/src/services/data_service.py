"""
Data service: turns a RunConfig's environment source into train, validation
and test case lists.
"""

import logging
from dataclasses import dataclass
from typing import List

from config.settings import RunConfig
from core.data import (
    attach_image_features, load_case_file, load_csv, load_schema, prepare_table_cases, split_indices,
)
from core.env import CaseRecord, make_synthetic_cases
from core.errors import ConfigurationError, DataError

from .stages import LOAD_DATA, stage


@dataclass
class CaseSplits:
    train: List[CaseRecord]
    validation: List[CaseRecord]
    test: List[CaseRecord]

    @property
    def state_dim(self) -> int:
        return len(self.train[0].features)

    @property
    def n_suspects(self) -> int:
        return self.train[0].n_suspects


class DataService:
    """Loads cases for a run from the synthetic generator, a case CSV or a raw table."""

    def __init__(self, config: RunConfig):
        self.logger = logging.getLogger(__name__)
        self.config = config

    def load_cases(self) -> CaseSplits:
        with stage(LOAD_DATA):
            source = self.config.source
            if source == "synthetic":
                splits = self._split(make_synthetic_cases(
                    self.config.n_cases, self.config.n_features, self.config.n_suspects,
                    self.config.noise, self.config.seed,
                ))
            elif source == "cases":
                if not self.config.cases_csv:
                    raise ConfigurationError("source 'cases' needs cases_csv")
                splits = self._split(load_case_file(self.config.cases_csv))
            else:
                splits = self._from_table()

            if self.config.image_features_csv:
                splits = CaseSplits(*(
                    attach_image_features(part, self.config.image_features_csv)
                    for part in (splits.train, splits.validation, splits.test)
                ))
            if not splits.train:
                raise DataError("Training split is empty")
            self.logger.info(
                f"Loaded {source} cases: {len(splits.train)} train, "
                f"{len(splits.validation)} validation, {len(splits.test)} test"
            )
            return splits

    def _split(self, cases: List[CaseRecord]) -> CaseSplits:
        train, validation, test = split_indices(len(cases), self.config.split_spec())
        return CaseSplits(
            [cases[i] for i in train],
            [cases[i] for i in validation],
            [cases[i] for i in test],
        )

    def _from_table(self) -> CaseSplits:
        if not (self.config.table_csv and self.config.schema_path):
            raise ConfigurationError("source 'table' needs table_csv and schema_path")
        table = load_csv(self.config.table_csv, load_schema(self.config.schema_path))
        if table.dropped_rows:
            self.logger.warning(f"{table.dropped_rows} malformed row(s) dropped from {self.config.table_csv}")
        prepared = prepare_table_cases(
            table, self.config.label_column, self.config.n_suspects,
            self.config.split_spec(), self.config.scaler_mode,
        )
        return CaseSplits(prepared.train, prepared.validation, prepared.test)
