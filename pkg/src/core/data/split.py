"""Seeded shuffle-then-slice train/validation/test split."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import ConfigurationError, DataError
from .table import RawTable

# float slack so e.g. 100 * 0.2 floors to 20 and not 19
_FLOOR_SLACK = 1e-9


@dataclass(frozen=True)
class SplitSpec:
    validation_fraction: float = 0.2
    test_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.validation_fraction < 0 or self.test_fraction < 0:
            raise ConfigurationError("Split fractions must be >= 0")
        if self.validation_fraction + self.test_fraction >= 1:
            raise ConfigurationError(
                f"Split fractions must sum to < 1, got {self.validation_fraction} + {self.test_fraction}"
            )


def split_indices(n_rows: int, spec: SplitSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Positions for (train, validation, test): test is the last floor(n*test) shuffled rows, validation the floor(n*val) before it."""
    if n_rows < 1:
        raise DataError("Cannot split an empty table")
    order = np.random.default_rng(spec.seed).permutation(n_rows)
    n_test = int(np.floor(n_rows * spec.test_fraction + _FLOOR_SLACK))
    n_val = int(np.floor(n_rows * spec.validation_fraction + _FLOOR_SLACK))
    n_train = n_rows - n_test - n_val
    return order[:n_train], order[n_train:n_train + n_val], order[n_train + n_val:]


def split(table: RawTable, spec: SplitSpec) -> Tuple[RawTable, RawTable, RawTable]:
    train, validation, test = split_indices(len(table), spec)
    return table.take(train), table.take(validation), table.take(test)
