"""Patience-based early stopping on a maximized validation score."""

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from ..errors import ConfigurationError


class StopDecision(str, Enum):
    CONTINUE = "continue"
    STOP = "stop"


@dataclass(frozen=True)
class EarlyStopSpec:
    patience: int = 10
    metric: str = "validation_accuracy"
    mode: str = "maximize"

    def __post_init__(self):
        if self.patience < 1:
            raise ConfigurationError(f"patience must be >= 1, got {self.patience}")
        if self.mode != "maximize":
            raise ConfigurationError(f"Only maximize mode is supported, got {self.mode}")


def early_stop_check(history: Sequence[float], spec: EarlyStopSpec = EarlyStopSpec()) -> StopDecision:
    """Stop when none of the last `patience` scores strictly beats the best score before them."""
    if len(history) <= spec.patience:
        return StopDecision.CONTINUE
    best_before = max(history[:-spec.patience])
    recent_best = max(history[-spec.patience:])
    return StopDecision.STOP if recent_best <= best_before else StopDecision.CONTINUE
