"""Wall-clock accounting per training/evaluation phase."""

import time
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List


class Phase(str, Enum):
    TRAIN_STEP = "train_step"
    EPISODE = "episode"
    EVALUATION = "evaluation"


# TRAIN_STEP runs inside EPISODE, so only these partition a run.
TOP_LEVEL_PHASES = (Phase.EPISODE, Phase.EVALUATION)


@dataclass
class TimingRecord:
    phase: Phase
    wall_milliseconds: float = 0.0
    count: int = 0


class TimingLedger:
    """Accumulates elapsed time per phase, plus the wall clock of every span() it was given."""

    def __init__(self):
        self._records: Dict[Phase, TimingRecord] = {}
        self.wall_clock_ms = 0.0

    @contextmanager
    def measure(self, phase: Phase) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.add(phase, (time.perf_counter() - start) * 1000.0)

    @contextmanager
    def span(self) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.wall_clock_ms += (time.perf_counter() - start) * 1000.0

    def add(self, phase: Phase, milliseconds: float) -> None:
        phase = Phase(phase)
        record = self._records.setdefault(phase, TimingRecord(phase))
        record.wall_milliseconds += max(0.0, milliseconds)
        record.count += 1

    def records(self) -> List[TimingRecord]:
        return [self._records[p] for p in Phase if p in self._records]

    def total_ms(self, phase: Phase) -> float:
        record = self._records.get(Phase(phase))
        return record.wall_milliseconds if record else 0.0

    def count(self, phase: Phase) -> int:
        record = self._records.get(Phase(phase))
        return record.count if record else 0

    def accounted_ms(self) -> float:
        return sum(self.total_ms(phase) for phase in TOP_LEVEL_PHASES)

    def coverage(self) -> float:
        """Share of the spanned wall clock attributed to top-level phases; 1.0 before any span."""
        if self.wall_clock_ms <= 0.0:
            return 1.0
        return self.accounted_ms() / self.wall_clock_ms
