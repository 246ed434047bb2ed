"""
Identification metrics: one-vs-rest confusion counts and macro-averaged
precision, recall and F-measure.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Protocol, Sequence

import numpy as np

from ..env.culprit_env import CaseRecord
from ..errors import ConfigurationError, DataError

logger = logging.getLogger(__name__)

AVERAGING = "macro"


class ScoringPolicy(Protocol):
    """Anything that maps a batch of states to per-suspect scores."""

    def scores(self, states: np.ndarray) -> np.ndarray: ...


@dataclass
class ConfusionCounts:
    """Per-class one-vs-rest counts; arrays are indexed by suspect class."""

    tp: np.ndarray
    fp: np.ndarray
    fn: np.ndarray
    tn: np.ndarray
    n_cases: int

    @property
    def n_classes(self) -> int:
        return self.tp.size

    @property
    def correct(self) -> int:
        return int(self.tp.sum())

    @classmethod
    def from_predictions(cls, truth: Sequence[int], predicted: Sequence[int], n_classes: int) -> "ConfusionCounts":
        truth = np.asarray(truth, dtype=np.int64)
        predicted = np.asarray(predicted, dtype=np.int64)
        if truth.shape != predicted.shape:
            raise DataError(f"{truth.size} labels but {predicted.size} predictions")
        if truth.size == 0:
            raise DataError("No cases to count")
        matrix = np.zeros((n_classes, n_classes), dtype=np.int64)
        np.add.at(matrix, (truth, predicted), 1)
        return cls.from_matrix(matrix)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "ConfusionCounts":
        """Build from a (true, predicted) count matrix."""
        matrix = np.asarray(matrix, dtype=np.int64)
        n = int(matrix.sum())
        tp = np.diag(matrix).copy()
        fp = matrix.sum(axis=0) - tp
        fn = matrix.sum(axis=1) - tp
        tn = n - tp - fp - fn
        return cls(tp=tp, fp=fp, fn=fn, tn=tn, n_cases=n)

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            tp=self.tp + other.tp, fp=self.fp + other.fp, fn=self.fn + other.fn,
            tn=self.tn + other.tn, n_cases=self.n_cases + other.n_cases,
        )


@dataclass
class ClassMetrics:
    suspect: int
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class MetricsReport:
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    n_cases: int
    per_class: List[ClassMetrics] = field(default_factory=list)
    averaging: str = AVERAGING

    def to_dict(self) -> Dict[str, Any]:
        return {
            "accuracy": float(self.accuracy),
            "macro_precision": float(self.macro_precision),
            "macro_recall": float(self.macro_recall),
            "macro_f1": float(self.macro_f1),
            "averaging": self.averaging,
            "n_cases": int(self.n_cases),
            "per_class": [
                {
                    "suspect": int(c.suspect),
                    "precision": float(c.precision),
                    "recall": float(c.recall),
                    "f1": float(c.f1),
                    "support": int(c.support),
                }
                for c in self.per_class
            ],
        }


def _safe_ratio(numerator: float, denominator: float) -> float:
    return numerator / denominator if denominator else 0.0


def compute_metrics(counts: ConfusionCounts) -> MetricsReport:
    if counts.n_cases < 1:
        raise DataError("compute_metrics needs at least one case")
    per_class = []
    for k in range(counts.n_classes):
        tp, fp, fn = int(counts.tp[k]), int(counts.fp[k]), int(counts.fn[k])
        precision = _safe_ratio(tp, tp + fp)
        recall = _safe_ratio(tp, tp + fn)
        # harmonic mean of precision and recall, written in counts
        f1 = _safe_ratio(2 * tp, 2 * tp + fp + fn)
        per_class.append(ClassMetrics(k, precision, recall, f1, tp + fn))
    return MetricsReport(
        accuracy=counts.correct / counts.n_cases,
        macro_precision=float(np.mean([c.precision for c in per_class])),
        macro_recall=float(np.mean([c.recall for c in per_class])),
        macro_f1=float(np.mean([c.f1 for c in per_class])),
        n_cases=counts.n_cases,
        per_class=per_class,
    )


def _count_chunk(policy: ScoringPolicy, states: np.ndarray, truth: np.ndarray, n_classes: int) -> ConfusionCounts:
    scores = np.asarray(policy.scores(states))
    if scores.ndim != 2 or scores.shape[1] != n_classes:
        raise ConfigurationError(f"Policy produced scores of shape {scores.shape}, expected (*, {n_classes})")
    predicted = np.argmax(scores, axis=1)
    return ConfusionCounts.from_predictions(truth, predicted, n_classes)


def evaluate(policy: ScoringPolicy, cases: Sequence[CaseRecord], workers: int = 1) -> ConfusionCounts:
    """
    Greedy identification over every case, accumulated into one-vs-rest counts.

    With workers > 1 the cases are split into contiguous chunks scored on a
    thread pool; the policy must be a read-only snapshot.
    """
    cases = list(cases)
    if not cases:
        raise DataError("Cannot evaluate on an empty case list")
    n_classes = cases[0].n_suspects
    states = np.array([case.state for case in cases], dtype=np.float64)
    truth = np.array([case.culprit_index for case in cases], dtype=np.int64)
    state_dim = getattr(policy, "state_dim", states.shape[1])
    if states.shape[1] != state_dim:
        raise ConfigurationError(f"Cases have {states.shape[1]} features, policy expects {state_dim}")
    if any(case.n_suspects != n_classes for case in cases):
        raise ConfigurationError("Cases disagree on n_suspects")

    workers = max(1, min(int(workers), len(cases)))
    if workers == 1:
        return _count_chunk(policy, states, truth, n_classes)

    chunks = np.array_split(np.arange(len(cases)), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        partials = list(pool.map(lambda idx: _count_chunk(policy, states[idx], truth[idx], n_classes), chunks))
    total = partials[0]
    for partial in partials[1:]:
        total = total + partial
    logger.debug(f"Evaluated {len(cases)} cases on {workers} threads")
    return total
