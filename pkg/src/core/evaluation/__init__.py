"""Evaluation: identification metrics, early stopping and timing."""

from .early_stopping import EarlyStopSpec, StopDecision, early_stop_check
from .metrics import ClassMetrics, ConfusionCounts, MetricsReport, ScoringPolicy, compute_metrics, evaluate
from .timing import TOP_LEVEL_PHASES, Phase, TimingLedger, TimingRecord

__all__ = [
    'EarlyStopSpec', 'StopDecision', 'early_stop_check',
    'ClassMetrics', 'ConfusionCounts', 'MetricsReport', 'ScoringPolicy', 'compute_metrics', 'evaluate',
    'Phase', 'TOP_LEVEL_PHASES', 'TimingLedger', 'TimingRecord',
]
