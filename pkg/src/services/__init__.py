"""Service layer: one workflow per CLI verb."""

from .benchmark_service import BenchmarkService, run_synth_bench_command
from .evaluation_service import run_eval_command
from .feature_service import FeatureService, run_extract_command
from .training_service import TrainingService, run_train_command

__all__ = [
    'BenchmarkService', 'run_synth_bench_command',
    'run_eval_command',
    'FeatureService', 'run_extract_command',
    'TrainingService', 'run_train_command',
]
