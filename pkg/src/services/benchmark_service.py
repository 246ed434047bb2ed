"""
Benchmark service: DDPG against the supervised ANN baseline on identical splits.
"""

import logging
from dataclasses import dataclass
from typing import Dict

from config.settings import RunConfig, write_run_config
from core.baseline import MlpClassifier
from core.errors import DataError
from core.evaluation import MetricsReport, Phase, TimingLedger, compute_metrics, evaluate

from .artifacts import ArtifactWriter
from .data_service import DataService
from .stages import BASELINE, EVALUATE, WRITE_ARTIFACTS, stage
from .training_service import TrainingService

METHODS = ("ddpg", "ann_baseline")


@dataclass
class BenchmarkResult:
    reports: Dict[str, MetricsReport]
    timings: Dict[str, TimingLedger]


class BenchmarkService:
    def __init__(self, config: RunConfig):
        self.logger = logging.getLogger(__name__)
        self.config = config

    def run(self) -> BenchmarkResult:
        config = self.config
        with stage(WRITE_ARTIFACTS):
            writer = ArtifactWriter(config.output_dir)
            write_run_config(config, writer.register("run_config.yaml"))

        splits = DataService(config).load_cases()
        if not splits.test:
            raise DataError("synth-bench needs a non-empty test split", stage=EVALUATE)

        trainer = TrainingService(config)
        env, agent = trainer.build_agent(splits)
        history = trainer.train(agent, env, splits.validation)
        ddpg_report = trainer.evaluate_test(agent, history, splits.test)

        baseline_ledger = TimingLedger()
        with stage(BASELINE):
            classifier = MlpClassifier(splits.state_dim, splits.n_suspects, config.baseline_config())
            with baseline_ledger.measure(Phase.TRAIN_STEP):
                classifier.fit(splits.train, splits.validation, config.early_stop_spec())
        with stage(EVALUATE):
            with baseline_ledger.measure(Phase.EVALUATION):
                baseline_report = compute_metrics(evaluate(classifier.snapshot(), splits.test, config.eval_workers))

        reports = {"ddpg": ddpg_report, "ann_baseline": baseline_report}
        timings = {"ddpg": history.timings, "ann_baseline": baseline_ledger}
        for method in METHODS:
            self.logger.info(f"{method}: test accuracy {reports[method].accuracy:.4f}")

        with stage(WRITE_ARTIFACTS):
            writer.write_yaml("benchmark.yaml", {
                "n_test_cases": len(splits.test),
                "methods": {method: reports[method].to_dict() for method in METHODS},
            })
            writer.write_csv(
                "benchmark_timing.csv",
                ["method", "phase", "wall_milliseconds", "count"],
                [
                    (method, record.phase.value, float(record.wall_milliseconds), record.count)
                    for method in METHODS
                    for record in timings[method].records()
                ],
                quarantined=True,
            )
            writer.write_manifest({"command": "synth-bench"})
        return BenchmarkResult(reports, timings)


def run_synth_bench_command(config: RunConfig) -> BenchmarkResult:
    return BenchmarkService(config).run()
