"""
Training service: data -> environment -> agent -> training -> artifacts.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from config.settings import RunConfig, write_run_config
from core.data import write_case_file
from core.env import CaseRecord, CulpritEnvironment
from core.evaluation import MetricsReport, Phase, compute_metrics, evaluate
from core.rl import DdpgAgent, TrainingHistory, run_training, save_checkpoint

from .artifacts import ArtifactWriter
from .data_service import CaseSplits, DataService
from .stages import BUILD_ENV, EVALUATE, TRAIN, WRITE_ARTIFACTS, stage


@dataclass
class TrainResult:
    history: TrainingHistory
    test_report: Optional[MetricsReport]
    output_dir: Path


def evaluate_agent(agent: DdpgAgent, cases: List[CaseRecord], workers: int = 1) -> MetricsReport:
    """Greedy metrics of the agent's current actor, scored on a frozen snapshot."""
    return compute_metrics(evaluate(agent.snapshot(), cases, workers=workers))


class TrainingService:
    def __init__(self, config: RunConfig):
        self.logger = logging.getLogger(__name__)
        self.config = config
        self.writer: Optional[ArtifactWriter] = None

    def build_agent(self, splits: CaseSplits):
        with stage(BUILD_ENV):
            env = CulpritEnvironment(splits.train, seed=self.config.seed)
            agent = DdpgAgent(self.config.agent_config(env.state_dim, env.action_dim))
        self.logger.info(
            f"Environment: {len(env)} cases, state_dim={env.state_dim}, {env.action_dim} suspects"
        )
        return env, agent

    def train(self, agent: DdpgAgent, env: CulpritEnvironment, validation: List[CaseRecord]) -> TrainingHistory:
        evaluate_fn = None
        if validation:
            def evaluate_fn(current: DdpgAgent, episode: int) -> MetricsReport:
                return evaluate_agent(current, validation, self.config.eval_workers)
        else:
            self.logger.warning("No validation cases; training runs the full episode budget")

        with stage(TRAIN):
            history = run_training(
                agent, env,
                episodes=self.config.episodes,
                max_steps=self.config.max_steps,
                early_stop=self.config.early_stop_spec(),
                evaluate_fn=evaluate_fn,
                eval_every=self.config.eval_every,
                restore_best=self.config.restore_best,
            )
        self.logger.info(
            f"Trained {len(history)} episodes ({agent.update_steps} updates)"
            + (", stopped early" if history.stopped_early else "")
            + (f", actor restored from episode {history.best_episode}" if history.restored else "")
        )
        return history

    def evaluate_test(self, agent: DdpgAgent, history: TrainingHistory, test: List[CaseRecord]) -> MetricsReport:
        """Final test metrics, charged to the run's EVALUATION phase."""
        ledger = history.timings
        with stage(EVALUATE), ledger.span(), ledger.measure(Phase.EVALUATION):
            report = evaluate_agent(agent, test, self.config.eval_workers)
        self.logger.info(
            f"Test accuracy {report.accuracy:.4f}, macro F1 {report.macro_f1:.4f} on {report.n_cases} cases"
        )
        self.logger.info(
            f"Timed phases cover {ledger.coverage():.1%} of {ledger.wall_clock_ms:.0f} ms wall clock"
        )
        return report

    def run(self) -> TrainResult:
        config = self.config
        with stage(WRITE_ARTIFACTS):
            self.writer = ArtifactWriter(config.output_dir)
            write_run_config(config, self.writer.register("run_config.yaml"))

        splits = DataService(config).load_cases()
        env, agent = self.build_agent(splits)
        history = self.train(agent, env, splits.validation)

        test_report = None
        if splits.test:
            test_report = self.evaluate_test(agent, history, splits.test)
        else:
            self.logger.warning("Test split is empty; no final metrics written")

        with stage(WRITE_ARTIFACTS):
            self._write(agent, history, splits, test_report)
        return TrainResult(history, test_report, self.writer.output_dir)

    def _write(self, agent: DdpgAgent, history: TrainingHistory, splits: CaseSplits,
               test_report: Optional[MetricsReport]) -> None:
        writer = self.writer
        save_checkpoint(agent, writer.register("checkpoint.json"))
        writer.write_history(history)
        if test_report is not None:
            writer.write_report("metrics.yaml", test_report)
        writer.write_yaml("validation_metrics.yaml", {
            "stopped_early": history.stopped_early,
            "best_episode": history.best_episode,
            "best_accuracy": history.best_score,
            "actor_restored": history.restored,
            "evaluations": [{"episode": episode, **report.to_dict()} for episode, report in history.validation_reports],
        })
        write_case_file(splits.test, writer.register("test_cases.csv"))
        writer.write_metric_plots(history.validation_reports)
        writer.write_timings(history.timings)
        writer.write_manifest({
            "command": "train",
            "episodes_run": len(history),
            "wall_clock_ms": history.timings.wall_clock_ms,
            "timing_coverage": history.timings.coverage(),
        })


def run_train_command(config: RunConfig) -> TrainResult:
    return TrainingService(config).run()
