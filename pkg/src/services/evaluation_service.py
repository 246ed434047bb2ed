"""
Evaluation service: score a saved policy on a case file.
"""

import logging

from config.settings import RunConfig
from core.data import load_case_file
from core.errors import ConfigurationError
from core.evaluation import MetricsReport, compute_metrics, evaluate
from core.rl import load_policy

from .artifacts import ArtifactWriter
from .stages import EVALUATE, LOAD_CHECKPOINT, LOAD_DATA, WRITE_ARTIFACTS, stage

logger = logging.getLogger(__name__)

REPORT_NAME = "eval_metrics.yaml"


def run_eval_command(config: RunConfig) -> MetricsReport:
    if not config.checkpoint_path or not config.eval_cases_csv:
        raise ConfigurationError("eval needs checkpoint_path and eval_cases_csv", stage=LOAD_CHECKPOINT)

    with stage(LOAD_CHECKPOINT):
        policy = load_policy(config.checkpoint_path)
    with stage(LOAD_DATA):
        cases = load_case_file(config.eval_cases_csv)
    with stage(EVALUATE):
        report = compute_metrics(evaluate(policy, cases, workers=config.eval_workers))
    logger.info(f"Accuracy {report.accuracy:.4f} over {report.n_cases} cases from {config.eval_cases_csv}")

    with stage(WRITE_ARTIFACTS):
        writer = ArtifactWriter(config.output_dir)
        writer.write_report(REPORT_NAME, report)
        writer.write_manifest({
            "command": "eval",
            "checkpoint": str(config.checkpoint_path),
            "cases": str(config.eval_cases_csv),
        })
    return report
