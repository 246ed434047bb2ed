"""
Command-line front end: train, eval, extract-features and synth-bench.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional

from config.settings import RunConfig, load_run_config
from core.errors import ConfigurationError, CulpritError
from services import run_eval_command, run_extract_command, run_synth_bench_command, run_train_command

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
LOG_FILE_NAME = "run.log"


class UsageError(ConfigurationError):
    pass


class CliParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to the configuration exit code instead of SystemExit(2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message, stage="parse-arguments")


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=Path, help="YAML run configuration (defaults apply when omitted)")
    parser.add_argument("--seed", type=int, help="Override the config seed")
    parser.add_argument("--episodes", type=int, help="Override the episode budget")
    parser.add_argument("--out", help="Override the output directory")


def build_parser() -> CliParser:
    parser = CliParser(prog="culprit", description="DDPG culprit identification toolkit")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=CliParser)

    _common(verbs.add_parser("train", help="Train a DDPG agent and export artifacts"))

    eval_parser = verbs.add_parser("eval", help="Score a checkpoint on a case file")
    _common(eval_parser)
    eval_parser.add_argument("--checkpoint", help="checkpoint.json written by train")
    eval_parser.add_argument("--cases", help="Case CSV (case_id, culprit_index, n_suspects, f0, ...)")

    extract_parser = verbs.add_parser("extract-features", help="LBP/HOG descriptors for a directory of PGM images")
    _common(extract_parser)
    extract_parser.add_argument("--images", help="Directory of PGM images")
    extract_parser.add_argument("--descriptor", choices=["LBP", "HOG", "lbp", "hog"])

    _common(verbs.add_parser("synth-bench", help="Compare DDPG against the ANN baseline"))
    return parser


COMMANDS = {
    "train": run_train_command,
    "eval": run_eval_command,
    "extract-features": run_extract_command,
    "synth-bench": run_synth_bench_command,
}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    return load_run_config(
        args.config,
        seed=args.seed,
        episodes=args.episodes,
        output_dir=args.out,
        checkpoint_path=getattr(args, "checkpoint", None),
        eval_cases_csv=getattr(args, "cases", None),
        image_dir=getattr(args, "images", None),
        descriptor=getattr(args, "descriptor", None),
    )


def main(argv: Optional[List[str]] = None,
         setup_logging: Optional[Callable[[str, Optional[Path]], object]] = None) -> int:
    verb = "culprit"
    try:
        args = build_parser().parse_args(argv)
        verb = args.verb
        config = resolve_config(args)
        if setup_logging is not None:
            output_dir = Path(config.output_dir)
            output_dir.mkdir(parents=True, exist_ok=True)
            setup_logging(config.log_level, output_dir / LOG_FILE_NAME)
        logger.info(f"Running {verb} (seed={config.seed}, output={config.output_dir})")
        COMMANDS[verb](config)
    except CulpritError as e:
        logger.error(f"{verb} failed during {e.stage or 'configuration'}: {e}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"{verb} failed: {e}")
        return EXIT_USAGE
    logger.info(f"{verb} finished")
    return EXIT_OK
