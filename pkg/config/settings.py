"""
Run settings and configuration management.
"""

import logging
import os
import typing
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from core.baseline import BaselineConfig
from core.data import ScalerMode, SplitSpec
from core.errors import ConfigurationError
from core.evaluation import EarlyStopSpec
from core.rl import AgentConfig
from core.vision import DescriptorKind, NormalizationMode

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "CULPRIT_OUTPUT_DIR"
SOURCES = ("synthetic", "cases", "table")


@dataclass
class RunConfig:
    """Everything a run depends on besides its input files."""

    seed: int = 0

    # Environment source: synthetic generator, a case CSV, or a raw table + schema
    source: str = "synthetic"
    n_cases: int = 500
    n_features: int = 16
    n_suspects: int = 4
    noise: float = 0.1
    cases_csv: Optional[str] = None
    table_csv: Optional[str] = None
    schema_path: Optional[str] = None
    label_column: str = "culprit"
    scaler_mode: str = "MINMAX"
    image_features_csv: Optional[str] = None

    # Splits
    validation_fraction: float = 0.2
    test_fraction: float = 0.2

    # Agent
    gamma: float = 0.95
    tau: float = 0.001
    noise_sigma: float = 0.1
    batch_size: int = 64
    buffer_capacity: int = 100_000
    actor_lr: float = 1e-4
    critic_lr: float = 1e-3
    hidden_sizes: List[int] = field(default_factory=lambda: [64, 64])
    head_init: float = 3e-3

    # Training loop
    episodes: int = 3000
    max_steps: int = 1
    eval_every: int = 100
    restore_best: bool = True
    patience: int = 10
    eval_workers: int = 1

    # ANN baseline
    baseline_epochs: int = 200
    baseline_lr: float = 1e-3
    baseline_batch_size: int = 32

    # Evaluation inputs
    checkpoint_path: Optional[str] = None
    eval_cases_csv: Optional[str] = None

    # Feature extraction
    image_dir: Optional[str] = None
    descriptor: str = "LBP"
    normalization: str = "L2"
    cell_size: int = 8
    n_bins: int = 9

    # Output
    output_dir: str = "runs/latest"
    log_level: str = "INFO"

    def __post_init__(self):
        for f in fields(self):
            setattr(self, f.name, _coerce(f.name, f.type, getattr(self, f.name)))
        self.source = self.source.lower()
        if self.source not in SOURCES:
            raise ConfigurationError(f"source must be one of {SOURCES}, got '{self.source}'")
        if self.episodes < 0 or self.max_steps < 1 or self.eval_every < 1 or self.eval_workers < 1:
            raise ConfigurationError(
                f"Invalid training budget: episodes={self.episodes}, max_steps={self.max_steps}, "
                f"eval_every={self.eval_every}, eval_workers={self.eval_workers}"
            )
        if self.n_cases < 1 or self.noise < 0:
            raise ConfigurationError(f"Invalid synthetic settings: n_cases={self.n_cases}, noise={self.noise}")
        if not isinstance(logging.getLevelName(self.log_level.upper()), int):
            raise ConfigurationError(f"Unknown log_level '{self.log_level}'")
        self.log_level = self.log_level.upper()
        try:
            ScalerMode(self.scaler_mode.upper())
            DescriptorKind(self.descriptor.upper())
            NormalizationMode(self.normalization.upper())
        except ValueError as e:
            raise ConfigurationError(str(e)) from e
        self.split_spec()
        self.early_stop_spec()
        self.baseline_config()

    def agent_config(self, state_dim: int, action_dim: int) -> AgentConfig:
        return AgentConfig(
            state_dim=state_dim,
            action_dim=action_dim,
            gamma=self.gamma,
            tau=self.tau,
            noise_sigma=self.noise_sigma,
            batch_size=self.batch_size,
            buffer_capacity=self.buffer_capacity,
            actor_lr=self.actor_lr,
            critic_lr=self.critic_lr,
            hidden_sizes=list(self.hidden_sizes),
            head_init=self.head_init,
            seed=self.seed,
        )

    def split_spec(self) -> SplitSpec:
        return SplitSpec(self.validation_fraction, self.test_fraction, self.seed)

    def early_stop_spec(self) -> EarlyStopSpec:
        return EarlyStopSpec(patience=self.patience)

    def baseline_config(self) -> BaselineConfig:
        return BaselineConfig(
            hidden_sizes=list(self.hidden_sizes),
            learning_rate=self.baseline_lr,
            batch_size=self.baseline_batch_size,
            epochs=self.baseline_epochs,
            seed=self.seed,
        )

    @property
    def output_path(self) -> Path:
        return Path(self.output_dir)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _coerce(name: str, annotation, value):
    """Cast a config value to its field type; YAML already types most scalars."""
    origin = typing.get_origin(annotation)
    args = typing.get_args(annotation)
    if origin is Union and type(None) in args:
        if value is None or (isinstance(value, str) and value.strip() in ("", "null", "None")):
            return None
        annotation = next(a for a in args if a is not type(None))
        origin = typing.get_origin(annotation)
    try:
        if origin in (list, List):
            if isinstance(value, str):
                value = [v for v in value.replace("[", "").replace("]", "").split(",") if v.strip()]
            return [int(v) for v in value]
        if annotation is bool:
            if isinstance(value, str):
                return value.strip().lower() in ("1", "true", "yes", "on")
            return bool(value)
        if annotation is int:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(f"{value} is not an integer")
            return int(value)
        if annotation is float:
            return float(value)
        if annotation is str:
            return str(value)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Invalid value for '{name}': {value!r} ({e})") from e
    return value


def load_run_config(path: Optional[Union[str, Path]] = None, **overrides) -> RunConfig:
    """
    Build a RunConfig from a flat YAML file, then apply keyword overrides
    (None values are ignored), then the CULPRIT_OUTPUT_DIR environment variable.
    """
    values: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"Config file not found: {path}")
        with open(path, "r", encoding="utf-8") as f:
            try:
                loaded = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ConfigurationError(f"Cannot parse config {path}: {e}") from e
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ConfigurationError(f"Config {path} must be a flat mapping of key: value")
        values.update(loaded)

    values.update({k: v for k, v in overrides.items() if v is not None})
    env_output = os.environ.get(OUTPUT_DIR_ENV)
    if env_output:
        values["output_dir"] = env_output

    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigurationError(f"Unknown config keys: {', '.join(map(str, unknown))}")
    nested = [k for k, v in values.items() if isinstance(v, dict)]
    if nested:
        raise ConfigurationError(f"Config must be flat; nested values for: {', '.join(nested)}")
    return RunConfig(**values)


def write_run_config(config: RunConfig, path: Union[str, Path]) -> Path:
    """Snapshot the effective config; output_dir is left out so runs into different directories compare equal."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {k: v for k, v in config.to_dict().items() if k != "output_dir"}
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(payload, f, sort_keys=False, default_flow_style=None)
    return path
