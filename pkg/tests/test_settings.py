from pathlib import Path

import pytest
import yaml

from config.settings import OUTPUT_DIR_ENV, RunConfig, load_run_config, write_run_config
from core.errors import ConfigurationError


def write_yaml(path, payload):
    path.write_text(yaml.safe_dump(payload), encoding="utf-8")
    return path


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert config.source == "synthetic"
        assert (config.n_cases, config.n_features, config.n_suspects) == (500, 16, 4)
        assert (config.gamma, config.tau, config.noise_sigma) == (0.95, 0.001, 0.1)
        assert config.hidden_sizes == [64, 64]
        assert (config.eval_every, config.patience, config.head_init, config.restore_best) == (100, 10, 3e-3, True)
        assert config.output_dir == "runs/latest"

    def test_string_values_are_coerced(self):
        config = RunConfig(episodes="12", gamma="0.5", hidden_sizes="[16, 8]", cases_csv="null")
        assert config.episodes == 12
        assert config.gamma == 0.5
        assert config.hidden_sizes == [16, 8]
        assert config.cases_csv is None

    @pytest.mark.parametrize("kwargs", [
        dict(source="spreadsheet"), dict(episodes=-1), dict(gamma=2.0), dict(tau=0.0), dict(log_level="LOUD"),
        dict(scaler_mode="robust"), dict(descriptor="sift"), dict(validation_fraction=0.6, test_fraction=0.5),
        dict(patience=0), dict(episodes=1.5), dict(head_init=-1e-3),
    ])
    def test_invalid_values(self, kwargs):
        with pytest.raises(ConfigurationError):
            RunConfig(**kwargs).agent_config(4, 2)

    def test_agent_config_carries_hyperparameters(self):
        agent_config = RunConfig(seed=9, batch_size=8, hidden_sizes=[4]).agent_config(6, 3)
        assert (agent_config.state_dim, agent_config.action_dim) == (6, 3)
        assert (agent_config.seed, agent_config.batch_size, agent_config.hidden_sizes) == (9, 8, [4])

    def test_restore_flag_is_coerced(self):
        assert RunConfig(restore_best="false").restore_best is False
        assert RunConfig(head_init="0.01").agent_config(4, 2).head_init == 0.01


class TestLoadRunConfig:
    def test_file_values_and_overrides(self, tmp_path, monkeypatch):
        monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
        path = write_yaml(tmp_path / "config.yaml", {"seed": 3, "episodes": 40, "source": "synthetic"})
        config = load_run_config(path, episodes=7, seed=None)
        assert config.seed == 3
        assert config.episodes == 7

    def test_unknown_key(self, tmp_path):
        path = write_yaml(tmp_path / "config.yaml", {"episodez": 3})
        with pytest.raises(ConfigurationError) as info:
            load_run_config(path)
        assert "episodez" in str(info.value)

    def test_nested_values_are_rejected(self, tmp_path):
        path = write_yaml(tmp_path / "config.yaml", {"seed": {"value": 1}})
        with pytest.raises(ConfigurationError):
            load_run_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_run_config(tmp_path / "absent.yaml")

    def test_empty_file_gives_defaults(self, tmp_path, monkeypatch):
        monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
        path = tmp_path / "config.yaml"
        path.write_text("", encoding="utf-8")
        assert load_run_config(path) == RunConfig()

    def test_environment_wins_for_output_dir(self, monkeypatch):
        monkeypatch.setenv(OUTPUT_DIR_ENV, "/tmp/from-env")
        assert load_run_config(output_dir="from-flag").output_dir == "/tmp/from-env"

    def test_written_config_loads_back_equal(self, tmp_path, monkeypatch):
        monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
        config = RunConfig(seed=5, episodes=11, hidden_sizes=[8, 4], cases_csv="data/cases.csv")
        path = write_run_config(config, tmp_path / "run_config.yaml")
        assert "output_dir" not in path.read_text(encoding="utf-8")
        assert load_run_config(path) == config

    def test_shipped_config_is_valid(self, monkeypatch):
        monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
        shipped = Path(__file__).resolve().parent.parent / "config.yaml"
        assert load_run_config(shipped) == RunConfig()
