"""Shared fixtures; puts the project root and src/ on sys.path like main.py does."""

import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
for path in (ROOT, ROOT / "src"):
    if str(path) not in sys.path:
        sys.path.insert(0, str(path))

from core.env import CaseRecord, make_synthetic_cases  # noqa: E402
from core.nn import Activation, init_mlp  # noqa: E402
from core.rl import AgentConfig, DdpgAgent  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tiny_mlp():
    return init_mlp([3, 5, 2], [Activation.TANH, Activation.IDENTITY], seed=7)


@pytest.fixture
def tiny_agent():
    return DdpgAgent(AgentConfig(state_dim=4, action_dim=2, hidden_sizes=[8], batch_size=4, seed=3))


@pytest.fixture
def synthetic_cases():
    return make_synthetic_cases(n_cases=40, n_features=8, n_suspects=4, noise=0.1, seed=5)


@pytest.fixture
def onehot_cases():
    """Ten cases whose features are exactly the culprit's one-hot, suspects 0..3 round robin."""
    return [
        CaseRecord(f"c{i}", np.eye(4)[i % 4], 4, i % 4)
        for i in range(10)
    ]


@pytest.fixture
def out_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("CULPRIT_OUTPUT_DIR", raising=False)
    return tmp_path / "out"
