"""
Episodic suspect-identification environment.

Each episode presents one case; the agent answers with a continuous action
vector, which decodes to the argmax suspect (lowest index on ties). The
episode ends after that single decision with reward +1 or -1.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import gymnasium as gym
import numpy as np
from gymnasium import spaces

from ..errors import ConfigurationError, ProtocolError, ShapeError
from ..vision.features import DescriptorKind, FeatureVector

logger = logging.getLogger(__name__)

CORRECT_REWARD = 1.0
WRONG_REWARD = -1.0


@dataclass(frozen=True)
class CaseRecord:
    """One preprocessed case: evidence/profile features and the true culprit."""

    case_id: str
    features: FeatureVector
    n_suspects: int
    culprit_index: int

    def __post_init__(self):
        if not isinstance(self.features, FeatureVector):
            object.__setattr__(self, "features", FeatureVector(self.features, DescriptorKind.TABULAR))
        if self.n_suspects < 2:
            raise ConfigurationError(f"Case {self.case_id}: n_suspects must be >= 2, got {self.n_suspects}")
        if not 0 <= self.culprit_index < self.n_suspects:
            raise ConfigurationError(
                f"Case {self.case_id}: culprit_index {self.culprit_index} outside [0, {self.n_suspects})"
            )

    @property
    def state(self) -> np.ndarray:
        return self.features.values


class StepResult(NamedTuple):
    """Gymnasium step tuple; unpacks as (next_state, reward, terminated, truncated, info)."""

    next_state: np.ndarray
    reward: float
    terminated: bool
    truncated: bool
    info: Dict[str, Any]

    @property
    def done(self) -> bool:
        return self.terminated or self.truncated

    @property
    def decoded(self) -> int:
        return self.info["suspect"]


def decode_action(action: np.ndarray) -> int:
    """Argmax suspect; np.argmax already returns the lowest index on ties."""
    return int(np.argmax(action))


class CulpritEnvironment(gym.Env):
    """One-shot identification episodes over a fixed list of cases, shuffled per epoch."""

    metadata = {"render_modes": []}

    def __init__(self, cases: Sequence[CaseRecord], seed: int = 0):
        super().__init__()
        self.logger = logging.getLogger(__name__)
        cases = list(cases)
        if not cases:
            raise ConfigurationError("Environment needs at least one case")
        n_suspects = {case.n_suspects for case in cases}
        lengths = {len(case.features) for case in cases}
        if len(n_suspects) != 1 or len(lengths) != 1:
            raise ConfigurationError(
                f"Cases must share n_suspects and feature length, got n_suspects={sorted(n_suspects)} "
                f"lengths={sorted(lengths)}"
            )
        self.cases: List[CaseRecord] = cases
        self.state_dim = lengths.pop()
        self.action_dim = n_suspects.pop()
        self.observation_space = spaces.Box(-np.inf, np.inf, shape=(self.state_dim,), dtype=np.float64)
        self.action_space = spaces.Box(-1.0, 1.0, shape=(self.action_dim,), dtype=np.float64)
        self._reseed(seed)

    def _reseed(self, seed: int):
        self.case_seed = seed
        self.rng = np.random.default_rng(seed)
        self.epoch = 0
        self._order: np.ndarray = np.empty(0, dtype=np.int64)
        self._cursor = 0
        self._active: Optional[CaseRecord] = None

    @property
    def n_suspects(self) -> int:
        return self.action_dim

    @property
    def active_case(self) -> Optional[CaseRecord]:
        return self._active

    def __len__(self):
        return len(self.cases)

    def reset(self, *, seed: Optional[int] = None,
              options: Optional[Dict[str, Any]] = None) -> Tuple[np.ndarray, Dict[str, Any]]:
        """Present the next case. Passing a seed restarts the case order from that seed."""
        super().reset(seed=seed)
        if seed is not None:
            self._reseed(seed)
        if self._cursor >= self._order.size:
            self._order = self.rng.permutation(len(self.cases))
            self._cursor = 0
            self.epoch += 1
        self._active = self.cases[int(self._order[self._cursor])]
        self._cursor += 1
        return self._active.state.copy(), {"case_id": self._active.case_id, "epoch": self.epoch}

    def step(self, action) -> StepResult:
        if self._active is None:
            raise ProtocolError("step() called without a preceding reset()")
        action = np.asarray(action, dtype=np.float64).reshape(-1)
        if action.size != self.action_dim:
            raise ShapeError(f"Action has {action.size} entries, environment has {self.action_dim} suspects")
        case = self._active
        self._active = None
        suspect = decode_action(action)
        reward = CORRECT_REWARD if suspect == case.culprit_index else WRONG_REWARD
        return StepResult(
            next_state=np.zeros(self.state_dim),
            reward=reward,
            terminated=True,
            truncated=False,
            info={"suspect": suspect, "case_id": case.case_id},
        )


def from_records(records: Sequence[CaseRecord], seed: int = 0) -> CulpritEnvironment:
    return CulpritEnvironment(records, seed=seed)
