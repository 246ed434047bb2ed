"""
Supervised ANN baseline: an MLP with the actor's hidden layout, regressed
onto one-hot culprit targets with MSE and Adam.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..env.culprit_env import CaseRecord
from ..errors import ConfigurationError, DataError, NumericError
from ..evaluation.early_stopping import EarlyStopSpec, StopDecision, early_stop_check
from ..evaluation.metrics import compute_metrics, evaluate
from ..nn import Activation, AdamState, adam_step, backward, forward, init_mlp, mse_loss
from ..rl.snapshot import PolicySnapshot


@dataclass
class BaselineConfig:
    hidden_sizes: List[int] = field(default_factory=lambda: [64, 64])
    learning_rate: float = 1e-3
    batch_size: int = 32
    epochs: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0 or self.batch_size < 1 or self.epochs < 0:
            raise ConfigurationError(
                f"Invalid baseline settings: lr={self.learning_rate}, "
                f"batch_size={self.batch_size}, epochs={self.epochs}"
            )


class MlpClassifier:
    def __init__(self, state_dim: int, n_suspects: int, config: Optional[BaselineConfig] = None):
        self.logger = logging.getLogger(__name__)
        self.config = config or BaselineConfig()
        hidden = [int(h) for h in self.config.hidden_sizes]
        self.network = init_mlp(
            [state_dim, *hidden, n_suspects],
            [Activation.RELU] * len(hidden) + [Activation.IDENTITY],
            seed=self.config.seed,
        )
        self.optimizer = AdamState.for_mlp(self.network, learning_rate=self.config.learning_rate)
        self.rng = np.random.default_rng(self.config.seed)
        self.epoch_losses: List[float] = []
        self.validation_scores: List[float] = []

    @property
    def state_dim(self) -> int:
        return self.network.input_dim

    @property
    def n_suspects(self) -> int:
        return self.network.output_dim

    def scores(self, states: np.ndarray) -> np.ndarray:
        return forward(self.network, np.asarray(states, dtype=np.float64))

    def _arrays(self, cases: Sequence[CaseRecord]):
        states = np.array([c.state for c in cases], dtype=np.float64)
        if states.shape[1] != self.state_dim:
            raise ConfigurationError(f"Cases have {states.shape[1]} features, classifier expects {self.state_dim}")
        targets = np.zeros((len(cases), self.n_suspects))
        targets[np.arange(len(cases)), [c.culprit_index for c in cases]] = 1.0
        return states, targets

    def fit(self, train: Sequence[CaseRecord], validation: Sequence[CaseRecord] = (),
            early_stop: Optional[EarlyStopSpec] = None) -> "MlpClassifier":
        """
        Minibatch training for config.epochs passes. With validation cases,
        accuracy is checked after each epoch, the best network is kept and
        training stops per early_stop.
        """
        train = list(train)
        if not train:
            raise DataError("Cannot fit the baseline on an empty training set")
        states, targets = self._arrays(train)
        best, best_score = None, -np.inf
        for epoch in range(1, self.config.epochs + 1):
            order = self.rng.permutation(len(train))
            losses = []
            for start in range(0, len(order), self.config.batch_size):
                idx = order[start:start + self.config.batch_size]
                loss, grad = mse_loss(forward(self.network, states[idx]), targets[idx])
                grads, _ = backward(self.network, states[idx], grad)
                adam_step(self.network.parameters(), grads, self.optimizer)
                losses.append(loss)
            epoch_loss = float(np.mean(losses))
            if not np.isfinite(epoch_loss):
                raise NumericError(f"Baseline loss became non-finite in epoch {epoch}")
            self.epoch_losses.append(epoch_loss)

            if validation:
                score = compute_metrics(evaluate(self, validation)).accuracy
                self.validation_scores.append(score)
                if score > best_score:
                    best, best_score = self.network.copy(), score
                if early_stop is not None and early_stop_check(self.validation_scores, early_stop) is StopDecision.STOP:
                    self.logger.info(f"Baseline early stop after epoch {epoch} (best accuracy {best_score:.4f})")
                    break
        if best is not None:
            self.network = best
        return self

    def snapshot(self) -> PolicySnapshot:
        return PolicySnapshot.from_actor(self.network)
