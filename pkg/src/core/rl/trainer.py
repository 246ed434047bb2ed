"""
Episode loop for training a DdpgAgent against a culprit environment.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

import gymnasium as gym
import numpy as np

from ..data import format_cell, write_csv_rows
from ..errors import ConfigurationError
from ..evaluation.early_stopping import EarlyStopSpec, StopDecision, early_stop_check
from ..evaluation.metrics import MetricsReport
from ..evaluation.timing import Phase, TimingLedger
from ..nn import Mlp
from .agent import DdpgAgent, soft_update
from .replay_buffer import Transition

logger = logging.getLogger(__name__)

HISTORY_COLUMNS = ["episode", "return", "critic_loss", "actor_objective", "eval_accuracy"]


@dataclass
class EpisodeRecord:
    episode: int
    episode_return: float
    critic_loss: float
    actor_objective: float
    eval_accuracy: Optional[float] = None
    wall_ms: float = 0.0


@dataclass
class TrainingHistory:
    episodes: List[EpisodeRecord] = field(default_factory=list)
    validation_scores: List[float] = field(default_factory=list)
    validation_reports: List[Tuple[int, MetricsReport]] = field(default_factory=list)
    stopped_early: bool = False
    best_episode: Optional[int] = None
    best_score: Optional[float] = None
    restored: bool = False
    timings: TimingLedger = field(default_factory=TimingLedger)

    def __len__(self):
        return len(self.episodes)

    def rows(self, include_timing: bool = False) -> List[list]:
        rows = []
        for record in self.episodes:
            row = [record.episode, record.episode_return, record.critic_loss, record.actor_objective,
                   record.eval_accuracy]
            if include_timing:
                row.append(record.wall_ms)
            rows.append([format_cell(value) for value in row])
        return rows

    def to_csv(self, path: Union[str, Path], include_timing: bool = True) -> Path:
        """Write the history; include_timing=False leaves out the wall_ms column so the file is reproducible."""
        header = HISTORY_COLUMNS + (["wall_ms"] if include_timing else [])
        return write_csv_rows(path, header, self.rows(include_timing))


def _space_width(space: gym.Space, name: str) -> int:
    if space is None or space.shape is None or len(space.shape) != 1:
        raise ConfigurationError(f"Environment {name} must be a flat Box, got {space}")
    return int(space.shape[0])


def run_training(agent: DdpgAgent, env: gym.Env, episodes: int, max_steps: int = 1,
                 early_stop: Optional[EarlyStopSpec] = None,
                 evaluate_fn: Optional[Callable[[DdpgAgent, int], Union[float, MetricsReport]]] = None,
                 eval_every: int = 1, restore_best: bool = True) -> TrainingHistory:
    """
    Train for up to `episodes` episodes of at most `max_steps` steps each.

    Every `eval_every` episodes, evaluate_fn(agent, episode) supplies a
    validation accuracy or a full MetricsReport; training stops early once the score has not strictly
    improved for early_stop.patience evaluations. With restore_best the actor is rolled back to the
    weights that earned the best validation score when a later evaluation did not match it.
    """
    state_dim = _space_width(env.observation_space, "observation space")
    action_dim = _space_width(env.action_space, "action space")
    if state_dim != agent.state_dim or action_dim != agent.action_dim:
        raise ConfigurationError(
            f"Environment dims (state={state_dim}, action={action_dim}) do not match agent "
            f"(state={agent.state_dim}, action={agent.action_dim})"
        )
    if episodes < 0 or max_steps < 1 or eval_every < 1:
        raise ConfigurationError(
            f"Invalid training budget: episodes={episodes}, max_steps={max_steps}, eval_every={eval_every}"
        )

    history = TrainingHistory()
    ledger = history.timings
    best_actor: Optional[Mlp] = None
    with ledger.span():
        for episode in range(1, episodes + 1):
            with ledger.measure(Phase.EPISODE):
                start = ledger.total_ms(Phase.EPISODE)
                state, _ = env.reset()
                episode_return = 0.0
                critic_losses, actor_objectives = [], []
                for _ in range(max_steps):
                    action = agent.select_action(state, explore=True)
                    next_state, reward, terminated, truncated, _ = env.step(action)
                    with ledger.measure(Phase.TRAIN_STEP):
                        report = agent.train_step(Transition(state, action, reward, next_state, terminated))
                    episode_return += reward
                    if report.updated:
                        critic_losses.append(report.critic_loss)
                        actor_objectives.append(report.actor_objective)
                    state = next_state
                    if terminated or truncated:
                        break

                record = EpisodeRecord(
                    episode=episode,
                    episode_return=episode_return,
                    critic_loss=float(np.mean(critic_losses)) if critic_losses else float("nan"),
                    actor_objective=float(np.mean(actor_objectives)) if actor_objectives else float("nan"),
                )
                history.episodes.append(record)
            record.wall_ms = ledger.total_ms(Phase.EPISODE) - start

            if evaluate_fn is None or episode % eval_every != 0:
                continue
            with ledger.measure(Phase.EVALUATION):
                outcome = evaluate_fn(agent, episode)
                if isinstance(outcome, MetricsReport):
                    history.validation_reports.append((episode, outcome))
                    score = float(outcome.accuracy)
                else:
                    score = float(outcome)
                record.eval_accuracy = score
                history.validation_scores.append(score)
                if history.best_score is None or score > history.best_score:
                    history.best_episode, history.best_score = episode, score
                    if restore_best:
                        best_actor = agent.actor.copy()
                logger.info(f"Episode {episode}: validation accuracy {score:.4f}")
                stop = early_stop is not None and early_stop_check(
                    history.validation_scores, early_stop
                ) is StopDecision.STOP
            if stop:
                history.stopped_early = True
                logger.info(
                    f"Early stopping at episode {episode}: no improvement in {early_stop.patience} evaluations"
                )
                break

    if best_actor is not None and history.best_episode != history.episodes[-1].episode:
        soft_update(agent.actor, best_actor, 1.0)
        history.restored = True
        logger.info(
            f"Restored actor from episode {history.best_episode} "
            f"(validation accuracy {history.best_score:.4f})"
        )
    return history
