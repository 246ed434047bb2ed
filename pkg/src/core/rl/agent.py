"""
Deep deterministic policy gradient agent.

The actor mu(s) has a tanh head so actions live in [-1, 1]^action_dim; the
critic Q(s, a) reads the concatenation state ++ action and has an identity
head. Target copies of both networks are blended toward the online networks
after every update with rate tau, and TD targets bootstrap through them.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..errors import ConfigurationError, NotReadyError, NumericError, ShapeError
from ..nn import Activation, AdamState, Gradients, Mlp, adam_step, backward, forward, init_mlp, mse_loss
from .replay_buffer import ReplayBuffer, Transition, TransitionBatch
from .snapshot import PolicySnapshot


@dataclass
class AgentConfig:
    """Agent hyperparameters."""

    state_dim: int
    action_dim: int
    gamma: float = 0.95
    tau: float = 0.001
    noise_sigma: float = 0.1
    batch_size: int = 64
    buffer_capacity: int = 100_000
    actor_lr: float = 1e-4
    critic_lr: float = 1e-3
    hidden_sizes: List[int] = field(default_factory=lambda: [64, 64])
    # output layers of actor and critic start in U(-head_init, head_init)
    head_init: float = 3e-3
    seed: int = 0

    def __post_init__(self):
        self.hidden_sizes = [int(h) for h in self.hidden_sizes]
        self.validate()

    def validate(self):
        if self.state_dim < 1 or self.action_dim < 1:
            raise ConfigurationError(f"state_dim and action_dim must be >= 1, got {self.state_dim}, {self.action_dim}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ConfigurationError(f"gamma must lie in [0, 1], got {self.gamma}")
        if not 0.0 < self.tau <= 1.0:
            raise ConfigurationError(f"tau must lie in (0, 1], got {self.tau}")
        if self.noise_sigma < 0:
            raise ConfigurationError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.batch_size < 1 or self.batch_size > self.buffer_capacity:
            raise ConfigurationError(
                f"batch_size must lie in [1, buffer_capacity={self.buffer_capacity}], got {self.batch_size}"
            )
        if self.actor_lr <= 0 or self.critic_lr <= 0:
            raise ConfigurationError("Learning rates must be positive")
        if any(h < 1 for h in self.hidden_sizes):
            raise ConfigurationError(f"hidden_sizes must be positive, got {self.hidden_sizes}")
        if self.head_init <= 0:
            raise ConfigurationError(f"head_init must be positive, got {self.head_init}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class StepReport:
    critic_loss: float = float("nan")
    actor_objective: float = float("nan")
    updated: bool = False


def soft_update(target: Mlp, online: Mlp, tau: float) -> None:
    """target <- tau * online + (1 - tau) * target, in place."""
    if not 0.0 < tau <= 1.0:
        raise ConfigurationError(f"tau must lie in (0, 1], got {tau}")
    target_params, online_params = target.parameters(), online.parameters()
    if len(target_params) != len(online_params):
        raise ShapeError(f"Target has {len(target_params)} parameter arrays, online has {len(online_params)}")
    for t, o in zip(target_params, online_params):
        if t.shape != o.shape:
            raise ShapeError(f"Soft update shape mismatch: {t.shape} vs {o.shape}")
    for t, o in zip(target_params, online_params):
        if tau == 1.0:
            t[...] = o
        else:
            t *= 1.0 - tau
            t += tau * o


def _check_finite(mlp: Mlp, name: str):
    for p in mlp.parameters():
        if not np.all(np.isfinite(p)):
            raise NumericError(f"Non-finite parameter detected in {name}")


class DdpgAgent:
    """Actor, critic, their targets, optimizers and replay memory."""

    def __init__(self, config: AgentConfig):
        self.logger = logging.getLogger(__name__)
        self.config = config
        self.rng = np.random.default_rng(config.seed)

        hidden = config.hidden_sizes
        self.actor = init_mlp(
            [config.state_dim, *hidden, config.action_dim],
            [Activation.RELU] * len(hidden) + [Activation.TANH],
            seed=config.seed,
        )
        self.critic = init_mlp(
            [config.state_dim + config.action_dim, *hidden, 1],
            [Activation.RELU] * len(hidden) + [Activation.IDENTITY],
            seed=config.seed + 1,
        )
        head_rng = np.random.default_rng(config.seed + 2)
        for net in (self.actor, self.critic):
            head = net.layers[-1]
            head.weights[...] = head_rng.uniform(-config.head_init, config.head_init, size=head.weights.shape)
        self.target_actor = self.actor.copy()
        self.target_critic = self.critic.copy()
        self.actor_opt = AdamState.for_mlp(self.actor, learning_rate=config.actor_lr)
        self.critic_opt = AdamState.for_mlp(self.critic, learning_rate=config.critic_lr)
        self.buffer = ReplayBuffer(config.buffer_capacity, config.state_dim, config.action_dim)

        self.total_steps = 0
        self.update_steps = 0

    @property
    def state_dim(self) -> int:
        return self.config.state_dim

    @property
    def action_dim(self) -> int:
        return self.config.action_dim

    def _state(self, state) -> np.ndarray:
        state = np.asarray(state, dtype=np.float64).reshape(-1)
        if state.size != self.state_dim:
            raise ShapeError(f"State has {state.size} entries, agent expects {self.state_dim}")
        return state

    def select_action(self, state, explore: bool = True) -> np.ndarray:
        """mu(s), plus clipped N(0, noise_sigma) noise when exploring."""
        action = forward(self.actor, self._state(state))
        if explore:
            noise = self.rng.normal(0.0, self.config.noise_sigma, size=self.action_dim)
            action = np.clip(action + noise, -1.0, 1.0)
        return action

    def store_transition(self, transition: Transition) -> None:
        self.buffer.add(transition)

    def sample_batch(self, batch_size: Optional[int] = None) -> TransitionBatch:
        """
        Draw batch_size transitions (default: the configured batch size) with
        replacement. The buffer counts as ready once it holds config.batch_size.
        """
        if len(self.buffer) < self.config.batch_size:
            raise NotReadyError(
                f"Replay buffer holds {len(self.buffer)} transitions, need {self.config.batch_size}"
            )
        return self.buffer.sample(batch_size or self.config.batch_size, self.rng)

    def _critic_inputs(self, states: np.ndarray, actions: np.ndarray) -> np.ndarray:
        return np.concatenate([states, actions], axis=1)

    def compute_td_targets(self, batch: TransitionBatch) -> np.ndarray:
        """y = r + gamma * Q'(s', mu'(s')), with the bootstrap dropped on terminal transitions."""
        if len(batch) == 0:
            raise ShapeError("Cannot compute TD targets for an empty batch")
        next_actions = forward(self.target_actor, batch.next_states)
        next_q = forward(self.target_critic, self._critic_inputs(batch.next_states, next_actions))[:, 0]
        bootstrap = batch.rewards + self.config.gamma * next_q
        return np.where(batch.dones, batch.rewards, bootstrap)

    def critic_gradients(self, batch: TransitionBatch, targets: np.ndarray) -> Tuple[float, Gradients]:
        """MSE between Q(s, a) and the targets, with its parameter gradients."""
        inputs = self._critic_inputs(batch.states, batch.actions)
        q = forward(self.critic, inputs)[:, 0]
        loss, grad = mse_loss(q, np.asarray(targets, dtype=np.float64))
        grads, _ = backward(self.critic, inputs, grad[:, np.newaxis])
        return loss, grads

    def critic_update(self, batch: TransitionBatch, targets: np.ndarray) -> float:
        """One Adam step on the critic; returns the pre-step loss."""
        loss, grads = self.critic_gradients(batch, targets)
        adam_step(self.critic.parameters(), grads.as_list(), self.critic_opt)
        return loss

    def critic_action_gradients(self, states: np.ndarray, actions: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Q(s, a) per row and dQ/da, with critic parameters held fixed."""
        inputs = self._critic_inputs(states, actions)
        q = forward(self.critic, inputs)[:, 0]
        _, input_grad = backward(self.critic, inputs, np.ones((states.shape[0], 1)))
        return q, input_grad[:, self.state_dim:]

    def policy_gradient(self, states: np.ndarray) -> Tuple[float, Gradients]:
        """mean_i Q(s_i, mu(s_i)) and its gradient with respect to the actor parameters."""
        states = np.asarray(states, dtype=np.float64)
        actions = forward(self.actor, states)
        q, action_grads = self.critic_action_gradients(states, actions)
        grads, _ = backward(self.actor, states, action_grads / states.shape[0])
        return float(np.mean(q)), grads

    def actor_update(self, batch: TransitionBatch) -> float:
        """Ascend the critic's estimate through the actor; returns the pre-step mean Q."""
        if len(batch) == 0:
            raise ShapeError("Cannot update the actor on an empty batch")
        objective, grads = self.policy_gradient(batch.states)
        adam_step(self.actor.parameters(), grads.scaled(-1.0).as_list(), self.actor_opt)
        return objective

    def update_targets(self) -> None:
        soft_update(self.target_actor, self.actor, self.config.tau)
        soft_update(self.target_critic, self.critic, self.config.tau)

    def train_step(self, transition: Transition) -> StepReport:
        """Store the transition and, once the buffer holds a batch, run one full update."""
        self.store_transition(transition)
        self.total_steps += 1
        try:
            batch = self.sample_batch()
        except NotReadyError:
            return StepReport(updated=False)

        targets = self.compute_td_targets(batch)
        critic_loss = self.critic_update(batch, targets)
        actor_objective = self.actor_update(batch)
        self.update_targets()
        self.update_steps += 1

        if not (np.isfinite(critic_loss) and np.isfinite(actor_objective)):
            raise NumericError(f"Non-finite training signal at step {self.total_steps}")
        for net, name in ((self.actor, "actor"), (self.critic, "critic"),
                          (self.target_actor, "target_actor"), (self.target_critic, "target_critic")):
            _check_finite(net, name)
        return StepReport(critic_loss=critic_loss, actor_objective=actor_objective, updated=True)

    def snapshot(self) -> PolicySnapshot:
        return PolicySnapshot.from_actor(self.actor)


def networks_equal(a: Mlp, b: Mlp) -> bool:
    """Bitwise parameter equality."""
    pa, pb = a.parameters(), b.parameters()
    return len(pa) == len(pb) and all(x.shape == y.shape and np.array_equal(x, y) for x, y in zip(pa, pb))

