"""
Fixed-capacity experience replay.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from ..errors import NotReadyError, ShapeError


@dataclass
class Transition:
    state: np.ndarray
    action: np.ndarray
    reward: float
    next_state: np.ndarray
    done: bool


@dataclass
class TransitionBatch:
    """Column-stacked transitions."""

    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray
    dones: np.ndarray

    def __len__(self):
        return self.rewards.shape[0]

    def transitions(self) -> List[Transition]:
        return [
            Transition(self.states[i], self.actions[i], float(self.rewards[i]),
                       self.next_states[i], bool(self.dones[i]))
            for i in range(len(self))
        ]

    @classmethod
    def from_transitions(cls, transitions: List[Transition]) -> "TransitionBatch":
        return cls(
            states=np.array([t.state for t in transitions], dtype=np.float64),
            actions=np.array([t.action for t in transitions], dtype=np.float64),
            rewards=np.array([t.reward for t in transitions], dtype=np.float64),
            next_states=np.array([t.next_state for t in transitions], dtype=np.float64),
            dones=np.array([t.done for t in transitions], dtype=bool),
        )


class ReplayBuffer:
    """Ring buffer of transitions; once full, each insert evicts the oldest entry."""

    def __init__(self, capacity: int, state_dim: int, action_dim: int):
        if capacity < 1:
            raise ShapeError(f"Replay capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.state_dim = state_dim
        self.action_dim = action_dim
        self.states = np.zeros((capacity, state_dim))
        self.actions = np.zeros((capacity, action_dim))
        self.rewards = np.zeros(capacity)
        self.next_states = np.zeros((capacity, state_dim))
        self.dones = np.zeros(capacity, dtype=bool)
        self.idx = 0
        self.size = 0

    def __len__(self):
        return self.size

    def add(self, transition: Transition) -> None:
        state = np.asarray(transition.state, dtype=np.float64).reshape(-1)
        action = np.asarray(transition.action, dtype=np.float64).reshape(-1)
        next_state = np.asarray(transition.next_state, dtype=np.float64).reshape(-1)
        if state.size != self.state_dim or next_state.size != self.state_dim:
            raise ShapeError(
                f"Transition states have sizes ({state.size}, {next_state.size}), expected {self.state_dim}"
            )
        if action.size != self.action_dim:
            raise ShapeError(f"Transition action has size {action.size}, expected {self.action_dim}")
        self.states[self.idx] = state
        self.actions[self.idx] = action
        self.rewards[self.idx] = float(transition.reward)
        self.next_states[self.idx] = next_state
        self.dones[self.idx] = bool(transition.done)
        self.idx = (self.idx + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def _ordered_indices(self) -> np.ndarray:
        """Storage slots from oldest to newest."""
        start = self.idx if self.size == self.capacity else 0
        return (start + np.arange(self.size)) % self.capacity

    def _gather(self, slots: np.ndarray) -> TransitionBatch:
        return TransitionBatch(
            states=self.states[slots].copy(),
            actions=self.actions[slots].copy(),
            rewards=self.rewards[slots].copy(),
            next_states=self.next_states[slots].copy(),
            dones=self.dones[slots].copy(),
        )

    def transitions(self) -> List[Transition]:
        return self._gather(self._ordered_indices()).transitions()

    def sample(self, batch_size: int, rng: np.random.Generator) -> TransitionBatch:
        """Uniform sample with replacement; batch_size may exceed the number of stored transitions."""
        if batch_size < 1:
            raise ShapeError(f"batch_size must be >= 1, got {batch_size}")
        if self.size == 0:
            raise NotReadyError("Replay buffer is empty")
        return self._gather(rng.integers(0, self.size, size=batch_size))
