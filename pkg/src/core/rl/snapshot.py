"""
Read-only copies of a trained policy for greedy evaluation.
"""

from typing import Iterable

import numpy as np

from ..nn import Mlp, forward


class PolicySnapshot:
    """Frozen actor; safe to share across evaluation threads."""

    def __init__(self, actor: Mlp):
        self._actor = actor.copy()
        for p in self._actor.parameters():
            p.setflags(write=False)

    @classmethod
    def from_actor(cls, actor: Mlp) -> "PolicySnapshot":
        return cls(actor)

    @property
    def state_dim(self) -> int:
        return self._actor.input_dim

    @property
    def action_dim(self) -> int:
        return self._actor.output_dim

    def parameters(self) -> Iterable[np.ndarray]:
        return self._actor.parameters()

    def scores(self, states: np.ndarray) -> np.ndarray:
        """Greedy actions mu(s) for a batch of states; argmax gives the identified suspect."""
        return forward(self._actor, np.asarray(states, dtype=np.float64))
