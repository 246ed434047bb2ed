"""
Adam optimizer state and update step.
"""

from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from ..errors import ShapeError
from .mlp import Gradients, Mlp


@dataclass
class AdamState:
    """First/second moment accumulators for one set of parameters."""

    m: List[np.ndarray] = field(default_factory=list)
    v: List[np.ndarray] = field(default_factory=list)
    t: int = 0
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8

    @classmethod
    def for_params(cls, params: Sequence[np.ndarray], learning_rate: float = 1e-3,
                   beta1: float = 0.9, beta2: float = 0.999, epsilon: float = 1e-8) -> "AdamState":
        return cls(
            m=[np.zeros_like(p) for p in params],
            v=[np.zeros_like(p) for p in params],
            t=0,
            learning_rate=learning_rate,
            beta1=beta1,
            beta2=beta2,
            epsilon=epsilon,
        )

    @classmethod
    def for_mlp(cls, mlp: Mlp, learning_rate: float = 1e-3, **kwargs) -> "AdamState":
        return cls.for_params(mlp.parameters(), learning_rate=learning_rate, **kwargs)


def adam_step(params: Sequence[np.ndarray], grads: Sequence[np.ndarray], state: AdamState) -> None:
    """
    One bias-corrected Adam step, updating params and state in place.

    params and grads are parallel lists of arrays (Mlp.parameters() order).
    """
    if isinstance(grads, Gradients):
        grads = grads.as_list()
    if not (len(params) == len(grads) == len(state.m) == len(state.v)):
        raise ShapeError(
            f"Adam received {len(params)} params, {len(grads)} grads and "
            f"{len(state.m)} moment slots"
        )
    for p, g, m in zip(params, grads, state.m):
        if p.shape != np.shape(g) or p.shape != m.shape:
            raise ShapeError(f"Adam shape mismatch: param {p.shape}, grad {np.shape(g)}, moment {m.shape}")

    state.t += 1
    correction1 = 1.0 - state.beta1 ** state.t
    correction2 = 1.0 - state.beta2 ** state.t
    for p, g, m, v in zip(params, grads, state.m, state.v):
        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * np.square(g)
        m_hat = m / correction1
        v_hat = v / correction2
        p -= state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon)
