"""
Finite-difference verification of analytic gradients.
"""

from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ConfigurationError
from .mlp import Gradients, Mlp, backward, forward

ABSOLUTE_FALLBACK = 1e-8

BackwardFn = Callable[[Mlp, np.ndarray, np.ndarray], Tuple[Gradients, np.ndarray]]


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> np.ndarray:
    """Entrywise |a - n| / max(|a|, |n|), falling back to |a - n| where both are below 1e-8."""
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    diff = np.abs(analytic - numeric)
    scale = np.maximum(np.abs(analytic), np.abs(numeric))
    small = scale < ABSOLUTE_FALLBACK
    return np.where(small, diff, diff / np.where(small, 1.0, scale))


def numerical_gradients(params: Sequence[np.ndarray], loss_fn: Callable[[], float],
                        epsilon: float = 1e-5) -> List[np.ndarray]:
    """Central differences of loss_fn() with respect to every entry of every array in params."""
    numeric = []
    for p in params:
        grad = np.zeros_like(p)
        for index in np.ndindex(p.shape):
            original = p[index]
            p[index] = original + epsilon
            plus = loss_fn()
            p[index] = original - epsilon
            minus = loss_fn()
            p[index] = original
            grad[index] = (plus - minus) / (2.0 * epsilon)
        numeric.append(grad)
    return numeric


def array_relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """||a - n|| / max(||a||, ||n||) over a whole parameter array, absolute below 1e-8."""
    analytic = np.asarray(analytic, dtype=np.float64).reshape(-1)
    numeric = np.asarray(numeric, dtype=np.float64).reshape(-1)
    diff = float(np.linalg.norm(analytic - numeric))
    scale = max(float(np.linalg.norm(analytic)), float(np.linalg.norm(numeric)))
    return diff if scale < ABSOLUTE_FALLBACK else diff / scale


def max_relative_error(analytic: Sequence[np.ndarray], numeric: Sequence[np.ndarray]) -> float:
    """Worst per-array relative error across parallel lists of arrays."""
    worst = 0.0
    for a, n in zip(analytic, numeric):
        if np.size(a):
            worst = max(worst, array_relative_error(a, n))
    return worst


def finite_diff_check(mlp: Mlp, inputs: np.ndarray, epsilon: float = 1e-5,
                      output_weights: Optional[np.ndarray] = None,
                      backward_fn: Optional[BackwardFn] = None) -> float:
    """
    Worst relative error between analytic and central-difference gradients.

    The scalar loss is sum(output_weights * mlp(inputs)); output_weights
    defaults to all ones. Both parameter and input gradients are checked.
    backward_fn lets callers verify an alternative backward implementation.
    """
    if epsilon <= 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    x = np.array(inputs, dtype=np.float64)
    out_shape = np.shape(forward(mlp, x))
    if output_weights is None:
        output_weights = np.ones(out_shape)
    output_weights = np.broadcast_to(np.asarray(output_weights, dtype=np.float64), out_shape)

    def loss() -> float:
        return float(np.sum(output_weights * forward(mlp, x)))

    grads, input_grad = (backward_fn or backward)(mlp, x, output_weights)
    analytic = grads.as_list() + [np.asarray(input_grad)]
    numeric = numerical_gradients(mlp.parameters() + [x], loss, epsilon)
    return max_relative_error(analytic, numeric)
