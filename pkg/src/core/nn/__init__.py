"""Dense neural-network engine: MLP, backprop, Adam, MSE and gradient checking."""

from .mlp import Activation, DenseLayer, Gradients, Mlp, backward, forward, init_mlp
from .losses import mse_loss
from .optim import AdamState, adam_step
from .gradcheck import (
    array_relative_error, finite_diff_check, max_relative_error, numerical_gradients, relative_error,
)
from .serialization import load_mlp, mlp_from_dict, mlp_to_dict, save_mlp

__all__ = [
    'Activation', 'DenseLayer', 'Gradients', 'Mlp', 'backward', 'forward', 'init_mlp',
    'mse_loss', 'AdamState', 'adam_step',
    'array_relative_error', 'finite_diff_check', 'max_relative_error', 'numerical_gradients', 'relative_error',
    'load_mlp', 'mlp_from_dict', 'mlp_to_dict', 'save_mlp',
]
