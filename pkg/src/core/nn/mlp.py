"""
Dense multilayer perceptron with exact reverse-mode gradients.

Networks are plain parameter containers; forward and backward passes are pure
functions of (parameters, input), so a network can be read from many threads
as long as nobody mutates it.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..errors import ConfigurationError, ShapeError


class Activation(str, Enum):
    """Elementwise activations supported by a DenseLayer."""

    RELU = "relu"
    TANH = "tanh"
    IDENTITY = "identity"


def _activate(activation: Activation, z: np.ndarray) -> np.ndarray:
    if activation is Activation.RELU:
        return np.maximum(z, 0.0)
    if activation is Activation.TANH:
        return np.tanh(z)
    return z


def _activation_derivative(activation: Activation, z: np.ndarray, y: np.ndarray) -> np.ndarray:
    if activation is Activation.RELU:
        return (z > 0.0).astype(np.float64)
    if activation is Activation.TANH:
        return 1.0 - y * y
    return np.ones_like(z)


@dataclass
class DenseLayer:
    """Fully connected layer: y = activation(W x + b)."""

    weights: np.ndarray  # (out, in)
    biases: np.ndarray  # (out,)
    activation: Activation = Activation.IDENTITY

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.biases = np.asarray(self.biases, dtype=np.float64)
        self.activation = Activation(self.activation)
        if self.weights.ndim != 2:
            raise ShapeError(f"Layer weights must be 2-D, got shape {self.weights.shape}")
        if self.biases.shape != (self.weights.shape[0],):
            raise ShapeError(
                f"Bias length {self.biases.shape} does not match weight rows {self.weights.shape[0]}"
            )

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]


@dataclass
class Gradients:
    """Per-layer weight and bias gradients, shaped like the owning Mlp."""

    weights: List[np.ndarray] = field(default_factory=list)
    biases: List[np.ndarray] = field(default_factory=list)

    def as_list(self) -> List[np.ndarray]:
        """Flatten in the same order as Mlp.parameters()."""
        flat = []
        for w, b in zip(self.weights, self.biases):
            flat.extend([w, b])
        return flat

    def scaled(self, factor: float) -> "Gradients":
        return Gradients([w * factor for w in self.weights], [b * factor for b in self.biases])


class Mlp:
    """Ordered stack of dense layers."""

    def __init__(self, layers: Sequence[DenseLayer]):
        if not layers:
            raise ConfigurationError("An Mlp needs at least one layer")
        for index in range(1, len(layers)):
            if layers[index].in_dim != layers[index - 1].out_dim:
                raise ShapeError(
                    f"Layer {index} expects {layers[index].in_dim} inputs "
                    f"but layer {index - 1} produces {layers[index - 1].out_dim}"
                )
        self.layers: List[DenseLayer] = list(layers)

    @property
    def input_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def output_dim(self) -> int:
        return self.layers[-1].out_dim

    @property
    def layer_sizes(self) -> List[int]:
        return [self.input_dim] + [layer.out_dim for layer in self.layers]

    @property
    def activations(self) -> List[Activation]:
        return [layer.activation for layer in self.layers]

    def parameters(self) -> List[np.ndarray]:
        """Live parameter arrays in (W0, b0, W1, b1, ...) order; mutating them mutates the network."""
        flat = []
        for layer in self.layers:
            flat.extend([layer.weights, layer.biases])
        return flat

    def copy(self) -> "Mlp":
        return Mlp([
            DenseLayer(layer.weights.copy(), layer.biases.copy(), layer.activation)
            for layer in self.layers
        ])

    def zero_gradients(self) -> Gradients:
        return Gradients(
            [np.zeros_like(layer.weights) for layer in self.layers],
            [np.zeros_like(layer.biases) for layer in self.layers],
        )

    def forward(self, inputs: np.ndarray) -> np.ndarray:
        return forward(self, inputs)

    def backward(self, inputs: np.ndarray, output_grad: np.ndarray) -> Tuple[Gradients, np.ndarray]:
        return backward(self, inputs, output_grad)

    def __repr__(self):
        acts = ",".join(a.value for a in self.activations)
        return f"Mlp(sizes={self.layer_sizes}, activations=[{acts}])"


ArrayLike = Union[np.ndarray, Sequence[float]]


def init_mlp(layer_sizes: Sequence[int], activations: Sequence[Union[Activation, str]], seed: int) -> Mlp:
    """
    Build an Mlp with fan-in scaled uniform weights and zero biases.

    Weights are drawn from U(-sqrt(6/fan_in), +sqrt(6/fan_in)); the same seed
    always yields bit-identical parameters.
    """
    layer_sizes = [int(size) for size in layer_sizes]
    if len(layer_sizes) < 2:
        raise ConfigurationError(f"layer_sizes needs at least 2 entries, got {layer_sizes}")
    if len(activations) != len(layer_sizes) - 1:
        raise ConfigurationError(
            f"Expected {len(layer_sizes) - 1} activations for sizes {layer_sizes}, got {len(activations)}"
        )
    if any(size <= 0 for size in layer_sizes):
        raise ConfigurationError(f"Layer sizes must be positive, got {layer_sizes}")

    rng = np.random.default_rng(seed)
    layers = []
    for fan_in, fan_out, activation in zip(layer_sizes[:-1], layer_sizes[1:], activations):
        limit = np.sqrt(6.0 / fan_in)
        weights = rng.uniform(-limit, limit, size=(fan_out, fan_in))
        layers.append(DenseLayer(weights, np.zeros(fan_out), Activation(activation)))
    return Mlp(layers)


def _as_batch(mlp: Mlp, inputs: ArrayLike) -> Tuple[np.ndarray, bool]:
    x = np.asarray(inputs, dtype=np.float64)
    single = x.ndim == 1
    if single:
        x = x[np.newaxis, :]
    if x.ndim != 2 or x.shape[1] != mlp.input_dim:
        raise ShapeError(f"Input of shape {np.shape(inputs)} does not match input_dim {mlp.input_dim}")
    return x, single


def _forward_trace(mlp: Mlp, x: np.ndarray):
    """Run the batch through every layer, keeping (input, pre-activation, output) per layer."""
    trace = []
    activation_in = x
    for layer in mlp.layers:
        z = activation_in @ layer.weights.T + layer.biases
        y = _activate(layer.activation, z)
        trace.append((activation_in, z, y))
        activation_in = y
    return trace


def forward(mlp: Mlp, inputs: ArrayLike) -> np.ndarray:
    """Final-layer output for a vector (in,) or a batch (n, in). Never mutates the network."""
    x, single = _as_batch(mlp, inputs)
    out = _forward_trace(mlp, x)[-1][2]
    return out[0] if single else out


def backward(mlp: Mlp, inputs: ArrayLike, output_grad: ArrayLike) -> Tuple[Gradients, np.ndarray]:
    """
    Reverse-mode gradients of a scalar loss given dLoss/dOutput.

    For a batch, parameter gradients are summed over rows; the input gradient
    keeps one row per sample.
    """
    x, single = _as_batch(mlp, inputs)
    upstream = np.asarray(output_grad, dtype=np.float64)
    if single:
        upstream = upstream[np.newaxis, :] if upstream.ndim == 1 else upstream
    if upstream.shape != (x.shape[0], mlp.output_dim):
        raise ShapeError(
            f"Output gradient of shape {np.shape(output_grad)} does not match output "
            f"({x.shape[0]}, {mlp.output_dim})"
        )

    trace = _forward_trace(mlp, x)
    weight_grads: List[np.ndarray] = [None] * len(mlp.layers)
    bias_grads: List[np.ndarray] = [None] * len(mlp.layers)
    for index in reversed(range(len(mlp.layers))):
        layer = mlp.layers[index]
        layer_in, z, y = trace[index]
        delta = upstream * _activation_derivative(layer.activation, z, y)
        weight_grads[index] = delta.T @ layer_in
        bias_grads[index] = delta.sum(axis=0)
        upstream = delta @ layer.weights

    input_grad = upstream[0] if single else upstream
    return Gradients(weight_grads, bias_grads), input_grad
