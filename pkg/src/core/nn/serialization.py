"""
Versioned text format for Mlp parameters.

Values are stored row-major as JSON floats; Python's float repr is the
shortest string that round-trips, so save/load is bit-exact.
"""

import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from ..errors import CheckpointError, CulpritError
from .mlp import Activation, DenseLayer, Mlp

FORMAT_VERSION = 1


def mlp_to_dict(mlp: Mlp) -> Dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "layer_sizes": mlp.layer_sizes,
        "activations": [a.value for a in mlp.activations],
        "parameters": [
            {"weights": layer.weights.reshape(-1).tolist(), "biases": layer.biases.tolist()}
            for layer in mlp.layers
        ],
    }


def mlp_from_dict(payload: Dict[str, Any]) -> Mlp:
    try:
        version = payload["format_version"]
        if version != FORMAT_VERSION:
            raise CheckpointError(f"Unsupported parameter format version {version}")
        sizes = [int(s) for s in payload["layer_sizes"]]
        activations = payload["activations"]
        params = payload["parameters"]
        if len(activations) != len(sizes) - 1 or len(params) != len(sizes) - 1:
            raise CheckpointError(
                f"Parameter file lists {len(sizes)} sizes, {len(activations)} activations "
                f"and {len(params)} parameter blocks"
            )
        layers = []
        for fan_in, fan_out, activation, block in zip(sizes[:-1], sizes[1:], activations, params):
            weights = np.asarray(block["weights"], dtype=np.float64)
            biases = np.asarray(block["biases"], dtype=np.float64)
            if weights.size != fan_in * fan_out or biases.size != fan_out:
                raise CheckpointError(
                    f"Parameter block sizes ({weights.size}, {biases.size}) do not match "
                    f"layer {fan_in}->{fan_out}"
                )
            layers.append(DenseLayer(weights.reshape(fan_out, fan_in), biases, Activation(activation)))
        mlp = Mlp(layers)
    except CheckpointError:
        raise
    except (KeyError, TypeError, ValueError, CulpritError) as e:
        raise CheckpointError(f"Malformed parameter payload: {e}") from e
    if not all(np.all(np.isfinite(p)) for p in mlp.parameters()):
        raise CheckpointError("Parameter payload contains non-finite values")
    return mlp


def save_mlp(mlp: Mlp, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(mlp_to_dict(mlp), f, indent=1)
        f.write("\n")


def load_mlp(path: Union[str, Path]) -> Mlp:
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except FileNotFoundError as e:
        raise CheckpointError(f"Parameter file not found: {path}") from e
    except (OSError, json.JSONDecodeError) as e:
        raise CheckpointError(f"Cannot read parameter file {path}: {e}") from e
    return mlp_from_dict(payload)
