"""
Synthetic case generator used for verification runs.

Suspect k's prototype has ones on every feature j with j % n_suspects == k;
a case's features are its culprit's prototype plus Gaussian noise.
"""

import numpy as np

from ..errors import ConfigurationError
from ..vision.features import DescriptorKind, FeatureVector
from .culprit_env import CaseRecord, CulpritEnvironment


def suspect_prototypes(n_features: int, n_suspects: int) -> np.ndarray:
    """(n_suspects, n_features) indicator prototypes."""
    columns = np.arange(n_features)
    return (columns[np.newaxis, :] % n_suspects == np.arange(n_suspects)[:, np.newaxis]).astype(np.float64)


def make_synthetic_cases(n_cases: int, n_features: int, n_suspects: int, noise: float, seed: int):
    if n_cases < 1:
        raise ConfigurationError(f"n_cases must be >= 1, got {n_cases}")
    if n_suspects < 2:
        raise ConfigurationError(f"n_suspects must be >= 2, got {n_suspects}")
    if n_features < n_suspects:
        raise ConfigurationError(f"n_features ({n_features}) must be >= n_suspects ({n_suspects})")
    if noise < 0:
        raise ConfigurationError(f"noise must be >= 0, got {noise}")

    rng = np.random.default_rng(seed)
    prototypes = suspect_prototypes(n_features, n_suspects)
    culprits = rng.integers(0, n_suspects, size=n_cases)
    features = prototypes[culprits] + noise * rng.standard_normal((n_cases, n_features))
    return [
        CaseRecord(
            case_id=f"synthetic-{i:05d}",
            features=FeatureVector(features[i], DescriptorKind.TABULAR),
            n_suspects=n_suspects,
            culprit_index=int(culprits[i]),
        )
        for i in range(n_cases)
    ]


def make_synthetic(n_cases: int, n_features: int, n_suspects: int, noise: float, seed: int) -> CulpritEnvironment:
    """Environment over freshly generated cases; linearly separable when noise == 0."""
    cases = make_synthetic_cases(n_cases, n_features, n_suspects, noise, seed)
    return CulpritEnvironment(cases, seed=seed)
