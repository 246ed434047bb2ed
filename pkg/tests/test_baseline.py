import numpy as np
import pytest

from core.baseline import BaselineConfig, MlpClassifier
from core.env import make_synthetic_cases
from core.errors import ConfigurationError, DataError
from core.evaluation import EarlyStopSpec, compute_metrics, evaluate


def test_fits_separable_cases():
    cases = make_synthetic_cases(200, 8, 4, noise=0.05, seed=3)
    classifier = MlpClassifier(8, 4, BaselineConfig(hidden_sizes=[16], epochs=150, seed=1))
    classifier.fit(cases[:150])
    assert compute_metrics(evaluate(classifier.snapshot(), cases[150:])).accuracy >= 0.9
    assert classifier.epoch_losses[-1] < classifier.epoch_losses[0]


def test_same_seed_same_network():
    cases = make_synthetic_cases(40, 8, 4, noise=0.1, seed=0)
    a = MlpClassifier(8, 4, BaselineConfig(hidden_sizes=[8], epochs=3)).fit(cases)
    b = MlpClassifier(8, 4, BaselineConfig(hidden_sizes=[8], epochs=3)).fit(cases)
    assert all(np.array_equal(x, y) for x, y in zip(a.network.parameters(), b.network.parameters()))


def test_validation_plateau_stops_training():
    cases = make_synthetic_cases(60, 8, 4, noise=0.1, seed=2)
    classifier = MlpClassifier(8, 4, BaselineConfig(hidden_sizes=[8], epochs=500, seed=0))
    classifier.fit(cases[:40], cases[40:], EarlyStopSpec(patience=2))
    assert len(classifier.validation_scores) < 500
    assert len(classifier.epoch_losses) == len(classifier.validation_scores)


def test_empty_training_set():
    with pytest.raises(DataError):
        MlpClassifier(8, 4).fit([])


def test_feature_width_must_match():
    cases = make_synthetic_cases(10, 6, 4, noise=0.1, seed=0)
    with pytest.raises(ConfigurationError):
        MlpClassifier(8, 4).fit(cases)


@pytest.mark.parametrize("kwargs", [dict(learning_rate=0.0), dict(batch_size=0), dict(epochs=-1)])
def test_invalid_config(kwargs):
    with pytest.raises(ConfigurationError):
        BaselineConfig(**kwargs)
