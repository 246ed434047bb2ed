"""Supervised comparison baseline."""

from .ann import BaselineConfig, MlpClassifier

__all__ = ['BaselineConfig', 'MlpClassifier']
