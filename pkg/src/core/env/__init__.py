"""Episodic culprit-identification environment and synthetic case generator."""

from .culprit_env import (
    CORRECT_REWARD, WRONG_REWARD, CaseRecord, CulpritEnvironment, StepResult,
    decode_action, from_records,
)
from .synthetic import make_synthetic, make_synthetic_cases, suspect_prototypes

__all__ = [
    'CORRECT_REWARD', 'WRONG_REWARD', 'CaseRecord', 'CulpritEnvironment', 'StepResult',
    'decode_action', 'from_records', 'make_synthetic', 'make_synthetic_cases', 'suspect_prototypes',
]
