"""
Exception hierarchy shared by every culprit-identification component.

Each error may be tagged with the pipeline stage it surfaced in so the CLI can
name the failing stage in its diagnostic.
"""

from typing import Optional


class CulpritError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.stage = stage


class ConfigurationError(CulpritError, ValueError):
    """Invalid configuration, hyperparameters or mismatched component dimensions."""

    exit_code = 1


class ShapeError(CulpritError, ValueError):
    """Array or vector shapes are incompatible."""


class OutOfBoundsError(ShapeError, IndexError):
    """A pixel or index lies outside the region an operation is defined on."""


class DataError(CulpritError):
    """Input data is empty, malformed or out of range."""


class SchemaError(DataError):
    """A table does not match its declared column schema."""


class CheckpointError(DataError):
    """A checkpoint or parameter file cannot be loaded."""


class ProtocolError(CulpritError, RuntimeError):
    """An API was used out of order (e.g. step before reset)."""


class NotReadyError(CulpritError, RuntimeError):
    """A component is not ready yet, e.g. an underfilled replay buffer."""


class NumericError(CulpritError, ArithmeticError):
    """A NaN or infinity appeared in a computation."""

    exit_code = 3
