"""
Stage tagging for service workflows.
"""

from contextlib import contextmanager
from typing import Iterator

from core.errors import CulpritError, DataError, NumericError

LOAD_DATA = "load-data"
BUILD_ENV = "build-env"
TRAIN = "train"
EVALUATE = "evaluate"
WRITE_ARTIFACTS = "write-artifacts"
LOAD_CHECKPOINT = "load-checkpoint"
EXTRACT = "extract"
BASELINE = "baseline"


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Tag toolkit errors raised inside the block with `name` (the innermost stage wins)."""
    try:
        yield
    except CulpritError as e:
        if e.stage is None:
            e.stage = name
        raise
    except OSError as e:
        raise DataError(f"{e.strerror or e}: {e.filename}" if e.filename else str(e), stage=name) from e
    except FloatingPointError as e:
        raise NumericError(str(e), stage=name) from e
