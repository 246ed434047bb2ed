"""
Feature vectors: normalization, fusion and descriptor selection.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import ConfigurationError, NumericError, ShapeError
from .hog import hog_descriptor
from .image import GrayImage
from .lbp import lbp_histogram


class DescriptorKind(str, Enum):
    LBP = "LBP"
    HOG = "HOG"
    TABULAR = "TABULAR"
    CONCAT = "CONCAT"


class NormalizationMode(str, Enum):
    L2 = "L2"
    MINMAX = "MINMAX"


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    descriptor_kind: DescriptorKind = DescriptorKind.TABULAR

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise NumericError(f"{self.descriptor_kind} feature vector contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "descriptor_kind", DescriptorKind(self.descriptor_kind))

    def __len__(self):
        return self.values.size


def normalize_feature(values, mode=NormalizationMode.L2,
                      kind: DescriptorKind = DescriptorKind.TABULAR) -> FeatureVector:
    """L2 -> unit norm (zeros stay zeros); MINMAX -> [0, 1] (constant vectors map to zeros)."""
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if values.size == 0:
        raise ShapeError("Cannot normalize an empty feature vector")
    if not isinstance(mode, NormalizationMode):
        mode = NormalizationMode(str(mode).upper())
    if mode is NormalizationMode.L2:
        norm = np.linalg.norm(values)
        out = values / norm if norm > 0 else np.zeros_like(values)
    else:
        low, high = values.min(), values.max()
        out = (values - low) / (high - low) if high > low else np.zeros_like(values)
    return FeatureVector(out, kind)


def concat_features(*vectors: FeatureVector) -> FeatureVector:
    if not vectors:
        raise ShapeError("concat_features needs at least one vector")
    return FeatureVector(np.concatenate([v.values for v in vectors]), DescriptorKind.CONCAT)


def extract_features(image: GrayImage, method=DescriptorKind.LBP, normalization=NormalizationMode.L2,
                     cell_size: int = 8, n_bins: int = 9) -> FeatureVector:
    """Compute the selected descriptor for an image and normalize it."""
    if not isinstance(method, DescriptorKind):
        try:
            method = DescriptorKind(str(method).upper())
        except ValueError as e:
            raise ConfigurationError(f"Unknown descriptor {method!r}") from e
    if method is DescriptorKind.LBP:
        raw = lbp_histogram(image).bins
    elif method is DescriptorKind.HOG:
        raw = hog_descriptor(image, cell_size=cell_size, n_bins=n_bins).values
    else:
        raise ConfigurationError(f"Unsupported image descriptor {method}")
    if normalization is None:
        return FeatureVector(raw, method)
    return normalize_feature(raw, normalization, kind=method)
