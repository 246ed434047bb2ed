"""Crime-scene image descriptors: LBP, HOG and feature normalization."""

from .image import GrayImage, read_pgm, write_pgm
from .lbp import LbpHistogram, lbp_code, lbp_codes, lbp_histogram
from .hog import GradientField, HogDescriptor, cell_histograms, gradients, hog_descriptor
from .features import (
    DescriptorKind, FeatureVector, NormalizationMode,
    concat_features, extract_features, normalize_feature,
)

__all__ = [
    'GrayImage', 'read_pgm', 'write_pgm',
    'LbpHistogram', 'lbp_code', 'lbp_codes', 'lbp_histogram',
    'GradientField', 'HogDescriptor', 'cell_histograms', 'gradients', 'hog_descriptor',
    'DescriptorKind', 'FeatureVector', 'NormalizationMode',
    'concat_features', 'extract_features', 'normalize_feature',
]
