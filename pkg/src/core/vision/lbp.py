"""
Local binary pattern codes and histograms.

Neighbors of the 3x3 ring are enumerated clockwise from the top-left
(TL, T, TR, R, BR, B, BL, L); neighbor p contributes 2**p when its intensity
is >= the center's.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, OutOfBoundsError, ShapeError
from .image import GrayImage

# (dy, dx) for p = 0..7
NEIGHBOR_OFFSETS = ((-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1))


@dataclass
class LbpHistogram:
    """Normalized frequencies over the 2**P possible codes."""

    bins: np.ndarray
    P: int = 8


def _check_ring(P: int, R: int):
    if P != 8 or R != 1:
        raise ConfigurationError(f"Only P=8, R=1 is supported, got P={P}, R={R}")


def lbp_code(image: GrayImage, xc: int, yc: int, P: int = 8, R: int = 1) -> int:
    """LBP code of the pixel at column xc, row yc."""
    _check_ring(P, R)
    if not (R <= xc < image.width - R and R <= yc < image.height - R):
        raise OutOfBoundsError(
            f"Pixel ({xc}, {yc}) is within {R} px of the border of a {image.width}x{image.height} image"
        )
    center = image.at(xc, yc)
    code = 0
    for p, (dy, dx) in enumerate(NEIGHBOR_OFFSETS):
        if image.at(xc + dx, yc + dy) >= center:
            code |= 1 << p
    return code


def lbp_codes(image: GrayImage, P: int = 8, R: int = 1) -> np.ndarray:
    """Codes for every interior pixel, shape (height - 2, width - 2)."""
    _check_ring(P, R)
    image.require_min_size()
    pixels = image.pixels.astype(np.int16)
    h, w = pixels.shape
    center = pixels[1:h - 1, 1:w - 1]
    codes = np.zeros(center.shape, dtype=np.int64)
    for p, (dy, dx) in enumerate(NEIGHBOR_OFFSETS):
        neighbor = pixels[1 + dy:h - 1 + dy, 1 + dx:w - 1 + dx]
        codes |= (neighbor >= center).astype(np.int64) << p
    return codes


def lbp_histogram(image: GrayImage, P: int = 8) -> LbpHistogram:
    """Histogram of interior LBP codes, normalized to sum to one."""
    if image.width < 3 or image.height < 3:
        raise ShapeError(f"LBP needs at least a 3x3 image, got {image.width}x{image.height}")
    codes = lbp_codes(image, P=P)
    counts = np.bincount(codes.reshape(-1), minlength=1 << P).astype(np.float64)
    return LbpHistogram(bins=counts / counts.sum(), P=P)
