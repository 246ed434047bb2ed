"""
Grayscale crime-scene images and PGM file I/O.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import cv2
import numpy as np

from ..errors import DataError, ShapeError

logger = logging.getLogger(__name__)

MIN_DESCRIPTOR_SIZE = 3


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale image stored as a (height, width) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2:
            raise ShapeError(f"GrayImage needs a 2-D array, got shape {pixels.shape}")
        if pixels.size and (pixels.min() < 0 or pixels.max() > 255):
            raise DataError("GrayImage intensities must lie in [0, 255]")
        if not np.issubdtype(pixels.dtype, np.integer):
            if not np.all(np.equal(np.mod(pixels, 1), 0)):
                raise DataError("GrayImage intensities must be integers")
        pixels = pixels.astype(np.uint8)
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @classmethod
    def from_intensities(cls, width: int, height: int, intensities: Sequence[int]) -> "GrayImage":
        """Build from a row-major intensity list."""
        values = np.asarray(intensities)
        if values.size != width * height:
            raise ShapeError(f"Expected {width * height} intensities for {width}x{height}, got {values.size}")
        return cls(values.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def intensities(self) -> np.ndarray:
        return self.pixels.reshape(-1)

    def at(self, x: int, y: int) -> int:
        return int(self.pixels[y, x])

    def as_float(self) -> np.ndarray:
        return self.pixels.astype(np.float64)

    def require_min_size(self, min_width: int = MIN_DESCRIPTOR_SIZE, min_height: int = MIN_DESCRIPTOR_SIZE):
        if self.width < min_width or self.height < min_height:
            raise ShapeError(
                f"Image of size {self.width}x{self.height} is smaller than {min_width}x{min_height}"
            )


def read_pgm(path: Union[str, Path]) -> GrayImage:
    """Decode an 8-bit PGM (or any OpenCV-readable grayscale image)."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"Image not found: {path}")
    pixels = cv2.imread(str(path), cv2.IMREAD_GRAYSCALE)
    if pixels is None:
        raise DataError(f"Unreadable image: {path}")
    return GrayImage(pixels)


def write_pgm(image: GrayImage, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if not cv2.imwrite(str(path), np.ascontiguousarray(image.pixels)):
        raise DataError(f"Failed to write image {path}")
    logger.debug(f"Wrote {image.width}x{image.height} image to {path}")
