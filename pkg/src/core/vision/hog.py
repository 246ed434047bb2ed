"""
Gradient fields and histogram-of-oriented-gradients descriptors.

Gradients are unsmoothed central differences on the interior and one-sided
differences on the border. Orientation is unsigned in [0, 180) degrees with
hard assignment to n_bins equal-width bins, weighted by sqrt(gx**2 + gy**2).
Each cell histogram is L2-normalized on its own.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ShapeError
from .image import GrayImage

NORM_EPSILON = 1e-12


@dataclass
class GradientField:
    gx: np.ndarray
    gy: np.ndarray

    @property
    def magnitude_sq(self) -> np.ndarray:
        return self.gx * self.gx + self.gy * self.gy

    @property
    def magnitude(self) -> np.ndarray:
        return np.sqrt(self.magnitude_sq)

    @property
    def orientation_deg(self) -> np.ndarray:
        """Unsigned orientation in [0, 180)."""
        angle = np.mod(np.degrees(np.arctan2(self.gy, self.gx)), 180.0)
        return np.where(angle >= 180.0, 0.0, angle)


@dataclass
class HogDescriptor:
    cell_size: int
    n_bins: int
    values: np.ndarray
    magnitude_sq: float = 0.0

    @property
    def n_cells(self) -> int:
        return self.values.size // self.n_bins


def gradients(image: GrayImage) -> GradientField:
    if image.width < 3 or image.height < 3:
        raise ShapeError(f"Gradients need at least a 3x3 image, got {image.width}x{image.height}")
    pixels = image.as_float()
    gx = np.empty_like(pixels)
    gy = np.empty_like(pixels)

    gx[:, 1:-1] = pixels[:, 2:] - pixels[:, :-2]
    gx[:, 0] = pixels[:, 1] - pixels[:, 0]
    gx[:, -1] = pixels[:, -1] - pixels[:, -2]

    gy[1:-1, :] = pixels[2:, :] - pixels[:-2, :]
    gy[0, :] = pixels[1, :] - pixels[0, :]
    gy[-1, :] = pixels[-1, :] - pixels[-2, :]
    return GradientField(gx=gx, gy=gy)


def orientation_bins(field: GradientField, n_bins: int) -> np.ndarray:
    bin_width = 180.0 / n_bins
    bins = np.floor(field.orientation_deg / bin_width).astype(np.int64)
    return np.clip(bins, 0, n_bins - 1)


def cell_histograms(image: GrayImage, cell_size: int = 8, n_bins: int = 9,
                    field: Optional[GradientField] = None) -> np.ndarray:
    """Raw magnitude-weighted orientation histograms, shape (cells_y, cells_x, n_bins).

    `field` must be gradients(image) when given.
    """
    if cell_size < 1 or n_bins < 1:
        raise ShapeError(f"cell_size and n_bins must be positive, got {cell_size}, {n_bins}")
    if image.width < cell_size or image.height < cell_size:
        raise ShapeError(f"Image {image.width}x{image.height} is smaller than one {cell_size}px cell")
    if field is None:
        field = gradients(image)
    cells_y = image.height // cell_size
    cells_x = image.width // cell_size
    used_h, used_w = cells_y * cell_size, cells_x * cell_size

    magnitude = field.magnitude[:used_h, :used_w]
    bins = orientation_bins(field, n_bins)[:used_h, :used_w]
    cell_row = np.arange(used_h)[:, np.newaxis] // cell_size
    cell_col = np.arange(used_w)[np.newaxis, :] // cell_size
    flat_index = ((cell_row * cells_x + cell_col) * n_bins + bins).reshape(-1)
    hist = np.bincount(flat_index, weights=magnitude.reshape(-1), minlength=cells_y * cells_x * n_bins)
    return hist.reshape(cells_y, cells_x, n_bins)


def hog_descriptor(image: GrayImage, cell_size: int = 8, n_bins: int = 9) -> HogDescriptor:
    field = gradients(image)
    hist = cell_histograms(image, cell_size, n_bins, field)
    norms = np.sqrt(np.sum(hist * hist, axis=2, keepdims=True))
    normalized = hist / (norms + NORM_EPSILON)
    used = field.magnitude_sq[:hist.shape[0] * cell_size, :hist.shape[1] * cell_size]
    return HogDescriptor(
        cell_size=cell_size,
        n_bins=n_bins,
        values=normalized.reshape(-1),
        magnitude_sq=float(used.sum()),
    )
