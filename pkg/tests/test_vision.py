import math

import numpy as np
import pytest

from core.errors import ConfigurationError, DataError, NumericError, OutOfBoundsError, ShapeError
from core.vision import (
    DescriptorKind, FeatureVector, GrayImage, NormalizationMode, cell_histograms, concat_features,
    extract_features, gradients, hog_descriptor, lbp_code, lbp_histogram, normalize_feature, read_pgm,
    write_pgm,
)
from core.vision import hog as hog_module

CLOCKWISE_FROM_TOP_LEFT = ((-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1))


def naive_lbp_histogram(pixels):
    h, w = pixels.shape
    counts = [0] * 256
    for y in range(1, h - 1):
        for x in range(1, w - 1):
            code = 0
            for p, (dy, dx) in enumerate(CLOCKWISE_FROM_TOP_LEFT):
                if int(pixels[y + dy, x + dx]) >= int(pixels[y, x]):
                    code += 2 ** p
            counts[code] += 1
    total = sum(counts)
    return np.array([c / total for c in counts])


def naive_hog(pixels, cell_size=8, n_bins=9):
    img = pixels.astype(float)
    h, w = img.shape
    cells_y, cells_x = h // cell_size, w // cell_size
    hist = np.zeros((cells_y, cells_x, n_bins))
    for y in range(cells_y * cell_size):
        for x in range(cells_x * cell_size):
            left, right = max(x - 1, 0), min(x + 1, w - 1)
            up, down = max(y - 1, 0), min(y + 1, h - 1)
            gx = img[y, right] - img[y, left]
            gy = img[down, x] - img[up, x]
            angle = float(np.degrees(np.arctan2(gy, gx))) % 180.0
            b = min(int(math.floor(angle / (180.0 / n_bins))), n_bins - 1)
            hist[y // cell_size, x // cell_size, b] += math.sqrt(gx * gx + gy * gy)
    out = []
    for cy in range(cells_y):
        for cx in range(cells_x):
            cell = hist[cy, cx]
            norm = math.sqrt(sum(v * v for v in cell))
            out.extend(v / (norm + 1e-12) for v in cell)
    return np.array(out)


def edge_and_ramp_images():
    size = 16
    ys, xs = np.mgrid[0:size, 0:size]
    images = []
    for slope in (1, 3, 7):
        images.append(np.clip(xs * slope, 0, 255))
        images.append(np.clip(ys * slope, 0, 255))
        images.append(np.clip((xs + ys) * slope, 0, 255))
        images.append(np.clip((xs + 2 * ys) * slope, 0, 255))
    for position in (4, 8, 11):
        images.append(np.where(xs >= position, 200, 10))
        images.append(np.where(ys >= position, 200, 10))
    images.append(np.where(xs + ys >= 16, 255, 0))
    images.append(np.full((size, size), 77))
    return [GrayImage(img.astype(np.uint8)) for img in images]


def step_edge(size=8):
    pixels = np.zeros((size, size), dtype=np.uint8)
    pixels[:, size // 2:] = 255
    return GrayImage(pixels)


class TestGrayImage:
    def test_from_intensities_is_row_major(self):
        image = GrayImage.from_intensities(3, 2, [1, 2, 3, 4, 5, 6])
        assert (image.width, image.height) == (3, 2)
        assert image.at(2, 0) == 3
        assert image.at(0, 1) == 4

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            GrayImage.from_intensities(3, 3, [0] * 8)

    def test_out_of_range_intensity(self):
        with pytest.raises(DataError):
            GrayImage(np.array([[0, 300], [1, 2]]))

    def test_pgm_round_trip(self, tmp_path, rng):
        image = GrayImage(rng.integers(0, 256, size=(9, 13), dtype=np.uint8))
        write_pgm(image, tmp_path / "scene.pgm")
        assert np.array_equal(read_pgm(tmp_path / "scene.pgm").pixels, image.pixels)

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "broken.pgm"
        path.write_bytes(b"not an image")
        with pytest.raises(DataError):
            read_pgm(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_pgm(tmp_path / "nope.pgm")


class TestLbp:
    def test_uniform_image_gives_all_ones_code(self):
        image = GrayImage(np.full((5, 5), 42, dtype=np.uint8))
        assert lbp_code(image, 2, 2) == 255

    def test_bright_center_gives_zero(self):
        pixels = np.zeros((3, 3), dtype=np.uint8)
        pixels[1, 1] = 255
        assert lbp_code(GrayImage(pixels), 1, 1) == 0

    def test_pinned_neighbor_order(self):
        image = GrayImage.from_intensities(3, 3, [10, 20, 30, 40, 50, 60, 70, 80, 90])
        assert lbp_code(image, 1, 1) == 120

    @pytest.mark.parametrize("xc, yc", [(0, 2), (3, 1), (1, 0), (2, 3)])
    def test_border_pixel_is_out_of_bounds(self, xc, yc):
        image = GrayImage(np.zeros((4, 4), dtype=np.uint8))
        with pytest.raises(OutOfBoundsError) as info:
            lbp_code(image, xc, yc)
        assert isinstance(info.value, ShapeError)
        assert isinstance(info.value, IndexError)
        assert info.value.exit_code == 2

    def test_only_the_three_by_three_ring_is_supported(self):
        image = GrayImage(np.zeros((5, 5), dtype=np.uint8))
        with pytest.raises(ConfigurationError):
            lbp_code(image, 2, 2, P=16, R=2)

    def test_uniform_histogram(self):
        hist = lbp_histogram(GrayImage(np.full((5, 5), 9, dtype=np.uint8)))
        assert hist.bins.shape == (256,)
        assert hist.bins[255] == 1.0
        assert hist.bins[:255].sum() == 0.0

    def test_matches_naive_oracle_on_random_images(self):
        rng = np.random.default_rng(77)
        for _ in range(50):
            pixels = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
            hist = lbp_histogram(GrayImage(pixels))
            assert np.array_equal(hist.bins, naive_lbp_histogram(pixels))
            assert abs(hist.bins.sum() - 1.0) < 1e-9

    def test_gray_shift_invariance(self, rng):
        pixels = rng.integers(0, 200, size=(10, 10), dtype=np.uint8)
        shifted = GrayImage((pixels + 40).astype(np.uint8))
        original = GrayImage(pixels)
        for y in range(1, 9):
            for x in range(1, 9):
                assert lbp_code(original, x, y) == lbp_code(shifted, x, y)

    def test_too_small_image(self):
        with pytest.raises(ShapeError):
            lbp_histogram(GrayImage(np.zeros((2, 5), dtype=np.uint8)))


class TestGradients:
    def test_constant_image(self):
        field = gradients(GrayImage(np.full((4, 6), 100, dtype=np.uint8)))
        assert np.all(field.gx == 0) and np.all(field.gy == 0)

    def test_horizontal_ramp(self):
        pixels = np.tile(np.arange(6, dtype=np.uint8), (5, 1))
        field = gradients(GrayImage(pixels))
        assert np.all(field.gx[:, 1:-1] == 2.0)
        assert np.all(field.gx[:, 0] == 1.0)
        assert np.all(field.gy == 0.0)

    def test_transpose_swaps_fields(self, rng):
        pixels = rng.integers(0, 256, size=(7, 5), dtype=np.uint8)
        field = gradients(GrayImage(pixels))
        transposed = gradients(GrayImage(pixels.T.copy()))
        assert np.array_equal(transposed.gx, field.gy.T)
        assert np.array_equal(transposed.gy, field.gx.T)

    def test_shape_matches_image(self):
        field = gradients(GrayImage(np.zeros((3, 8), dtype=np.uint8)))
        assert field.gx.shape == (3, 8) and field.gy.shape == (3, 8)


class TestHog:
    def test_constant_image_gives_zero_descriptor(self):
        descriptor = hog_descriptor(GrayImage(np.full((16, 16), 50, dtype=np.uint8)))
        assert descriptor.values.shape == (2 * 2 * 9,)
        assert np.all(descriptor.values == 0.0)

    def test_vertical_edge_votes_into_zero_degree_bin(self):
        hist = cell_histograms(step_edge(), cell_size=8, n_bins=9)[0, 0]
        assert int(np.argmax(hist)) == 0

    def test_rotation_moves_dominant_bin_by_ninety_degrees(self):
        edge = step_edge(16)
        rotated = GrayImage(np.rot90(edge.pixels).copy())
        before = int(np.argmax(cell_histograms(edge, 16, 9)[0, 0]))
        after = int(np.argmax(cell_histograms(rotated, 16, 9)[0, 0]))
        assert (after - before) % 9 == 90 // 20

    def test_matches_naive_loops(self):
        for image in edge_and_ramp_images():
            descriptor = hog_descriptor(image)
            assert np.max(np.abs(descriptor.values - naive_hog(image.pixels))) < 1e-9

    def test_descriptor_invariants(self, rng):
        image = GrayImage(rng.integers(0, 256, size=(20, 27), dtype=np.uint8))
        descriptor = hog_descriptor(image, cell_size=8, n_bins=9)
        assert descriptor.values.size == (20 // 8) * (27 // 8) * 9
        assert np.all(descriptor.values >= 0)
        cells = descriptor.values.reshape(-1, 9)
        assert np.all(np.linalg.norm(cells, axis=1) <= 1 + 1e-9)

    def test_contrast_scaling(self, rng):
        pixels = rng.integers(0, 60, size=(16, 16)).astype(np.uint8)
        base, scaled = GrayImage(pixels), GrayImage(pixels * 4)
        assert np.allclose(cell_histograms(scaled), 4 * cell_histograms(base), rtol=1e-12, atol=1e-12)
        assert np.max(np.abs(hog_descriptor(scaled).values - hog_descriptor(base).values)) < 1e-9

    def test_magnitude_sq_exposed(self):
        descriptor = hog_descriptor(step_edge())
        # two interior columns carry a 255 step on each of the 8 rows
        assert descriptor.magnitude_sq == 2 * 8 * 255.0 ** 2

    def test_gradient_field_computed_once(self, monkeypatch):
        calls = []

        def counting(image):
            calls.append(image)
            return gradients(image)

        monkeypatch.setattr(hog_module, "gradients", counting)
        descriptor = hog_module.hog_descriptor(step_edge())
        assert len(calls) == 1
        assert descriptor.magnitude_sq == 2 * 8 * 255.0 ** 2

    def test_image_smaller_than_cell(self):
        with pytest.raises(ShapeError):
            hog_descriptor(GrayImage(np.zeros((6, 6), dtype=np.uint8)), cell_size=8)

    def test_deterministic(self, rng):
        image = GrayImage(rng.integers(0, 256, size=(16, 16), dtype=np.uint8))
        assert np.array_equal(hog_descriptor(image).values, hog_descriptor(image).values)


class TestFeatures:
    def test_l2(self):
        assert np.allclose(normalize_feature([3.0, 4.0], NormalizationMode.L2).values, [0.6, 0.8])

    @pytest.mark.parametrize("mode", ["L2", "MINMAX"])
    def test_zero_vector_stays_zero(self, mode):
        assert np.array_equal(normalize_feature([0.0, 0.0, 0.0], mode).values, np.zeros(3))

    def test_constant_minmax(self):
        assert np.array_equal(normalize_feature([5.0, 5.0, 5.0], "minmax").values, np.zeros(3))

    def test_minmax_range(self):
        assert normalize_feature([2.0, 4.0, 6.0], NormalizationMode.MINMAX).values.tolist() == [0.0, 0.5, 1.0]

    def test_feature_vector_rejects_non_finite(self):
        with pytest.raises(NumericError):
            FeatureVector([1.0, float("nan")])

    def test_feature_vector_is_read_only(self):
        vector = FeatureVector([1.0, 2.0])
        with pytest.raises(ValueError):
            vector.values[0] = 5.0

    def test_concat(self):
        fused = concat_features(FeatureVector([1.0]), FeatureVector([2.0, 3.0], DescriptorKind.LBP))
        assert fused.descriptor_kind is DescriptorKind.CONCAT
        assert fused.values.tolist() == [1.0, 2.0, 3.0]

    def test_extract_lbp_is_normalized_histogram(self, rng):
        image = GrayImage(rng.integers(0, 256, size=(12, 12), dtype=np.uint8))
        vector = extract_features(image, "lbp")
        assert len(vector) == 256
        assert vector.descriptor_kind is DescriptorKind.LBP
        assert abs(np.linalg.norm(vector.values) - 1.0) < 1e-12

    def test_extract_hog(self, rng):
        image = GrayImage(rng.integers(0, 256, size=(16, 24), dtype=np.uint8))
        vector = extract_features(image, DescriptorKind.HOG, normalization=None)
        assert len(vector) == 2 * 3 * 9
        assert np.array_equal(vector.values, hog_descriptor(image).values)

    def test_unknown_descriptor(self, rng):
        image = GrayImage(rng.integers(0, 256, size=(8, 8), dtype=np.uint8))
        with pytest.raises(ConfigurationError):
            extract_features(image, "sift")
