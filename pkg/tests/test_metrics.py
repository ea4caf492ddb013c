"""PSNR and BD-rate tests with closed-form expectations."""

from __future__ import annotations

import numpy as np
import pytest

from depthopt import bd_rate, psnr

ANCHOR = [(100.0, 30.0), (200.0, 33.0), (400.0, 36.0), (800.0, 39.0)]


class TestPsnr:
    def test_identical_images_hit_cap(self):
        img = np.arange(12, dtype=np.uint8).reshape(3, 4)
        assert psnr(img, img) == 100.0

    def test_full_scale_difference_is_zero_db(self):
        a = np.zeros((4, 4), dtype=np.uint8)
        b = np.full((4, 4), 255, dtype=np.uint8)
        assert psnr(a, b) == pytest.approx(0.0, abs=1e-12)

    def test_symmetry(self):
        rng = np.random.default_rng(0)
        a = rng.integers(0, 256, (8, 8), dtype=np.uint8)
        b = rng.integers(0, 256, (8, 8), dtype=np.uint8)
        assert psnr(a, b) == psnr(b, a)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            psnr(np.zeros((2, 2)), np.zeros((2, 3)))

    def test_known_mse(self):
        a = np.zeros((1, 4), dtype=np.uint8)
        b = np.full((1, 4), 5, dtype=np.uint8)  # MSE 25
        assert psnr(a, b) == pytest.approx(10 * np.log10(255**2 / 25))


class TestBdRate:
    def test_identical_curves(self):
        assert bd_rate(ANCHOR, ANCHOR) == pytest.approx(0.0, abs=1e-9)

    def test_ten_percent_cheaper(self):
        test = [(r * 0.9, q) for r, q in ANCHOR]
        assert bd_rate(ANCHOR, test) == pytest.approx(-10.0, abs=0.1)

    def test_ten_percent_dearer(self):
        test = [(r * 1.1, q) for r, q in ANCHOR]
        assert bd_rate(ANCHOR, test) == pytest.approx(10.0, abs=0.1)

    def test_sign_flip_on_swap(self):
        test = [(r * 0.8, q + 0.3) for r, q in ANCHOR]
        forward = bd_rate(ANCHOR, test)
        backward = bd_rate(test, ANCHOR)
        assert forward < 0 < backward
        # the log-domain average negates exactly on swap, so the rate
        # factors must be reciprocal
        product = (1 + forward / 100.0) * (1 + backward / 100.0)
        assert product == pytest.approx(1.0, abs=1e-9)

    def test_two_point_curves_use_linear_fit(self):
        a = [(100.0, 30.0), (200.0, 34.0)]
        t = [(90.0, 30.0), (180.0, 34.0)]
        assert bd_rate(a, t) == pytest.approx(-10.0, abs=0.1)

    def test_no_overlap_rejected(self):
        low = [(100.0, 20.0), (200.0, 25.0)]
        high = [(100.0, 30.0), (200.0, 35.0)]
        with pytest.raises(ValueError, match="overlap"):
            bd_rate(low, high)

    def test_short_curves_rejected(self):
        with pytest.raises(ValueError, match="at least 2"):
            bd_rate([(100.0, 30.0)], ANCHOR)

    def test_nonpositive_rates_rejected(self):
        bad = [(0.0, 30.0), (200.0, 33.0)]
        with pytest.raises(ValueError, match="non-positive"):
            bd_rate(bad, ANCHOR)
