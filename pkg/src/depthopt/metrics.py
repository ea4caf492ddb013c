"""Objective quality metrics: PSNR and the Bjontegaard delta bitrate."""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

PSNR_CAP_DB = 100.0


class RDPoint(NamedTuple):
    rate: float
    quality: float


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio between two 8-bit images, in dB.

    Identical images return the documented 100 dB sentinel.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return PSNR_CAP_DB
    return float(10.0 * np.log10(255.0**2 / mse))


def _curve(points: Sequence, name: str) -> tuple[np.ndarray, np.ndarray]:
    pts = [RDPoint(float(r), float(q)) for r, q in points]
    if len(pts) < 2:
        raise ValueError(f"{name} curve needs at least 2 points, got {len(pts)}")
    rate = np.array([p.rate for p in pts])
    quality = np.array([p.quality for p in pts])
    if rate.min() <= 0:
        raise ValueError(f"{name} curve has non-positive rates")
    return rate, quality


def bd_rate(anchor: Sequence, test: Sequence) -> float:
    """Average bitrate difference of `test` against `anchor`, in percent.

    Fits log10(rate) as a polynomial of quality (degree min(3, n-1) per
    curve), integrates the difference over the overlapping quality range
    and maps the mean back through the exponential.  Negative values mean
    the test curve spends fewer bits at equal quality.
    """
    rate_a, qual_a = _curve(anchor, "anchor")
    rate_t, qual_t = _curve(test, "test")

    lo = max(qual_a.min(), qual_t.min())
    hi = min(qual_a.max(), qual_t.max())
    if not hi > lo:
        raise ValueError(
            f"no quality overlap between curves (anchor spans "
            f"[{qual_a.min():g}, {qual_a.max():g}], test spans "
            f"[{qual_t.min():g}, {qual_t.max():g}])"
        )

    poly_a = np.polyfit(qual_a, np.log10(rate_a), min(3, len(rate_a) - 1))
    poly_t = np.polyfit(qual_t, np.log10(rate_t), min(3, len(rate_t) - 1))
    int_a = np.polyint(poly_a)
    int_t = np.polyint(poly_t)
    area_a = np.polyval(int_a, hi) - np.polyval(int_a, lo)
    area_t = np.polyval(int_t, hi) - np.polyval(int_t, lo)
    avg_diff = (area_t - area_a) / (hi - lo)
    return float((10.0**avg_diff - 1.0) * 100.0)
