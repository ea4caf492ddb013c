"""Shared fixtures: reference cameras, the two-pixel optimizer fixture, and
the randomized synthetic-group factory used by optimizer and acceptance
tests."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from depthopt import Camera, Interval, Pixel, PixelTables, probability_masses

# Reference cameras with exact rational constants: disparity(v) = 0.1*v + 0.5.
# CFG_A rounds on the half-pel grid, CFG_B on the integer-pel grid.
CFG_A = Camera(1, 1, Fraction(1, 26), 2, precision=2, offset=Fraction(1, 4))
CFG_B = Camera(1, 1, Fraction(1, 26), 2, precision=1, offset=Fraction(1, 2))


@pytest.fixture
def cfg_a() -> Camera:
    return CFG_A


@pytest.fixture
def cfg_b() -> Camera:
    return CFG_B


def dp_fix() -> list[PixelTables]:
    """Hand-checkable two-pixel group: uniform masses 0.5, winner last.

    Vector costs at lambda=1 enumerate to 6, 8, 7, 9 in lexicographic
    order, so (-1, 0) is optimal.
    """
    a = Pixel(x=0, y=0, level=100, error=0, candidates=Interval(-1, 0))
    b = Pixel(x=1, y=0, level=120, error=0, candidates=Interval(0, 1))
    return [
        PixelTables(a, p=[0.5, 0.5], d=[4.0, 4.0], r=[1.0, 2.0]),
        PixelTables(b, p=[0.5, 0.5], d=[8.0, 8.0], r=[1.0, 3.0]),
    ]


@pytest.fixture
def dp_fix_tables() -> list[PixelTables]:
    return dp_fix()


def random_group_tables(rng: np.random.Generator, sigma: float) -> list[PixelTables]:
    """One synthetic group: sizes 2..5, candidate widths 1..7, distortions
    in [0, 16], rates in [0, 8]; masses Gaussian around the observed error
    (sigma=inf gives uniform).

    Masses consume no RNG draws, so corpora generated with the same seed
    share group structures across sigma values.
    """
    n = int(rng.integers(2, 6))
    tables = []
    for i in range(n):
        width = int(rng.integers(1, 8))
        lo = int(rng.integers(-8, 1))
        interval = Interval(lo, lo + width - 1)
        error = int(rng.integers(interval.lo, interval.hi + 1))
        pixel = Pixel(
            x=i, y=0, level=30 + 40 * i, error=error, candidates=interval
        )
        tables.append(
            PixelTables(
                pixel,
                p=probability_masses(interval, sigma, error),
                d=rng.uniform(0.0, 16.0, width),
                r=rng.uniform(0.0, 8.0, width),
            )
        )
    return tables


def random_camera(rng: np.random.Generator) -> Camera:
    """Exact-rational random camera with a sane disparity step."""
    precision = int(rng.choice([1, 2, 4, 8]))
    # step_gain = f*l*C1; keep it in roughly [0.05, 2.5] pel/level so
    # equal-error intervals stay narrow enough for scanning oracles.
    f = int(rng.integers(1, 9))
    l = Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 5)))
    inv_near = int(rng.integers(4, 40))  # 1/z_near
    inv_far_den = int(rng.integers(2, 30))
    z_near = Fraction(1, inv_near)
    z_far = Fraction(inv_far_den, 1)
    cam = Camera(f, l, z_near, z_far, precision=precision,
                 offset=Fraction(int(rng.integers(1, 5)), 4 * precision))
    gain = cam.step_gain
    if gain < Fraction(1, 20):
        # widen the baseline until the step is workable
        cam = cam.with_baseline_scale(Fraction(1, 20) / gain + 1)
    return cam
