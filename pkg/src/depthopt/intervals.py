"""Maximal ranges of integer depth-level changes with a fixed rounded
disparity.

Because many depth levels collapse onto one rounded disparity, a pixel's
level can move inside a contiguous range without altering where it lands
in the virtual view.  `zero_error_interval` is that range around the
unchanged level; `equal_error_interval` is the analogous range around a
level already shifted by a coding error, i.e. all changes that reproduce
the error's rounded-disparity effect.  `scan_interval` recomputes the same
range by brute-force outward scanning and serves as the test oracle.

Bounds are derived in exact rational arithmetic.  For level ``u`` and the
grid rule ``rounded(d) = ceil((d - o) * n) / n``, a level ``u + d`` keeps
``u``'s rounded disparity iff

    -(1/n - o) < disparity(u + d) - rounded(disparity(u)) <= o

(left-open / right-closed: a disparity sitting exactly ``o`` above the
grid point still rounds down to it, while one exactly ``1/n - o`` below
rounds to the previous point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .camera import (
    DEPTH_LEVEL_MAX,
    Camera,
    DepthLevel,
    disparity,
    round_disparity,
    rounded_units_table,
)


@dataclass(frozen=True)
class Interval:
    """Inclusive range [lo, hi] of integer depth-level changes."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, dv: int) -> bool:
        return self.lo <= dv <= self.hi

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def clipped(self, lo: int, hi: int) -> "Interval":
        return Interval(max(self.lo, lo), min(self.hi, hi))


@lru_cache(maxsize=None)
def _unclipped_bounds(cam: Camera) -> tuple[tuple[int, int], ...]:
    """Per level u: integer bounds of changes d keeping u's rounded disparity.

    Ignores the [0, 255] clamp; cached per camera.
    """
    gain = cam.step_gain
    span = Fraction(1, cam.precision)
    bounds = []
    for u in range(DEPTH_LEVEL_MAX + 1):
        d_u = disparity(u, cam)
        rem = d_u - round_disparity(d_u, cam).value  # in (-(1/n - o), o]
        lo = math.floor((-(span - cam.offset) - rem) / gain) + 1  # strict >
        hi = math.floor((cam.offset - rem) / gain)
        bounds.append((lo, hi))
    return tuple(bounds)


def zero_error_interval(v: int, cam: Camera) -> Interval:
    """Maximal change interval around level `v` with zero disparity error.

    Always contains 0; clipped so v + dv stays within [0, 255].
    """
    v = DepthLevel(v)
    lo, hi = _unclipped_bounds(cam)[v]
    return Interval(lo, hi).clipped(-v, DEPTH_LEVEL_MAX - v)


def equal_error_interval(v: int, dv_k: int, cam: Camera) -> Interval:
    """Maximal change interval around `dv_k` sharing its disparity error.

    Every member dv satisfies
    ``disparity_error(v, dv) == disparity_error(v, dv_k)``; equivalently it
    is the zero-error interval of the reconstructed level v + dv_k,
    translated by dv_k and clipped to [-v, 255 - v].  Always contains dv_k.
    """
    v = DepthLevel(v)
    u = DepthLevel(v + dv_k)
    lo, hi = _unclipped_bounds(cam)[u]
    return Interval(lo + dv_k, hi + dv_k).clipped(-v, DEPTH_LEVEL_MAX - v)


def scan_interval(v: int, dv_k: int, cam: Camera) -> Interval:
    """Oracle for `equal_error_interval`: plain outward scan.

    Walks dv away from dv_k in both directions while the rounded-disparity
    difference to level v stays equal to dv_k's, comparing exact grid
    units.  Kept deliberately independent of the algebraic derivation.
    """
    v = DepthLevel(v)
    DepthLevel(v + dv_k)
    units = rounded_units_table(cam)
    err_k = units[v + dv_k] - units[v]
    hi = dv_k
    while v + hi + 1 <= DEPTH_LEVEL_MAX and units[v + hi + 1] - units[v] == err_k:
        hi += 1
    lo = dv_k
    while v + lo - 1 >= 0 and units[v + lo - 1] - units[v] == err_k:
        lo -= 1
    return Interval(lo, hi)


def interval_table(cam: Camera) -> list[Interval]:
    """Zero-error interval for every depth level 0..255, index = level."""
    return [zero_error_interval(v, cam) for v in range(DEPTH_LEVEL_MAX + 1)]
