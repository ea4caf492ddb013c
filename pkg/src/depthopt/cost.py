"""Per-pixel probability/distortion/rate tables and group cost functionals.

Probability masses model the coding error of a pixel as a discrete
Gaussian over its candidate change set, centered on the error actually
observed; they are fixed weights of an error distribution, not controlled
choices.  Distortion is the squared rendering-position error of a change,
scaled by the pixel's texture-gradient energy; it is constant across a
candidate set because all members share one rounded-disparity error.  The
rate model is pluggable; the default charges log2(1 + |residual|) bits for
the reconstructed level against a neighbor predictor.

The group cost of a change vector sums, pixel by pixel in depth order, the
prefix product of the chosen masses times the pixel's distortion, plus a
Lagrangian rate term:

    cost(dv) = sum_z (prod_{j<=z} P_j(dv_j)) * dbar_z(dv_z) + lam * sum_z R_z(dv_z)

`group_cost_constrained` is the same sum with each prefix additionally
gated by the depth-order events between adjacent pixels (non-strict inside
the prefix, strict against its last pixel); on groups built from real
warping the gates are always open and the two costs coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .camera import Camera, rounded_units_table
from .intervals import Interval
from .warping import Pixel

RateFn = Callable[[int, int], float]

MASS_TOLERANCE = 1e-12


@dataclass
class PixelTables:
    """Aligned probability / distortion / rate arrays over a pixel's
    candidate changes (index 0 corresponds to candidates.lo)."""

    pixel: Pixel
    p: np.ndarray
    d: np.ndarray
    r: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.pixel.candidates)
        self.p = np.asarray(self.p, dtype=np.float64)
        self.d = np.asarray(self.d, dtype=np.float64)
        self.r = np.asarray(self.r, dtype=np.float64)
        for name, arr in (("p", self.p), ("d", self.d), ("r", self.r)):
            if arr.shape != (n,):
                raise ValueError(f"{name} must have one entry per candidate")
            if arr.min() < 0:
                raise ValueError(f"{name} entries must be non-negative")
        if abs(self.p.sum() - 1.0) > MASS_TOLERANCE:
            raise ValueError("probability masses must sum to 1")

    @property
    def changes(self) -> np.ndarray:
        return np.arange(self.pixel.candidates.lo, self.pixel.candidates.hi + 1)

    def index(self, dv: int) -> int:
        if dv not in self.pixel.candidates:
            raise ValueError(f"change {dv} outside candidates {self.pixel.candidates}")
        return dv - self.pixel.candidates.lo

    @property
    def initial_index(self) -> int:
        return self.index(self.pixel.error)


def probability_masses(candidates: Interval, sigma: float, mu: int = 0) -> np.ndarray:
    """Normalized discrete Gaussian masses over the candidate interval.

    `sigma = inf` yields the uniform distribution; otherwise sigma must be
    positive.  The mode sits at `mu` (clipped weights never vanish there).
    """
    n = len(candidates)
    if n == 0:
        raise ValueError("empty candidate set")
    if math.isinf(sigma):
        return np.full(n, 1.0 / n)
    if not sigma > 0:
        raise ValueError(f"sigma must be positive or inf, got {sigma}")
    deltas = np.arange(candidates.lo, candidates.hi + 1, dtype=np.float64)
    w = np.exp(-((deltas - mu) ** 2) / (2.0 * sigma * sigma))
    return w / w.sum()


def distortion_values(pixel: Pixel, cam: Camera) -> np.ndarray:
    """weight * (position error in pel)^2 per candidate change.

    The position error is the rounded-disparity difference to the
    uncompressed level; it is constant over the candidate set.
    """
    units = rounded_units_table(cam)
    base = units[pixel.level]
    cells = np.array(
        [units[pixel.level + dv] - base for dv in pixel.candidates], dtype=np.float64
    )
    pel = cells / cam.precision
    return pixel.weight * pel * pel


def log2_residual_rate(level: int, predictor: int) -> float:
    """Default rate model: log2(1 + |level - predictor|) bits."""
    return math.log2(1 + abs(level - predictor))


def rate_values(
    pixel: Pixel,
    predictor: int | None = None,
    rate_fn: RateFn = log2_residual_rate,
) -> np.ndarray:
    """Bits per candidate change; `predictor` defaults to the pixel's own
    uncompressed level when no neighbor is available."""
    if predictor is None:
        predictor = pixel.level
    if not 0 <= predictor <= 255:
        raise ValueError(f"predictor {predictor} outside [0, 255]")
    return np.array(
        [rate_fn(pixel.level + dv, predictor) for dv in pixel.candidates],
        dtype=np.float64,
    )


def build_tables(
    pixel: Pixel,
    cam: Camera,
    sigma: float = math.inf,
    mu: int | None = None,
    predictor: int | None = None,
    rate_fn: RateFn = log2_residual_rate,
) -> PixelTables:
    """Assemble the three aligned tables for one pixel.

    The Gaussian center defaults to the pixel's observed error.
    """
    if mu is None:
        mu = pixel.error
    return PixelTables(
        pixel=pixel,
        p=probability_masses(pixel.candidates, sigma, mu),
        d=distortion_values(pixel, cam),
        r=rate_values(pixel, predictor, rate_fn),
    )


def constrained_mass(tables: PixelTables, bound: int, strict: bool) -> float:
    """Mass of candidate changes keeping the quantized level below `bound`
    (strictly or not)."""
    levels = tables.pixel.level + tables.changes
    mask = levels < bound if strict else levels <= bound
    return float(tables.p[mask].sum())


def expected_pixel_distortion(
    tables: Sequence[PixelTables], j: int, dv_j: int
) -> float:
    """Expected distortion of pixel `j` choosing `dv_j`, given the group.

    Weights the pixel's own mass and distortion by the probability that
    every earlier pixel stays strictly below, and every later pixel at or
    below, the resulting quantized level.
    """
    t_j = tables[j]
    bound = t_j.pixel.level + dv_j
    value = float(t_j.p[t_j.index(dv_j)])
    for i, t_i in enumerate(tables):
        if i == j:
            continue
        value *= constrained_mass(t_i, bound, strict=i < j)
    return value * float(t_j.d[t_j.index(dv_j)])


def _indices(tables: Sequence[PixelTables], changes) -> list[int]:
    changes = list(changes)
    if len(changes) != len(tables):
        raise ValueError("one change per pixel required")
    return [t.index(dv) for t, dv in zip(tables, changes)]


def group_rate(tables: Sequence[PixelTables], changes) -> float:
    """Total bits of a change vector."""
    return float(sum(t.r[i] for t, i in zip(tables, _indices(tables, changes))))


def group_distortion(tables: Sequence[PixelTables], changes) -> float:
    """Prefix-mass-weighted distortion total of a change vector."""
    idx = _indices(tables, changes)
    total = 0.0
    prefix = 1.0
    for t, i in zip(tables, idx):
        prefix *= float(t.p[i])
        total += prefix * float(t.d[i])
    return total


def group_cost(tables: Sequence[PixelTables], changes, lam: float) -> float:
    """Lagrangian group cost: prefix-weighted distortion + lam * rate."""
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    return group_distortion(tables, changes) + lam * group_rate(tables, changes)


def group_cost_constrained(tables: Sequence[PixelTables], changes, lam: float) -> float:
    """Group cost with the depth-order gates kept explicit.

    Each prefix product is zeroed unless the chosen quantized levels are
    nondecreasing along the prefix and strictly increasing into its last
    pixel.  Equals `group_cost` whenever the chosen vector respects the
    order, which extraction-built candidate sets guarantee.
    """
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    idx = _indices(tables, changes)
    levels = [t.pixel.level + dv for t, dv in zip(tables, changes)]
    total = 0.0
    for z in range(len(tables)):
        prod = float(tables[0].p[idx[0]])
        for j in range(1, z + 1):
            ordered = levels[j - 1] < levels[j] if j == z else levels[j - 1] <= levels[j]
            if not ordered:
                prod = 0.0
                break
            prod *= float(tables[j].p[idx[j]])
        total += prod * float(tables[z].d[idx[z]])
    return total + lam * group_rate(tables, changes)
