"""1-D forward warping, occlusion-group extraction and row synthesis.

Rows of a rectified pair are warped horizontally: reference column x with
quantized level q lands on the virtual-view grid position

    target(x) = x * n + direction * units(rounded(disparity(q)))

measured in 1/n pel units.  When several columns land on one target they
form an occlusion group; the pixel with the largest quantized depth wins
the z-buffer contest (first such pixel in scan order on a tie) and its
texture is the synthesized sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .camera import DEPTH_LEVEL_MAX, Camera, rounded_units_table
from .intervals import Interval, equal_error_interval


@dataclass(frozen=True)
class Pixel:
    """One warped reference pixel: its uncompressed level, the coding error
    it arrived with, the admissible changes, and its distortion weight."""

    x: int
    y: int
    level: int
    error: int
    candidates: Interval
    weight: float = 1.0

    def __post_init__(self) -> None:
        if self.error not in self.candidates:
            raise ValueError(f"error {self.error} outside candidates {self.candidates}")
        if not 0 <= self.level + self.error <= DEPTH_LEVEL_MAX:
            raise ValueError("quantized level outside [0, 255]")
        if self.weight < 0:
            raise ValueError("weight must be non-negative")

    @property
    def quantized(self) -> int:
        return self.level + self.error


@dataclass
class OcclusionGroup:
    """Pixels colliding on one virtual-view target.

    `pixels` is ordered by quantized depth ascending (stable in scan order
    among equals) with the winner last.
    """

    target: int
    pixels: list[Pixel] = field(default_factory=list)

    @property
    def winner(self) -> Pixel:
        return self.pixels[-1]

    @property
    def size(self) -> int:
        return len(self.pixels)

    def validate(self) -> None:
        """Check the full group contract (used on extraction and in tests)."""
        if len(self.pixels) < 2:
            raise ValueError("occlusion group needs at least two pixels")
        quantized = [p.quantized for p in self.pixels]
        if any(a > b for a, b in zip(quantized, quantized[1:])):
            raise ValueError("pixels not in nondecreasing quantized-depth order")
        scan = sorted(self.pixels, key=lambda p: p.x)
        if self.winner.x != scan[first_max_index([p.quantized for p in scan])].x:
            raise ValueError("last pixel is not the z-buffer winner")


def first_max_index(values) -> int:
    """Index of the first occurrence of the maximum (z-buffer tie rule)."""
    values = list(values)
    if not values:
        raise ValueError("empty sequence")
    best = 0
    for i, v in enumerate(values):
        if v > values[best]:
            best = i
    return best


def _check_direction(direction: int) -> int:
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    return direction


def _as_rows(levels, errors) -> tuple[np.ndarray, np.ndarray]:
    levels = np.asarray(levels, dtype=np.int64)
    errors = np.asarray(errors, dtype=np.int64)
    if levels.ndim != 1 or errors.shape != levels.shape:
        raise ValueError("levels and errors must be 1-D arrays of equal length")
    if levels.size and (levels.min() < 0 or levels.max() > DEPTH_LEVEL_MAX):
        raise ValueError("depth level outside [0, 255]")
    quantized = levels + errors
    if quantized.size and (quantized.min() < 0 or quantized.max() > DEPTH_LEVEL_MAX):
        raise ValueError("quantized level outside [0, 255]")
    return levels, errors


def forward_warp(levels, errors, cam: Camera, direction: int = 1) -> np.ndarray:
    """Target grid position (1/n units) for every column of the row."""
    _check_direction(direction)
    levels, errors = _as_rows(levels, errors)
    if levels.size == 0:
        return np.zeros(0, dtype=np.int64)
    units = np.asarray(rounded_units_table(cam), dtype=np.int64)
    x = np.arange(levels.size, dtype=np.int64)
    return x * cam.precision + direction * units[levels + errors]


def texture_weights(texture_row) -> np.ndarray:
    """Squared central-difference gradient energy of a texture row."""
    t = np.asarray(texture_row, dtype=np.float64)
    if t.size < 2:
        return np.ones_like(t)
    g = np.gradient(t)
    return g * g


def extract_groups(
    levels,
    errors,
    cam: Camera,
    direction: int = 1,
    weights=None,
    row: int = 0,
) -> list[OcclusionGroup]:
    """Occlusion groups of one row, in scan order of first collision.

    Each pixel's candidate set is the equal-error interval around its
    initial quantized error, so any candidate keeps the pixel's target.
    """
    levels, errors = _as_rows(levels, errors)
    targets = forward_warp(levels, errors, cam, direction)
    if weights is None:
        weights = np.ones(levels.size)
    else:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != levels.shape:
            raise ValueError("weights must match the row length")

    hits: dict[int, list[int]] = {}
    for x, t in enumerate(targets.tolist()):
        hits.setdefault(t, []).append(x)

    groups = []
    for target, xs in hits.items():
        if len(xs) < 2:
            continue
        pixels = [
            Pixel(
                x=x,
                y=row,
                level=int(levels[x]),
                error=int(errors[x]),
                candidates=equal_error_interval(int(levels[x]), int(errors[x]), cam),
                weight=float(weights[x]),
            )
            for x in xs
        ]
        wi = first_max_index([p.quantized for p in pixels])
        winner = pixels.pop(wi)
        pixels.sort(key=lambda p: p.quantized)  # stable: scan order kept among equals
        pixels.append(winner)
        group = OcclusionGroup(target=target, pixels=pixels)
        group.validate()
        groups.append(group)
    return groups


def synthesize_row(
    texture_row,
    levels,
    errors,
    cam: Camera,
    direction: int = 1,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Z-buffer fill of the virtual 1/n grid for one row.

    Returns (virtual, filled, winner): the synthesized samples (0 where no
    pixel landed), the occupancy mask, and the source column per grid
    sample (-1 for holes).  The grid spans [0, len(row) * n).
    """
    _check_direction(direction)
    levels, errors = _as_rows(levels, errors)
    texture = np.asarray(texture_row)
    if texture.shape != levels.shape:
        raise ValueError("texture must match the row length")
    targets = forward_warp(levels, errors, cam, direction)
    width = levels.size * cam.precision
    virtual = np.zeros(width, dtype=np.uint8)
    best_level = np.full(width, -1, dtype=np.int64)
    winner = np.full(width, -1, dtype=np.int64)
    quantized = levels + errors
    for x in range(levels.size):
        t = targets[x]
        if 0 <= t < width and quantized[x] > best_level[t]:
            best_level[t] = quantized[x]
            virtual[t] = texture[x]
            winner[t] = x
    return virtual, best_level >= 0, winner


def order_preserved(group: OcclusionGroup, changes, cam: Camera) -> bool:
    """True iff `changes` keeps every target and the group winner unchanged.

    Compared against the group's initial error vector.  Positions are
    compared as exact grid units; the winner by the first-max scan rule.
    """
    changes = list(changes)
    if len(changes) != len(group.pixels):
        raise ValueError("one change per group pixel required")
    units = rounded_units_table(cam)
    scan = sorted(range(len(group.pixels)), key=lambda i: group.pixels[i].x)

    def state(deltas):
        pos = []
        depths = []
        for i in scan:
            p = group.pixels[i]
            q = p.level + deltas[i]
            if not 0 <= q <= DEPTH_LEVEL_MAX:
                raise ValueError("change drives level outside [0, 255]")
            pos.append(units[q])
            depths.append(q)
        return pos, first_max_index(depths)

    initial = state([p.error for p in group.pixels])
    return state(changes) == initial
