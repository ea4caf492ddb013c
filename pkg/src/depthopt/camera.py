"""Camera pair geometry: 8-bit depth levels to disparities and their
rounding onto the renderer's sub-pixel grid.

A depth level ``v`` in [0, 255] maps to a horizontal shift (disparity, in
pel units)

    disparity(v) = f * l * (C1 * v + C2)

with ``C1 = (1/255) * (1/z_near - 1/z_far)`` and ``C2 = 1/z_far``.  The
renderer snaps disparities to a grid of ``1/n`` pel using a ceiling rule
with decision offset ``o``:

    rounded(d) = ceil((d - o) * n) / n

All geometry is exact rational arithmetic (`fractions.Fraction`), so grid
and interval boundaries never drift; floats appear only at presentation
boundaries.  Rounded disparities are stored as integer counts of ``1/n``
units for the same reason.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Union

RationalLike = Union[int, float, str, Fraction]

DEPTH_LEVEL_MAX = 255


class DepthLevel(int):
    """8-bit inverse-depth level; construction rejects values outside [0, 255]."""

    __slots__ = ()

    def __new__(cls, value) -> "DepthLevel":
        v = operator.index(value)
        if not 0 <= v <= DEPTH_LEVEL_MAX:
            raise ValueError(f"depth level {v} outside [0, {DEPTH_LEVEL_MAX}]")
        return super().__new__(cls, v)


@dataclass(frozen=True)
class QuantizedDisparity:
    """A disparity snapped to the 1/n pel grid.

    Stored as an exact integer count of grid units so equality and
    differences are never subject to floating-point drift.
    """

    units: int
    n: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.units, self.n)

    def __float__(self) -> float:
        return self.units / self.n

    def __sub__(self, other: "QuantizedDisparity") -> "QuantizedDisparity":
        if self.n != other.n:
            raise ValueError("cannot mix disparities from different grids")
        return QuantizedDisparity(self.units - other.units, self.n)

    def is_zero(self) -> bool:
        return self.units == 0


@dataclass(frozen=True)
class Camera:
    """Rectified two-view camera and disparity-rounding parameters.

    Parameters
    ----------
    focal_length : rational
        Focal length in pixels, > 0.
    baseline : rational
        Distance between reference and virtual view, world units, > 0.
    z_near, z_far : rational
        Nearest / farthest scene depth, world units, 0 < z_near < z_far.
    precision : int
        Sub-pel denominator n >= 1; the disparity grid step is 1/n pel.
    offset : rational, optional
        Rounding decision offset o with 0 < o <= 1/n.  Defaults to
        1/(2n), i.e. symmetric rounding.
    """

    focal_length: Fraction
    baseline: Fraction
    z_near: Fraction
    z_far: Fraction
    precision: int = 1
    offset: Fraction | None = None

    def __post_init__(self) -> None:
        for name in ("focal_length", "baseline", "z_near", "z_far"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        object.__setattr__(self, "precision", operator.index(self.precision))
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        off = self.offset
        if off is None:
            off = Fraction(1, 2 * self.precision)
        object.__setattr__(self, "offset", Fraction(off))
        if self.focal_length <= 0 or self.baseline <= 0:
            raise ValueError("focal_length and baseline must be positive")
        if not 0 < self.z_near < self.z_far:
            raise ValueError(
                f"need 0 < z_near < z_far, got z_near={self.z_near}, z_far={self.z_far}"
            )
        if not 0 < self.offset <= Fraction(1, self.precision):
            raise ValueError(
                f"offset must satisfy 0 < o <= 1/{self.precision}, got {self.offset}"
            )

    @property
    def c1(self) -> Fraction:
        return Fraction(1, DEPTH_LEVEL_MAX) * (1 / self.z_near - 1 / self.z_far)

    @property
    def c2(self) -> Fraction:
        return 1 / self.z_far

    @property
    def step_gain(self) -> Fraction:
        """Disparity increase per depth level, f*l*C1 (pel)."""
        return self.focal_length * self.baseline * self.c1

    def with_baseline_scale(self, scale: RationalLike) -> "Camera":
        """Camera with the baseline multiplied by `scale` (exact)."""
        scale = Fraction(scale)
        if scale == 1:
            return self
        return Camera(
            self.focal_length,
            self.baseline * scale,
            self.z_near,
            self.z_far,
            self.precision,
            self.offset,
        )


def derived_constants(cam: Camera) -> tuple[Fraction, Fraction]:
    """The (C1, C2) pair of the disparity map for `cam`."""
    return cam.c1, cam.c2


def disparity(v: int, cam: Camera) -> Fraction:
    """Disparity of depth level `v` in pel units (exact, strictly increasing)."""
    v = DepthLevel(v)
    return cam.focal_length * cam.baseline * (cam.c1 * v + cam.c2)


def round_disparity(d: RationalLike, cam: Camera) -> QuantizedDisparity:
    """Snap disparity `d` onto the 1/n grid: ceil((d - o) * n) / n."""
    d = Fraction(d)
    units = math.ceil((d - cam.offset) * cam.precision)
    return QuantizedDisparity(units, cam.precision)


def disparity_error(v: int, dv: int, cam: Camera) -> QuantizedDisparity:
    """Rounded-disparity change caused by replacing level `v` with `v + dv`.

    Both levels must stay within [0, 255].
    """
    v = DepthLevel(v)
    DepthLevel(v + dv)
    units = rounded_units_table(cam)
    return QuantizedDisparity(units[v + dv] - units[v], cam.precision)


@lru_cache(maxsize=None)
def rounded_units_table(cam: Camera) -> tuple[int, ...]:
    """Grid units of the rounded disparity for every level 0..255 (cached)."""
    return tuple(
        round_disparity(disparity(v, cam), cam).units for v in range(DEPTH_LEVEL_MAX + 1)
    )


# Plausible synthetic defaults (f=100 px, 5 cm baseline, scene depth 0.5..10,
# half-pel grid, symmetric rounding).  Not taken from any standard sequence.
DEFAULT_CAMERA = Camera(
    focal_length=100,
    baseline=Fraction(1, 20),
    z_near=Fraction(1, 2),
    z_far=10,
    precision=2,
)

_CONFIG_KEYS = {
    "focal_length",
    "baseline",
    "z_near",
    "z_far",
    "precision_n",
    "rounding_offset",
}


def load_camera(path: str | Path) -> Camera:
    """Read a key/value camera file.

    Keys: focal_length, baseline, z_near, z_far, precision_n and optional
    rounding_offset (default 1/(2*precision_n)).  Values may be integers,
    decimals or exact fractions like ``1/26``.  Lines starting with ``#``
    and blank lines are ignored.
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value.strip()
    missing = _CONFIG_KEYS - {"rounding_offset"} - values.keys()
    if missing:
        raise ValueError(f"{path}: missing keys: {', '.join(sorted(missing))}")
    try:
        precision = int(values["precision_n"])
    except ValueError as exc:
        raise ValueError(f"{path}: precision_n must be an integer") from exc
    offset = Fraction(values["rounding_offset"]) if "rounding_offset" in values else None
    return Camera(
        focal_length=Fraction(values["focal_length"]),
        baseline=Fraction(values["baseline"]),
        z_near=Fraction(values["z_near"]),
        z_far=Fraction(values["z_far"]),
        precision=precision,
        offset=offset,
    )
