"""Synthetic desk-scale scenes: a background plane, rectangular foreground
objects, and simulated coding noise on the depth map."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .camera import DEPTH_LEVEL_MAX


@dataclass
class Scene:
    """A texture/depth pair plus the per-pixel quantized depth errors.

    `texture` may be None when only depth statistics are needed (distortion
    weights then default to 1).  `baseline_scale` multiplies the camera
    baseline wherever the scene is warped, widening disparities and with
    them the share of occluded pixels.
    """

    texture: np.ndarray | None
    depth: np.ndarray
    errors: np.ndarray
    baseline_scale: float = 1.0

    def __post_init__(self) -> None:
        self.depth = np.asarray(self.depth, dtype=np.uint8)
        if self.depth.ndim != 2:
            raise ValueError("depth must be a 2-D image")
        self.errors = np.asarray(self.errors, dtype=np.int64)
        if self.errors.shape != self.depth.shape:
            raise ValueError("errors must match the depth shape")
        recon = self.depth.astype(np.int64) + self.errors
        if recon.size and (recon.min() < 0 or recon.max() > DEPTH_LEVEL_MAX):
            raise ValueError("depth + errors leaves [0, 255]")
        if self.texture is not None:
            self.texture = np.asarray(self.texture, dtype=np.uint8)
            if self.texture.shape != self.depth.shape:
                raise ValueError("texture must match the depth shape")
        if self.baseline_scale <= 0:
            raise ValueError("baseline_scale must be positive")

    @property
    def shape(self) -> tuple[int, int]:
        return self.depth.shape

    @property
    def recon(self) -> np.ndarray:
        """Initially-quantized depth (uint8)."""
        return (self.depth.astype(np.int64) + self.errors).astype(np.uint8)


def gen_scene(
    width: int,
    height: int,
    baseline_scale: float = 1.0,
    fg_depth: int = 210,
    bg_depth: int = 60,
    noise_sigma: float = 0.0,
    seed: int = 0,
) -> Scene:
    """Deterministic seeded scene generator.

    Places a few textured rectangles at `fg_depth` over a `bg_depth` plane
    (foreground must be nearer, i.e. the larger level) and draws integer
    Gaussian coding noise with std `noise_sigma`, clipped so reconstructed
    levels stay in range.
    """
    if width < 4 or height < 1:
        raise ValueError("scene must be at least 4x1")
    if not 0 <= bg_depth <= DEPTH_LEVEL_MAX or not 0 <= fg_depth <= DEPTH_LEVEL_MAX:
        raise ValueError("depths must be levels in [0, 255]")
    if fg_depth <= bg_depth:
        raise ValueError(
            f"foreground must be nearer than background: fg_depth={fg_depth} "
            f"<= bg_depth={bg_depth}"
        )
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be non-negative")

    rng = np.random.default_rng(seed)
    depth = np.full((height, width), bg_depth, dtype=np.uint8)
    ramp = np.linspace(48, 208, width)
    texture = np.tile(ramp, (height, 1))

    n_rects = int(rng.integers(2, 5))
    for _ in range(n_rects):
        rw = int(rng.integers(max(2, width // 8), max(3, width // 3)))
        rh = int(rng.integers(max(1, height // 8), max(2, height // 2)))
        x0 = int(rng.integers(0, max(1, width - rw)))
        y0 = int(rng.integers(0, max(1, height - rh)))
        depth[y0 : y0 + rh, x0 : x0 + rw] = fg_depth
        texture[y0 : y0 + rh, x0 : x0 + rw] = float(rng.integers(16, 240))
    texture = np.clip(texture + rng.normal(0.0, 6.0, size=texture.shape), 0, 255)
    texture = texture.astype(np.uint8)

    noise = np.rint(rng.normal(0.0, noise_sigma, size=depth.shape)).astype(np.int64)
    errors = np.clip(
        noise, -depth.astype(np.int64), DEPTH_LEVEL_MAX - depth.astype(np.int64)
    )
    return Scene(
        texture=texture, depth=depth, errors=errors, baseline_scale=baseline_scale
    )


# Desk-scale noise/multiplier grids loosely named after codec QP pairs.
# They are presets for this simulator only and are NOT equivalent to any
# codec protocol or test condition.
SIGMA_PRESETS: dict[str, tuple[float, float]] = {
    "qp25-34": (0.8, 0.5),
    "qp30-39": (1.5, 2.0),
    "qp35-42": (2.5, 8.0),
}
