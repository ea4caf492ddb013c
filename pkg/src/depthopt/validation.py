"""Input validation helpers shared by the pipeline, CLI and estimator."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .camera import DEPTH_LEVEL_MAX, Camera, load_camera


def check_depth_image(x, name: str = "depth") -> np.ndarray:
    """Coerce to a 2-D uint8 depth image, rejecting out-of-range values."""
    arr = np.asarray(x)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D image, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"{name} must hold integer levels, got dtype {arr.dtype}")
    if arr.min() < 0 or arr.max() > DEPTH_LEVEL_MAX:
        raise ValueError(f"{name} levels outside [0, {DEPTH_LEVEL_MAX}]")
    return arr.astype(np.uint8)


def check_error_image(errors, depth: np.ndarray, name: str = "errors") -> np.ndarray:
    """Coerce coding errors to int64, or zeros when None; bound-checked
    against the depth they apply to."""
    if errors is None:
        return np.zeros(depth.shape, dtype=np.int64)
    arr = np.asarray(errors)
    if arr.shape != depth.shape:
        raise ValueError(
            f"{name} shape {arr.shape} does not match depth shape {depth.shape}"
        )
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"{name} must hold integers, got dtype {arr.dtype}")
    arr = arr.astype(np.int64)
    recon = depth.astype(np.int64) + arr
    if recon.min() < 0 or recon.max() > DEPTH_LEVEL_MAX:
        raise ValueError(f"depth + {name} leaves [0, {DEPTH_LEVEL_MAX}]")
    return arr


def check_texture_image(texture, depth: np.ndarray) -> np.ndarray | None:
    """Texture is optional; when given it must match the depth shape."""
    if texture is None:
        return None
    arr = np.asarray(texture)
    if arr.shape != depth.shape:
        raise ValueError(
            f"texture shape {arr.shape} does not match depth shape {depth.shape}"
        )
    return arr.astype(np.uint8)


def as_camera(camera) -> Camera:
    """Accept a Camera instance or a camera-file path."""
    if camera is None:
        raise ValueError("a camera is required")
    if isinstance(camera, Camera):
        return camera
    if isinstance(camera, (str, Path)):
        return load_camera(camera)
    raise ValueError(f"cannot interpret {type(camera).__name__} as a camera")


def check_direction(direction) -> int:
    d = int(direction)
    if d not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    return d
