"""Binary 8-bit PGM (P5) reader/writer with exact round trips."""

from __future__ import annotations

from pathlib import Path

import numpy as np


def _tokens(data: bytes):
    """Yield header tokens, skipping whitespace and '#' comments."""
    i = 0
    while True:
        while i < len(data) and data[i : i + 1].isspace():
            i += 1
        if i < len(data) and data[i : i + 1] == b"#":
            while i < len(data) and data[i] != 0x0A:
                i += 1
            continue
        start = i
        while i < len(data) and not data[i : i + 1].isspace():
            i += 1
        if start == i:
            raise ValueError("truncated PGM header")
        yield data[start:i], i


def read_pgm(path: str | Path) -> np.ndarray:
    """Read a binary P5 image as a 2-D uint8 array."""
    data = Path(path).read_bytes()
    tokens = _tokens(data)
    magic, _ = next(tokens)
    if magic != b"P5":
        raise ValueError(f"{path}: not a binary PGM (magic {magic!r})")
    (width, _), (height, _), (maxval, end) = (next(tokens) for _ in range(3))
    width, height, maxval = int(width), int(height), int(maxval)
    if width <= 0 or height <= 0:
        raise ValueError(f"{path}: bad dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise ValueError(f"{path}: unsupported maxval {maxval} (need 8-bit)")
    start = end + 1  # exactly one whitespace byte after maxval
    pixels = data[start : start + width * height]
    if len(pixels) != width * height:
        raise ValueError(f"{path}: expected {width * height} bytes, got {len(pixels)}")
    return np.frombuffer(pixels, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(path: str | Path, image) -> None:
    """Write a 2-D array of 8-bit samples as binary P5."""
    arr = np.asarray(image)
    if arr.ndim != 2:
        raise ValueError(f"image must be 2-D, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("image samples must be integers")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("image samples outside [0, 255]")
        arr = arr.astype(np.uint8)
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n255\n".encode("ascii")
    Path(path).write_bytes(header + arr.tobytes())
