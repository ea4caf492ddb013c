"""PGM round-trip and header-robustness tests."""

from __future__ import annotations

import numpy as np
import pytest

from depthopt import read_pgm, write_pgm


def test_round_trip_exact(tmp_path):
    rng = np.random.default_rng(0)
    for shape in [(1, 1), (3, 7), (64, 48)]:
        img = rng.integers(0, 256, size=shape, dtype=np.uint8)
        path = tmp_path / "img.pgm"
        write_pgm(path, img)
        assert np.array_equal(read_pgm(path), img)


def test_round_trip_twice_bit_identical(tmp_path):
    img = np.arange(12, dtype=np.uint8).reshape(3, 4)
    a, b = tmp_path / "a.pgm", tmp_path / "b.pgm"
    write_pgm(a, img)
    write_pgm(b, read_pgm(a))
    assert a.read_bytes() == b.read_bytes()


def test_header_comments_allowed(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n# a comment\n2 # widths\n2\n255\n" + bytes([1, 2, 3, 4]))
    assert read_pgm(path).tolist() == [[1, 2], [3, 4]]


def test_non_p5_rejected(tmp_path):
    path = tmp_path / "p2.pgm"
    path.write_bytes(b"P2\n2 2\n255\n1 2 3 4\n")
    with pytest.raises(ValueError, match="P2"):
        read_pgm(path)


def test_wide_maxval_rejected(tmp_path):
    path = tmp_path / "m.pgm"
    path.write_bytes(b"P5\n2 2\n65535\n" + bytes(8))
    with pytest.raises(ValueError, match="maxval"):
        read_pgm(path)


def test_truncated_data_rejected(tmp_path):
    path = tmp_path / "t.pgm"
    path.write_bytes(b"P5\n2 2\n255\n" + bytes(3))
    with pytest.raises(ValueError, match="expected 4 bytes"):
        read_pgm(path)


def test_write_rejects_bad_shapes_and_values(tmp_path):
    with pytest.raises(ValueError):
        write_pgm(tmp_path / "x.pgm", np.zeros(4, dtype=np.uint8))
    with pytest.raises(ValueError):
        write_pgm(tmp_path / "x.pgm", np.full((2, 2), 300))
    with pytest.raises(ValueError):
        write_pgm(tmp_path / "x.pgm", np.full((2, 2), 0.5))


def test_write_accepts_int_arrays_in_range(tmp_path):
    path = tmp_path / "i.pgm"
    write_pgm(path, np.array([[0, 255]], dtype=np.int64))
    assert read_pgm(path).dtype == np.uint8
