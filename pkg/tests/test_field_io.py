"""Tests for field snapshot files."""

from __future__ import annotations

import typing as typ

import numpy as np
import pytest

from chemolab.errors import ParameterError
from chemolab.field_io import (
    HEADER_DTYPE,
    MAGIC,
    FieldFormatError,
    read_field_binary,
    write_field_binary,
    write_field_csv,
)
from chemolab.grid import Field, Grid
from chemolab.profiles import Gaussian, sample_profile

if typ.TYPE_CHECKING:
    from pathlib import Path


def test_binary_snapshot_restores_field_and_time(
    tmp_path: Path, small_grid: Grid
) -> None:
    """A written snapshot reads back bit for bit."""
    field = sample_profile(Gaussian(1.0, 1.5, (1.0, 2.0, -1.0)), small_grid)
    path = tmp_path / "field.bin"
    write_field_binary(field, path, time=0.125)
    restored, time = read_field_binary(path)
    assert time == 0.125
    assert restored.grid == small_grid
    np.testing.assert_array_equal(restored.values, field.values)


def test_binary_layout(tmp_path: Path, small_grid: Grid) -> None:
    """The file is the fixed header followed by ``N**3`` doubles."""
    path = tmp_path / "field.bin"
    write_field_binary(Field.zeros(small_grid), path)
    raw = path.read_bytes()
    assert raw.startswith(MAGIC)
    assert len(raw) == HEADER_DTYPE.itemsize + 8 * small_grid.N**3


def test_bad_magic_is_rejected(tmp_path: Path, small_grid: Grid) -> None:
    """Files from other tools are refused."""
    path = tmp_path / "field.bin"
    write_field_binary(Field.zeros(small_grid), path)
    raw = bytearray(path.read_bytes())
    raw[:8] = b"NOTAFLD!"
    path.write_bytes(bytes(raw))
    with pytest.raises(FieldFormatError, match="bad magic"):
        read_field_binary(path)


def test_truncated_payload_is_rejected(tmp_path: Path, small_grid: Grid) -> None:
    """A short payload is reported with the expected sample count."""
    path = tmp_path / "field.bin"
    write_field_binary(Field.zeros(small_grid), path)
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(FieldFormatError, match="expected 4096 samples"):
        read_field_binary(path)


def test_truncated_header_is_rejected(tmp_path: Path) -> None:
    """Files shorter than the header are refused."""
    path = tmp_path / "field.bin"
    path.write_bytes(MAGIC)
    with pytest.raises(FieldFormatError, match="truncated header"):
        read_field_binary(path)


def test_csv_dump_lists_every_node(tmp_path: Path, small_grid: Grid) -> None:
    """One row per node after the header, coordinates included."""
    path = tmp_path / "field.csv"
    write_field_csv(Field.zeros(small_grid), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "i,j,k,x,y,z,value"
    assert len(lines) == 1 + small_grid.N**3
    assert lines[1] == "0,0,0,-8.0,-8.0,-8.0,0.0"


def test_csv_dump_is_limited_to_small_grids(tmp_path: Path) -> None:
    """Grids above ``N = 32`` are refused for CSV."""
    grid = Grid(N=64, L=16.0)
    with pytest.raises(ParameterError, match="N <= 32"):
        write_field_csv(Field.zeros(grid), tmp_path / "field.csv")
