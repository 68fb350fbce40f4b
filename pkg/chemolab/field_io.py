"""Field snapshots on disk.

Binary layout (little-endian)::

    magic  8 bytes  b"CHLBFLD1"
    N      int64
    L      float64
    time   float64
    values N**3 float64, C order (x slowest, z fastest)

The CSV layout ``i,j,k,x,y,z,value`` is offered for grids with
``N <= 32`` only.
"""

from __future__ import annotations

import csv
import typing as typ

import numpy as np

from .errors import ChemolabError, ParameterError
from .grid import Field, Grid

if typ.TYPE_CHECKING:
    from pathlib import Path

MAGIC: typ.Final[bytes] = b"CHLBFLD1"
CSV_MAX_POINTS: typ.Final[int] = 32

HEADER_DTYPE: typ.Final = np.dtype([
    ("magic", "S8"),
    ("N", "<i8"),
    ("L", "<f8"),
    ("time", "<f8"),
])


class FieldFormatError(ChemolabError, ValueError):
    """A file is not a valid field snapshot."""


def write_field_binary(field: Field, path: Path, time: float = 0.0) -> None:
    """Write ``field`` and its time stamp to ``path``."""
    header = np.array(
        [(MAGIC, field.grid.N, field.grid.L, time)], dtype=HEADER_DTYPE
    )
    with path.open("wb") as handle:
        handle.write(header.tobytes())
        handle.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes())


def read_field_binary(path: Path) -> tuple[Field, float]:
    """Read a snapshot written by :func:`write_field_binary`.

    Returns
    -------
    tuple[Field, float]
        The field and its time stamp.

    Raises
    ------
    FieldFormatError
        If the magic, header or payload size is wrong.

    """
    raw = path.read_bytes()
    if len(raw) < HEADER_DTYPE.itemsize:
        msg = f"{path}: truncated header"
        raise FieldFormatError(msg)
    header = np.frombuffer(raw, dtype=HEADER_DTYPE, count=1)[0]
    if bytes(header["magic"]) != MAGIC:
        msg = f"{path}: bad magic {bytes(header['magic'])!r}"
        raise FieldFormatError(msg)
    points = int(header["N"])
    payload = np.frombuffer(raw, dtype="<f8", offset=HEADER_DTYPE.itemsize)
    if payload.size != points**3:
        msg = f"{path}: expected {points**3} samples, found {payload.size}"
        raise FieldFormatError(msg)
    try:
        grid = Grid(N=points, L=float(header["L"]))
    except ParameterError as exc:
        msg = f"{path}: invalid grid in header: {exc}"
        raise FieldFormatError(msg) from exc
    return Field(grid, payload.reshape(grid.shape)), float(header["time"])


def write_field_csv(field: Field, path: Path) -> None:
    """Write one ``i,j,k,x,y,z,value`` row per node.

    Raises
    ------
    ParameterError
        If ``N`` exceeds :data:`CSV_MAX_POINTS`.

    """
    grid = field.grid
    if grid.N > CSV_MAX_POINTS:
        msg = f"CSV dumps are limited to N <= {CSV_MAX_POINTS}, got N={grid.N}"
        raise ParameterError(msg)
    x = [repr(float(c)) for c in grid.coordinates]
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["i", "j", "k", "x", "y", "z", "value"])
        for (i, j, k), value in np.ndenumerate(field.values):
            writer.writerow([i, j, k, x[i], x[j], x[k], repr(float(value))])


__all__ = [
    "CSV_MAX_POINTS",
    "MAGIC",
    "FieldFormatError",
    "read_field_binary",
    "write_field_binary",
    "write_field_csv",
]
