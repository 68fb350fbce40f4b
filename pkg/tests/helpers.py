"""Shared helpers for the test suite."""

from __future__ import annotations

import csv
import math
import typing as typ

import numpy as np

from chemolab.grid import Field, Grid

if typ.TYPE_CHECKING:
    from pathlib import Path


def relative_l2(actual: Field | np.ndarray, expected: Field | np.ndarray) -> float:
    """Return ``|actual - expected| / |expected|`` in the discrete ``L²`` norm.

    Examples
    --------
    >>> relative_l2(np.ones(4), np.ones(4))
    0.0

    """
    a = actual.values if isinstance(actual, Field) else actual
    b = expected.values if isinstance(expected, Field) else expected
    scale = float(np.linalg.norm(b))
    gap = float(np.linalg.norm(a - b))
    return gap / scale if scale > 0 else gap


def axis_mode(grid: Grid, axis: int, wavenumber: int) -> tuple[np.ndarray, float]:
    """Return the coordinate array along ``axis`` and ``2π m / L``."""
    k = 2.0 * math.pi * wavenumber / grid.L
    return np.broadcast_to(grid.mesh[axis], grid.shape), k


def read_table(path: Path) -> tuple[str, list[str], list[list[str]]]:
    """Split a CSV file with a ``# seed=`` line into seed line, header and rows.

    Raises
    ------
    AssertionError
        If the first line is not a seed comment.

    """
    with path.open(encoding="utf-8", newline="") as handle:
        first = handle.readline().rstrip("\n")
        if not first.startswith("# seed="):
            message = f"{path} does not start with a seed comment: {first!r}"
            raise AssertionError(message)
        reader = csv.reader(handle)
        header = next(reader)
        return first, header, list(reader)


def spectral_l2_norm(u: Field) -> float:
    """Return the ``L²`` norm of ``u`` evaluated from its ``rfftn`` coefficients.

    The half spectrum stores each conjugate pair once, so every plane except
    the zero and Nyquist planes of the last axis counts twice.
    """
    grid = u.grid
    weights = np.full(grid.N // 2 + 1, 2.0)
    weights[0] = 1.0
    weights[-1] = 1.0
    energy = float(np.sum(weights * np.abs(u.spectral) ** 2)) / grid.N**3
    return math.sqrt(energy * grid.cell_volume)
