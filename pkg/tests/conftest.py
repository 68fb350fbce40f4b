"""Shared pytest fixtures for chemolab tests."""

from __future__ import annotations

import collections.abc as cabc
import json
import typing as typ
import warnings

import pytest

from chemolab import checks
from chemolab.grid import Grid
from chemolab.model import ModelParams

if typ.TYPE_CHECKING:
    from pathlib import Path

warnings.filterwarnings(
    "ignore",
    message="'maxsplit' is passed as positional argument",
    category=DeprecationWarning,
    module=r"gherkin\.gherkin_line",
)

ConfigWriter: typ.TypeAlias = "cabc.Callable[..., Path]"


@pytest.fixture(autouse=True)
def _clear_injected_faults() -> cabc.Iterator[None]:
    """Make sure no fault hook leaks from one test into the next."""
    yield
    checks._clear_db_perturbation_for_test()


@pytest.fixture(autouse=True)
def _isolated_output_dir(monkeypatch: pytest.MonkeyPatch) -> None:
    """Ignore any output directory set in the developer's environment."""
    monkeypatch.delenv("CHEMOLAB_OUTPUT_DIR", raising=False)


@pytest.fixture
def small_grid() -> Grid:
    """Return the smallest supported grid, ``16**3`` on a side of 16."""
    return Grid(N=16, L=16.0)


@pytest.fixture
def medium_grid() -> Grid:
    """Return a ``32**3`` grid on a side of 16."""
    return Grid(N=32, L=16.0)


@pytest.fixture
def case1_params() -> ModelParams:
    """Return the balanced subcritical tuple ``(3, 1, 2, 3)``."""
    return ModelParams(n=3, sigma=1, alpha=2, beta=3)


@pytest.fixture
def write_config(tmp_path: Path) -> ConfigWriter:
    """Return a callable that writes a JSON document under ``tmp_path``."""

    def writer(document: cabc.Mapping[str, object], name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return writer
