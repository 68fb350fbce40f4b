"""JSON experiment and sweep documents.

An experiment document has the optional sections ``model``, ``grid``,
``solver``, ``profile`` and ``outputs``; missing sections and keys take the
documented defaults. A sweep document adds ``axes``, ``fixed``, ``mode``,
``per_cell`` and ``cap``.

Example:
-------
>>> config = experiment_from_mapping({"model": {"alpha": 2.5}})
>>> config.model.alpha, config.grid.N, str(config.solver.scheme)
(2.5, 32, 'IMEX2')

"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
import os
import typing as typ
from pathlib import Path

from ._config_sections import (
    MODEL_DEFAULTS,
    Outputs,
    _check_keys,
    _is_mapping,
    _is_number,
    _section,
    _Violations,
    check_profile_widths,
    read_grid,
    read_model,
    read_outputs,
    read_profile,
    read_solver,
)
from .errors import ConfigError, ConfigViolation

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from .grid import Grid
    from .integrators import SolverConfig
    from .model import ModelParams
    from .profiles import ProfileSpec

OUTPUT_DIR_ENV: typ.Final[str] = "CHEMOLAB_OUTPUT_DIR"
SWEEP_CELL_CAP: typ.Final[int] = 4096
SWEEP_AXES: typ.Final[tuple[str, ...]] = ("alpha", "beta", "sigma")
MAX_SWEEP_AXES: typ.Final[int] = 2

_EXPERIMENT_SECTIONS: typ.Final[tuple[str, ...]] = (
    "model",
    "grid",
    "solver",
    "profile",
    "outputs",
)
_SWEEP_KEYS: typ.Final[frozenset[str]] = frozenset({
    "axes",
    "fixed",
    "mode",
    "per_cell",
    "cap",
})


@dataclasses.dataclass(frozen=True, slots=True)
class ExperimentConfig:
    """A validated experiment; ``model.domain_length`` equals ``grid.L``."""

    model: ModelParams
    solver: SolverConfig
    profile: ProfileSpec
    grid: Grid
    outputs: Outputs = dataclasses.field(default_factory=Outputs)


class SweepMode(enum.StrEnum):
    """What a sweep computes per cell."""

    CLASSIFY_ONLY = "ClassifyOnly"
    SIMULATE = "Simulate"


@dataclasses.dataclass(frozen=True, slots=True)
class SweepAxis:
    """``steps`` evenly spaced values from ``start`` to ``stop`` inclusive."""

    name: str
    start: float
    stop: float
    steps: int

    def values(self) -> tuple[float, ...]:
        """Return the axis samples.

        Examples
        --------
        >>> SweepAxis("alpha", 2.0, 3.0, 3).values()
        (2.0, 2.5, 3.0)

        """
        if self.steps == 1:
            return (self.start,)
        width = (self.stop - self.start) / (self.steps - 1)
        return tuple(self.start + i * width for i in range(self.steps))


@dataclasses.dataclass(frozen=True, slots=True)
class SweepSpec:
    """Phase-diagram sweep over at most two exponents.

    ``fixed`` holds the exponents and dimension not swept; ``per_cell`` is
    the experiment template whose model section the cell values override.
    Cells are numbered row-major, first axis slowest.
    """

    axes: tuple[SweepAxis, ...]
    fixed: cabc.Mapping[str, object]
    per_cell: ExperimentConfig
    mode: SweepMode = SweepMode.CLASSIFY_ONLY
    cap: int = SWEEP_CELL_CAP

    @property
    def cell_count(self) -> int:
        """Number of cells in the sweep."""
        return math.prod(axis.steps for axis in self.axes)


def output_root(override: Path | None = None) -> Path:
    """Return the directory relative output paths are anchored at.

    ``override`` (the ``--out`` flag) wins over ``$CHEMOLAB_OUTPUT_DIR``,
    which wins over the working directory.
    """
    if override is not None:
        return override
    env = os.environ.get(OUTPUT_DIR_ENV)
    return Path(env) if env else Path.cwd()


def _is_count(value: object) -> typ.TypeGuard[int]:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


def _raise_if(sink: _Violations) -> None:
    if sink:
        raise ConfigError(sink.items)


def _load_json(path: Path) -> cabc.Mapping[str, object]:
    """Read ``path`` as a JSON object; ``OSError`` propagates unchanged."""
    raw = path.read_bytes()
    try:
        document = json.loads(raw)
    except UnicodeDecodeError as exc:
        violation = ConfigViolation("$", f"not UTF-8 text: {exc.reason}")
        raise ConfigError([violation]) from exc
    except json.JSONDecodeError as exc:
        violation = ConfigViolation(
            "$", f"not valid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        )
        raise ConfigError([violation]) from exc
    if not _is_mapping(document):
        raise ConfigError([ConfigViolation("$", "top level must be a JSON object")])
    return document


def _read_experiment(
    document: cabc.Mapping[str, object],
    sink: _Violations,
    prefix: str = "",
    seed: int | None = None,
) -> ExperimentConfig | None:
    before = len(sink.items)
    _check_keys(document, _EXPERIMENT_SECTIONS, prefix.rstrip(".") or "$", sink)
    sections = {
        name: _section(document, name, sink, prefix) for name in _EXPERIMENT_SECTIONS
    }
    grid = solver = profile = model = None
    if (raw := sections["grid"]) is not None:
        grid = read_grid(raw, sink, f"{prefix}grid")
    if (raw := sections["solver"]) is not None:
        solver = read_solver(raw, sink, f"{prefix}solver")
    if (raw := sections["profile"]) is not None:
        profile = read_profile(raw, sink, f"{prefix}profile", seed)
    if (raw := sections["model"]) is not None:
        side = grid.L if grid is not None else 16.0
        model = read_model(raw, side, sink, f"{prefix}model")
    if grid is not None and profile is not None:
        check_profile_widths(profile, grid.L, sink, f"{prefix}profile")
    outputs = read_outputs(sections["outputs"] or {}, sink, f"{prefix}outputs")
    if len(sink.items) > before:
        return None
    return ExperimentConfig(
        model=typ.cast("ModelParams", model),
        solver=typ.cast("SolverConfig", solver),
        profile=typ.cast("ProfileSpec", profile),
        grid=typ.cast("Grid", grid),
        outputs=outputs,
    )


def experiment_from_mapping(
    document: cabc.Mapping[str, object], seed: int | None = None
) -> ExperimentConfig:
    """Validate an already-decoded experiment document.

    Raises
    ------
    ConfigError
        Listing every violation with its dotted field path.

    """
    sink = _Violations()
    config = _read_experiment(document, sink, seed=seed)
    _raise_if(sink)
    return typ.cast("ExperimentConfig", config)


def parse_config(path: Path, seed: int | None = None) -> ExperimentConfig:
    """Read and validate the experiment document at ``path``.

    ``seed`` replaces the profile noise seed recorded in the document.

    Raises
    ------
    OSError
        If ``path`` cannot be read.
    ConfigError
        If the document is not JSON or violates the schema.

    """
    return experiment_from_mapping(_load_json(path), seed)


def _read_axis(name: object, raw: object, sink: _Violations) -> SweepAxis | None:
    path = f"axes.{name}"
    if name not in SWEEP_AXES:
        sink.add(path, f"sweep axes must be among {list(SWEEP_AXES)}")
        return None
    if not _is_mapping(raw):
        sink.add(path, "must be an object with min, max and steps")
        return None
    _check_keys(raw, {"min", "max", "steps"}, path, sink)
    start, stop, steps = raw.get("min"), raw.get("max"), raw.get("steps")
    before = len(sink.items)
    for key, value in (("min", start), ("max", stop)):
        if not _is_number(value) or not math.isfinite(value):
            sink.add(f"{path}.{key}", f"{key} must be a finite number, got {value!r}")
    if not _is_count(steps):
        sink.add(f"{path}.steps", f"steps must be a positive integer, got {steps!r}")
    if len(sink.items) > before:
        return None
    return SweepAxis(
        str(name),
        float(typ.cast("float", start)),
        float(typ.cast("float", stop)),
        typ.cast("int", steps),
    )


def _read_axes(raw: object, sink: _Violations) -> tuple[SweepAxis, ...]:
    if not _is_mapping(raw) or not 1 <= len(raw) <= MAX_SWEEP_AXES:
        sink.add("axes", f"axes must map 1 to {MAX_SWEEP_AXES} exponents to ranges")
        return ()
    axes = [_read_axis(name, spec, sink) for name, spec in raw.items()]
    return tuple(axis for axis in axes if axis is not None)


def _read_fixed(
    raw: cabc.Mapping[str, object], axes: tuple[SweepAxis, ...], sink: _Violations
) -> dict[str, object]:
    swept = {axis.name for axis in axes}
    _check_keys(raw, MODEL_DEFAULTS.keys() - swept, "fixed", sink)
    return {k: v for k, v in raw.items() if k not in swept}


def sweep_from_mapping(
    document: cabc.Mapping[str, object], seed: int | None = None
) -> SweepSpec:
    """Validate an already-decoded sweep document.

    Raises
    ------
    ConfigError
        Listing every violation, including a cell count above ``cap``.

    """
    sink = _Violations()
    _check_keys(document, _SWEEP_KEYS, "$", sink)
    axes = _read_axes(document.get("axes"), sink)
    fixed = _section(document, "fixed", sink) or {}
    fixed = _read_fixed(fixed, axes, sink)
    template = _section(document, "per_cell", sink) or {}
    per_cell = _read_experiment(template, sink, "per_cell.", seed)
    mode_raw = document.get("mode", str(SweepMode.CLASSIFY_ONLY))
    try:
        mode = SweepMode(mode_raw)
    except ValueError:
        sink.add("mode", f"mode must be ClassifyOnly or Simulate, got {mode_raw!r}")
        mode = SweepMode.CLASSIFY_ONLY
    cap = document.get("cap", SWEEP_CELL_CAP)
    if not _is_count(cap):
        sink.add("cap", f"cap must be a positive integer, got {cap!r}")
        cap = SWEEP_CELL_CAP
    cells = math.prod(axis.steps for axis in axes)
    if cells > cap:
        sink.add("axes", f"sweep has {cells} cells, above the cap of {cap}")
    _raise_if(sink)
    return SweepSpec(
        axes=axes,
        fixed=fixed,
        per_cell=typ.cast("ExperimentConfig", per_cell),
        mode=mode,
        cap=cap,
    )


def parse_sweep_spec(path: Path, seed: int | None = None) -> SweepSpec:
    """Read and validate the sweep document at ``path``.

    Raises
    ------
    OSError
        If ``path`` cannot be read.
    ConfigError
        If the document is not JSON or violates the schema.

    """
    return sweep_from_mapping(_load_json(path), seed)


__all__ = [
    "MAX_SWEEP_AXES",
    "OUTPUT_DIR_ENV",
    "SWEEP_AXES",
    "SWEEP_CELL_CAP",
    "ExperimentConfig",
    "Outputs",
    "SweepAxis",
    "SweepMode",
    "SweepSpec",
    "experiment_from_mapping",
    "output_root",
    "parse_config",
    "parse_sweep_spec",
    "sweep_from_mapping",
]
