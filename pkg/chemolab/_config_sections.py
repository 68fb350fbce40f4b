"""Section validators for experiment and sweep documents.

Each ``_read_*`` function takes one raw JSON section and a
:class:`_Violations` sink, records every problem under its dotted path and
returns the built object, or ``None`` when the section is unusable. The
entry points in :mod:`chemolab.config` raise a single
:class:`~chemolab.errors.ConfigError` once all sections have been read.
"""

from __future__ import annotations

import collections.abc as cabc
import dataclasses
import numbers
import typing as typ
from pathlib import Path

from .errors import ConfigViolation, ParameterError
from .grid import Grid
from .integrators import Scheme, SolverConfig, solver_violations
from .model import ModelParams, ModelVariant, parameter_violations
from .profiles import MAX_WIDTH_FRACTION, Constant, Gaussian, MultiBump, Perturbed

if typ.TYPE_CHECKING:
    from .profiles import Point, ProfileSpec

T = typ.TypeVar("T")

MODEL_DEFAULTS: typ.Final[dict[str, object]] = {
    "n": 3,
    "sigma": 1.0,
    "alpha": 2.0,
    "beta": 3.0,
    "variant": "full",
}
GRID_DEFAULTS: typ.Final[dict[str, object]] = {"N": 32, "L": 16.0}
SOLVER_DEFAULTS: typ.Final[dict[str, object]] = {
    "dt_init": 1e-3,
    "dt_min": 1e-9,
    "dt_max": 1e-2,
    "cfl_safety": 0.5,
    "t_end": 1.0,
    "blowup_linf_factor": 1e6,
    "picard_tol": 1e-10,
    "picard_max_iters": 50,
    "scheme": "IMEX2",
}
OUTPUT_DEFAULTS: typ.Final[dict[str, object]] = {
    "trace_path": None,
    "field_dump": False,
    "report_path": None,
}
_GAUSSIAN_KEYS: typ.Final[frozenset[str]] = frozenset({
    "amplitude",
    "width",
    "center",
})


class _Violations:
    """Collects violations in document order."""

    def __init__(self) -> None:
        self.items: list[ConfigViolation] = []

    def add(self, path: str, message: str) -> None:
        self.items.append(ConfigViolation(path, message))

    def extend(self, prefix: str, problems: cabc.Iterable[tuple[str, str]]) -> None:
        for field, message in problems:
            self.add(f"{prefix}.{field}", message)

    def __bool__(self) -> bool:
        return bool(self.items)


def _is_mapping(value: object) -> typ.TypeGuard[cabc.Mapping[str, object]]:
    return isinstance(value, cabc.Mapping) and all(isinstance(k, str) for k in value)


def _section(
    document: cabc.Mapping[str, object], name: str, sink: _Violations, path: str = ""
) -> cabc.Mapping[str, object] | None:
    """Return ``document[name]`` (``{}`` when absent) if it is an object."""
    raw = document.get(name)
    if raw is None:
        return {}
    if not _is_mapping(raw):
        sink.add(f"{path}{name}", f"must be an object, got {type(raw).__name__}")
        return None
    return raw


def _check_keys(
    section: cabc.Mapping[str, object],
    allowed: cabc.Collection[str],
    path: str,
    sink: _Violations,
) -> None:
    for key in section:
        if key not in allowed:
            sink.add(f"{path}.{key}", f"unknown key; expected one of {sorted(allowed)}")


def _merged(
    section: cabc.Mapping[str, object],
    defaults: cabc.Mapping[str, object],
    path: str,
    sink: _Violations,
) -> dict[str, object]:
    _check_keys(section, defaults, path, sink)
    return {**defaults, **{k: v for k, v in section.items() if k in defaults}}


def _build(path: str, sink: _Violations, factory: cabc.Callable[[], T]) -> T | None:
    try:
        return factory()
    except ParameterError as exc:
        sink.add(path, str(exc))
        return None


def _choice(
    value: object, options: type[ModelVariant | Scheme], path: str, sink: _Violations
) -> typ.Any | None:  # noqa: ANN401
    try:
        return options(value)
    except ValueError:
        allowed = [str(member) for member in options]
        sink.add(path, f"must be one of {allowed}, got {value!r}")
        return None


def read_model(
    section: cabc.Mapping[str, object],
    domain_length: float,
    sink: _Violations,
    path: str = "model",
) -> ModelParams | None:
    """Validate the ``model`` section; ``domain_length`` comes from the grid."""
    values = _merged(section, MODEL_DEFAULTS, path, sink)
    values["domain_length"] = domain_length
    before = len(sink.items)
    sink.extend(path, parameter_violations(values))
    variant = _choice(values["variant"], ModelVariant, f"{path}.variant", sink)
    if len(sink.items) > before:
        return None
    return ModelParams(
        n=int(typ.cast("int", values["n"])),
        sigma=float(typ.cast("float", values["sigma"])),
        alpha=float(typ.cast("float", values["alpha"])),
        beta=float(typ.cast("float", values["beta"])),
        domain_length=domain_length,
        variant=variant,
    )


def _is_number(value: object) -> typ.TypeGuard[float]:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _number(
    section: cabc.Mapping[str, object],
    key: str,
    default: float,
    path: str,
    sink: _Violations,
) -> float | None:
    value = section.get(key, default)
    if _is_number(value):
        return float(value)
    sink.add(f"{path}.{key}", f"{key} must be a real number, got {value!r}")
    return None


def read_grid(
    section: cabc.Mapping[str, object], sink: _Violations, path: str = "grid"
) -> Grid | None:
    """Validate the ``grid`` section."""
    values = _merged(section, GRID_DEFAULTS, path, sink)
    side = _number(values, "L", 16.0, path, sink)
    if side is None:
        return None
    return _build(path, sink, lambda: Grid(N=typ.cast("int", values["N"]), L=side))


def read_solver(
    section: cabc.Mapping[str, object], sink: _Violations, path: str = "solver"
) -> SolverConfig | None:
    """Validate the ``solver`` section, reporting every bad setting."""
    values = _merged(section, SOLVER_DEFAULTS, path, sink)
    before = len(sink.items)
    sink.extend(path, solver_violations(values))
    scheme = _choice(values["scheme"], Scheme, f"{path}.scheme", sink)
    if len(sink.items) > before:
        return None
    settings = {k: v for k, v in values.items() if k != "scheme"}
    return SolverConfig(scheme=scheme, **typ.cast("dict[str, typ.Any]", settings))


def _read_center(value: object, path: str, sink: _Violations) -> Point:
    is_triple = isinstance(value, list) and len(value) == 3  # noqa: PLR2004
    if is_triple and all(_is_number(c) for c in value):
        x, y, z = (float(c) for c in value)
        return (x, y, z)
    sink.add(path, f"center must be a list of three numbers, got {value!r}")
    return (0.0, 0.0, 0.0)


def _read_gaussian(raw: object, path: str, sink: _Violations) -> Gaussian | None:
    if not _is_mapping(raw):
        sink.add(path, "must be an object")
        return None
    _check_keys(raw, _GAUSSIAN_KEYS, path, sink)
    center = _read_center(raw.get("center", [0.0, 0.0, 0.0]), f"{path}.center", sink)
    amplitude = _number(raw, "amplitude", 1.0, path, sink)
    width = _number(raw, "width", 1.0, path, sink)
    if amplitude is None or width is None:
        return None
    return _build(path, sink, lambda: Gaussian(amplitude, width, center))


def _read_bumps(
    section: cabc.Mapping[str, object], path: str, sink: _Violations
) -> MultiBump | None:
    _check_keys(section, {"kind", "bumps", "noise"}, path, sink)
    raw = section.get("bumps")
    if not isinstance(raw, list) or not raw:
        sink.add(f"{path}.bumps", "bumps must be a non-empty list")
        return None
    bumps = [
        _read_gaussian(item, f"{path}.bumps[{i}]", sink) for i, item in enumerate(raw)
    ]
    complete = [b for b in bumps if b is not None]
    if len(complete) < len(bumps):
        return None
    return MultiBump(tuple(complete))


def _read_constant(
    section: cabc.Mapping[str, object], path: str, sink: _Violations
) -> Constant | None:
    _check_keys(section, {"kind", "value", "noise"}, path, sink)
    value = _number(section, "value", 1.0, path, sink)
    if value is None:
        return None
    return _build(path, sink, lambda: Constant(value))


def _read_base_profile(
    section: cabc.Mapping[str, object], path: str, sink: _Violations
) -> Gaussian | MultiBump | Constant | None:
    kind = section.get("kind", "gaussian")
    match kind:
        case "gaussian":
            body = {k: v for k, v in section.items() if k not in {"kind", "noise"}}
            return _read_gaussian(body, path, sink)
        case "multi_bump":
            return _read_bumps(section, path, sink)
        case "constant":
            return _read_constant(section, path, sink)
        case _:
            sink.add(
                f"{path}.kind",
                f"kind must be gaussian, multi_bump or constant, got {kind!r}",
            )
            return None


def read_profile(
    section: cabc.Mapping[str, object],
    sink: _Violations,
    path: str = "profile",
    seed: int | None = None,
) -> ProfileSpec | None:
    """Validate the ``profile`` section.

    An optional ``noise`` object ``{amplitude, seed}`` wraps the base
    profile in :class:`Perturbed`; ``seed`` overrides the document's seed.
    """
    base = _read_base_profile(section, path, sink)
    noise = _section(section, "noise", sink, f"{path}.")
    if base is None or not noise:
        return base
    _check_keys(noise, {"amplitude", "seed"}, f"{path}.noise", sink)
    amplitude = _number(noise, "amplitude", 0.0, f"{path}.noise", sink)
    chosen = seed if seed is not None else noise.get("seed", 0)
    if not isinstance(chosen, int) or isinstance(chosen, bool):
        sink.add(f"{path}.noise.seed", f"seed must be an integer, got {chosen!r}")
        return None
    if amplitude is None:
        return None
    return _build(f"{path}.noise", sink, lambda: Perturbed(base, amplitude, chosen))


def check_profile_widths(
    profile: ProfileSpec, side: float, sink: _Violations, path: str = "profile"
) -> None:
    """Report every Gaussian wider than ``MAX_WIDTH_FRACTION * side``.

    Paths follow the document: ``profile.width`` for a single bump and
    ``profile.bumps[i].width`` inside a ``multi_bump``.
    """
    limit = MAX_WIDTH_FRACTION * side
    base = profile.base if isinstance(profile, Perturbed) else profile
    match base:
        case Gaussian():
            located = [(path, base)]
        case MultiBump():
            located = [(f"{path}.bumps[{i}]", b) for i, b in enumerate(base.bumps)]
        case _:
            located = []
    for where, bump in located:
        if bump.width > limit * (1.0 + 1e-12):
            sink.add(
                f"{where}.width",
                f"width {bump.width!r} exceeds L/8 = {limit!r} for L = {side!r}",
            )


@dataclasses.dataclass(frozen=True, slots=True)
class Outputs:
    """Where a run writes its files; ``None`` disables an output."""

    trace_path: Path | None = None
    field_dump: bool = False
    report_path: Path | None = None

    def resolved(self, root: Path) -> Outputs:
        """Anchor relative paths at ``root``."""
        return Outputs(
            trace_path=None if self.trace_path is None else root / self.trace_path,
            field_dump=self.field_dump,
            report_path=None if self.report_path is None else root / self.report_path,
        )


def _optional_path(value: object, path: str, sink: _Violations) -> Path | None:
    if value is None:
        return None
    if isinstance(value, str) and value:
        return Path(value)
    sink.add(path, f"must be a non-empty string or null, got {value!r}")
    return None


def read_outputs(
    section: cabc.Mapping[str, object], sink: _Violations, path: str = "outputs"
) -> Outputs:
    """Validate the ``outputs`` section."""
    values = _merged(section, OUTPUT_DEFAULTS, path, sink)
    dump = values["field_dump"]
    if not isinstance(dump, bool):
        sink.add(f"{path}.field_dump", f"must be true or false, got {dump!r}")
        dump = False
    return Outputs(
        trace_path=_optional_path(values["trace_path"], f"{path}.trace_path", sink),
        field_dump=dump,
        report_path=_optional_path(values["report_path"], f"{path}.report_path", sink),
    )


__all__ = [
    "GRID_DEFAULTS",
    "MODEL_DEFAULTS",
    "OUTPUT_DEFAULTS",
    "SOLVER_DEFAULTS",
    "Outputs",
    "check_profile_widths",
    "read_grid",
    "read_model",
    "read_outputs",
    "read_profile",
    "read_solver",
]
