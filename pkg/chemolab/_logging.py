"""Logger acquisition through femtologging.

Purpose
-------
Give every module a logger through one entry point. Loggers are
femtologging ``FemtoLogger`` instances, so records are formatted and
written on femtologging's worker threads and pick up any fields attached
with :func:`log_context`.

Examples
--------
>>> log = get_logger("chemolab.demo")
>>> with log_context(run="r1"):
...     _ = log.info("run started")

"""

from __future__ import annotations

import typing as typ

from femtologging import BasicConfig, basicConfig, log_context
from femtologging import get_logger as _femto_logger

if typ.TYPE_CHECKING:
    from femtologging import FemtoLogger

LEVELS: typ.Final[tuple[str, ...]] = ("DEBUG", "INFO", "WARNING", "ERROR")


def get_logger(name: str) -> FemtoLogger:
    """Return the logger registered under ``name``.

    Parameters
    ----------
    name
        Dotted logger name, conventionally the module ``__name__``.

    """
    return _femto_logger(name)


def configure(level: str) -> None:
    """Replace the root handlers with one stderr handler at ``level``.

    Raises
    ------
    ValueError
        If ``level`` is not one of :data:`LEVELS` (case-insensitive).

    """
    name = level.upper()
    if name not in LEVELS:
        msg = f"log level must be one of {list(LEVELS)}, got {level!r}"
        raise ValueError(msg)
    basicConfig(BasicConfig(level=name, force=True))


__all__ = ["LEVELS", "configure", "get_logger", "log_context"]
