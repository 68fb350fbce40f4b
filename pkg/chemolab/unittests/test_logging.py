"""Unit tests for logger acquisition and configuration."""

from __future__ import annotations

import time
import typing as typ

import pytest
from femtologging import FemtoLogger

from chemolab import _logging

if typ.TYPE_CHECKING:
    import collections.abc as cabc


class RecordCollector:
    """Handler that keeps structured records."""

    def __init__(self) -> None:
        self.records: list[dict[str, object]] = []

    def handle(self, logger: str, level: str, message: str) -> None:
        _ = (self.records, logger, level, message)

    def handle_record(self, record: dict[str, object]) -> None:
        self.records.append(record)

    def flush(self) -> bool:
        _ = self.records
        return True


@pytest.fixture
def _restore_root_level() -> cabc.Iterator[None]:
    yield
    _logging.configure("WARNING")


def test_get_logger_returns_shared_femto_loggers() -> None:
    """Loggers are femtologging loggers, one instance per name."""
    log = _logging.get_logger("chemolab.unittests")
    assert isinstance(log, FemtoLogger)
    assert _logging.get_logger("chemolab.unittests") is log


@pytest.mark.usefixtures("_restore_root_level")
@pytest.mark.parametrize("level", ["debug", "DEBUG"])
def test_configure_sets_root_level(level: str) -> None:
    """``configure`` accepts level names in any case."""
    _logging.configure(level)
    assert _logging.get_logger("root").isEnabledFor("DEBUG")


@pytest.mark.usefixtures("_restore_root_level")
def test_configure_warning_filters_info() -> None:
    """The CLI default keeps INFO records off stderr."""
    _logging.configure("WARNING")
    root = _logging.get_logger("root")
    assert root.isEnabledFor("WARN")
    assert not root.isEnabledFor("INFO")


def test_configure_rejects_unknown_level() -> None:
    """Only the four levels offered on the command line are accepted."""
    with pytest.raises(ValueError, match="log level must be one of"):
        _logging.configure("chatty")


def test_log_context_fields_reach_records() -> None:
    """Fields attached with ``log_context`` travel with each record."""
    log = _logging.get_logger("chemolab.unittests.context")
    log.set_level("INFO")
    collector = RecordCollector()
    log.add_handler(collector)
    try:
        with _logging.log_context(cell=3, scheme="IMEX2"):
            assert log.info("cell started") is not None
        for _ in range(20):
            if collector.records:
                break
            log.flush_handlers()
            time.sleep(0.01)
    finally:
        log.remove_handler(collector)
    assert collector.records, "expected at least one captured record"
    metadata = typ.cast("dict[str, object]", collector.records[-1]["metadata"])
    assert metadata["key_values"] == {"cell": 3, "scheme": "IMEX2"}
