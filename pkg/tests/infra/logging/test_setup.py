import logging
from pathlib import Path

import pytest

from src.infra.logging.setup import LoggingConfig, resolve_level, setup_logging, shutdown_logging


@pytest.fixture(autouse=True)
def _reset_logging():
    shutdown_logging()
    yield
    shutdown_logging()


def test_resolve_level_accepts_names_and_numbers():
    assert resolve_level("debug") == logging.DEBUG
    assert resolve_level(" Warning ") == logging.WARNING
    assert resolve_level(logging.ERROR) == logging.ERROR
    with pytest.raises(ValueError):
        resolve_level("LOUD")


def test_setup_logging_writes_log_file(tmp_path: Path) -> None:
    config = LoggingConfig(log_dir=tmp_path / "logs", log_file_name="run.log", console=False)
    path = setup_logging(config)
    assert path == tmp_path / "logs" / "run.log"

    logging.getLogger("src.core.domain.mvqn").info("训练结束")
    shutdown_logging()

    line = path.read_text(encoding="utf-8").strip()
    assert "| INFO | src.core.domain.mvqn | test_setup.py:" in line
    assert line.endswith("| 训练结束")


def test_setup_logging_is_idempotent(tmp_path: Path) -> None:
    config = LoggingConfig(log_dir=tmp_path, log_file_name="a.log", console=False)
    assert setup_logging(config) is not None
    assert setup_logging(config) is None
    assert len(logging.getLogger().handlers) == 1


def test_level_filters_file_records(tmp_path: Path) -> None:
    config = LoggingConfig(
        log_dir=tmp_path,
        log_file_name="level.log",
        log_level=logging.WARNING,
        console=False,
    )
    path = setup_logging(config)
    logger = logging.getLogger("mvqn.test")
    logger.info("hidden")
    logger.warning("shown")
    shutdown_logging()
    text = path.read_text(encoding="utf-8")
    assert "hidden" not in text
    assert "shown" in text


def test_console_handler_without_file(capsys) -> None:
    assert setup_logging(LoggingConfig()) is None
    logging.getLogger("mvqn.console").warning("控制台消息")
    shutdown_logging()
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "控制台消息" in captured.err
