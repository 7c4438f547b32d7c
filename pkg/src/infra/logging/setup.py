from __future__ import annotations

import logging
import sys
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Union


@dataclass(frozen=True)
class LoggingConfig:
    log_dir: Optional[Union[str, Path]] = None
    log_level: int = logging.INFO
    log_file_name: str = "mvqn_%Y-%m-%d_%H-%M.log"
    file_format: str = (
        "%(asctime)s | %(levelname)s | %(name)s | %(filename)s:%(lineno)d | %(message)s"
    )
    datefmt: str = "%Y-%m-%d %H:%M:%S"
    console: bool = True
    console_format: str = (
        "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}"
    )


_initialized = False
_installed_handlers: List[logging.Handler] = []
_loguru_sink_id: Optional[int] = None


class LoguruConsoleHandler(logging.Handler):
    """把标准库日志记录转发给 loguru，保留调用方栈帧。"""

    def __init__(self, loguru_logger) -> None:
        super().__init__()
        self._logger = loguru_logger

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level_name = self._logger.level(record.levelname).name
        except Exception:
            level_name = record.levelno

        frame = logging.currentframe()
        depth = 2
        while frame:
            filename = frame.f_code.co_filename
            if filename in (logging.__file__, __file__):
                frame = frame.f_back
                depth += 1
                continue
            break

        self._logger.opt(depth=depth, exception=record.exc_info).log(
            level_name, record.getMessage()
        )


def resolve_level(level: Union[int, str]) -> int:
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).strip().upper())
    if not isinstance(value, int):
        raise ValueError(f"未知日志级别: {level}")
    return value


def setup_logging(config: LoggingConfig) -> Optional[Path]:
    """在根 logger 上安装一次文件与控制台 handler。

    控制台输出始终写到 stderr，stdout 只留给命令输出。添加了文件 handler 时
    返回日志文件路径。
    """
    global _initialized
    global _loguru_sink_id

    if _initialized:
        return None

    root_logger = logging.getLogger()
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
    root_logger.setLevel(config.log_level)

    file_path: Optional[Path] = None
    handlers: List[logging.Handler] = []

    if config.log_dir is not None:
        log_dir = Path(config.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        file_path = Path(datetime.now().strftime(config.log_file_name))
        if not file_path.is_absolute():
            file_path = log_dir / file_path
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(file_path, encoding="utf-8")
        file_handler.setLevel(config.log_level)
        file_handler.setFormatter(logging.Formatter(config.file_format, datefmt=config.datefmt))
        handlers.append(file_handler)

    if config.console:
        loguru_logger = _try_import_loguru_logger()
        if loguru_logger is not None:
            loguru_logger.remove()
            _loguru_sink_id = loguru_logger.add(
                sys.stderr,
                level=logging.getLevelName(config.log_level),
                format=config.console_format,
                colorize=None,
            )
            console: logging.Handler = LoguruConsoleHandler(loguru_logger)
        else:
            console = logging.StreamHandler(sys.stderr)
            console.setFormatter(logging.Formatter(config.file_format, datefmt=config.datefmt))
        console.setLevel(config.log_level)
        handlers.append(console)

    for handler in handlers:
        root_logger.addHandler(handler)
    _installed_handlers.extend(handlers)
    _initialized = True
    return file_path


def shutdown_logging() -> None:
    """移除并关闭 setup_logging 安装的全部 handler。"""
    global _initialized
    global _loguru_sink_id

    root_logger = logging.getLogger()
    for handler in _installed_handlers:
        root_logger.removeHandler(handler)
        handler.close()
    _installed_handlers.clear()

    if _loguru_sink_id is not None:
        loguru_logger = _try_import_loguru_logger()
        if loguru_logger is not None:
            try:
                loguru_logger.remove(_loguru_sink_id)
            except ValueError:
                pass
        _loguru_sink_id = None
    _initialized = False


def _try_import_loguru_logger():
    try:
        from loguru import logger as loguru_logger
    except Exception:
        return None
    return loguru_logger
