"""日志基础设施模块。"""

from .setup import LoggingConfig, resolve_level, setup_logging, shutdown_logging

__all__ = [
    "LoggingConfig",
    "resolve_level",
    "setup_logging",
    "shutdown_logging",
]
