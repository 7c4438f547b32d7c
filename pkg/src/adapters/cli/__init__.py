"""命令行适配层。"""

from .app import main

__all__ = ["main"]
