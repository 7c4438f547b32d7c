"""MVQN 领域错误定义。

每个错误都带有抛出它的操作名，以及命令行映射的进程退出码（0 成功，1 参数，
2 解析，3 越界/维数，4 schema，5 数值退化）；输出无法写入时同样使用 2。
"""

from __future__ import annotations

from typing import Optional


class MvqnError(RuntimeError):
    """标准化的库错误。"""

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        *,
        operation: str,
        line: Optional[int] = None,
        cause: Optional[BaseException] = None,
    ) -> None:
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.operation = operation
        self.line = line
        self.cause = cause


class UsageError(MvqnError):
    """命令行参数未知或相互矛盾。"""

    exit_code = 1


class InvalidOrderError(MvqnError):
    """逻辑阶数 k 小于 2。"""

    exit_code = 1


class DatasetParseError(MvqnError):
    """数据集或模型文件无法读取或解析。"""

    exit_code = 2


class OutputWriteError(MvqnError):
    """模型文件、报告或图无法写入。"""

    exit_code = 2


class OrderMismatchError(MvqnError):
    exit_code = 3


class InvalidOccupationError(MvqnError):
    exit_code = 3


class ModeMismatchError(MvqnError):
    exit_code = 3


class ArityError(MvqnError):
    exit_code = 3


class ShapeError(MvqnError):
    exit_code = 3


class EmptyDatasetError(MvqnError):
    exit_code = 3


class PreconditionError(MvqnError):
    exit_code = 3


class DatasetRangeError(MvqnError):
    """扇区下标或模长超出允许范围。"""

    exit_code = 3


class SchemaVersionError(MvqnError):
    exit_code = 4


class ZeroArgumentError(MvqnError):
    """请求 0 的辐角。"""

    exit_code = 5


class NumericDegeneracyError(MvqnError):
    """计算产生 NaN/Inf 或未定义的值。"""

    exit_code = 5
