"""数据集 CSV 读取：sector_csv（扇区下标）与 complex_csv（实部/虚部列对）。"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from src.core.domain.errors import (
    DatasetParseError,
    DatasetRangeError,
    EmptyDatasetError,
    InvalidOrderError,
    PreconditionError,
)
from src.core.domain.mvqn import Dataset, Sample
from src.core.domain.network import NetworkDataset, NetworkSample
from src.core.domain.unity_logic import Sector, make_sector, sector_value

logger = logging.getLogger(__name__)

COMPLEX_MODULUS_TOLERANCE = 1e-6


class DatasetFormat(str, Enum):
    SECTOR_CSV = "sector_csv"
    COMPLEX_CSV = "complex_csv"


@dataclass(frozen=True, eq=False)
class ParsedRow:
    line: int
    inputs: np.ndarray
    targets: Tuple[Sector, ...]


def _read_rows(path: Path, *, header: bool) -> List[Tuple[int, List[str]]]:
    try:
        with path.open("r", encoding="utf-8", newline="") as f:
            rows = list(enumerate(csv.reader(f), start=1))
    except FileNotFoundError as exc:
        raise DatasetParseError(f"数据集文件不存在: {path}", operation="load_dataset", cause=exc) from exc
    except (OSError, UnicodeDecodeError, csv.Error) as exc:
        raise DatasetParseError(f"无法读取数据集文件: {path}", operation="load_dataset", cause=exc) from exc
    if header and rows:
        rows = rows[1:]
    return [(line, [cell.strip() for cell in row]) for line, row in rows if any(cell.strip() for cell in row)]


def _parse_index(cell: str, k: int, line: int) -> Sector:
    try:
        j = int(cell)
    except ValueError as exc:
        raise DatasetParseError(f"无法解析扇区下标 {cell!r}", operation="load_dataset", line=line) from exc
    if not 0 <= j < k:
        raise DatasetRangeError(f"扇区下标 {j} 超出 0..{k - 1}", operation="load_dataset", line=line)
    return make_sector(k, j)


def _parse_float(cell: str, line: int) -> float:
    try:
        value = float(cell)
    except ValueError as exc:
        raise DatasetParseError(f"无法解析数值 {cell!r}", operation="load_dataset", line=line) from exc
    if not np.isfinite(value):
        raise DatasetParseError(f"数值必须有限: {cell!r}", operation="load_dataset", line=line)
    return value


def _parse_row(
    cells: List[str],
    fmt: DatasetFormat,
    k: int,
    outputs: int,
    line: int,
) -> ParsedRow:
    input_cells = cells[: len(cells) - outputs]
    targets = tuple(_parse_index(cell, k, line) for cell in cells[len(cells) - outputs :])
    if fmt is DatasetFormat.SECTOR_CSV:
        inputs = np.array([sector_value(_parse_index(cell, k, line)) for cell in input_cells])
        return ParsedRow(line=line, inputs=inputs, targets=targets)

    if len(input_cells) % 2:
        raise DatasetParseError("complex_csv 的输入列必须成对出现", operation="load_dataset", line=line)
    values = [_parse_float(cell, line) for cell in input_cells]
    raw = np.array(values[0::2], dtype=np.float64) + 1j * np.array(values[1::2], dtype=np.float64)
    moduli = np.abs(raw)
    if np.any(np.abs(moduli - 1.0) > COMPLEX_MODULUS_TOLERANCE):
        raise DatasetRangeError("输入的模长必须为 1（容差 1e-6）", operation="load_dataset", line=line)
    # 投影到单位圆上；Sample 要求 |x| = 1（容差 1e-9）
    return ParsedRow(line=line, inputs=raw / moduli, targets=targets)


def read_rows(
    path: Union[str, Path],
    fmt: Union[DatasetFormat, str],
    k: int,
    *,
    outputs: int = 1,
    header: bool = False,
) -> List[ParsedRow]:
    """解析全部数据行，最后 ``outputs`` 列为目标下标。"""
    fmt = DatasetFormat(fmt)
    if k < 2:
        raise InvalidOrderError(f"逻辑阶数 k 必须 >= 2，实际为 {k}", operation="load_dataset")
    if outputs < 1:
        raise PreconditionError("outputs 必须 >= 1", operation="load_dataset")
    path = Path(path)
    rows = _read_rows(path, header=header)
    if not rows:
        raise EmptyDatasetError(f"数据集为空: {path}", operation="load_dataset")

    parsed: List[ParsedRow] = []
    width = None
    for line, cells in rows:
        if width is None:
            width = len(cells)
        if len(cells) != width:
            raise DatasetParseError(
                f"列数应为 {width}，实际为 {len(cells)}", operation="load_dataset", line=line
            )
        if len(cells) <= outputs or any(cell == "" for cell in cells):
            raise DatasetParseError("数据行格式错误", operation="load_dataset", line=line)
        parsed.append(_parse_row(cells, fmt, k, outputs, line))
    logger.info("已读取数据集 %s: %s 行 (%s, k=%s)", path, len(parsed), fmt.value, k)
    return parsed


def load_dataset(
    path: Union[str, Path],
    fmt: Union[DatasetFormat, str],
    k: int,
    *,
    header: bool = False,
) -> Dataset:
    rows = read_rows(path, fmt, k, header=header)
    samples = [Sample(inputs=row.inputs, target=row.targets[0]) for row in rows]
    return Dataset.from_samples(samples)


def load_network_dataset(
    path: Union[str, Path],
    fmt: Union[DatasetFormat, str],
    k: int,
    *,
    outputs: int = 1,
    header: bool = False,
) -> NetworkDataset:
    rows = read_rows(path, fmt, k, outputs=outputs, header=header)
    samples = [NetworkSample(inputs=row.inputs, targets=row.targets) for row in rows]
    return NetworkDataset.from_samples(samples)
