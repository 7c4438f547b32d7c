"""训练报告与感知机轨迹的 CSV 输出。"""

from __future__ import annotations

import csv
import io
import logging
from pathlib import Path
from typing import List, Optional, Union

from src.core.domain.errors import OutputWriteError
from src.core.domain.mvqn import TrainReport
from src.core.domain.qperceptron import PerceptronTrace

logger = logging.getLogger(__name__)

TRACE_COLUMNS = (
    "step",
    "squared_error",
    "contraction_ratio",
    "y_alpha_re",
    "y_alpha_im",
    "y_beta_re",
    "y_beta_im",
)


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".12g")


def _render(rows: List[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def train_report_csv(report: TrainReport) -> str:
    rows = [
        ["field", "value"],
        ["epochs_run", str(report.epochs_run)],
        ["final_accuracy", repr(float(report.final_accuracy))],
        ["converged", "true" if report.converged else "false"],
        ["degenerate_zero_count", str(report.degenerate_zero_count)],
    ]
    rows.extend(
        [f"epoch_{epoch}_errors", str(errors)]
        for epoch, errors in enumerate(report.per_epoch_errors, start=1)
    )
    return _render(rows)


def perceptron_trace_csv(trace: PerceptronTrace) -> str:
    """第 t 步记录第 t 次更新之前测得的误差。"""
    rows = [list(TRACE_COLUMNS)]
    for step, record in enumerate(trace.steps):
        y = record.output
        rows.append(
            [
                str(step),
                _fmt(record.squared_error),
                _fmt(record.contraction_ratio),
                _fmt(y.alpha.real),
                _fmt(y.alpha.imag),
                _fmt(y.beta.real),
                _fmt(y.beta.imag),
            ]
        )
    return _render(rows)


def write_text(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as exc:
        raise OutputWriteError(f"无法写入 {path}: {exc}", operation="write_text", cause=exc) from exc
    logger.info("已写入 %s", path)
    return path
