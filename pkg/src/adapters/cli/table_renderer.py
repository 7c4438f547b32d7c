from __future__ import annotations

from typing import Iterable, List, Sequence

from src.core.domain.bargmann import LevelRoot, TableRow, table_rows
from src.core.domain.mvqn import Evaluation

TABLE_HEADER = "Roots of Unity | State-Function | Quantum Numbers"


def format_table_row(row: TableRow) -> str:
    roots = f"({row.root_z.label()})_z ({row.root_w.label()})_w = {row.product.label()}"
    state = f"f_{row.n1}{row.n2} = {row.monomial_description}"
    return f"{roots} | {state} | {row.spin.describe()}"


def render_table(two_js: Sequence[int]) -> str:
    """每个自旋一块，块之间以空行分隔。"""
    blocks: List[str] = []
    for two_j in two_js:
        blocks.append("\n".join(format_table_row(row) for row in table_rows(two_j)))
    return TABLE_HEADER + "\n" + "\n\n".join(blocks) + "\n"


def render_levels(levels: Iterable[LevelRoot]) -> str:
    lines = ["n | energy | root"]
    lines.extend(f"{level.n} | {level.energy:g} | {level.root.label()}" for level in levels)
    return "\n".join(lines) + "\n"


def render_radix(rows: Iterable[tuple[int, float]], best: int) -> str:
    lines = ["r | cost"]
    lines.extend(f"{r} | {cost:.6f}" for r, cost in rows)
    lines.append(f"optimal r={best}")
    return "\n".join(lines) + "\n"


def render_evaluation(evaluation: Evaluation, *, label: str = "") -> str:
    prefix = f"{label} " if label else ""
    lines = [
        f"{prefix}accuracy={evaluation.accuracy:.4f}",
        f"{prefix}mean_angular_error={evaluation.mean_angular_error:.6f}",
        f"{prefix}confusion (rows=target, cols=predicted):",
    ]
    lines.extend(" ".join(str(int(v)) for v in row) for row in evaluation.confusion)
    return "\n".join(lines) + "\n"
