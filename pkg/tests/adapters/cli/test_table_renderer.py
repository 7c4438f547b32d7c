from pathlib import Path

import numpy as np

from src.adapters.cli.table_renderer import (
    TABLE_HEADER,
    format_table_row,
    render_evaluation,
    render_levels,
    render_radix,
    render_table,
)
from src.core.domain.bargmann import oscillator_level_roots, table_rows
from src.core.domain.mvqn import Evaluation

GOLDEN = Path(__file__).resolve().parents[2] / "golden" / "table1.txt"


def test_table_matches_golden_file():
    assert render_table([1, 2, 4]) == GOLDEN.read_text(encoding="utf-8")


def test_single_row_format():
    first = table_rows(1)[0]
    assert format_table_row(first) == "(ε_2^1)_z (ε_2^0)_w = ε_2^1 | f_10 = z | j=1/2, m=1/2"


def test_table_with_one_block_has_no_blank_line():
    text = render_table([3])
    lines = text.splitlines()
    assert lines[0] == TABLE_HEADER
    assert len(lines) == 5
    assert "" not in lines
    assert lines[1].startswith("(ε_4^3)_z (ε_4^0)_w = ε_4^3 | f_30 = z^3 / sqrt(6) | j=3/2, m=3/2")


def test_levels_rendering():
    text = render_levels(oscillator_level_roots(2))
    assert text == "n | energy | root\n0 | 0 | ε_3^0\n1 | 1 | ε_3^1\n2 | 2 | ε_3^2\n"


def test_radix_rendering():
    text = render_radix([(2, 1.5), (3, 1.25)], 3)
    assert text == "r | cost\n2 | 1.500000\n3 | 1.250000\noptimal r=3\n"


def test_evaluation_rendering():
    evaluation = Evaluation(accuracy=0.75, confusion=np.array([[1, 1], [0, 2]]), mean_angular_error=0.5)
    lines = render_evaluation(evaluation, label="output[0]").splitlines()
    assert lines[0] == "output[0] accuracy=0.7500"
    assert lines[1] == "output[0] mean_angular_error=0.500000"
    assert lines[-2:] == ["1 1", "0 2"]
