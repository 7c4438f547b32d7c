"""命令行参数定义与解析辅助工具。"""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import List, NoReturn, Optional

from src.core.domain.errors import UsageError
from src.infra.io.dataset_file import DatasetFormat

DEFAULT_TABLE_TWO_J = (1, 2, 4)


class MvqnArgumentParser(argparse.ArgumentParser):
    """解析失败时抛出 UsageError，而不是以状态码 2 退出。"""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}", operation="parse_args")


def parse_layer_sizes(value: str) -> List[int]:
    """把 ``"2"`` 或 ``"4,3"`` 解析为隐藏层规模，空串表示没有隐藏层。"""
    text = str(value or "").strip()
    if not text:
        return []
    sizes: List[int] = []
    for token in text.split(","):
        try:
            size = int(token.strip())
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"非法的隐藏层大小: {token!r}") from exc
        if size < 1:
            raise argparse.ArgumentTypeError("隐藏层大小必须 >= 1")
        sizes.append(size)
    return sizes


def default_report_path(model_path: Path) -> Path:
    return model_path.with_suffix(".report.csv")


def _add_dataset_args(parser: argparse.ArgumentParser, *, required: bool) -> None:
    parser.add_argument("--data", type=Path, required=required, help="dataset CSV path")
    parser.add_argument(
        "--format",
        dest="data_format",
        choices=[fmt.value for fmt in DatasetFormat],
        default=DatasetFormat.SECTOR_CSV.value,
        help="dataset layout (default: sector_csv)",
    )
    parser.add_argument("--header", action="store_true", help="skip the first CSV row")


def _add_training_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lr", type=float, default=None, help="learning rate alpha")
    parser.add_argument("--max-epochs", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None, help="overrides MVQN_SEED and the config file")
    parser.add_argument("--init", choices=["random", "hebbian"], default=None)


def build_parser() -> MvqnArgumentParser:
    parser = MvqnArgumentParser(
        prog="mvqn",
        description="Multi-valued quantum neuron toolkit: training, evaluation, tables and plots.",
    )
    parser.add_argument("--config", default=None, help="YAML config path (default: data/mvqn/mvqn.yaml)")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--log-dir", default=None, help="also write a log file into this directory")

    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    train = commands.add_parser("train", help="train a neuron or a network from a dataset")
    train.add_argument("--kind", choices=["neuron", "network"], default="neuron")
    train.add_argument("--k", type=int, required=True, help="logic order")
    _add_dataset_args(train, required=True)
    _add_training_args(train)
    train.add_argument("--hidden", type=parse_layer_sizes, default=[], help="hidden layer sizes, e.g. 2 or 4,3")
    train.add_argument("--outputs", type=int, default=1, help="number of target columns (network)")
    train.add_argument("--out", type=Path, required=True, help="model file to write")
    train.add_argument("--report", type=Path, default=None, help="report CSV (default: <out>.report.csv)")

    evaluate = commands.add_parser("eval", help="print accuracy and confusion of a saved model")
    evaluate.add_argument("--model", type=Path, required=True)
    _add_dataset_args(evaluate, required=True)

    table = commands.add_parser("table", help="print the roots-of-unity / state-function table")
    table.add_argument(
        "--two-j",
        type=int,
        action="append",
        default=None,
        help="doubled spin 2j (repeatable, default: 1 2 4)",
    )

    levels = commands.add_parser("levels", help="print oscillator levels and their roots of unity")
    levels.add_argument("--n-max", type=int, default=4)
    levels.add_argument("--hbar-omega", type=float, default=1.0)

    demo = commands.add_parser("perceptron-demo", help="run the quantum perceptron on a random instance")
    demo.add_argument("--n", type=int, required=True, help="number of qubit inputs")
    demo.add_argument("--eta", type=float, required=True)
    demo.add_argument("--steps", type=int, required=True)
    demo.add_argument("--mode", choices=["matrix", "scalar"], default="matrix")
    demo.add_argument("--seed", type=int, default=None)
    demo.add_argument("--out", type=Path, default=None, help="trace CSV path (default: stdout)")

    basis = commands.add_parser(
        "basis-check", help="quadrature Gram matrix of the normalized monomials (uses the quadrature config)"
    )
    basis.add_argument("--max-degree", type=int, default=8, help="largest total degree n1+n2")

    radix = commands.add_parser("radix", help="print the radix cost table and its minimum")
    radix.add_argument("--N", dest="N", type=float, required=True, help="range of numbers to represent")
    radix.add_argument("--r-max", type=int, default=10)

    plot = commands.add_parser("plot", help="write an SVG of the k sectors and sample outputs")
    plot.add_argument("--k", type=int, required=True)
    _add_dataset_args(plot, required=False)
    plot.add_argument("--model", type=Path, default=None, help="neuron model whose outputs are drawn")
    plot.add_argument(
        "--trace-sample",
        type=int,
        default=None,
        help="train a neuron on --data and draw this sample's weighted-sum trajectory",
    )
    _add_training_args(plot)
    plot.add_argument("--out", type=Path, default=None, help="SVG path (default: stdout)")
    return parser


def table_orders(values: Optional[List[int]]) -> List[int]:
    return list(values) if values else list(DEFAULT_TABLE_TWO_J)
