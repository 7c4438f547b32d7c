"""命令行入口：解析参数、加载配置、分派命令并把领域错误映射为退出码。"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, TextIO

import yaml

from src.adapters.cli.command_args import build_parser, default_report_path, table_orders
from src.adapters.cli.table_renderer import (
    render_evaluation,
    render_levels,
    render_radix,
    render_table,
)
from src.core.domain.errors import MvqnError, ShapeError, UsageError
from src.core.domain.mvqn import NeuronModel, forward
from src.core.domain.mvqn_config import DEFAULT_CONFIG_PATH, MvqnConfig
from src.core.domain.network import NetworkModel
from src.core.domain.qperceptron import PerceptronMode
from src.core.services.experiment_service import ExperimentService
from src.infra.io.dataset_file import load_dataset, load_network_dataset
from src.infra.io.model_file import load_model, save_model
from src.infra.io.report_csv import perceptron_trace_csv, train_report_csv, write_text
from src.infra.io.svg_plot import PlotPoint, render_sector_plot
from src.infra.logging import LoggingConfig, resolve_level, setup_logging, shutdown_logging

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, ExperimentService, TextIO], int]


def _emit(text: str, out: TextIO, path: Optional[Path] = None) -> None:
    if path is None:
        out.write(text)
    else:
        write_text(path, text)


def cmd_train(args: argparse.Namespace, service: ExperimentService, out: TextIO) -> int:
    settings = service.settings(
        learning_rate=args.lr,
        max_epochs=args.max_epochs,
        seed=args.seed,
        init=args.init,
    )
    if args.kind == "neuron":
        if args.hidden or args.outputs != 1:
            raise UsageError("--hidden/--outputs 只适用于 --kind network", operation="train")
        dataset = load_dataset(args.data, args.data_format, args.k, header=args.header)
        run = service.train_neuron(dataset, settings)
        model, report = run.model, run.report
    else:
        dataset = load_network_dataset(
            args.data, args.data_format, args.k, outputs=args.outputs, header=args.header
        )
        run = service.train_network(dataset, args.hidden, settings)
        model, report = run.model, run.report

    save_model(model, args.out)
    report_path = args.report or default_report_path(args.out)
    write_text(report_path, train_report_csv(report))
    out.write(
        f"epochs_run={report.epochs_run} converged={'true' if report.converged else 'false'} "
        f"final_accuracy={report.final_accuracy:.4f}\n"
    )
    return 0


def cmd_eval(args: argparse.Namespace, service: ExperimentService, out: TextIO) -> int:
    model = load_model(args.model)
    if isinstance(model, NeuronModel):
        dataset = load_dataset(args.data, args.data_format, model.k, header=args.header)
        out.write(render_evaluation(service.evaluate_neuron(model, dataset)))
        return 0
    if isinstance(model, NetworkModel):
        orders = set(model.output_orders)
        if len(orders) != 1:
            raise ShapeError("网络输出阶数不一致，无法按单一 k 读取数据集", operation="eval")
        dataset = load_network_dataset(
            args.data,
            args.data_format,
            orders.pop(),
            outputs=model.output_count,
            header=args.header,
        )
        result = service.evaluate_network(model, dataset)
        out.write(f"accuracy={result.accuracy:.4f}\n")
        for index, evaluation in enumerate(result.per_output):
            out.write(render_evaluation(evaluation, label=f"output[{index}]"))
        return 0
    raise UsageError("eval 不支持感知机模型", operation="eval")


def cmd_table(args: argparse.Namespace, service: ExperimentService, out: TextIO) -> int:
    out.write(render_table(table_orders(args.two_j)))
    return 0


def cmd_levels(args: argparse.Namespace, service: ExperimentService, out: TextIO) -> int:
    out.write(render_levels(service.levels(args.n_max, args.hbar_omega)))
    return 0


def cmd_perceptron_demo(args: argparse.Namespace, service: ExperimentService, out: TextIO) -> int:
    run = service.perceptron_demo(
        args.n,
        args.eta,
        args.steps,
        seed=args.seed,
        mode=PerceptronMode(args.mode),
    )
    _emit(perceptron_trace_csv(run.trace), out, args.out)
    return 0


def cmd_basis_check(args: argparse.Namespace, service: ExperimentService, out: TextIO) -> int:
    check = service.basis_check(args.max_degree)
    out.write(
        f"max_degree={check.max_degree} pairs={check.pairs} "
        f"max_deviation={check.max_deviation:.3e} warnings={check.warnings}\n"
    )
    return 0


def cmd_radix(args: argparse.Namespace, service: ExperimentService, out: TextIO) -> int:
    summary = service.radix(args.N, args.r_max)
    out.write(render_radix(summary.rows, summary.best))
    return 0


def cmd_plot(args: argparse.Namespace, service: ExperimentService, out: TextIO) -> int:
    points: List[PlotPoint] = []
    trajectory = None
    if args.model is not None or args.trace_sample is not None:
        if args.data is None:
            raise UsageError("--model/--trace-sample 需要 --data", operation="plot")
        dataset = load_dataset(args.data, args.data_format, args.k, header=args.header)
        if args.trace_sample is not None:
            settings = service.settings(
                learning_rate=args.lr,
                max_epochs=args.max_epochs,
                seed=args.seed,
                init=args.init,
            )
            run = service.train_neuron(dataset, settings, trace_sample=args.trace_sample)
            model, trajectory = run.model, run.trajectory
        else:
            model = load_model(args.model)
            if not isinstance(model, NeuronModel):
                raise UsageError("plot 只支持单神经元模型", operation="plot")
            if model.k != args.k or model.n != dataset.n:
                raise ShapeError(
                    f"模型 (k={model.k}, n={model.n}) 与 --k {args.k} / 数据集 n={dataset.n} 不一致",
                    operation="plot",
                )
        for sample in dataset.samples:
            result = forward(model, sample.inputs, service.config.zero_policy)
            points.append(PlotPoint(result.weighted_sum, result.output == sample.target))
    elif args.data is not None:
        raise UsageError("--data 需要配合 --model 或 --trace-sample", operation="plot")

    svg = render_sector_plot(args.k, points, trajectory, title=f"k={args.k}")
    _emit(svg, out, args.out)
    return 0


COMMANDS: Dict[str, Handler] = {
    "train": cmd_train,
    "eval": cmd_eval,
    "table": cmd_table,
    "levels": cmd_levels,
    "perceptron-demo": cmd_perceptron_demo,
    "radix": cmd_radix,
    "basis-check": cmd_basis_check,
    "plot": cmd_plot,
}


def _load_config(path: Optional[str]) -> MvqnConfig:
    try:
        if path is None:
            return MvqnConfig.load(DEFAULT_CONFIG_PATH)
        return MvqnConfig.load(path, required=True)
    except FileNotFoundError as exc:
        raise UsageError(str(exc), operation="load_config", cause=exc) from exc
    except (ValueError, yaml.YAMLError) as exc:
        raise UsageError(f"配置无效: {exc}", operation="load_config", cause=exc) from exc


def main(argv: Optional[List[str]] = None, *, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _load_config(args.config)
        level = resolve_level(args.log_level or config.log_level)
    except MvqnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return UsageError.exit_code
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)

    setup_logging(LoggingConfig(log_dir=args.log_dir or config.log_dir, log_level=level))
    try:
        return COMMANDS[args.command](args, ExperimentService(config), out)
    except MvqnError as exc:
        logger.error("%s 失败 [%s]: %s", args.command, exc.operation, exc)
        return exc.exit_code
    finally:
        shutdown_logging()
