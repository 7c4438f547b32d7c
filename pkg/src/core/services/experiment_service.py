"""可复现实验服务：单一种子发生器驱动初始化、打乱顺序与演示实例。"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.core.domain.bargmann import (
    InnerProductConfig,
    LevelRoot,
    OscillatorConfig,
    inner_product_quadrature,
    monomial,
    oscillator_level_roots,
)
from src.core.domain.errors import PreconditionError, UsageError
from src.core.domain.mvqn import (
    Dataset,
    Evaluation,
    NeuronModel,
    TrainConfig,
    TrainReport,
    evaluate,
    forward,
    hebbian_init,
    train,
)
from src.core.domain.mvqn_config import MvqnConfig
from src.core.domain.network import (
    LayerSpec,
    NetworkDataset,
    NetworkEvaluation,
    NetworkModel,
    net_evaluate,
    net_train,
)
from src.core.domain.qperceptron import (
    MatrixWeight,
    PerceptronMode,
    PerceptronModel,
    PerceptronTrace,
    QubitState,
    qp_train,
)
from src.core.domain.unity_logic import optimal_radix, radix_cost_table

logger = logging.getLogger(__name__)

_SHUFFLE_SEED_BOUND = 2**32


@dataclass(frozen=True)
class TrainSettings:
    learning_rate: float
    max_epochs: int
    seed: int
    target_accuracy: float = 1.0
    init: str = "random"
    shuffle: bool = True


@dataclass(frozen=True, eq=False)
class NeuronRun:
    model: NeuronModel
    report: TrainReport
    trajectory: Tuple[complex, ...] = field(default_factory=tuple)


@dataclass(frozen=True, eq=False)
class NetworkRun:
    model: NetworkModel
    report: TrainReport


@dataclass(frozen=True, eq=False)
class PerceptronRun:
    model: PerceptronModel
    inputs: Tuple[QubitState, ...]
    desired: QubitState
    trace: PerceptronTrace


@dataclass(frozen=True)
class RadixSummary:
    rows: Tuple[Tuple[int, float], ...]
    best: int


@dataclass(frozen=True)
class BasisCheck:
    max_degree: int
    pairs: int
    max_deviation: float
    warnings: int


class ExperimentService:
    """执行各项实验，所有随机数都取自同一个带种子的发生器。"""

    def __init__(self, config: Optional[MvqnConfig] = None) -> None:
        self.config = config or MvqnConfig()

    def settings(
        self,
        *,
        learning_rate: Optional[float] = None,
        max_epochs: Optional[int] = None,
        seed: Optional[int] = None,
        init: Optional[str] = None,
    ) -> TrainSettings:
        defaults = self.config.training
        return TrainSettings(
            learning_rate=defaults.learning_rate if learning_rate is None else learning_rate,
            max_epochs=defaults.max_epochs if max_epochs is None else max_epochs,
            seed=self.config.resolve_seed(seed),
            target_accuracy=defaults.target_accuracy,
            init=defaults.init if init is None else init,
            shuffle=defaults.shuffle,
        )

    @staticmethod
    def _train_config(settings: TrainSettings, rng: np.random.Generator) -> TrainConfig:
        shuffle_seed = int(rng.integers(_SHUFFLE_SEED_BOUND)) if settings.shuffle else None
        return TrainConfig(
            learning_rate=settings.learning_rate,
            max_epochs=settings.max_epochs,
            shuffle_seed=shuffle_seed,
            target_accuracy=settings.target_accuracy,
        )

    def train_neuron(
        self,
        dataset: Dataset,
        settings: TrainSettings,
        *,
        trace_sample: Optional[int] = None,
    ) -> NeuronRun:
        """训练单个神经元；``trace_sample`` 记录该样本每个 epoch 的加权和。"""
        rng = np.random.default_rng(settings.seed)
        if settings.init == "hebbian":
            model = hebbian_init(dataset)
        elif settings.init == "random":
            model = NeuronModel.random(dataset.k, dataset.n, rng)
        else:
            raise UsageError(f"未知初始化方式: {settings.init}", operation="train_neuron")

        trajectory: List[complex] = []
        callback: Optional[Callable[[int, NeuronModel], None]] = None
        if trace_sample is not None:
            if not 0 <= trace_sample < len(dataset):
                raise PreconditionError(
                    f"轨迹样本下标 {trace_sample} 超出 0..{len(dataset) - 1}",
                    operation="train_neuron",
                )
            inputs = dataset.samples[trace_sample].inputs
            trajectory.append(forward(model, inputs).weighted_sum)

            def _record(_epoch: int, current: NeuronModel) -> None:
                trajectory.append(forward(current, inputs).weighted_sum)

            callback = _record

        cfg = self._train_config(settings, rng)
        logger.info(
            "开始训练神经元: k=%s n=%s samples=%s init=%s seed=%s",
            dataset.k,
            dataset.n,
            len(dataset),
            settings.init,
            settings.seed,
        )
        model, report = train(
            model,
            dataset,
            cfg,
            zero_policy=self.config.zero_policy,
            epoch_callback=callback,
        )
        return NeuronRun(model=model, report=report, trajectory=tuple(trajectory))

    def train_network(
        self,
        dataset: NetworkDataset,
        hidden: Sequence[int],
        settings: TrainSettings,
    ) -> NetworkRun:
        if settings.init != "random":
            raise UsageError("网络只支持随机初始化", operation="train_network")
        orders = set(dataset.orders)
        if len(orders) != 1:
            raise UsageError("所有输出必须使用同一逻辑阶数", operation="train_network")
        k = orders.pop()
        specs = [LayerSpec(neuron_count=size, k=k) for size in hidden]
        specs.append(LayerSpec(neuron_count=len(dataset.orders), k=k))

        rng = np.random.default_rng(settings.seed)
        net = NetworkModel.random(dataset.n, specs, rng)
        cfg = self._train_config(settings, rng)
        logger.info(
            "开始训练网络: layers=%s samples=%s seed=%s",
            [spec.neuron_count for spec in specs],
            len(dataset),
            settings.seed,
        )
        net, report = net_train(net, dataset, cfg, zero_policy=self.config.zero_policy)
        return NetworkRun(model=net, report=report)

    def evaluate_neuron(self, model: NeuronModel, dataset: Dataset) -> Evaluation:
        return evaluate(model, dataset, zero_policy=self.config.zero_policy)

    def evaluate_network(self, model: NetworkModel, dataset: NetworkDataset) -> NetworkEvaluation:
        return net_evaluate(model, dataset, zero_policy=self.config.zero_policy)

    def perceptron_demo(
        self,
        n: int,
        eta: float,
        steps: int,
        *,
        seed: Optional[int] = None,
        mode: PerceptronMode = PerceptronMode.MATRIX,
    ) -> PerceptronRun:
        """随机归一化输入、随机归一化目标与随机初始权重。"""
        if n < 1:
            raise PreconditionError("n 必须 >= 1", operation="perceptron_demo")
        rng = np.random.default_rng(self.config.resolve_seed(seed))
        inputs = tuple(QubitState.random(rng) for _ in range(n))
        desired = QubitState.random(rng)
        if mode is PerceptronMode.MATRIX:
            weights = tuple(MatrixWeight.random(rng) for _ in range(n))
        else:
            parts = rng.uniform(-0.5, 0.5, size=(n, 2))
            weights = tuple(complex(re, im) for re, im in parts)
        model = PerceptronModel(mode=mode, weights=weights)
        model, trace = qp_train(model, inputs, desired, eta, steps)
        return PerceptronRun(model=model, inputs=inputs, desired=desired, trace=trace)

    @staticmethod
    def radix(N: float, r_max: int) -> RadixSummary:
        best = optimal_radix(N, r_max)
        return RadixSummary(rows=tuple(radix_cost_table(N, r_max)), best=best)

    @staticmethod
    def levels(n_max: int, hbar_omega: float = 1.0) -> List[LevelRoot]:
        return oscillator_level_roots(n_max, OscillatorConfig(hbar_omega=hbar_omega))

    def basis_check(self, max_degree: int) -> BasisCheck:
        """总次数不超过 ``max_degree`` 的全部归一化单项式的求积 Gram 矩阵。

        测度参数为 t 时 f_{n1,n2} 的范数平方为 t^(n1+n2)，偏差相对该对角线计算。
        """
        if max_degree < 0:
            raise PreconditionError("max_degree 必须 >= 0", operation="basis_check")
        q = self.config.quadrature
        cfg = InnerProductConfig(t=q.t, radial_nodes=q.radial_nodes, angular_nodes=q.angular_nodes)
        keys = [(n1, total - n1) for total in range(max_degree + 1) for n1 in range(total + 1)]
        states = {key: monomial(*key) for key in keys}
        deviation = 0.0
        warnings = 0
        for a in keys:
            for b in keys:
                result = inner_product_quadrature(states[a], states[b], cfg)
                expected = q.t ** sum(a) if a == b else 0.0
                deviation = max(deviation, abs(result.value - expected))
                warnings += result.warning is not None
        logger.info("基矢正交性检查: degree<=%s 最大偏差 %.3e", max_degree, deviation)
        return BasisCheck(
            max_degree=max_degree,
            pairs=len(keys) ** 2,
            max_deviation=deviation,
            warnings=warnings,
        )
