"""多值量子神经元前馈网络与分层误差校正训练。

层与层之间传递精确的扇区值（单位圆上的点）。训练时输出误差在神经元及其
输入之间均分，经权重的倒数反向传播，再以各神经元的局部误差套用单神经元的
误差校正规则。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from src.core.domain.errors import (
    ArityError,
    DatasetRangeError,
    EmptyDatasetError,
    InvalidOrderError,
    ShapeError,
)
from src.core.domain.mvqn import (
    INPUT_MODULUS_TOLERANCE,
    Dataset,
    Evaluation,
    NeuronModel,
    TrainConfig,
    TrainReport,
    apply_correction,
    as_complex_vector,
    correction_error,
    epoch_converged,
    epoch_order,
    forward,
    sum_space_error,
)
from src.core.domain.unity_logic import (
    Sector,
    ZeroPolicy,
    angular_distance,
    is_degenerate,
    sector_value,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LayerSpec:
    neuron_count: int
    k: int

    def __post_init__(self) -> None:
        if self.neuron_count < 1:
            raise ShapeError("每层至少需要一个神经元", operation="LayerSpec")
        if self.k < 2:
            raise InvalidOrderError(f"逻辑阶数 k 必须 >= 2，实际为 {self.k}", operation="LayerSpec")


@dataclass(frozen=True, eq=False)
class Layer:
    spec: LayerSpec
    neurons: Tuple[NeuronModel, ...]


@dataclass(frozen=True, eq=False)
class NetworkModel:
    input_arity: int
    layers: Tuple[Layer, ...]

    def __post_init__(self) -> None:
        layers = tuple(self.layers)
        if not layers:
            raise ShapeError("网络至少需要一层", operation="NetworkModel")
        arity = self.input_arity
        for depth, layer in enumerate(layers, start=1):
            if len(layer.neurons) != layer.spec.neuron_count:
                raise ShapeError(
                    f"第 {depth} 层神经元数量与 LayerSpec 不一致", operation="NetworkModel"
                )
            for neuron in layer.neurons:
                if neuron.n != arity or neuron.k != layer.spec.k:
                    raise ArityError(
                        f"第 {depth} 层神经元应为 (k={layer.spec.k}, n={arity})",
                        operation="NetworkModel",
                    )
            arity = layer.spec.neuron_count
        object.__setattr__(self, "layers", layers)

    @classmethod
    def random(
        cls,
        input_arity: int,
        specs: Sequence[LayerSpec],
        rng: np.random.Generator,
    ) -> "NetworkModel":
        layers = []
        arity = input_arity
        for spec in specs:
            neurons = tuple(NeuronModel.random(spec.k, arity, rng) for _ in range(spec.neuron_count))
            layers.append(Layer(spec=spec, neurons=neurons))
            arity = spec.neuron_count
        return cls(input_arity=input_arity, layers=tuple(layers))

    @classmethod
    def from_neuron(cls, neuron: NeuronModel) -> "NetworkModel":
        return cls(
            input_arity=neuron.n,
            layers=(Layer(spec=LayerSpec(neuron_count=1, k=neuron.k), neurons=(neuron,)),),
        )

    @property
    def output_count(self) -> int:
        return self.layers[-1].spec.neuron_count

    @property
    def output_orders(self) -> Tuple[int, ...]:
        return tuple(neuron.k for neuron in self.layers[-1].neurons)

    def replace_layer(self, depth: int, neurons: Sequence[NeuronModel]) -> "NetworkModel":
        layers = list(self.layers)
        layers[depth] = Layer(spec=layers[depth].spec, neurons=tuple(neurons))
        return NetworkModel(input_arity=self.input_arity, layers=tuple(layers))


@dataclass(frozen=True, eq=False)
class NetworkSample:
    inputs: np.ndarray
    targets: Tuple[Sector, ...]

    def __post_init__(self) -> None:
        inputs = as_complex_vector(self.inputs)
        if np.any(np.abs(np.abs(inputs) - 1.0) > INPUT_MODULUS_TOLERANCE):
            raise DatasetRangeError("输入必须位于单位圆上", operation="NetworkSample")
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "targets", tuple(self.targets))


@dataclass(frozen=True, eq=False)
class NetworkDataset:
    samples: Tuple[NetworkSample, ...]
    n: int
    orders: Tuple[int, ...]

    def __post_init__(self) -> None:
        samples = tuple(self.samples)
        if not samples:
            raise EmptyDatasetError("数据集为空", operation="NetworkDataset")
        for index, sample in enumerate(samples):
            if sample.inputs.shape != (self.n,):
                raise ShapeError(f"样本 {index} 的输入维数应为 {self.n}", operation="NetworkDataset")
            if tuple(t.k for t in sample.targets) != tuple(self.orders):
                raise ShapeError(f"样本 {index} 的目标结构不一致", operation="NetworkDataset")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "orders", tuple(self.orders))

    @classmethod
    def from_samples(cls, samples: Sequence[NetworkSample]) -> "NetworkDataset":
        if not samples:
            raise EmptyDatasetError("数据集为空", operation="NetworkDataset")
        first = samples[0]
        return cls(
            samples=tuple(samples),
            n=first.inputs.shape[0],
            orders=tuple(t.k for t in first.targets),
        )

    def __len__(self) -> int:
        return len(self.samples)


class LayerActivation(NamedTuple):
    weighted_sums: Tuple[complex, ...]
    outputs: Tuple[Sector, ...]


class NetworkOutput(NamedTuple):
    outputs: Tuple[Sector, ...]
    activations: Tuple[LayerActivation, ...]


@dataclass(frozen=True, eq=False)
class NetworkEvaluation:
    accuracy: float
    per_output: Tuple[Evaluation, ...]


def as_network_dataset(dataset: Dataset) -> NetworkDataset:
    return NetworkDataset(
        samples=tuple(NetworkSample(inputs=s.inputs, targets=(s.target,)) for s in dataset.samples),
        n=dataset.n,
        orders=(dataset.k,),
    )


def _layer_inputs(outputs: Sequence[Sector]) -> np.ndarray:
    return np.array([sector_value(s) for s in outputs], dtype=np.complex128)


def net_forward(
    net: NetworkModel,
    inputs: Sequence[complex] | np.ndarray,
    zero_policy: ZeroPolicy = ZeroPolicy.FLAG,
) -> NetworkOutput:
    signal = np.asarray(inputs, dtype=np.complex128)
    if signal.shape != (net.input_arity,):
        raise ArityError(
            f"网络输入维数应为 {net.input_arity}，实际为 {signal.shape}",
            operation="net_forward",
        )
    activations: List[LayerActivation] = []
    for layer in net.layers:
        results = [forward(neuron, signal, zero_policy) for neuron in layer.neurons]
        outputs = tuple(r.output for r in results)
        activations.append(
            LayerActivation(tuple(r.weighted_sum for r in results), outputs)
        )
        signal = _layer_inputs(outputs)
    return NetworkOutput(outputs=activations[-1].outputs, activations=tuple(activations))


def _check_structure(net: NetworkModel, dataset: NetworkDataset, operation: str) -> None:
    if net.input_arity != dataset.n or net.output_orders != dataset.orders:
        raise ShapeError(
            f"网络结构 (n={net.input_arity}, outputs={net.output_orders}) "
            f"与数据集 (n={dataset.n}, outputs={dataset.orders}) 不一致",
            operation=operation,
        )


def _hidden_errors(
    net: NetworkModel,
    activations: Sequence[LayerActivation],
    output_errors: Sequence[complex],
) -> List[List[complex]]:
    """逐层局部误差（输出层在最后）。

    下游误差除以 (fan-in + 1)，经连接权重的倒数传回神经元 h，得到 h 输出值
    应有的变化；再由 :func:`sum_space_error` 换算成 h 加权和的移动方向。
    """
    errors: List[List[complex]] = [[] for _ in net.layers]
    errors[-1] = list(output_errors)
    for depth in range(len(net.layers) - 2, -1, -1):
        downstream = net.layers[depth + 1].neurons
        local: List[complex] = []
        for h in range(net.layers[depth].spec.neuron_count):
            total = 0j
            for neuron, delta in zip(downstream, errors[depth + 1]):
                weight = neuron.weights[h + 1]
                if delta == 0 or weight == 0:
                    continue
                total += (delta / (neuron.n + 1)) / weight
            z = activations[depth].weighted_sums[h]
            local.append(sum_space_error(net.layers[depth].spec.k, z, complex(total)))
        errors[depth] = local
    return errors


def _train_sample(
    net: NetworkModel,
    sample: NetworkSample,
    learning_rate: float,
    zero_policy: ZeroPolicy,
) -> Tuple[NetworkModel, bool, int]:
    """一次分层校正，返回 (网络, 是否误分类, 退化加权和个数)。"""
    result = net_forward(net, sample.inputs, zero_policy)
    degenerate = sum(
        1 for act in result.activations for z in act.weighted_sums if is_degenerate(z)
    )
    output_errors = [
        correction_error(z, target, actual)
        for z, actual, target in zip(result.activations[-1].weighted_sums, result.outputs, sample.targets)
    ]
    if not any(output_errors):
        return net, False, degenerate

    layer_errors = _hidden_errors(net, result.activations, output_errors)
    signal = sample.inputs
    last = len(net.layers) - 1
    for depth, layer in enumerate(net.layers):
        neurons = list(layer.neurons)
        for index, neuron in enumerate(neurons):
            if depth == last:
                # 输出神经元基于已更新隐藏层的输出重新判定
                z, actual = forward(neuron, signal, zero_policy)
                target = sample.targets[index]
                if actual == target:
                    continue
                delta = correction_error(z, target, actual)
            else:
                delta = layer_errors[depth][index]
                if delta == 0:
                    continue
            neurons[index] = apply_correction(neuron, signal, delta, learning_rate)
        net = net.replace_layer(depth, neurons)
        signal = _layer_inputs([forward(n, signal, zero_policy).output for n in neurons])
    return net, True, degenerate


def net_train(
    net: NetworkModel,
    dataset: NetworkDataset,
    cfg: TrainConfig,
    *,
    zero_policy: ZeroPolicy = ZeroPolicy.FLAG,
) -> Tuple[NetworkModel, TrainReport]:
    _check_structure(net, dataset, "net_train")
    rng = np.random.default_rng(cfg.shuffle_seed) if cfg.shuffle_seed is not None else None
    per_epoch_errors: List[int] = []
    degenerate = 0
    converged = False

    for epoch in range(1, cfg.max_epochs + 1):
        errors = 0
        for index in epoch_order(len(dataset), rng):
            net, missed, zeros = _train_sample(
                net, dataset.samples[index], cfg.learning_rate, zero_policy
            )
            errors += int(missed)
            degenerate += zeros
        per_epoch_errors.append(errors)
        logger.debug("epoch %s: %s 个误分类样本", epoch, errors)
        if epoch_converged(errors, len(dataset), cfg):
            converged = True
            break

    report = TrainReport(
        epochs_run=len(per_epoch_errors),
        final_accuracy=net_evaluate(net, dataset, zero_policy=zero_policy).accuracy,
        converged=converged,
        per_epoch_errors=tuple(per_epoch_errors),
        degenerate_zero_count=degenerate,
    )
    logger.info(
        "网络训练结束: epochs=%s converged=%s accuracy=%.4f",
        report.epochs_run,
        report.converged,
        report.final_accuracy,
    )
    return net, report


def net_evaluate(
    net: NetworkModel,
    dataset: NetworkDataset,
    *,
    zero_policy: ZeroPolicy = ZeroPolicy.FLAG,
) -> NetworkEvaluation:
    if len(dataset) == 0:
        raise EmptyDatasetError("数据集为空", operation="net_evaluate")
    _check_structure(net, dataset, "net_evaluate")
    outputs = net.output_count
    confusions = [np.zeros((k, k), dtype=np.int64) for k in dataset.orders]
    correct = [0] * outputs
    angular = [0.0] * outputs
    all_correct = 0
    for sample in dataset.samples:
        predicted = net_forward(net, sample.inputs, zero_policy).outputs
        hits = 0
        for m, (actual, target) in enumerate(zip(predicted, sample.targets)):
            confusions[m][target.j, actual.j] += 1
            if actual == target:
                correct[m] += 1
                hits += 1
            else:
                angular[m] += angular_distance(actual, target)
        if hits == outputs:
            all_correct += 1
    size = len(dataset)
    per_output = tuple(
        Evaluation(accuracy=correct[m] / size, confusion=confusions[m], mean_angular_error=angular[m] / size)
        for m in range(outputs)
    )
    return NetworkEvaluation(accuracy=all_correct / size, per_output=per_output)
