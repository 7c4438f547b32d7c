"""多值量子神经元 (MVQN)：前向计算、Hebbian 初始化、误差校正训练与评估。"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.core.domain.errors import (
    ArityError,
    DatasetRangeError,
    EmptyDatasetError,
    InvalidOrderError,
    NumericDegeneracyError,
    PreconditionError,
    ShapeError,
)
from src.core.domain.unity_logic import (
    Sector,
    ZeroPolicy,
    angular_distance,
    csign,
    is_degenerate,
    make_sector,
    sector_value,
)

logger = logging.getLogger(__name__)

INPUT_MODULUS_TOLERANCE = 1e-9
INIT_WEIGHT_SPAN = 0.5


def as_complex_vector(values: Sequence[complex] | np.ndarray) -> np.ndarray:
    vector = np.array(values, dtype=np.complex128).reshape(-1)
    vector.setflags(write=False)
    return vector


@dataclass(frozen=True, eq=False)
class NeuronModel:
    """逻辑阶数 k、输入维数 n 与权重（偏置 ω_0 在前，其后为 ω_1..ω_n）。"""

    k: int
    n: int
    weights: np.ndarray

    def __post_init__(self) -> None:
        if self.k < 2:
            raise InvalidOrderError(f"逻辑阶数 k 必须 >= 2，实际为 {self.k}", operation="NeuronModel")
        if self.n < 1:
            raise ArityError(f"输入维数 n 必须 >= 1，实际为 {self.n}", operation="NeuronModel")
        weights = as_complex_vector(self.weights)
        if weights.shape != (self.n + 1,):
            raise ArityError(
                f"权重数量应为 {self.n + 1}，实际为 {weights.shape[0]}",
                operation="NeuronModel",
            )
        if not np.all(np.isfinite(weights)):
            raise NumericDegeneracyError("权重包含非有限值", operation="NeuronModel")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def zeros(cls, k: int, n: int) -> "NeuronModel":
        return cls(k=k, n=n, weights=np.zeros(n + 1, dtype=np.complex128))

    @classmethod
    def random(cls, k: int, n: int, rng: np.random.Generator) -> "NeuronModel":
        parts = rng.uniform(-INIT_WEIGHT_SPAN, INIT_WEIGHT_SPAN, size=(n + 1, 2))
        return cls(k=k, n=n, weights=parts[:, 0] + 1j * parts[:, 1])

    def with_weights(self, weights: np.ndarray) -> "NeuronModel":
        return NeuronModel(k=self.k, n=self.n, weights=weights)

    def same_as(self, other: "NeuronModel") -> bool:
        return (
            self.k == other.k
            and self.n == other.n
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True, eq=False)
class Sample:
    inputs: np.ndarray
    target: Sector

    def __post_init__(self) -> None:
        inputs = as_complex_vector(self.inputs)
        moduli = np.abs(inputs)
        if inputs.size and np.any(np.abs(moduli - 1.0) > INPUT_MODULUS_TOLERANCE):
            raise DatasetRangeError("输入必须位于单位圆上", operation="Sample")
        object.__setattr__(self, "inputs", inputs)

    @classmethod
    def from_sectors(cls, sectors: Sequence[Sector], target: Sector) -> "Sample":
        return cls(inputs=np.array([sector_value(s) for s in sectors]), target=target)


@dataclass(frozen=True, eq=False)
class Dataset:
    samples: Tuple[Sample, ...]
    k: int
    n: int

    def __post_init__(self) -> None:
        samples = tuple(self.samples)
        if not samples:
            raise EmptyDatasetError("数据集为空", operation="Dataset")
        for index, sample in enumerate(samples):
            if sample.inputs.shape != (self.n,):
                raise ShapeError(
                    f"样本 {index} 的输入维数应为 {self.n}", operation="Dataset"
                )
            if sample.target.k != self.k:
                raise ShapeError(
                    f"样本 {index} 的目标阶数应为 {self.k}", operation="Dataset"
                )
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_samples(cls, samples: Sequence[Sample]) -> "Dataset":
        if not samples:
            raise EmptyDatasetError("数据集为空", operation="Dataset")
        first = samples[0]
        return cls(samples=tuple(samples), k=first.target.k, n=first.inputs.shape[0])

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1.0
    max_epochs: int = 100
    shuffle_seed: Optional[int] = None
    target_accuracy: float = 1.0

    def __post_init__(self) -> None:
        if not self.learning_rate > 0:
            raise PreconditionError("学习率必须为正", operation="TrainConfig")
        if self.max_epochs < 1:
            raise PreconditionError("max_epochs 必须 >= 1", operation="TrainConfig")
        if not 0 < self.target_accuracy <= 1:
            raise PreconditionError("target_accuracy 必须位于 (0, 1]", operation="TrainConfig")


@dataclass(frozen=True)
class TrainReport:
    epochs_run: int
    final_accuracy: float
    converged: bool
    per_epoch_errors: Tuple[int, ...] = field(default_factory=tuple)
    degenerate_zero_count: int = 0


class NeuronOutput(NamedTuple):
    weighted_sum: complex
    output: Sector


@dataclass(frozen=True, eq=False)
class Evaluation:
    accuracy: float
    confusion: np.ndarray
    mean_angular_error: float


EpochCallback = Callable[[int, NeuronModel], None]


def _augmented(inputs: np.ndarray) -> np.ndarray:
    """X = (1, x_1, ..., x_n)."""
    return np.concatenate(([1.0 + 0j], inputs))


def forward(
    model: NeuronModel,
    inputs: Sequence[complex] | np.ndarray,
    zero_policy: ZeroPolicy = ZeroPolicy.FLAG,
) -> NeuronOutput:
    x = np.asarray(inputs, dtype=np.complex128)
    if x.shape != (model.n,):
        raise ArityError(
            f"输入维数应为 {model.n}，实际为 {x.shape}", operation="forward"
        )
    weighted_sum = complex(model.weights[0] + np.dot(model.weights[1:], x))
    return NeuronOutput(weighted_sum, csign(weighted_sum, model.k, zero_policy))


def apply_correction(
    model: NeuronModel,
    inputs: np.ndarray,
    delta: complex,
    learning_rate: float,
) -> NeuronModel:
    """W' = W + (α/(n+1))·δ·conj(X)."""
    step = (learning_rate / (model.n + 1)) * delta
    return model.with_weights(model.weights + step * np.conj(_augmented(inputs)))


def sum_space_error(k: int, weighted_sum: complex, value_error: complex) -> complex:
    """把根值空间中的误差换算成加权和需要移动的方向。

    k = 2 时两个根 ±1 都落在唯一的扇区边界（实轴）上，误差改在两个扇区的
    平分线 ±i 之间度量，即旋转 π/2。加权和恰好落在实轴上时保持根差不变。
    k >= 3 时两者一致。
    """
    if k == 2 and weighted_sum.imag != 0.0:
        return value_error * 1j
    return value_error


def correction_error(weighted_sum: complex, target: Sector, actual: Sector) -> complex:
    """δ = ε^d − ε^a，按 :func:`sum_space_error` 换算到加权和一侧。"""
    if actual == target:
        return 0j
    return sum_space_error(target.k, weighted_sum, sector_value(target) - sector_value(actual))


def hebbian_init(dataset: Dataset) -> NeuronModel:
    """ω_j = (1/d) Σ_i f_i · conj(x_j^i)，其中 x_0 ≡ 1。"""
    if len(dataset) == 0:
        raise EmptyDatasetError("数据集为空", operation="hebbian_init")
    targets = np.array([sector_value(s.target) for s in dataset.samples])
    augmented = np.array([_augmented(s.inputs) for s in dataset.samples])
    weights = (targets[:, None] * np.conj(augmented)).sum(axis=0) / len(dataset)
    return NeuronModel(k=dataset.k, n=dataset.n, weights=weights)


def error_correction_step(
    model: NeuronModel,
    sample: Sample,
    alpha: float,
    zero_policy: ZeroPolicy = ZeroPolicy.FLAG,
) -> NeuronModel:
    weighted_sum, actual = forward(model, sample.inputs, zero_policy)
    if actual == sample.target:
        return model
    delta = correction_error(weighted_sum, sample.target, actual)
    return apply_correction(model, sample.inputs, delta, alpha)


def epoch_order(size: int, rng: Optional[np.random.Generator]) -> List[int]:
    if rng is None:
        return list(range(size))
    return [int(i) for i in rng.permutation(size)]


def epoch_converged(errors: int, size: int, cfg: TrainConfig) -> bool:
    if errors == 0:
        return True
    return cfg.target_accuracy < 1.0 and (size - errors) / size >= cfg.target_accuracy


def train(
    model: NeuronModel,
    dataset: Dataset,
    cfg: TrainConfig,
    *,
    zero_policy: ZeroPolicy = ZeroPolicy.FLAG,
    epoch_callback: Optional[EpochCallback] = None,
) -> Tuple[NeuronModel, TrainReport]:
    """逐 epoch 做误差校正，直到某个 epoch 无误分类或达到 max_epochs。"""
    if model.n != dataset.n or model.k != dataset.k:
        raise ShapeError(
            f"模型 (k={model.k}, n={model.n}) 与数据集 (k={dataset.k}, n={dataset.n}) 不一致",
            operation="train",
        )
    rng = np.random.default_rng(cfg.shuffle_seed) if cfg.shuffle_seed is not None else None
    per_epoch_errors: List[int] = []
    degenerate = 0
    converged = False

    for epoch in range(1, cfg.max_epochs + 1):
        errors = 0
        for index in epoch_order(len(dataset), rng):
            sample = dataset.samples[index]
            out = forward(model, sample.inputs, zero_policy)
            if is_degenerate(out.weighted_sum):
                degenerate += 1
            if out.output == sample.target:
                continue
            errors += 1
            delta = correction_error(out.weighted_sum, sample.target, out.output)
            model = apply_correction(model, sample.inputs, delta, cfg.learning_rate)
        per_epoch_errors.append(errors)
        logger.debug("epoch %s: %s 个误分类样本", epoch, errors)
        if epoch_callback is not None:
            epoch_callback(epoch, model)
        if epoch_converged(errors, len(dataset), cfg):
            converged = True
            break

    accuracy = evaluate(model, dataset, zero_policy=zero_policy).accuracy
    report = TrainReport(
        epochs_run=len(per_epoch_errors),
        final_accuracy=accuracy,
        converged=converged,
        per_epoch_errors=tuple(per_epoch_errors),
        degenerate_zero_count=degenerate,
    )
    logger.info(
        "神经元训练结束: epochs=%s converged=%s accuracy=%.4f degenerate=%s",
        report.epochs_run,
        report.converged,
        report.final_accuracy,
        report.degenerate_zero_count,
    )
    return model, report


def evaluate(
    model: NeuronModel,
    dataset: Dataset,
    *,
    zero_policy: ZeroPolicy = ZeroPolicy.FLAG,
) -> Evaluation:
    if len(dataset) == 0:
        raise EmptyDatasetError("数据集为空", operation="evaluate")
    if model.n != dataset.n or model.k != dataset.k:
        raise ShapeError("模型与数据集不一致", operation="evaluate")
    confusion = np.zeros((model.k, model.k), dtype=np.int64)
    correct = 0
    angular_total = 0.0
    for sample in dataset.samples:
        actual = forward(model, sample.inputs, zero_policy).output
        confusion[sample.target.j, actual.j] += 1
        if actual == sample.target:
            correct += 1
        else:
            angular_total += angular_distance(actual, sample.target)
    return Evaluation(
        accuracy=correct / len(dataset),
        confusion=confusion,
        mean_angular_error=angular_total / len(dataset),
    )


def label_dataset(model: NeuronModel) -> Dataset:
    """全部 k^n 种扇区输入组合，由给定神经元标注。"""
    samples = []
    for indices in itertools.product(range(model.k), repeat=model.n):
        sectors = [make_sector(model.k, j) for j in indices]
        inputs = np.array([sector_value(s) for s in sectors])
        samples.append(Sample(inputs=inputs, target=forward(model, inputs).output))
    return Dataset.from_samples(samples)
