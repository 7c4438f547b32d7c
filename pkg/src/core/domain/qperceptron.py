"""量子感知机：量子比特输入、2x2 矩阵或标量权重、ket-bra 学习规则与误差收缩。

输出算符 F 固定为单位算符，各步之间不对输出重新归一化。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.domain.bargmann import TwoModeState
from src.core.domain.errors import ArityError, NumericDegeneracyError, PreconditionError

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-9
RATIO_ERROR_FLOOR = 1e-15


@dataclass(frozen=True)
class QubitState:
    """α|0⟩ + β|1⟩，等价于 α z + β w。"""

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if not np.all(np.isfinite(self.as_vector())):
            raise NumericDegeneracyError("量子比特系数必须有限", operation="QubitState")

    @classmethod
    def from_vector(cls, vector: np.ndarray) -> "QubitState":
        return cls(complex(vector[0]), complex(vector[1]))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "QubitState":
        parts = rng.normal(size=4)
        vector = np.array([parts[0] + 1j * parts[1], parts[2] + 1j * parts[3]])
        return cls.from_vector(vector / np.linalg.norm(vector))

    def as_vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)

    def norm_squared(self) -> float:
        return abs(self.alpha) ** 2 + abs(self.beta) ** 2

    def is_normalized(self, tolerance: float = NORMALIZATION_TOLERANCE) -> bool:
        return abs(self.norm_squared() - 1.0) <= tolerance


@dataclass(frozen=True, eq=False)
class MatrixWeight:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.shape != (2, 2):
            raise ArityError("矩阵权重必须是 2x2", operation="MatrixWeight")
        if not np.all(np.isfinite(matrix)):
            raise NumericDegeneracyError("矩阵权重包含非有限值", operation="MatrixWeight")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls) -> "MatrixWeight":
        return cls(np.eye(2))

    @classmethod
    def zeros(cls) -> "MatrixWeight":
        return cls(np.zeros((2, 2)))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "MatrixWeight":
        parts = rng.uniform(-0.5, 0.5, size=(2, 2, 2))
        return cls(parts[..., 0] + 1j * parts[..., 1])

    @property
    def m00(self) -> complex:
        return complex(self.matrix[0, 0])

    @property
    def m01(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def m10(self) -> complex:
        return complex(self.matrix[1, 0])

    @property
    def m11(self) -> complex:
        return complex(self.matrix[1, 1])


class PerceptronMode(str, Enum):
    MATRIX = "matrix"
    SCALAR = "scalar"


Weight = Union[MatrixWeight, complex]


@dataclass(frozen=True, eq=False)
class PerceptronModel:
    mode: PerceptronMode
    weights: Tuple[Weight, ...]

    def __post_init__(self) -> None:
        weights = tuple(self.weights)
        if not weights:
            raise ArityError("感知机至少需要一个权重", operation="PerceptronModel")
        if self.mode is PerceptronMode.MATRIX:
            if not all(isinstance(w, MatrixWeight) for w in weights):
                raise ArityError("矩阵模式需要 MatrixWeight 权重", operation="PerceptronModel")
        else:
            weights = tuple(complex(w) for w in weights)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class PerceptronStep:
    output: QubitState
    squared_error: float
    contraction_ratio: Optional[float] = None


@dataclass(frozen=True)
class PerceptronTrace:
    steps: Tuple[PerceptronStep, ...]
    eta_in_contraction_range: bool


def _check_arity(model: PerceptronModel, inputs: Sequence[QubitState], operation: str) -> None:
    if len(inputs) != model.n:
        raise ArityError(
            f"输入数量应为 {model.n}，实际为 {len(inputs)}", operation=operation
        )


def qp_forward(model: PerceptronModel, inputs: Sequence[QubitState]) -> QubitState:
    """y = Σ_j ω_j |x_j⟩，保留未归一化的原始和。"""
    _check_arity(model, inputs, "qp_forward")
    y = np.zeros(2, dtype=np.complex128)
    for weight, x in zip(model.weights, inputs):
        if model.mode is PerceptronMode.MATRIX:
            y = y + weight.matrix @ x.as_vector()
        else:
            y = y + weight * x.as_vector()
    return QubitState.from_vector(y)


def qp_update(
    model: PerceptronModel,
    inputs: Sequence[QubitState],
    desired: QubitState,
    y: QubitState,
    eta: float,
) -> PerceptronModel:
    """ω_j ← ω_j + η (|d⟩ − |y⟩)⟨x_j|。

    标量权重取误差的投影 ⟨x_j|d − y⟩，而不是外积。
    """
    _check_arity(model, inputs, "qp_update")
    error = desired.as_vector() - y.as_vector()
    updated: List[Weight] = []
    for weight, x in zip(model.weights, inputs):
        if model.mode is PerceptronMode.MATRIX:
            updated.append(MatrixWeight(weight.matrix + eta * np.outer(error, np.conj(x.as_vector()))))
        else:
            updated.append(weight + eta * complex(np.vdot(x.as_vector(), error)))
    return PerceptronModel(mode=model.mode, weights=tuple(updated))


def qp_train(
    model: PerceptronModel,
    inputs: Sequence[QubitState],
    desired: QubitState,
    eta: float,
    steps: int,
    *,
    check_contraction: bool = True,
) -> Tuple[PerceptronModel, PerceptronTrace]:
    """交替执行前向与更新，记录 ‖d − y(t)‖² 及相邻两步之比。

    矩阵模式下输入归一化时，每步比值都等于 (1 − ηn)²，不要求输入正交。
    """
    _check_arity(model, inputs, "qp_train")
    if steps < 0:
        raise PreconditionError("steps 必须 >= 0", operation="qp_train")
    if check_contraction and not all(x.is_normalized() for x in inputs):
        raise PreconditionError("收缩检查要求输入归一化", operation="qp_train")
    in_range = 0 < eta < 1.0 / model.n
    if not in_range:
        logger.warning("η=%s 不在保证收缩的区间 (0, 1/%s) 内", eta, model.n)

    records: List[PerceptronStep] = []
    previous: Optional[float] = None
    for _ in range(steps):
        y = qp_forward(model, inputs)
        difference = desired.as_vector() - y.as_vector()
        error = float(np.real(np.vdot(difference, difference)))
        ratio = error / previous if previous is not None and previous > RATIO_ERROR_FLOOR else None
        records.append(PerceptronStep(output=y, squared_error=error, contraction_ratio=ratio))
        model = qp_update(model, inputs, desired, y, eta)
        previous = error
    return model, PerceptronTrace(steps=tuple(records), eta_in_contraction_range=in_range)


def qubit_to_bargmann(x: QubitState) -> TwoModeState:
    """|x⟩ = α z + β w。"""
    return TwoModeState({(1, 0): x.alpha, (0, 1): x.beta})


def qp_forward_bargmann(model: PerceptronModel, inputs: Sequence[QubitState]) -> TwoModeState:
    """在 Bargmann 空间中计算标量模式输出 Σ_j ω_j (α_j z + β_j w)。"""
    _check_arity(model, inputs, "qp_forward_bargmann")
    if model.mode is not PerceptronMode.SCALAR:
        raise PreconditionError("Bargmann 形式只适用于标量权重", operation="qp_forward_bargmann")
    total = TwoModeState.zero()
    for weight, x in zip(model.weights, inputs):
        total = total + qubit_to_bargmann(x).scale(weight)
    return total
