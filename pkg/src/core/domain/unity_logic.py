"""单位根字母表 E_k、csign 激活函数与基数代价计算。"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from src.core.domain.errors import (
    InvalidOrderError,
    NumericDegeneracyError,
    OrderMismatchError,
    PreconditionError,
    ZeroArgumentError,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
UNIT_MODULUS_TOLERANCE = 1e-12
# arg*k/2π 取整前施加的相对吸附量
SECTOR_SNAP_EPSILON = 1e-12


class ZeroPolicy(str, Enum):
    """csign 对辐角无定义的 z = 0 的处理方式。"""

    FLAG = "flag"
    RAISE = "raise"


@dataclass(frozen=True, order=True)
class Sector:
    """单位根 ε_k^j，按阶数与下标存储。"""

    k: int
    j: int

    def __post_init__(self) -> None:
        # k = 1 为真空态编码产生的平凡字母表 E_1 = {1}
        if int(self.k) < 1:
            raise InvalidOrderError(f"非法阶数 k={self.k}", operation="Sector")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "j", int(self.j) % self.k)

    @property
    def phase(self) -> float:
        return TWO_PI * self.j / self.k

    @property
    def value(self) -> complex:
        return sector_value(self)

    def label(self) -> str:
        return f"ε_{self.k}^{self.j}"


@dataclass(frozen=True)
class RadixCostQuery:
    r: int
    N: float
    k_const: float = 1.0

    def __post_init__(self) -> None:
        if int(self.r) < 2:
            raise PreconditionError(f"基数 r 必须 >= 2，实际为 {self.r}", operation="radix_cost")
        if not (math.isfinite(self.N) and self.N >= 2):
            raise PreconditionError(f"范围 N 必须为有限值且 >= 2，实际为 {self.N}", operation="radix_cost")
        if not (math.isfinite(self.k_const) and self.k_const > 0):
            raise PreconditionError("比例常数 k 必须为正的有限值", operation="radix_cost")


def make_sector(k: int, j: int) -> Sector:
    if k < 2:
        raise InvalidOrderError(f"逻辑阶数 k 必须 >= 2，实际为 {k}", operation="make_sector")
    return Sector(k, j)


def sector_value(s: Sector) -> complex:
    """返回 exp(i·2πj/k)。"""
    if s.j == 0:
        return complex(1.0, 0.0)
    return cmath.rect(1.0, TWO_PI * s.j / s.k)


def roots_of_unity(k: int) -> List[Sector]:
    """按下标排列的字母表 E_k。"""
    return [make_sector(k, j) for j in range(k)]


def ensure_finite(z: complex, *, operation: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NumericDegeneracyError(f"出现非有限数值: {z!r}", operation=operation)
    return z


def is_degenerate(z: complex) -> bool:
    return z == 0


def arg_principal(z: complex) -> float:
    """归一化到 [0, 2π) 的 arg z。"""
    if z == 0:
        raise ZeroArgumentError("零的辐角无定义", operation="arg_principal")
    angle = math.atan2(z.imag, z.real)
    if angle < 0.0:
        angle += TWO_PI
    if angle >= TWO_PI:
        angle = 0.0
    return angle


def csign(z: complex, k: int, zero_policy: ZeroPolicy = ZeroPolicy.FLAG) -> Sector:
    """把 z 映射到 arg z 所在半开扇区 [2πj/k, 2π(j+1)/k) 的单位根。

    FLAG 策略下 z = 0 映射为 ε_k^0，调用方用 :func:`is_degenerate` 识别并计数。
    """
    if k < 2:
        raise InvalidOrderError(f"逻辑阶数 k 必须 >= 2，实际为 {k}", operation="csign")
    if z == 0:
        if zero_policy is ZeroPolicy.RAISE:
            raise ZeroArgumentError("csign(0) 无定义", operation="csign")
        logger.debug("csign 遇到零加权和，返回 ε_%s^0", k)
        return Sector(k, 0)
    scaled = arg_principal(z) * k / TWO_PI
    j = math.floor(scaled + SECTOR_SNAP_EPSILON * k)
    return Sector(k, j)


def sector_mul(a: Sector, b: Sector) -> Sector:
    if a.k != b.k:
        raise OrderMismatchError(f"阶数不一致: {a.k} != {b.k}", operation="sector_mul")
    return Sector(a.k, a.j + b.j)


def sector_inverse(s: Sector) -> Sector:
    return Sector(s.k, -s.j)


def angular_distance(a: Sector, b: Sector) -> float:
    """同阶两个单位根之间的夹角，取值 [0, π]。"""
    if a.k != b.k:
        raise OrderMismatchError(f"阶数不一致: {a.k} != {b.k}", operation="angular_distance")
    steps = (a.j - b.j) % a.k
    steps = min(steps, a.k - steps)
    if 2 * steps == a.k:
        return math.pi
    return TWO_PI * steps / a.k


def radix_cost(q: RadixCostQuery) -> float:
    """C = k·r·log N / log r."""
    return q.k_const * q.r * math.log(q.N) / math.log(q.r)


def radix_cost_table(N: float, r_max: int, k_const: float = 1.0) -> List[Tuple[int, float]]:
    return [
        (r, radix_cost(RadixCostQuery(r=r, N=N, k_const=k_const)))
        for r in range(2, int(r_max) + 1)
    ]


def optimal_radix(N: float, r_max: int) -> int:
    """2..r_max 中代价最低的整数基数，代价相同时取较小的 r。"""
    if r_max < 3:
        raise PreconditionError(f"r_max 必须 >= 3，实际为 {r_max}", operation="optimal_radix")
    best_r, best_cost = 2, math.inf
    for r, cost in radix_cost_table(N, r_max):
        if cost < best_cost:
            best_r, best_cost = r, cost
    return best_r
