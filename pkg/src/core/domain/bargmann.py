"""Segal–Bargmann 全纯表示：单/双模单项式态、梯算符、谐振子哈密顿量与 Jordan–Schwinger 自旋算符。

态是归一化单项式 ``f_{n1,n2} = z^{n1} w^{n2} / sqrt(n1! n2!)`` 上的稀疏映射
``(n1, n2) -> 系数``，解析内积即欧氏内积。解析运算固定 t = 1，只有求积
接受其他测度参数。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple

import numpy as np

from src.core.domain.errors import (
    InvalidOccupationError,
    ModeMismatchError,
    PreconditionError,
)
from src.core.domain.unity_logic import Sector, sector_mul

logger = logging.getLogger(__name__)

PRUNE_THRESHOLD = 1e-15

Key = Tuple[int, int]


@dataclass(frozen=True)
class TwoModeState:
    terms: Mapping[Key, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        pruned: Dict[Key, complex] = {}
        for (n1, n2), coef in self.terms.items():
            if n1 < 0 or n2 < 0:
                raise InvalidOccupationError(
                    f"占据数必须非负: ({n1}, {n2})", operation="TwoModeState"
                )
            coef = complex(coef)
            if abs(coef) >= PRUNE_THRESHOLD:
                pruned[(int(n1), int(n2))] = coef
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(pruned.items()))))

    @classmethod
    def zero(cls) -> "TwoModeState":
        return cls({})

    def coefficient(self, n1: int, n2: int = 0) -> complex:
        return self.terms.get((n1, n2), 0j)

    def items(self) -> Iterator[Tuple[Key, complex]]:
        return iter(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def is_one_mode(self) -> bool:
        return all(n2 == 0 for _, n2 in self.terms)

    def degree(self) -> Tuple[int, int]:
        """各模式的最高占据数，零态为 (0, 0)。"""
        if not self.terms:
            return (0, 0)
        return (max(n1 for n1, _ in self.terms), max(n2 for _, n2 in self.terms))

    def norm_squared(self) -> float:
        return float(sum(abs(c) ** 2 for c in self.terms.values()))

    def scale(self, factor: complex) -> "TwoModeState":
        return TwoModeState({key: factor * c for key, c in self.terms.items()})

    def __add__(self, other: "TwoModeState") -> "TwoModeState":
        merged = dict(self.terms)
        for key, c in other.terms.items():
            merged[key] = merged.get(key, 0j) + c
        return TwoModeState(merged)

    def __sub__(self, other: "TwoModeState") -> "TwoModeState":
        return self + other.scale(-1)

    def __rmul__(self, factor: complex) -> "TwoModeState":
        return self.scale(factor)

    def max_abs_difference(self, other: "TwoModeState") -> float:
        keys = set(self.terms) | set(other.terms)
        if not keys:
            return 0.0
        return max(abs(self.coefficient(*key) - other.coefficient(*key)) for key in keys)


@dataclass(frozen=True, order=True)
class SpinLabel:
    """角动量标签，以两倍值存储，半整数保持精确。"""

    two_j: int
    two_m: int

    def __post_init__(self) -> None:
        if self.two_j < 0 or abs(self.two_m) > self.two_j or (self.two_j + self.two_m) % 2:
            raise PreconditionError(
                f"非法自旋标签 two_j={self.two_j}, two_m={self.two_m}",
                operation="SpinLabel",
            )

    @classmethod
    def of(cls, j: "float | Fraction | str", m: "float | Fraction | str") -> "SpinLabel":
        return cls(int(Fraction(j) * 2), int(Fraction(m) * 2))

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def m(self) -> Fraction:
        return Fraction(self.two_m, 2)

    @property
    def multiplicity(self) -> int:
        """N = 2j + 1."""
        return self.two_j + 1

    def describe(self) -> str:
        return f"j={_half(self.two_j)}, m={_half(self.two_m)}"


@dataclass(frozen=True)
class InnerProductConfig:
    t: float = 1.0
    radial_nodes: int = 12
    angular_nodes: int = 25

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise PreconditionError("测度参数 t 必须为正", operation="InnerProductConfig")
        if self.radial_nodes < 1 or self.angular_nodes < 1:
            raise PreconditionError("节点数必须 >= 1", operation="InnerProductConfig")


@dataclass(frozen=True)
class OscillatorConfig:
    hbar_omega: float = 1.0

    def __post_init__(self) -> None:
        if not self.hbar_omega > 0:
            raise PreconditionError("ħω 必须为正", operation="OscillatorConfig")


class Mode(str, Enum):
    Z = "z"
    W = "w"


class SpinOperator(str, Enum):
    JX = "Jx"
    JY = "Jy"
    JZ = "Jz"
    JSQUARED = "Jsquared"


class QuadratureResult(NamedTuple):
    value: complex
    warning: Optional[str] = None


@dataclass(frozen=True)
class TableRow:
    root_z: Sector
    root_w: Sector
    product: Sector
    n1: int
    n2: int
    spin: SpinLabel
    monomial_description: str


@dataclass(frozen=True)
class LevelRoot:
    n: int
    energy: float
    root: Sector


def _half(doubled: int) -> str:
    if doubled % 2:
        return f"{doubled}/2"
    return str(doubled // 2)


def _check_occupation(n1: int, n2: int, operation: str) -> None:
    if n1 < 0 or n2 < 0:
        raise InvalidOccupationError(f"占据数必须非负: ({n1}, {n2})", operation=operation)


def _map_terms(
    state: TwoModeState,
    rule: Callable[[int, int, complex], Iterable[Tuple[Key, complex]]],
) -> TwoModeState:
    out: Dict[Key, complex] = {}
    for (n1, n2), coef in state.items():
        for key, value in rule(n1, n2, coef):
            out[key] = out.get(key, 0j) + value
    return TwoModeState(out)


def monomial(n1: int, n2: int = 0) -> TwoModeState:
    _check_occupation(n1, n2, "monomial")
    return TwoModeState({(n1, n2): 1.0})


def unnormalized_monomial(n1: int, n2: int = 0) -> TwoModeState:
    """用归一化基表示的 z^{n1} w^{n2}。"""
    _check_occupation(n1, n2, "unnormalized_monomial")
    return TwoModeState({(n1, n2): math.sqrt(math.factorial(n1) * math.factorial(n2))})


def coherent_state(alpha: complex, truncation: int) -> TwoModeState:
    if truncation < 0:
        raise PreconditionError("截断阶数必须 >= 0", operation="coherent_state")
    alpha = complex(alpha)
    coef = complex(math.exp(-abs(alpha) ** 2 / 2.0))
    terms: Dict[Key, complex] = {(0, 0): coef}
    for n in range(1, truncation + 1):
        coef = coef * alpha / math.sqrt(n)
        terms[(n, 0)] = coef
    return TwoModeState(terms)


def inner_product_analytic(f: TwoModeState, g: TwoModeState) -> complex:
    total = 0j
    for key, coef in f.items():
        other = g.terms.get(key)
        if other is not None:
            total += coef.conjugate() * other
    return total


@lru_cache(maxsize=64)
def _mode_grid(t: float, radial_nodes: int, angular_nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """单个复模式的节点与权重：|z|²/t 上的 Gauss–Laguerre 乘以均匀相位规则。

    权重已包含测度归一化因子 (πt)^{-1}。
    """
    s, a = np.polynomial.laguerre.laggauss(radial_nodes)
    theta = 2.0 * np.pi * np.arange(angular_nodes) / angular_nodes
    points = np.outer(np.sqrt(t * s), np.exp(1j * theta)).ravel()
    weights = np.repeat(a / angular_nodes, angular_nodes)
    return points, weights


def _mode_moment(a: int, b: int, points: np.ndarray, weights: np.ndarray) -> complex:
    """conj(z^a/√a!) · z^b/√b! 在归一化高斯测度下的求积。"""
    integrand = np.conj(points**a) * points**b
    norm = math.sqrt(math.factorial(a) * math.factorial(b))
    return complex(np.sum(weights * integrand) / norm)


def inner_product_quadrature(
    f: TwoModeState,
    g: TwoModeState,
    cfg: InnerProductConfig = InnerProductConfig(),
) -> QuadratureResult:
    """以参数为 t 的高斯测度数值计算 ⟨f|g⟩。

    单模式次数为 D 时，radial_nodes >= D + 1 且 angular_nodes >= 2D + 1
    即精确；节点不足时结果带警告。
    """
    degree = max(max(f.degree()), max(g.degree()))
    warning = None
    if cfg.radial_nodes < degree + 1 or cfg.angular_nodes < 2 * degree + 1:
        warning = (
            f"节点数不足: degree={degree} 需要 radial>={degree + 1}, "
            f"angular>={2 * degree + 1}"
        )
        logger.warning("%s", warning)

    points, weights = _mode_grid(float(cfg.t), cfg.radial_nodes, cfg.angular_nodes)
    cache: Dict[Tuple[int, int], complex] = {}

    def moment(a: int, b: int) -> complex:
        if (a, b) not in cache:
            cache[(a, b)] = _mode_moment(a, b, points, weights)
        return cache[(a, b)]

    total = 0j
    for (a1, a2), ca in f.items():
        for (b1, b2), cb in g.items():
            total += ca.conjugate() * cb * moment(a1, b1) * moment(a2, b2)
    return QuadratureResult(total, warning)


def apply_create(state: TwoModeState, mode: Mode = Mode.Z) -> TwoModeState:
    """â†：归一化基下乘以 z（或 w）。"""
    if mode is Mode.Z:
        return _map_terms(state, lambda n1, n2, c: [((n1 + 1, n2), c * math.sqrt(n1 + 1))])
    return _map_terms(state, lambda n1, n2, c: [((n1, n2 + 1), c * math.sqrt(n2 + 1))])


def apply_annihilate(state: TwoModeState, mode: Mode = Mode.Z) -> TwoModeState:
    """â = ∂/∂z（或 ∂/∂w），该模式的真空态被消去。"""
    if mode is Mode.Z:
        return _map_terms(
            state, lambda n1, n2, c: [((n1 - 1, n2), c * math.sqrt(n1))] if n1 else []
        )
    return _map_terms(
        state, lambda n1, n2, c: [((n1, n2 - 1), c * math.sqrt(n2))] if n2 else []
    )


def apply_hamiltonian(
    state: TwoModeState, cfg: OscillatorConfig = OscillatorConfig()
) -> TwoModeState:
    """单模式态上的 H = ħω(z d/dz + 1/2)。"""
    if not state.is_one_mode():
        raise ModeMismatchError("哈密顿量只作用于单模态", operation="apply_hamiltonian")
    return _map_terms(state, lambda n, m, c: [((n, m), c * (cfg.hbar_omega * (n + 0.5)))])


def energy_expectation(
    state: TwoModeState, cfg: OscillatorConfig = OscillatorConfig()
) -> float:
    norm = state.norm_squared()
    if norm == 0:
        raise PreconditionError("零态没有期望值", operation="energy_expectation")
    return inner_product_analytic(state, apply_hamiltonian(state, cfg)).real / norm


def _z_dw(state: TwoModeState) -> TwoModeState:
    return _map_terms(
        state,
        lambda n1, n2, c: [((n1 + 1, n2 - 1), c * math.sqrt(n2 * (n1 + 1)))] if n2 else [],
    )


def _w_dz(state: TwoModeState) -> TwoModeState:
    return _map_terms(
        state,
        lambda n1, n2, c: [((n1 - 1, n2 + 1), c * math.sqrt(n1 * (n2 + 1)))] if n1 else [],
    )


def apply_spin(op: SpinOperator, state: TwoModeState) -> TwoModeState:
    """Jordan–Schwinger 算符，取 ħ = 1。"""
    if op is SpinOperator.JX:
        return (_z_dw(state) + _w_dz(state)).scale(0.5)
    if op is SpinOperator.JY:
        return (_z_dw(state) - _w_dz(state)).scale(-0.5j)
    if op is SpinOperator.JZ:
        return _map_terms(state, lambda n1, n2, c: [((n1, n2), c * ((n1 - n2) / 2.0))])
    total = TwoModeState.zero()
    for axis in (SpinOperator.JX, SpinOperator.JY, SpinOperator.JZ):
        total = total + apply_spin(axis, apply_spin(axis, state))
    return total


def commutator(a: SpinOperator, b: SpinOperator, state: TwoModeState) -> TwoModeState:
    return apply_spin(a, apply_spin(b, state)) - apply_spin(b, apply_spin(a, state))


def spin_to_occupation(s: SpinLabel) -> Tuple[int, int]:
    return (s.two_j + s.two_m) // 2, (s.two_j - s.two_m) // 2


def occupation_to_spin(n1: int, n2: int) -> SpinLabel:
    _check_occupation(n1, n2, "occupation_to_spin")
    return SpinLabel(two_j=n1 + n2, two_m=n1 - n2)


def encode_state_roots(n1: int, n2: int) -> Tuple[Sector, Sector]:
    """把 f_{n1,n2} 相位编码为 (ε_N^{n1}, ε_N^{n2})，N = n1 + n2 + 1。"""
    _check_occupation(n1, n2, "encode_state_roots")
    order = n1 + n2 + 1
    return Sector(order, n1), Sector(order, n2)


def _power(symbol: str, n: int) -> str:
    if n == 0:
        return ""
    if n == 1:
        return symbol
    return f"{symbol}^{n}"


def describe_monomial(n1: int, n2: int) -> str:
    """规范文本，例如 ``z^3 w / sqrt(6)`` 或 ``z^2 w^2 / 2``。"""
    factors = " ".join(part for part in (_power("z", n1), _power("w", n2)) if part) or "1"
    denominator = math.factorial(n1) * math.factorial(n2)
    if denominator == 1:
        return factors
    root = math.isqrt(denominator)
    if root * root == denominator:
        return f"{factors} / {root}"
    return f"{factors} / sqrt({denominator})"


def table_rows(two_j: int) -> List[TableRow]:
    """自旋 j = two_j/2 的单位根表行，m 从 j 递减到 -j。"""
    if two_j < 1:
        raise PreconditionError("two_j 必须 >= 1", operation="table_rows")
    rows: List[TableRow] = []
    for two_m in range(two_j, -two_j - 1, -2):
        spin = SpinLabel(two_j, two_m)
        n1, n2 = spin_to_occupation(spin)
        root_z, root_w = encode_state_roots(n1, n2)
        rows.append(
            TableRow(
                root_z=root_z,
                root_w=root_w,
                product=sector_mul(root_z, root_w),
                n1=n1,
                n2=n2,
                spin=spin,
                monomial_description=describe_monomial(n1, n2),
            )
        )
    return rows


def oscillator_level_roots(
    n_max: int, cfg: OscillatorConfig = OscillatorConfig()
) -> List[LevelRoot]:
    """谐振子能级 n = 0..n_max（基态能量记为 0），映射到 ε_{n_max+1}^n。"""
    if n_max < 0:
        raise PreconditionError("n_max 必须 >= 0", operation="oscillator_level_roots")
    order = n_max + 1
    return [LevelRoot(n=n, energy=n * cfg.hbar_omega, root=Sector(order, n)) for n in range(order)]
