"""MVQN 统一配置定义与加载入口。"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from src.core.domain.unity_logic import ZeroPolicy

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "data/mvqn/mvqn.yaml"

_INIT_MODES = {"random", "hebbian"}
_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


def _deep_merge(base: Dict[str, Any], patch: Dict[str, Any]) -> Dict[str, Any]:
    """深度合并字典（patch 覆盖 base）。"""
    merged: Dict[str, Any] = dict(base)
    for key, value in patch.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _to_bool(value: Any, *, default: bool = False) -> bool:
    if value is None:
        return default
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return bool(value)
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in {"1", "true", "yes", "on", "y"}:
            return True
        if lowered in {"0", "false", "no", "off", "n"}:
            return False
    return default


def _env_or_default(env_key: str, default: Optional[str]) -> Optional[str]:
    value = os.environ.get(env_key)
    if value is None:
        return default
    return value.strip()


def _parse_env_int(env_key: str, default: Optional[int]) -> Optional[int]:
    value = os.environ.get(env_key)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError as exc:
        raise ValueError(f"{env_key} 必须是整数") from exc


def _parse_env_float(env_key: str, default: float) -> float:
    value = os.environ.get(env_key)
    if value is None:
        return default
    try:
        return float(value)
    except ValueError as exc:
        raise ValueError(f"{env_key} 必须是数字") from exc


def _normalize_zero_policy(value: Any, *, source: str) -> ZeroPolicy:
    try:
        return ZeroPolicy(str(value or "flag").strip().lower())
    except ValueError as exc:
        raise ValueError(f"{source} 仅支持 flag 或 raise") from exc


def _normalize_log_level(value: Any, *, source: str) -> str:
    level = str(value or "INFO").strip().upper()
    if level not in _LOG_LEVELS:
        raise ValueError(f"{source} 必须是 {sorted(_LOG_LEVELS)} 之一")
    return level


@dataclass
class TrainingDefaults:
    learning_rate: float = 1.0
    max_epochs: int = 100
    seed: Optional[int] = None
    target_accuracy: float = 1.0
    init: str = "random"
    shuffle: bool = True

    @staticmethod
    def _normalize_init(value: Any, *, source: str) -> str:
        mode = str(value or "random").strip().lower()
        if mode not in _INIT_MODES:
            raise ValueError(f"{source} 仅支持 random 或 hebbian")
        return mode

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]] = None) -> "TrainingDefaults":
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ValueError("training 必须是字典")
        seed = data.get("seed")
        return cls(
            learning_rate=float(data.get("learning_rate", 1.0)),
            max_epochs=max(1, int(data.get("max_epochs", 100))),
            seed=None if seed is None else int(seed),
            target_accuracy=float(data.get("target_accuracy", 1.0)),
            init=cls._normalize_init(data.get("init", "random"), source="training.init"),
            shuffle=_to_bool(data.get("shuffle"), default=True),
        )

    def apply_env_overrides(self) -> "TrainingDefaults":
        return replace(
            self,
            learning_rate=_parse_env_float("MVQN_LEARNING_RATE", self.learning_rate),
            max_epochs=max(1, _parse_env_int("MVQN_MAX_EPOCHS", self.max_epochs)),
            seed=_parse_env_int("MVQN_SEED", self.seed),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "learning_rate": self.learning_rate,
            "max_epochs": self.max_epochs,
            "seed": self.seed,
            "target_accuracy": self.target_accuracy,
            "init": self.init,
            "shuffle": self.shuffle,
        }


@dataclass
class QuadratureDefaults:
    t: float = 1.0
    radial_nodes: int = 12
    angular_nodes: int = 25

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]] = None) -> "QuadratureDefaults":
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ValueError("quadrature 必须是字典")
        t = float(data.get("t", 1.0))
        if not t > 0:
            raise ValueError("quadrature.t 必须为正")
        return cls(
            t=t,
            radial_nodes=max(1, int(data.get("radial_nodes", 12))),
            angular_nodes=max(1, int(data.get("angular_nodes", 25))),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "radial_nodes": self.radial_nodes,
            "angular_nodes": self.angular_nodes,
        }


@dataclass
class MvqnConfig:
    training: TrainingDefaults = field(default_factory=TrainingDefaults)
    quadrature: QuadratureDefaults = field(default_factory=QuadratureDefaults)
    zero_policy: ZeroPolicy = ZeroPolicy.FLAG
    log_level: str = "INFO"
    log_dir: Optional[str] = None

    @classmethod
    def from_dict(
        cls,
        data: Optional[Dict[str, Any]] = None,
        *,
        defaults: Optional[Dict[str, Any]] = None,
    ) -> "MvqnConfig":
        if data is None:
            data = {}
        if defaults:
            if not isinstance(defaults, dict):
                raise ValueError("defaults 必须是字典")
            data = _deep_merge(defaults, data)
        if not isinstance(data, dict):
            raise ValueError("MVQN 配置必须是字典")
        log_dir = data.get("log_dir")
        return cls(
            training=TrainingDefaults.from_dict(data.get("training")),
            quadrature=QuadratureDefaults.from_dict(data.get("quadrature")),
            zero_policy=_normalize_zero_policy(data.get("zero_policy"), source="zero_policy"),
            log_level=_normalize_log_level(data.get("log_level"), source="log_level"),
            log_dir=None if log_dir in (None, "") else str(log_dir),
        )

    @classmethod
    def load(cls, config_path: str = DEFAULT_CONFIG_PATH, *, required: bool = False) -> "MvqnConfig":
        """读取 YAML 文件；默认文件不存在时回退到内置默认值。"""
        path = Path(config_path)
        if not path.exists():
            if required:
                raise FileNotFoundError(f"配置文件不存在: {path}")
            logger.debug("配置文件不存在，使用内置默认值: %s", path)
            return cls().apply_env_overrides()
        with path.open("r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
        if not isinstance(raw, dict):
            raise ValueError("MVQN 配置格式错误，必须是字典结构")
        return cls.from_dict(raw).apply_env_overrides()

    def apply_env_overrides(self) -> "MvqnConfig":
        log_dir = _env_or_default("MVQN_LOG_DIR", self.log_dir)
        return replace(
            self,
            training=self.training.apply_env_overrides(),
            zero_policy=_normalize_zero_policy(
                _env_or_default("MVQN_ZERO_POLICY", self.zero_policy.value),
                source="MVQN_ZERO_POLICY",
            ),
            log_level=_normalize_log_level(
                _env_or_default("MVQN_LOG_LEVEL", self.log_level),
                source="MVQN_LOG_LEVEL",
            ),
            log_dir=log_dir or None,
        )

    def resolve_seed(self, cli_seed: Optional[int] = None) -> int:
        if cli_seed is not None:
            return cli_seed
        if self.training.seed is not None:
            return self.training.seed
        return 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "training": self.training.to_dict(),
            "quadrature": self.quadrature.to_dict(),
            "zero_policy": self.zero_policy.value,
            "log_level": self.log_level,
            "log_dir": self.log_dir,
        }
