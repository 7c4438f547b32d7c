"""模型文件（schema_version 1）的规范化 JSON 读写。

文档为键排序、两空格缩进的 JSON。复数写作 ``[re, im]``；整数值不带小数部分，
其余浮点数使用最短的可往返文本，因此 保存 → 读取 → 保存 逐字节一致，权重逐位还原。
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from src.core.domain.errors import DatasetParseError, MvqnError, OutputWriteError, SchemaVersionError
from src.core.domain.mvqn import NeuronModel
from src.core.domain.network import Layer, LayerSpec, NetworkModel
from src.core.domain.qperceptron import MatrixWeight, PerceptronMode, PerceptronModel

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
_EXACT_INT_LIMIT = 2**53

Pair = Tuple[float, float]
AnyModel = Union[NeuronModel, NetworkModel, PerceptronModel]


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int


class NeuronDocument(_Document):
    kind: Literal["neuron"]
    k: int
    arity: int
    weights: List[Pair]


class LayerDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int
    neurons: List[List[Pair]]


class NetworkDocument(_Document):
    kind: Literal["network"]
    input_arity: int
    layers: List[LayerDocument]


class PerceptronDocument(_Document):
    """矩阵权重按行优先写四对数，标量权重写一对。"""

    kind: Literal["perceptron"]
    mode: Literal["matrix", "scalar"]
    weights: List[List[Pair]]


_DOCUMENTS = {
    "neuron": NeuronDocument,
    "network": NetworkDocument,
    "perceptron": PerceptronDocument,
}


def _number(value: float) -> Union[int, float]:
    value = float(value)
    if value.is_integer() and abs(value) < _EXACT_INT_LIMIT and not (value == 0 and math.copysign(1.0, value) < 0):
        return int(value)
    return value


def _pair(z: complex) -> List[Union[int, float]]:
    return [_number(z.real), _number(z.imag)]


def _pairs(values: np.ndarray) -> List[List[Union[int, float]]]:
    return [_pair(complex(z)) for z in values]


def _complex(pair: Pair) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def _vector(pairs: List[Pair]) -> np.ndarray:
    return np.array([_complex(p) for p in pairs], dtype=np.complex128)


def to_document(model: AnyModel) -> Dict[str, Any]:
    if isinstance(model, NeuronModel):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "neuron",
            "k": model.k,
            "arity": model.n,
            "weights": _pairs(model.weights),
        }
    if isinstance(model, NetworkModel):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "network",
            "input_arity": model.input_arity,
            "layers": [
                {"k": layer.spec.k, "neurons": [_pairs(n.weights) for n in layer.neurons]}
                for layer in model.layers
            ],
        }
    if isinstance(model, PerceptronModel):
        if model.mode is PerceptronMode.MATRIX:
            weights = [_pairs(w.matrix.reshape(-1)) for w in model.weights]
        else:
            weights = [[_pair(w)] for w in model.weights]
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "perceptron",
            "mode": model.mode.value,
            "weights": weights,
        }
    raise TypeError(f"不支持的模型类型: {type(model).__name__}")


def dumps_model(model: AnyModel) -> str:
    return json.dumps(to_document(model), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def save_model(model: AnyModel, path: Union[str, Path]) -> Path:
    path = Path(path)
    text = dumps_model(model)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as exc:
        raise OutputWriteError(f"无法写入模型文件 {path}: {exc}", operation="save_model", cause=exc) from exc
    logger.info("模型已保存: %s", path)
    return path


def _from_neuron_document(doc: NeuronDocument) -> NeuronModel:
    return NeuronModel(k=doc.k, n=doc.arity, weights=_vector(doc.weights))


def _from_network_document(doc: NetworkDocument) -> NetworkModel:
    layers = []
    arity = doc.input_arity
    for layer in doc.layers:
        neurons = tuple(NeuronModel(k=layer.k, n=arity, weights=_vector(w)) for w in layer.neurons)
        layers.append(Layer(spec=LayerSpec(neuron_count=len(neurons), k=layer.k), neurons=neurons))
        arity = len(neurons)
    return NetworkModel(input_arity=doc.input_arity, layers=tuple(layers))


def _from_perceptron_document(doc: PerceptronDocument) -> PerceptronModel:
    mode = PerceptronMode(doc.mode)
    if mode is PerceptronMode.MATRIX:
        for pairs in doc.weights:
            if len(pairs) != 4:
                raise SchemaVersionError("矩阵权重需要 4 个复数", operation="load_model")
        weights = tuple(MatrixWeight(_vector(pairs).reshape(2, 2)) for pairs in doc.weights)
    else:
        for pairs in doc.weights:
            if len(pairs) != 1:
                raise SchemaVersionError("标量权重需要 1 个复数", operation="load_model")
        weights = tuple(_complex(pairs[0]) for pairs in doc.weights)
    return PerceptronModel(mode=mode, weights=weights)


def loads_model(text: str) -> AnyModel:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetParseError(f"模型文件不是合法 JSON: {exc.msg}", operation="load_model", line=exc.lineno) from exc
    if not isinstance(raw, dict):
        raise SchemaVersionError("模型文件顶层必须是对象", operation="load_model")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"不支持的 schema_version: {version!r}（期望 {SCHEMA_VERSION}）", operation="load_model"
        )
    kind = raw.get("kind")
    document_type = _DOCUMENTS.get(kind)
    if document_type is None:
        raise SchemaVersionError(f"未知模型类型: {kind!r}", operation="load_model")
    try:
        doc = document_type.model_validate(raw)
    except ValidationError as exc:
        raise SchemaVersionError(f"模型文件结构不合法: {exc.error_count()} 处错误", operation="load_model", cause=exc) from exc

    try:
        if isinstance(doc, NeuronDocument):
            return _from_neuron_document(doc)
        if isinstance(doc, NetworkDocument):
            return _from_network_document(doc)
        return _from_perceptron_document(doc)
    except SchemaVersionError:
        raise
    except MvqnError as exc:
        raise SchemaVersionError(f"模型文件内容不一致: {exc}", operation="load_model", cause=exc) from exc


def load_model(path: Union[str, Path]) -> AnyModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DatasetParseError(f"无法读取模型文件: {path}", operation="load_model", cause=exc) from exc
    return loads_model(text)
