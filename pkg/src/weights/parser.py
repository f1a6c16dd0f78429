#!/usr/bin/env python
# encoding: utf-8
"""
权重描述解析

语法：family ':' key '=' value (',' key '=' value)*
所有族额外接受 scale=<c>（c > 0）与 norm=1（把 ∫_0^1 ω 归一为 1）。
"""

# 标准库导入
import re
from typing import Any, Dict

# 本地模块导入
from .base import RadialWeight
from ..utils.decorators import FAMILY_REGISTRY
from ..utils.errors import DomainError, ParseError

_FAMILY_RE = re.compile(r"^[a-z]+$")
_KEY_RE = re.compile(r"^[a-z_]+$")
_NUMBER_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")

# 所有族共有的修饰参数
MODIFIER_KEYS = ("scale", "norm")


def _coerce(family, key, token, schema):
    # type: (str, str, str, Dict[str, Any]) -> Any
    """按参数模式转换取值"""
    field_type = schema.get("type", float)
    if field_type is str:
        if not token:
            raise ParseError("参数 {} 的取值为空".format(key), token=token)
        return token
    if not _NUMBER_RE.match(token):
        raise ParseError("权重族 {} 参数 {} 的取值不是数字: '{}'".format(family, key, token), token=token)
    if field_type is int:
        value = float(token)
        if not value.is_integer():
            raise ParseError("权重族 {} 参数 {} 必须为整数: '{}'".format(family, key, token), token=token)
        return int(value)
    return float(token)


def parse_weight(spec):
    # type: (str) -> RadialWeight
    """
    解析权重描述

    Args:
        spec: 如 "pow:a=0"、"log:a=2,n=1"、"tabulated:file=w.csv"

    Returns:
        RadialWeight: 附带闭式（若该族存在）

    Raises:
        ParseError: 语法错误，消息中给出出错的记号
        DomainError: 参数超出允许范围
    """
    # 在此处导入以完成族注册
    from . import families  # noqa: F401
    from .functionals import total_mass

    if not isinstance(spec, str) or not spec.strip():
        raise ParseError("权重描述为空", token="")
    text = spec.strip()
    family, sep, body = text.partition(":")
    family = family.strip()
    if not _FAMILY_RE.match(family):
        raise ParseError("无效的权重族名: '{}'".format(family), token=family)
    if family not in FAMILY_REGISTRY:
        raise ParseError("未知的权重族: '{}'（可用: {}）".format(
            family, ", ".join(sorted(FAMILY_REGISTRY))), token=family)
    family_cls = FAMILY_REGISTRY[family]
    if sep and not body.strip():
        raise ParseError("权重描述在 ':' 之后缺少参数", token=text)

    params = {}  # type: Dict[str, Any]
    modifiers = {}  # type: Dict[str, float]
    if body.strip():
        for item in body.split(","):
            key, eq, token = item.partition("=")
            key, token = key.strip(), token.strip()
            if not eq or not _KEY_RE.match(key):
                raise ParseError("无效的参数项: '{}'".format(item.strip()), token=item.strip())
            if key in params or key in modifiers:
                raise ParseError("参数重复: '{}'".format(key), token=key)
            if key in MODIFIER_KEYS:
                modifiers[key] = _coerce(family, key, token, {"type": float})
                continue
            schema = family_cls.PARAM_SCHEMA.get(key)
            if schema is None:
                raise ParseError("权重族 {} 不接受参数: '{}'".format(family, key), token=key)
            params[key] = _coerce(family, key, token, schema)

    impl = family_cls(**params)
    frozen = tuple(sorted(impl.params.items()))

    scale = modifiers.get("scale", 1.0)
    if not scale > 0:
        raise DomainError("scale 必须为正，当前: {}".format(scale))
    weight = RadialWeight(family, frozen, impl, factor=scale)

    norm = modifiers.get("norm", 0.0)
    if norm not in (0.0, 1.0):
        raise ParseError("norm 只能取 0 或 1，当前: {}".format(norm), token=str(norm))
    if norm == 1.0:
        mass = total_mass(weight)
        weight = RadialWeight(family, frozen, impl, factor=scale / mass, normalized=True)
    return weight
