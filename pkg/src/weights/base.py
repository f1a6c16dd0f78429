#!/usr/bin/env python
# encoding: utf-8
"""
径向权重基类

权重族定义参数模式、逐点求值器（到边界距离 s = 1 - r 参数化）以及可选的闭式：
尾积分 ω̂、矩 ω_x。RadialWeight 把族实例、参数与缩放因子包装为不可变值对象。

权重族使用方法：
    @register_family("pow")
    class PowFamily(WeightFamily):
        PARAM_SCHEMA = {"a": {"type": float, "required": True, "exclusive_min": -1.0}}

        def omega(self, s):
            return s ** self.a
"""

# 标准库导入
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

# 第三方库导入
import numpy as np

# 本地模块导入
from ..utils.config_validator import ConfigValidator
from ..utils.errors import DomainError, ParseError


class WeightFamily(ABC):
    """权重族基类"""

    NAME = ""
    # 参数模式，格式同 ConfigValidator.validate_schema
    PARAM_SCHEMA = {}  # type: Dict[str, Dict[str, Any]]
    # 表格权重的最小可求值距离；其余族为 0
    min_s = 0.0
    # s < min_s 部分的质量
    base_mass = 0.0

    def __init__(self, **params):
        self.params = self.validate_params(params)
        for key, value in self.params.items():
            setattr(self, key, value)

    @classmethod
    def validate_params(cls, params):
        # type: (Dict[str, Any]) -> Dict[str, Any]
        """
        验证族参数

        Raises:
            ParseError: 存在未知参数或缺少必需参数
            DomainError: 参数超出允许范围
        """
        unknown = [key for key in params if key not in cls.PARAM_SCHEMA]
        if unknown:
            raise ParseError("权重族 {} 不接受参数: {}".format(cls.NAME, ", ".join(unknown)), token=unknown[0])
        missing = [key for key, schema in cls.PARAM_SCHEMA.items()
                   if schema.get("required") and key not in params]
        if missing:
            raise ParseError("权重族 {} 缺少参数: {}".format(cls.NAME, ", ".join(missing)), token=cls.NAME)
        values = ConfigValidator.merge_with_defaults(
            params, ConfigValidator.extract_defaults_from_schema(cls.PARAM_SCHEMA))
        try:
            ConfigValidator.validate_schema(values, cls.PARAM_SCHEMA)
        except ValueError as e:
            raise DomainError("权重族 {} 参数无效: {}".format(cls.NAME, e))
        return values

    @abstractmethod
    def omega(self, s):
        # type: (np.ndarray) -> np.ndarray
        """ω(1 - s)，s ∈ (0, 1]"""

    def tail(self, s):
        # type: (np.ndarray) -> Optional[np.ndarray]
        """闭式 ω̂(1 - s) = ∫_0^s ω；无闭式时返回 None"""
        return None

    def moment(self, x):
        # type: (np.ndarray) -> Optional[np.ndarray]
        """闭式矩 ω_x；无闭式时返回 None"""
        return None

    @property
    def has_closed_tail(self):
        # type: () -> bool
        return self.tail(np.array([0.5])) is not None

    @property
    def has_closed_moment(self):
        # type: () -> bool
        return self.moment(np.array([0.0])) is not None

    def describe(self):
        # type: () -> str
        items = ",".join("{}={}".format(k, _fmt(v)) for k, v in sorted(self.params.items()))
        return "{}:{}".format(self.NAME, items) if items else self.NAME


def _fmt(value):
    if isinstance(value, float) and value.is_integer():
        return repr(int(value))
    return str(value)


class DerivedFamily(WeightFamily):
    """
    由逐点公式导出的权重（变换结果），按表格求值器对待

    可选携带闭式尾积分。
    """

    NAME = "tabulated"

    def __init__(self, evaluator, description, tail=None):
        # type: (Callable[[np.ndarray], np.ndarray], str, Optional[Callable]) -> None
        self.params = {}
        self._evaluator = evaluator
        self._tail = tail
        self.description = description

    def omega(self, s):
        return self._evaluator(s)

    def tail(self, s):
        if self._tail is None:
            return None
        return self._tail(s)

    def describe(self):
        return self.description


@dataclass(frozen=True)
class RadialWeight:
    """
    径向权重

    family 为族名（std/pow/log/reglog/exp/tabulated），params 为排序后的参数对，
    factor 为缩放因子（含归一化），normalized 表示是否已把 ∫_0^1 ω 归一为 1。
    """
    family: str
    params: Tuple[Tuple[str, Any], ...]
    impl: WeightFamily = field(compare=False, repr=False)
    factor: float = 1.0
    normalized: bool = False

    def __post_init__(self):
        if not (self.factor > 0 and np.isfinite(self.factor)):
            raise DomainError("权重缩放因子必须为正有限数，当前: {}".format(self.factor))

    @property
    def spec(self):
        # type: () -> str
        """可被解析器重新读取的描述（导出权重为说明性文本）"""
        text = self.impl.describe()
        extra = []
        if self.factor != 1.0 and not self.normalized:
            extra.append("scale={!r}".format(self.factor))
        if self.normalized:
            extra.append("norm=1")
        if extra:
            text += ("," if ":" in text else ":") + ",".join(extra)
        return text

    @property
    def min_s(self):
        # type: () -> float
        return self.impl.min_s

    def param(self, name, default=None):
        return dict(self.params).get(name, default)

    def omega(self, s):
        # type: (Any) -> np.ndarray
        """逐点求值 ω(1 - s)"""
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            return self.factor * self.impl.omega(s)

    def at_radius(self, r):
        # type: (Any) -> np.ndarray
        """按半径 r 求值（r 接近 1 时精度受限，优先使用 omega(s)）"""
        return self.omega(1.0 - np.asarray(r, dtype=float))

    def closed_tail(self, s):
        # type: (Any) -> Optional[np.ndarray]
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            value = self.impl.tail(s)
        return None if value is None else self.factor * value

    def closed_moment(self, x):
        # type: (Any) -> Optional[np.ndarray]
        value = self.impl.moment(np.asarray(x, dtype=float))
        return None if value is None else self.factor * value

    @property
    def has_closed_tail(self):
        # type: () -> bool
        return self.impl.has_closed_tail

    @property
    def has_closed_moment(self):
        # type: () -> bool
        return self.impl.has_closed_moment

    def scaled(self, c):
        # type: (float) -> RadialWeight
        """返回 c·ω"""
        if not c > 0:
            raise DomainError("缩放常数必须为正，当前: {}".format(c))
        return RadialWeight(self.family, self.params, self.impl, self.factor * c, False)

    def __str__(self):
        return self.spec


def derived_weight(evaluator, description, tail=None):
    # type: (Callable[[np.ndarray], np.ndarray], str, Optional[Callable]) -> RadialWeight
    """构造导出（表格求值器）权重"""
    impl = DerivedFamily(evaluator, description, tail)
    return RadialWeight("tabulated", (("derived", description),), impl)
