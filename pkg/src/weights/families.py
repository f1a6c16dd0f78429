#!/usr/bin/env python
# encoding: utf-8
"""
内置权重族

所有求值器以到边界距离 s = 1 - r 为自变量。闭式：
    pow     ω = s^a                      ω̂ = s^{a+1}/(a+1)
    std     ω = (a+1)(s(2-s))^a          ω̂ 由正则化不完全 Beta 函数给出
    log     ω = 1/(s·L_1⋯L_n·L_{n+1}^a)  ω̂ = L_{n+1}^{1-a}/(a-1)
    reglog  ω = s^a·L_1^b                ω̂ 由正则化上不完全 Gamma 函数给出
    exp     ω = exp(-c/s)                ω̂ = s·E_2(c/s)
其中 L_1 = log(e/s)，L_{k+1} = log(e·L_k)。
"""

# 标准库导入
from pathlib import Path

# 第三方库导入
import numpy as np
import pandas as pd
from scipy import special
from scipy.interpolate import PchipInterpolator

# 本地模块导入
from .base import WeightFamily
from ..utils.decorators import register_family
from ..utils.errors import DomainError, ParseError

# reglog 尾积分在 (a+1)·L_1 超过该值时改用渐近级数
_ASYMPTOTIC_SWITCH = 50.0
_ASYMPTOTIC_TERMS = 12


def iterated_logs(s, depth):
    """返回 [L_1(s), ..., L_depth(s)]"""
    s = np.asarray(s, dtype=float)
    logs = []
    current = 1.0 - np.log(s)
    for _ in range(depth):
        logs.append(current)
        current = 1.0 + np.log(current)
    return logs


@register_family("pow")
class PowFamily(WeightFamily):
    """ω(r) = (1 - r)^a"""

    PARAM_SCHEMA = {
        "a": {"type": float, "required": True, "exclusive_min": -1.0},
    }

    def omega(self, s):
        return np.power(s, self.a)

    def tail(self, s):
        return np.power(s, self.a + 1.0) / (self.a + 1.0)

    def moment(self, x):
        # ∫_0^1 r^{2x+1}(1-r)^a dr = B(2x+2, a+1)
        return np.exp(special.betaln(2.0 * x + 2.0, self.a + 1.0))


@register_family("std")
class StandardFamily(WeightFamily):
    """ω(r) = (a+1)(1 - r²)^a，核为 (1 - z ζ̄)^{-(2+a)}"""

    PARAM_SCHEMA = {
        "a": {"type": float, "required": True, "exclusive_min": -1.0},
    }

    def omega(self, s):
        return (self.a + 1.0) * np.power(s * (2.0 - s), self.a)

    def tail(self, s):
        a = self.a
        w = s * (2.0 - s)
        log_coeff = np.log(a + 1.0) - np.log(2.0) + special.betaln(a + 1.0, 0.5)
        return np.exp(log_coeff) * special.betainc(a + 1.0, 0.5, w)

    def moment(self, x):
        a = self.a
        return np.exp(np.log(a + 1.0) - np.log(2.0) + special.betaln(x + 1.0, a + 1.0))


@register_family("log")
class LogFamily(WeightFamily):
    """
    快速增长权重 ω = 1/(s·L_1⋯L_n·L_{n+1}^a)，a > 1

    n = 0 时为 (1-r)^{-1}·log(e/(1-r))^{-a}。
    """

    PARAM_SCHEMA = {
        "a": {"type": float, "required": True, "exclusive_min": 1.0},
        "n": {"type": int, "default": 0, "min": 0, "max": 6},
    }

    def omega(self, s):
        logs = iterated_logs(s, self.n + 1)
        product = s * np.power(logs[-1], self.a)
        for value in logs[:-1]:
            product = product * value
        return 1.0 / product

    def tail(self, s):
        last = iterated_logs(s, self.n + 1)[-1]
        return np.power(last, 1.0 - self.a) / (self.a - 1.0)


@register_family("reglog")
class RegLogFamily(WeightFamily):
    """正则权重 ω = s^a·log(e/s)^b，κ = 1/(a+1)"""

    PARAM_SCHEMA = {
        "a": {"type": float, "default": 0.0, "exclusive_min": -1.0},
        "b": {"type": float, "default": 1.0, "exclusive_min": -1.0},
    }

    def omega(self, s):
        return np.power(s, self.a) * np.power(1.0 - np.log(s), self.b)

    def tail(self, s):
        a, b = self.a, self.b
        s = np.asarray(s, dtype=float)
        L = 1.0 - np.log(s)
        X = (a + 1.0) * L
        result = np.empty_like(X)

        near = X <= _ASYMPTOTIC_SWITCH
        if np.any(near):
            log_coeff = (a + 1.0) - (b + 1.0) * np.log(a + 1.0) + special.gammaln(b + 1.0)
            result[near] = np.exp(log_coeff) * special.gammaincc(b + 1.0, X[near])

        far = ~near
        if np.any(far):
            # Γ(b+1)Q(b+1, X) = X^b e^{-X}·Σ_k (b)_k↓ / X^k
            Xf = X[far]
            series = np.ones_like(Xf)
            term = np.ones_like(Xf)
            for k in range(_ASYMPTOTIC_TERMS):
                term = term * (b - k) / Xf
                series = series + term
            result[far] = np.power(s[far], a + 1.0) * np.power(L[far], b) / (a + 1.0) * series
        return result


@register_family("exp")
class ExpFamily(WeightFamily):
    """非倍增权重 ω = exp(-c/s)"""

    PARAM_SCHEMA = {
        "c": {"type": float, "default": 1.0, "exclusive_min": 0.0},
    }

    def omega(self, s):
        return np.exp(-self.c / s)

    def tail(self, s):
        s = np.asarray(s, dtype=float)
        return s * special.expn(2, self.c / s)


@register_family("tabulated")
class TabulatedFamily(WeightFamily):
    """
    表格权重：CSV 列 s,omega，对 log ω 关于 log s 做单调三次插值

    表格范围外求值抛出 DomainError；tail 为最小 s 以下的质量。
    """

    PARAM_SCHEMA = {
        "file": {"type": str, "required": True},
        "tail": {"type": float, "default": 0.0, "min": 0.0},
    }

    def __init__(self, **params):
        super(TabulatedFamily, self).__init__(**params)
        self._load(Path(self.file))
        self.base_mass = self.params["tail"]

    def _load(self, path):
        if not path.is_file():
            raise ParseError("表格权重文件不存在: {}".format(path), token=str(path))
        try:
            frame = pd.read_csv(str(path))
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise ParseError("表格权重文件格式错误: {}".format(e), token=str(path))
        if list(frame.columns[:2]) != ["s", "omega"]:
            raise ParseError("表格权重文件表头必须为 s,omega，当前: {}".format(
                ",".join(str(c) for c in frame.columns)), token=str(path))

        frame = frame.sort_values("s")
        s = frame["s"].to_numpy(dtype=float)
        omega = frame["omega"].to_numpy(dtype=float)
        if len(s) < 2:
            raise DomainError("表格权重至少需要 2 行")
        if np.any(np.diff(s) <= 0.0) or s[0] <= 0.0 or s[-1] > 1.0:
            raise DomainError("表格权重的 s 必须严格递增且位于 (0, 1]")
        if np.any(omega <= 0.0) or not np.all(np.isfinite(omega)):
            raise DomainError("表格权重必须为正有限值")

        self.min_s = float(s[0])
        self.max_s = float(s[-1])
        self._interp = PchipInterpolator(np.log(s), np.log(omega), extrapolate=False)

    @property
    def depth(self):
        # type: () -> int
        """表格可支持的网格深度"""
        return int(np.floor(-np.log2(self.min_s)))

    def omega(self, s):
        s = np.asarray(s, dtype=float)
        # 端点处允许舍入误差
        slack = 1e-12
        if np.any(s < self.min_s * (1.0 - slack)) or np.any(s > self.max_s * (1.0 + slack)):
            raise DomainError("表格权重在 [{}, {}] 之外求值".format(self.min_s, self.max_s))
        x = np.clip(np.log(s), np.log(self.min_s), np.log(self.max_s))
        return np.exp(self._interp(x))

    def describe(self):
        text = "tabulated:file={}".format(self.file)
        if self.params["tail"]:
            text += ",tail={!r}".format(self.params["tail"])
        return text
