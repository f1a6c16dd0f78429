#!/usr/bin/env python
# encoding: utf-8
"""
Hardy 型检验量

K(r) = ∫_0^r dt/(ω̂(t)(1-t))
Q(t) = ω̂(t)^{p/p'}·∫_0^t K(r)^p ω(r) dr

Q 是示性函数 χ_{[t,1)} 检验 P⁺_ω 在 L^p_ω 上有界性所得的量，Q 无界时 P⁺_ω 无界。
"""

# 标准库导入
from typing import Callable, Optional

# 第三方库导入
import numpy as np

# 本地模块导入
from ..quad import composite_rule, integrate_s
from ..utils.configs import DEFAULT_NUMERICS, NumericsConfig
from ..utils.errors import DomainError
from ..weights import RadialWeight, tail_function

# 固定复合规则向区间左端加密的层数
_RULE_LEVELS_LO = 48
_RULE_LEVELS_HI = 4


def hardy_K(omega, r, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
    """
    K(r) = ∫_0^r dt/(ω̂(t)(1-t))

    Raises:
        DomainError: r 不在 [0, 1) 内
    """
    if not 0.0 <= r < 1.0:
        raise DomainError("半径必须位于 [0, 1) 内，当前: {!r}".format(r))
    if r == 0.0:
        return 0.0
    config = config or DEFAULT_NUMERICS
    tail = tail_function(omega, config)

    def g(s):
        return 1.0 / (tail(s) * s)

    value, _ = integrate_s(g, 1.0 - r, 1.0, config=config)
    return value


def hardy_K_profile(omega, s, config=None, tail=None):
    # type: (RadialWeight, np.ndarray, Optional[NumericsConfig], Optional[Callable]) -> np.ndarray
    """K 在一组距离 s = 1 - r 上的向量化值（固定复合规则，不做误差控制）"""
    s = np.asarray(s, dtype=float)
    tail = tail or tail_function(omega, config)
    xi, wi = composite_rule(_RULE_LEVELS_LO, _RULE_LEVELS_HI)
    width = 1.0 - s
    y = s[:, None] + width[:, None] * xi[None, :]
    return width * ((1.0 / (tail(y) * y)) * wi[None, :]).sum(axis=1)


def muckenhoupt_Q(omega, p, t, config=None, tail=None):
    # type: (RadialWeight, float, float, Optional[NumericsConfig], Optional[Callable]) -> float
    """
    Q(t) = ω̂(t)^{p/p'}·∫_0^t K(r)^p ω(r) dr

    Args:
        omega: 权重
        p: 指数，p > 1
        t: 示性函数的下端点，t ∈ [0, 1)

    Raises:
        DomainError: p <= 1 或 t 不在 [0, 1) 内
    """
    if not p > 1.0:
        raise DomainError("Q(t) 要求 p > 1，当前: {}".format(p))
    if not 0.0 <= t < 1.0:
        raise DomainError("t 必须位于 [0, 1) 内，当前: {!r}".format(t))
    if t == 0.0:
        return 0.0
    config = config or DEFAULT_NUMERICS
    s_t = 1.0 - t
    xi, wi = composite_rule(_RULE_LEVELS_LO, _RULE_LEVELS_HI)
    u = s_t + t * xi
    tail = tail or tail_function(omega, config)
    inner = np.power(hardy_K_profile(omega, u, config, tail), p) * omega.omega(u)
    integral = float(np.sum(t * wi * inner))
    outer = float(tail(np.array([s_t]))[0])
    return outer ** (p - 1.0) * integral
