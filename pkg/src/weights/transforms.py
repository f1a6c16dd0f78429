#!/usr/bin/env python
# encoding: utf-8
"""
权重变换：V_{p'}(ω, v)、(1-r)^β 平移、缩放以及正则性刻画中的 ω₁、ω₂
"""

# 标准库导入
import logging

# 第三方库导入
import numpy as np

# 本地模块导入
from .base import RadialWeight, derived_weight
from .families import PowFamily
from ..quad import tail_converges
from ..utils.errors import DomainError

logger = logging.getLogger(__name__)


def _pow_exponent(w):
    """pow 族权重的指数，其他族返回 None"""
    if w.family == "pow":
        return float(w.param("a"))
    return None


def transform_V(omega, v, p):
    # type: (RadialWeight, RadialWeight, float) -> RadialWeight
    """
    V_{p'}(ω, v) = (ω/v)^{p'}·v，p' = p/(p-1)

    Raises:
        DomainError: p <= 1
    """
    if not p > 1.0:
        raise DomainError("transform_V 要求 p > 1，当前 p = {}".format(p))
    q = p / (p - 1.0)

    def evaluator(s):
        vs = v.omega(s)
        return np.power(omega.omega(s) / vs, q) * vs

    tail = None
    a, b = _pow_exponent(omega), _pow_exponent(v)
    if a is not None and b is not None:
        exponent = q * (a - b) + b
        coeff = (omega.factor / v.factor) ** q * v.factor
        if exponent > -1.0:
            def tail(s):
                return coeff * np.power(s, exponent + 1.0) / (exponent + 1.0)

    return derived_weight(evaluator, "V[{}|{}|p={}]".format(omega.spec, v.spec, p), tail)


def shift_weight(w, beta):
    # type: (RadialWeight, float) -> RadialWeight
    """
    ω_β(r) = (1-r)^β·ω(r)

    pow 族直接返回 pow 族权重。

    Raises:
        DomainError: 结果在边界处不可积
    """
    a = _pow_exponent(w)
    if a is not None:
        if not a + beta > -1.0:
            raise DomainError("平移后 (1-r)^{} 不可积".format(a + beta))
        impl = PowFamily(a=a + beta)
        return RadialWeight("pow", tuple(sorted(impl.params.items())), impl, factor=w.factor)

    def evaluator(s):
        return np.power(s, beta) * w.omega(s)

    if not tail_converges(evaluator):
        raise DomainError("平移后的权重在边界处不可积（{}，β = {}）".format(w.spec, beta))
    return derived_weight(evaluator, "shift[{}|beta={}]".format(w.spec, beta))


def scaled(w, c):
    # type: (RadialWeight, float) -> RadialWeight
    """c·ω"""
    return w.scaled(c)


def lemma9_omega1(w, a):
    # type: (RadialWeight, float) -> RadialWeight
    """
    ω₁(r) = ω(r)^{1-a}·(1-r)^{-a}

    ω₁ 一般在边界处不可积，只用于 ∫_0^r 型泛函。
    """
    if not a > 1.0:
        raise DomainError("参数 a 必须大于 1，当前: {}".format(a))

    def evaluator(s):
        return np.power(w.omega(s), 1.0 - a) * np.power(s, -a)

    return derived_weight(evaluator, "omega1[{}|a={}]".format(w.spec, a))


def lemma9_omega2(w, a):
    # type: (RadialWeight, float) -> RadialWeight
    """ω₂(r) = (ω(r)(1-r))^{-1/a}·ω(r)"""
    if not a > 1.0:
        raise DomainError("参数 a 必须大于 1，当前: {}".format(a))

    def evaluator(s):
        values = w.omega(s)
        return np.power(values * s, -1.0 / a) * values

    if not tail_converges(evaluator):
        raise DomainError("ω₂ 在边界处不可积（{}，a = {}）".format(w.spec, a))
    return derived_weight(evaluator, "omega2[{}|a={}]".format(w.spec, a))
