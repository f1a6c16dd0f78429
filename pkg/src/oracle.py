#!/usr/bin/env python
# encoding: utf-8
"""
标准权重的闭式参考值

std 族 ω = (α+1)(1-r²)^α 的矩、核与 p 次有界性判据；pow 族 (1-r)^α 的尾积分与矩。
Beta 函数一律经由 log-Gamma 计算。
"""

# 标准库导入
import math
from enum import Enum

# 第三方库导入
import numpy as np
from scipy import special

# 本地模块导入
from .utils.errors import DomainError

# 判据边界的相对容差
BOUNDARY_RTOL = 1e-12


class StdVerdict(Enum):
    """标准权重对的有界性判据结果"""
    HOLDS = "Holds"
    FAILS = "Fails"
    BOUNDARY = "Boundary"


def _check_exponent(name, value):
    if not value > -1.0:
        raise DomainError("{} 必须大于 -1，当前: {}".format(name, value))


def std_moment(alpha, n):
    # type: (float, float) -> float
    """ω_n = (α+1)·B(n+1, α+1)/2"""
    _check_exponent("alpha", alpha)
    if n < 0:
        raise DomainError("n 必须非负，当前: {}".format(n))
    return float(np.exp(np.log(alpha + 1.0) - np.log(2.0) + special.betaln(n + 1.0, alpha + 1.0)))


def std_kernel(alpha, a, z):
    # type: (float, complex, complex) -> complex
    """B^α_a(z) = (1 - z·ā)^{-(2+α)}，主值分支"""
    return std_kernel_derivative(alpha, a, z, 0)


def std_kernel_derivative(alpha, a, z, N):
    # type: (float, complex, complex, int) -> complex
    """∂_z^N B^α_a(z) = (2+α)_N·ā^N·(1 - z·ā)^{-(2+α)-N}"""
    _check_exponent("alpha", alpha)
    if N < 0:
        raise DomainError("导数阶数必须非负，当前: {}".format(N))
    a_bar = np.conj(complex(a))
    w = 1.0 - complex(z) * a_bar
    if abs(complex(z) * a_bar) >= 1.0:
        raise DomainError("要求 |a·z| < 1，当前 |a·z| = {}".format(abs(complex(z) * a_bar)))
    rising = special.poch(2.0 + alpha, N)
    return complex(rising * a_bar ** N * w ** (-(2.0 + alpha) - N))


def std_verdict(alpha, beta, p):
    # type: (float, float, float) -> StdVerdict
    """P_α 在 L^p_β 上有界当且仅当 β+1 < p(α+1)"""
    _check_exponent("alpha", alpha)
    _check_exponent("beta", beta)
    if p < 1.0:
        raise DomainError("p 必须 >= 1，当前: {}".format(p))
    lhs, rhs = beta + 1.0, p * (alpha + 1.0)
    if abs(lhs - rhs) <= BOUNDARY_RTOL * max(abs(lhs), abs(rhs), 1.0):
        return StdVerdict.BOUNDARY
    return StdVerdict.HOLDS if lhs < rhs else StdVerdict.FAILS


def std_kappa(alpha):
    # type: (float) -> float
    _check_exponent("alpha", alpha)
    return 1.0 / (alpha + 1.0)


def pow_tail(alpha, r):
    # type: (float, float) -> float
    """(1-r)^α 的 ω̂(r) = (1-r)^{α+1}/(α+1)"""
    _check_exponent("alpha", alpha)
    return (1.0 - r) ** (alpha + 1.0) / (alpha + 1.0)


def pow_moment(alpha, x):
    # type: (float, float) -> float
    """(1-r)^α 的矩 B(2x+2, α+1)"""
    _check_exponent("alpha", alpha)
    return float(np.exp(special.betaln(2.0 * x + 2.0, alpha + 1.0)))


def _power_integral(exponent, x):
    # type: (float, float) -> float
    """∫_0^x (1-r)^e dr"""
    if x == 0.0:
        return 0.0
    log_s = math.log1p(-x)
    if abs(exponent + 1.0) <= BOUNDARY_RTOL:
        return -log_s
    return -math.expm1((exponent + 1.0) * log_s) / (exponent + 1.0)


def forelli_rudin(alpha, beta, p, a):
    # type: (float, float, float, float) -> float
    """
    ∫_0^{|a|} v̂(r)/(ω̂(r)^p (1-r)^p) dr，ω = (1-r)^α，v = (1-r)^β

    被积函数为 (α+1)^p/(β+1)·(1-r)^{β+1-p(α+2)}；指数为 -1 时取对数情形。
    """
    _check_exponent("alpha", alpha)
    _check_exponent("beta", beta)
    x = abs(a)
    if not 0.0 <= x < 1.0:
        raise DomainError("要求 |a| < 1，当前: {}".format(x))
    exponent = beta + 1.0 - p * (alpha + 2.0)
    coeff = (alpha + 1.0) ** p / (beta + 1.0)
    return coeff * _power_integral(exponent, x)
