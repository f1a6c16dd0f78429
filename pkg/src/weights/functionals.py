#!/usr/bin/env python
# encoding: utf-8
"""
权重导出泛函

ω̂(r) = ∫_r^1 ω、∫_0^r ω、ω*(r) = ∫_r^1 ω(t) log(t/r) t dt、矩 ω_x、ψ_ω、ψ̃_ω 与面积质量。
标量接口接收半径 r；网格接口直接在 s = 1 - r 上计算。
"""

# 标准库导入
import logging
from typing import Callable, Optional

# 第三方库导入
import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

# 本地模块导入
from .base import RadialWeight
from ..quad import DyadicGrid, composite_rule, dyadic_integrals, gauss_legendre, integrate_s
from ..utils.configs import DEFAULT_NUMERICS, NumericsConfig
from ..utils.errors import DomainError, NumericError

logger = logging.getLogger(__name__)

# 矩表中逐项计算的最大 n，更大的 n 由 log-log 样条插值
EXACT_MOMENT_LIMIT = 2048
# 固定复合规则向两端加密的层数
_RULE_LEVELS_LO = 48
_RULE_LEVELS_HI = 8
_OUTER_LEVELS = 40


def _check_radius(r, allow_zero=True):
    # type: (float, bool) -> float
    r = float(r)
    if not np.isfinite(r) or r < 0.0 or r >= 1.0 or (r == 0.0 and not allow_zero):
        interval = "[0, 1)" if allow_zero else "(0, 1)"
        raise DomainError("半径必须位于 {} 内，当前: {!r}".format(interval, r))
    return r


def _lower_limit(w):
    # type: (RadialWeight) -> float
    return w.min_s


def _below_table(w):
    # type: (RadialWeight) -> float
    """表格下界以下的质量（已含缩放）"""
    return w.factor * w.impl.base_mass if w.min_s > 0.0 else 0.0


def tail_at_s(w, s, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
    """ω̂ 在距离 s 处的值，s ∈ (0, 1]"""
    closed = w.closed_tail(s)
    if closed is not None:
        return float(closed)
    lo = _lower_limit(w)
    if s < lo:
        raise DomainError("表格权重在 s = {!r} 处超出表格范围（最小 {!r}）".format(s, lo))
    value, _ = integrate_s(w.omega, lo, s, config=config)
    return value + _below_table(w)


def tail_integral(w, r, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
    """
    ω̂(r) = ∫_r^1 ω(t) dt

    Args:
        w: 径向权重
        r: 半径，r ∈ [0, 1)

    Returns:
        float: 正值

    Raises:
        DomainError: r 不在 [0, 1) 内
        NumericError: 求积未收敛
    """
    r = _check_radius(r)
    value = tail_at_s(w, 1.0 - r, config)
    if not value > 0.0:
        raise NumericError("ω̂({!r}) 下溢为 {!r}".format(r, value), location=r)
    return value


def total_mass(w, config=None):
    # type: (RadialWeight, Optional[NumericsConfig]) -> float
    """∫_0^1 ω(s) ds"""
    return tail_at_s(w, 1.0, config)


def head_integral(w, r, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
    """∫_0^r ω(t) dt"""
    r = _check_radius(r)
    if r == 0.0:
        return 0.0
    value, _ = integrate_s(w.omega, 1.0 - r, 1.0, config=config)
    return value


def tail_on_grid(w, grid, config=None):
    # type: (RadialWeight, DyadicGrid, Optional[NumericsConfig]) -> np.ndarray
    """ω̂ 在网格各层 s_k 处的值"""
    closed = w.closed_tail(grid.s)
    if closed is not None:
        return np.asarray(closed, dtype=float)
    if w.min_s > 0.0:
        return np.array([tail_at_s(w, s, config) for s in grid.s])
    return dyadic_integrals(w.omega, grid, config=config, with_head=False).tail


def head_on_grid(w, grid, config=None):
    # type: (RadialWeight, DyadicGrid, Optional[NumericsConfig]) -> np.ndarray
    """∫_0^{r_k} ω 在网格各层的值"""
    return dyadic_integrals(w.omega, grid, config=config, with_tail=False).head


def psi(w, r, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
    """ψ_ω(r) = ω̂(r)/ω(r)"""
    r = _check_radius(r)
    density = float(w.omega(1.0 - r))
    if not density > 0.0:
        raise DomainError("ω 在 r = {!r} 处为 0，ψ_ω 无定义".format(r))
    return tail_integral(w, r, config) / density


def psi_tilde(w, r, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
    """ψ̃_ω(r) = (∫_0^r ω)/ω(r)"""
    r = _check_radius(r)
    density = float(w.omega(1.0 - r))
    if not density > 0.0:
        raise DomainError("ω 在 r = {!r} 处为 0，ψ̃_ω 无定义".format(r))
    return head_integral(w, r, config) / density


def psi_ratio_on_grid(w, grid, config=None):
    # type: (RadialWeight, DyadicGrid, Optional[NumericsConfig]) -> np.ndarray
    """ψ_ω(r_k)/(1 - r_k)"""
    s = grid.s
    return tail_on_grid(w, grid, config) / (w.omega(s) * s)


def _associated_integrand(w, r):
    s = 1.0 - r
    closed = w.has_closed_tail

    if closed:
        # 分部积分：ω*(r) = ∫_0^s (1 + log((1-u)/r))·ω̂(u) du
        def g(u):
            return (1.0 + np.log1p((s - u) / r)) * w.closed_tail(u)
    else:
        def g(u):
            return np.log1p((s - u) / r) * (1.0 - u) * w.omega(u)
    return g


def associated_weight(w, r, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
    """
    ω*(r) = ∫_r^1 ω(t) log(t/r) t dt

    Raises:
        DomainError: r = 0（奇点）或 r 不在 (0, 1) 内
    """
    r = _check_radius(r, allow_zero=False)
    s = 1.0 - r
    g = _associated_integrand(w, r)
    lo = _lower_limit(w) if not w.has_closed_tail else 0.0
    if lo > s:
        raise DomainError("表格权重在 s = {!r} 处超出表格范围".format(s))
    value, _ = integrate_s(g, lo, s, config=config)
    if lo > 0.0:
        value += _below_table(w) * np.log(1.0 / r)
    if not value > 0.0:
        raise NumericError("ω*({!r}) 下溢为 {!r}".format(r, value), location=r)
    return value


def associated_profile(w, s):
    # type: (RadialWeight, np.ndarray) -> np.ndarray
    """
    ω* 在一组距离 s 上的向量化值（固定复合规则）

    Args:
        s: 距离数组，0 < s < 1
    """
    s = np.asarray(s, dtype=float)
    xi, wi = composite_rule(_RULE_LEVELS_LO, _RULE_LEVELS_HI)
    u = s[:, None] * xi[None, :]
    r = (1.0 - s)[:, None]
    if w.has_closed_tail:
        h = (1.0 + np.log1p((s[:, None] - u) / r)) * w.closed_tail(u)
    else:
        lo = _lower_limit(w)
        inside = u >= lo
        h = np.zeros_like(u)
        kernel = np.log1p((s[:, None] - u) / r) * (1.0 - u)
        h[inside] = kernel[inside] * w.omega(u[inside])
    values = (h * wi[None, :]).sum(axis=1) * s
    if not w.has_closed_tail and w.min_s > 0.0:
        values += _below_table(w) * np.log(1.0 / (1.0 - s))
    return values


def associated_moment(w, x):
    # type: (RadialWeight, float) -> float
    """ω*_x = ∫_0^1 r^{2x+1} ω*(r) dr，直接对 ω* 求积"""
    if x < 0:
        raise DomainError("矩指数必须非负，当前: {}".format(x))
    nodes, weights = composite_rule(_OUTER_LEVELS, _OUTER_LEVELS)
    star = associated_profile(w, nodes)
    r = 1.0 - nodes
    return float(np.sum(weights * np.power(r, 2.0 * x + 1.0) * star))


def moment(w, x, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
    """
    ω_x = ∫_0^1 r^{2x+1} ω(r) dr

    闭式优先；ω̂ 有闭式时用分部积分 ω_x = (2x+1)∫_0^1 r^{2x} ω̂(r) dr。
    """
    if x < 0:
        raise DomainError("矩指数必须非负，当前: {}".format(x))
    closed = w.closed_moment(x)
    if closed is not None:
        return float(closed)
    if w.has_closed_tail:
        def g(s):
            return np.exp(2.0 * x * np.log1p(-s)) * w.closed_tail(s)

        value, _ = integrate_s(g, 0.0, 1.0, config=config)
        return (2.0 * x + 1.0) * value

    def h(s):
        return np.exp((2.0 * x + 1.0) * np.log1p(-s)) * w.omega(s)

    value, _ = integrate_s(h, _lower_limit(w), 1.0, config=config)
    return value + _below_table(w)


def _moments_by_rule(w, n):
    # type: (RadialWeight, np.ndarray) -> np.ndarray
    """固定复合规则同时计算多个矩"""
    nodes, weights = composite_rule(_RULE_LEVELS_LO, _RULE_LEVELS_HI)
    log_r = np.log1p(-nodes)
    if w.has_closed_tail:
        profile = weights * w.closed_tail(nodes)
        powers = np.exp(np.outer(2.0 * n, log_r))
        return (2.0 * n + 1.0) * (powers @ profile)
    inside = nodes >= _lower_limit(w)
    profile = np.zeros_like(nodes)
    profile[inside] = weights[inside] * w.omega(nodes[inside])
    powers = np.exp(np.outer(2.0 * n + 1.0, log_r))
    return powers @ profile + _below_table(w)


def moment_table(w, n_max, config=None):
    # type: (RadialWeight, int, Optional[NumericsConfig]) -> np.ndarray
    """
    矩表 ω_0..ω_{n_max}

    n <= 2048 逐项计算；更大的 n 在几何采样点上计算后对 log ω_n 关于 log n 做三次样条。
    """
    if n_max < 0:
        raise DomainError("n_max 必须非负，当前: {}".format(n_max))
    n = np.arange(n_max + 1, dtype=float)
    closed = w.closed_moment(n)
    if closed is not None:
        return np.asarray(closed, dtype=float)

    exact_n = n[:EXACT_MOMENT_LIMIT + 1]
    table = np.empty(n_max + 1)
    table[:len(exact_n)] = _moments_by_rule(w, exact_n)
    if n_max > EXACT_MOMENT_LIMIT:
        count = int(np.ceil(8 * np.log2(n_max / EXACT_MOMENT_LIMIT))) + 1
        samples = np.unique(np.round(np.geomspace(EXACT_MOMENT_LIMIT // 2, n_max, count + 8)))
        sample_values = _moments_by_rule(w, samples)
        spline = CubicSpline(np.log(samples), np.log(sample_values))
        rest = n[EXACT_MOMENT_LIMIT + 1:]
        table[EXACT_MOMENT_LIMIT + 1:] = np.exp(spline(np.log(rest)))
        logger.debug("矩表 n > {} 由 {} 个采样点样条插值".format(EXACT_MOMENT_LIMIT, len(samples)))
    if not np.all(table > 0.0):
        raise NumericError("矩表出现非正值（{}）".format(w.spec))
    return table


def area_mass(w, config=None):
    # type: (RadialWeight, Optional[NumericsConfig]) -> float
    """ω(𝔻) = 2∫_0^1 r ω(r) dr = 2ω_0"""
    return 2.0 * moment(w, 0.0, config)


def probe_grid(w, config=None, depth=None):
    # type: (RadialWeight, Optional[NumericsConfig], Optional[int]) -> DyadicGrid
    """权重可用的二进网格（表格权重截断到表格深度，保留一层给 (1+r)/2 探测）"""
    config = config or DEFAULT_NUMERICS
    depth = depth or config.grid_depth
    if w.min_s > 0.0:
        table_depth = int(np.floor(-np.log2(w.min_s))) - 1
        if table_depth < depth:
            logger.warning("网格深度截断到表格深度 {}（{}）".format(table_depth, w.spec))
            depth = table_depth
    return DyadicGrid(depth)


# tail_function 的插值节点密度（每个二倍区间的节点数）
_KNOTS_PER_OCTAVE = 8


def tail_function(w, config=None):
    # type: (RadialWeight, Optional[NumericsConfig]) -> Callable[[np.ndarray], np.ndarray]
    """
    向量化的 s -> ω̂(s)

    闭式优先；否则在 s = 2^{-j/8} 节点上累加 Gauss-Legendre 分段积分，
    再对 log ω̂ 关于 log s 做 PCHIP 插值。节点范围以外逐点求积。
    """
    if w.has_closed_tail:
        return w.closed_tail
    config = config or DEFAULT_NUMERICS

    lo = max(_lower_limit(w), 2.0 ** -(config.max_depth + 2))
    count = int(np.floor(-np.log2(lo) * _KNOTS_PER_OCTAVE))
    knots = 2.0 ** (-np.arange(count + 1) / _KNOTS_PER_OCTAVE)
    x, wx = gauss_legendre(config.panel_order)
    a, b = knots[1:], knots[:-1]
    nodes = a[:, None] + (b - a)[:, None] * x[None, :]
    with np.errstate(over="ignore", under="ignore"):
        pieces = (b - a) * (w.omega(nodes) * wx[None, :]).sum(axis=1)
    innermost = tail_at_s(w, float(knots[-1]), config)
    tails = innermost + np.concatenate((np.cumsum(pieces[::-1])[::-1], [0.0]))

    positive = tails > 0.0
    log_s, log_tail = np.log(knots[positive])[::-1], np.log(tails[positive])[::-1]
    interpolant = PchipInterpolator(log_s, log_tail, extrapolate=False)
    smallest = float(np.exp(log_s[0]))

    def tail(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore"):
            values = np.array(np.exp(interpolant(np.log(s))), dtype=float)
        outside = ~np.isfinite(values) & (s < smallest)
        if outside.any():
            values[outside] = [tail_at_s(w, float(si), config) for si in s[outside]]
        return values

    return tail
