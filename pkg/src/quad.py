#!/usr/bin/env python
# encoding: utf-8
"""
边界感知积分与上确界判定

所有被积函数以到边界的距离 s = 1 - r 为自变量组装，避免 r -> 1 时的相消误差。

主要内容：
- integrate / integrate_s: 复合 Gauss-Legendre 求积，面板向两端几何加密并自适应二分；
  s = 0 端的奇异尾部按二进分段求和，几何余项外推，发散时抛出 DivergentIntegralError。
- dyadic_integrals: 在二进网格各层上共享分段，一次得到 ∫_{s_k}^1 与 ∫_0^{s_k}。
- DyadicGrid / SupVerdict / sup_verdict: "sup_r F(r) < ∞" 的三分判定。
- extrapolate_limit: 估计比值的 Richardson 外推。
- increments_decay / tail_converges: 指数窗口二分所用的收敛判定。
"""

# 标准库导入
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

# 第三方库导入
import numpy as np
from scipy.special import roots_legendre

# 本地模块导入
from .utils.configs import DEFAULT_NUMERICS, NumericsConfig
from .utils.errors import ConvergenceError, DivergentIntegralError, DomainError, NumericError

logger = logging.getLogger(__name__)

EPS = np.finfo(float).eps
TINY = np.finfo(float).tiny

# 奇异尾部逐级加深的分段数
TAIL_LEVELS = (64, 128, 256, 512)
# t 坐标下 1 - t 的有效位数限制了可分辨的最深层
TFORM_TAIL_LEVEL = 40
# 尾部比值达到此值视为发散
DIVERGENT_RATIO = 1.0 - 1e-9
# 增量按 k^{-γ} 衰减时视为可和的最小 γ（γ = 1 为对数发散）
SUMMABLE_EXPONENT = 1.2
# 1 - 增量比 在窗口内下降到该比例以下时按幂律衰减处理，否则按几何衰减
POWER_LAW_DRIFT = 0.75
MAX_PANELS = 20000
MAX_ROUNDS = 40

Integrand = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def gauss_legendre(order):
    # type: (int) -> Tuple[np.ndarray, np.ndarray]
    """[0, 1] 上的 Gauss-Legendre 节点与权重（只读）"""
    nodes, weights = roots_legendre(order)
    nodes = (nodes + 1.0) / 2.0
    weights = weights / 2.0
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


@lru_cache(maxsize=None)
def composite_rule(levels_lo, levels_hi, order=16):
    # type: (int, int, int) -> Tuple[np.ndarray, np.ndarray]
    """
    [0, 1] 上向两端几何加密的固定复合规则

    用于对大量参数同时求积（矩表、ω* 的内层积分、算子离散化）。

    Args:
        levels_lo: 向 0 端加密的层数
        levels_hi: 向 1 端加密的层数
        order: 每个面板的 Gauss-Legendre 阶数

    Returns:
        (nodes, weights)
    """
    lo = [0.5 * 2.0 ** -j for j in range(levels_lo + 1)]
    hi = [1.0 - 0.5 * 2.0 ** -j for j in range(1, levels_hi + 1)]
    edges = np.unique(np.concatenate(([0.0], lo, hi, [1.0])))
    xi, wi = gauss_legendre(order)
    a, b = edges[:-1], edges[1:]
    nodes = (a[:, None] + (b - a)[:, None] * xi[None, :]).ravel()
    weights = ((b - a)[:, None] * wi[None, :]).ravel()
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _evaluate(g, x):
    # type: (Integrand, np.ndarray) -> np.ndarray
    """求值并检查有限性；标量返回值广播到节点形状"""
    y = np.asarray(g(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)]
        raise NumericError("被积函数在 s = {!r} 处取非有限值".format(float(bad.flat[0])),
                           location=float(bad.flat[0]))
    return y


def _panel_rule(g, a, b, order):
    # type: (Integrand, np.ndarray, np.ndarray, int) -> Tuple[np.ndarray, np.ndarray]
    """
    面板求积：返回细规则（两半各一个 GL 面板）的值与粗细差作为误差估计
    """
    xi, wi = gauss_legendre(order)
    width = b - a
    mid = a + 0.5 * width
    starts = np.concatenate((a, a, mid))
    widths = np.concatenate((width, 0.5 * width, 0.5 * width))
    x = starts[:, None] + widths[:, None] * xi[None, :]
    y = _evaluate(g, x.ravel()).reshape(x.shape)
    sums = (y * wi[None, :]).sum(axis=1) * widths
    n = len(a)
    coarse = sums[:n]
    fine = sums[n:2 * n] + sums[2 * n:]
    return fine, np.abs(fine - coarse)


def _endpoint_levels(half, distance):
    # type: (float, float) -> int
    if distance <= 0.0:
        return 40
    return int(np.clip(math.ceil(math.log2(half / distance)) + 6, 4, 60))


def _initial_edges(lo, hi):
    # type: (float, float) -> np.ndarray
    """向两端几何加密的初始断点；端点尺度分别为 lo 与 1 - hi"""
    mid = 0.5 * (lo + hi)
    half = mid - lo
    n_lo = _endpoint_levels(half, lo)
    n_hi = _endpoint_levels(half, 1.0 - hi)
    toward_lo = lo + half * 2.0 ** -np.arange(0, n_lo + 1)
    toward_hi = hi - half * 2.0 ** -np.arange(1, n_hi + 1)
    edges = np.unique(np.concatenate(([lo, hi, mid], toward_lo, toward_hi)))
    return edges[(edges >= lo) & (edges <= hi)]


def _adaptive(g, lo, hi, tol, order):
    # type: (Integrand, float, float, float, int) -> Tuple[float, float]
    """有限区间 [lo, hi]（lo > 0）上的自适应复合求积"""
    edges = _initial_edges(lo, hi)
    a = edges[:-1]
    b = edges[1:]
    values, errors = _panel_rule(g, a, b, order)

    for _ in range(MAX_ROUNDS):
        total = float(np.sum(values))
        err_sum = float(np.sum(errors))
        budget = tol * abs(total)
        if err_sum <= budget or err_sum <= 1e-300:
            return total, err_sum / max(abs(total), TINY)

        bad = errors > budget / len(values)
        if len(values) + int(bad.sum()) > MAX_PANELS:
            break
        mid = 0.5 * (a[bad] + b[bad])
        new_a = np.concatenate((a[bad], mid))
        new_b = np.concatenate((mid, b[bad]))
        new_values, new_errors = _panel_rule(g, new_a, new_b, order)

        keep = ~bad
        a = np.concatenate((a[keep], new_a))
        b = np.concatenate((b[keep], new_b))
        values = np.concatenate((values[keep], new_values))
        errors = np.concatenate((errors[keep], new_errors))
        order_idx = np.argsort(a, kind="stable")
        a, b, values, errors = a[order_idx], b[order_idx], values[order_idx], errors[order_idx]

    total = float(np.sum(values))
    achieved = float(np.sum(errors)) / max(abs(total), TINY)
    raise NumericError("在 [{!r}, {!r}] 上达到最大细分仍未满足容差 {}".format(lo, hi, tol),
                       achieved_tol=achieved)


def _dyadic_pieces(g, hi, first, last, order):
    # type: (Integrand, float, int, int, int) -> Tuple[np.ndarray, np.ndarray]
    """分段 [hi·2^{-j-1}, hi·2^{-j}]，j = first..last-1 的积分与误差估计"""
    j = np.arange(first, last)
    b = hi * 2.0 ** -j
    a = 0.5 * b
    with np.errstate(over="ignore", under="ignore"):
        return _panel_rule(g, a, b, order)


def _geometric_remainder(pieces):
    # type: (np.ndarray) -> Tuple[float, float]
    """
    末段比值的几何余项

    Returns:
        (remainder, ratio)；比值 >= DIVERGENT_RATIO 时由调用方判为发散
    """
    last, prev = pieces[-1], pieces[-2]
    if last == 0.0:
        return 0.0, 0.0
    if prev == 0.0 or (last > 0) != (prev > 0):
        return 0.0, -1.0
    ratio = last / prev
    if ratio >= DIVERGENT_RATIO:
        return math.inf, ratio
    return last * ratio / (1.0 - ratio), ratio


def _singular_tail(g, hi, tol, order, max_level=None):
    # type: (Integrand, float, float, int, Optional[int]) -> Tuple[float, float]
    """
    ∫_0^hi g(s) ds，s = 0 端可能奇异

    头部 [hi/256, hi] 自适应求积，其余按二进分段向量化求和并加几何余项；
    分段数逐级加倍直到相邻两级结果一致。
    """
    head_split = hi * 2.0 ** -8
    head, head_err = _adaptive(g, head_split, hi, tol, order)

    levels = (max_level,) if max_level is not None else TAIL_LEVELS
    previous = None
    total = head
    achieved = math.inf
    for n_levels in levels:
        try:
            pieces, errors = _dyadic_pieces(g, hi, 8, n_levels, order)
        except NumericError:
            raise DivergentIntegralError("∫_0^{!r} 在 s -> 0 处发散（被积函数溢出）".format(hi))
        remainder, ratio = _geometric_remainder(pieces)
        if math.isinf(remainder):
            raise DivergentIntegralError(
                "∫_0^{!r} 在 s -> 0 处发散（分段比值 {:.12f}）".format(hi, ratio))
        if ratio < 0:
            remainder = 0.0
        total = head + float(np.sum(pieces)) + remainder
        piece_err = float(np.sum(errors)) + (abs(pieces[-1]) if ratio < 0 else 0.0)
        scale = max(abs(total), TINY)
        if previous is None:
            change = abs(remainder) if max_level is not None else math.inf
        else:
            change = abs(total - previous)
        achieved = (change + piece_err) / scale + head_err
        if achieved <= tol or (max_level is not None and achieved <= math.sqrt(tol)):
            return total, achieved
        previous = total

    raise NumericError("∫_0^{!r} 的奇异尾部未收敛".format(hi), achieved_tol=achieved)


def integrate_s(g, lo, hi, tol=None, config=None, max_level=None):
    # type: (Integrand, float, float, Optional[float], Optional[NumericsConfig], Optional[int]) -> Tuple[float, float]
    """
    s 坐标下的积分 ∫_lo^hi g(s) ds

    Args:
        g: 向量化被积函数，接收 s 数组
        lo, hi: 0 <= lo, hi <= 1
        tol: 相对容差（默认取配置）
        config: 数值配置
        max_level: 奇异尾部的最深分段（t 坐标输入时受浮点分辨率限制）

    Returns:
        (value, achieved_tol)

    Raises:
        DivergentIntegralError: lo = 0 且积分发散
        NumericError: 达到最大细分仍未满足容差
    """
    config = config or DEFAULT_NUMERICS
    tol = config.tol if tol is None else tol
    if lo == hi:
        return 0.0, 0.0
    if lo > hi:
        value, achieved = integrate_s(g, hi, lo, tol, config, max_level)
        return -value, achieved
    if lo < 0.0 or hi > 1.0:
        raise DomainError("积分区间 [{}, {}] 超出 [0, 1]".format(lo, hi))
    if lo == 0.0:
        return _singular_tail(g, hi, tol, config.panel_order, max_level)
    return _adaptive(g, lo, hi, tol, config.panel_order)


def integrate(f, a, b, tol=None, boundary_form=False, config=None):
    # type: (Callable, float, float, Optional[float], bool, Optional[NumericsConfig]) -> Tuple[float, float]
    """
    ∫_a^b f(t) dt，0 <= a < b <= 1

    Args:
        f: 向量化被积函数
        a, b: 积分上下限（r 坐标）
        tol: 相对容差
        boundary_form: 为 True 时 f 直接接收 s = 1 - t，避免 t -> 1 处的相消

    Returns:
        (value, achieved_tol)
    """
    if not (0.0 <= a <= b <= 1.0):
        raise DomainError("积分限必须满足 0 <= a <= b <= 1，当前 a = {}, b = {}".format(a, b))
    if boundary_form:
        return integrate_s(f, 1.0 - b, 1.0 - a, tol, config)

    def g(s):
        return f(1.0 - s)

    return integrate_s(g, 1.0 - b, 1.0 - a, tol, config, max_level=TFORM_TAIL_LEVEL)


@dataclass(frozen=True)
class DyadicIntegrals:
    """二进网格各层的内积分：head[k] = ∫_{s_k}^1 g，tail[k] = ∫_0^{s_k} g（发散时为 inf）"""
    head: np.ndarray
    tail: np.ndarray


def dyadic_integrals(g, grid, tol=None, config=None, with_tail=True, with_head=True):
    # type: (Integrand, DyadicGrid, Optional[float], Optional[NumericsConfig], bool, bool) -> DyadicIntegrals
    """
    一次扫描得到网格各层的 ∫_{s_k}^1 g 与 ∫_0^{s_k} g

    分段 [s_{j+1}, s_j] 在各层之间共享，按固定顺序累加，结果可逐位复现。
    """
    config = config or DEFAULT_NUMERICS
    tol = config.tol if tol is None else tol
    depth = grid.depth

    top, _ = _adaptive(g, 0.5, 1.0, tol, config.panel_order)
    pieces, errors = _dyadic_pieces(g, 1.0, 1, depth, config.panel_order)
    pieces = np.concatenate(([top], pieces))
    errors = np.concatenate(([0.0], errors))

    # 粗细差过大的分段改用自适应求积
    scale = np.maximum(np.abs(pieces), TINY)
    for j in np.nonzero(errors > tol * scale)[0]:
        if j == 0:
            continue
        pieces[j], _ = _adaptive(g, 2.0 ** -(j + 1), 2.0 ** -j, tol, config.panel_order)

    head = np.cumsum(pieces) if with_head else np.full(depth, np.nan)

    if with_tail:
        try:
            innermost, _ = _singular_tail(g, grid.s[-1], tol, config.panel_order)
            tail = innermost + np.concatenate((np.cumsum(pieces[1:][::-1])[::-1], [0.0]))
        except DivergentIntegralError:
            tail = np.full(depth, np.inf)
    else:
        tail = np.full(depth, np.nan)
    return DyadicIntegrals(head=head, tail=tail)


@dataclass(frozen=True)
class DyadicGrid:
    """
    二进探测网格 r_k = 1 - 2^{-k}，k = 1..K，按 s_k = 2^{-k} 精确存储
    """
    depth: int = 36

    def __post_init__(self):
        if not 3 <= self.depth <= 1000:
            raise DomainError("网格深度必须在 [3, 1000] 内，当前: {}".format(self.depth))

    @property
    def levels(self):
        # type: () -> np.ndarray
        return np.arange(1, self.depth + 1)

    @property
    def s(self):
        # type: () -> np.ndarray
        return np.ldexp(1.0, -self.levels)

    @property
    def r(self):
        # type: () -> np.ndarray
        return 1.0 - self.s

    def deepened(self, step, max_depth):
        # type: (int, int) -> DyadicGrid
        return DyadicGrid(min(self.depth + step, max_depth))


class Verdict(Enum):
    """上确界判定结果"""
    BOUNDED = "Bounded"
    DIVERGENT = "Divergent"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SupVerdict:
    """
    "sup F < ∞" 的数值判定

    tail_slope 为 log2 F 对 log2(层号) 在末三分之一层上的最小二乘斜率：
    F = k·log2 时斜率为 1，平台时为 0。
    """
    sup_value: float
    argmax_level: int
    tail_slope: float
    verdict: Verdict
    values: Tuple[float, ...] = field(default=(), repr=False)
    levels: Tuple[int, ...] = field(default=(), repr=False)

    @property
    def bounded(self):
        return self.verdict is Verdict.BOUNDED

    @property
    def divergent(self):
        return self.verdict is Verdict.DIVERGENT

    def to_dict(self):
        # type: () -> Dict[str, object]
        return {
            "sup_value": self.sup_value,
            "argmax_level": self.argmax_level,
            "tail_slope": self.tail_slope,
            "verdict": self.verdict.value,
        }


def _slope(x, y):
    # type: (np.ndarray, np.ndarray) -> float
    xc = x - x.mean()
    return float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))


def _projected_sup(values, levels):
    # type: (np.ndarray, np.ndarray) -> Optional[float]
    """
    按增量的衰减外推末段序列的上确界

    dF/dk 在末段按 k^{-γ} 拟合；γ >= SUMMABLE_EXPONENT 时余项约为 |dF/dk|·k/(γ-1)。

    Returns:
        外推的上确界；增量不可和或点数不足时为 None
    """
    steps = np.diff(values)
    floor = _noise_floor(values)
    if np.all(np.abs(steps[-2:]) <= floor):
        return float(values.max())
    large = np.abs(steps) > floor
    if large.sum() < 3:
        return None
    midpoints = np.sqrt(levels[1:] * levels[:-1])[large]
    rates = np.abs(steps[large]) / np.diff(levels)[large]
    gamma = -_slope(np.log(midpoints), np.log(rates))
    if not gamma >= SUMMABLE_EXPONENT:
        return None
    remainder = rates[-1] * midpoints[-1] / (gamma - 1.0) if steps[-1] > 0.0 else 0.0
    return float(max(values.max(), values[-1] + remainder))


def sup_verdict(F, grid=None, config=None, levels=None):
    # type: (object, Optional[DyadicGrid], Optional[NumericsConfig], Optional[Sequence[int]]) -> SupVerdict
    """
    判定 sup F 是否有限

    Bounded：末段增量可和且外推上确界不超过中段最大值的 2 倍，或末段对数斜率不超过
    slope_tol 且末段最大值不超过中段最大值的 2 倍。Divergent：末段各子窗口的斜率都
    不小于 slope_min。其余为 Inconclusive。

    Args:
        F: 各层取值序列，或接收 r 数组的向量化函数（此时需要 grid）
        grid: 二进网格
        config: 数值配置（slope_tol、slope_min）
        levels: 取值对应的层号，默认 1..len(values)

    Returns:
        SupVerdict
    """
    config = config or DEFAULT_NUMERICS
    if callable(F):
        if grid is None:
            raise DomainError("以函数形式给出 F 时必须提供网格")
        r = grid.r
        values = np.asarray(F(r), dtype=float)
        if values.shape != r.shape:
            values = np.broadcast_to(values, r.shape).astype(float)
        levels = grid.levels
    else:
        values = np.asarray(list(F), dtype=float)
    if levels is None:
        levels = grid.levels if grid is not None else np.arange(1, len(values) + 1)
    levels = np.asarray(levels)
    if len(values) < 6 or len(levels) != len(values):
        raise DomainError("上确界判定至少需要 6 个网格值，当前: {}".format(len(values)))

    values_t = tuple(float(v) for v in values)
    levels_t = tuple(int(k) for k in levels)
    bad = ~np.isfinite(values)
    if bad.any():
        first = int(np.nonzero(bad)[0][0])
        return SupVerdict(math.inf, int(levels[first]), math.inf, Verdict.DIVERGENT, values_t, levels_t)

    third = max(len(values) // 3, 2)
    tail = values[-third:]
    middle = values[-2 * third:-third]
    y = np.log2(np.maximum(values, TINY))
    x = np.log2(levels.astype(float))
    tail_slope = _slope(x[-third:], y[-third:])

    argmax = int(np.argmax(values))
    sup_value = float(values[argmax])

    projected = _projected_sup(values[-(third + 1):], levels[-(third + 1):].astype(float))
    if projected is not None and projected <= 2.0 * middle.max():
        verdict = Verdict.BOUNDED
    elif tail_slope <= config.slope_tol and tail.max() <= 2.0 * middle.max():
        verdict = Verdict.BOUNDED
    else:
        windows = [slice(len(values) - third, len(values))]
        if third >= 4:
            half = third // 2
            windows.append(slice(len(values) - third, len(values) - third + half + 1))
            windows.append(slice(len(values) - half - 1, len(values)))
        if all(_slope(x[w], y[w]) >= config.slope_min for w in windows):
            verdict = Verdict.DIVERGENT
        else:
            verdict = Verdict.INCONCLUSIVE
    return SupVerdict(sup_value, int(levels[argmax]), tail_slope, verdict, values_t, levels_t)


def _noise_floor(values):
    # type: (np.ndarray) -> float
    return 64.0 * EPS * max(float(np.max(np.abs(values))), TINY)


def extrapolate_limit(values, atol=0.0):
    # type: (Iterable[float], float) -> Tuple[float, float]
    """
    极限外推，模型 F_k = L + c·q^k

    比值 q 由相邻增量估计（与 Aitken Δ² 等价）。

    Args:
        values: 按层排列的取值，至少 6 个
        atol: 视为已收敛的增量绝对阈值（叠加在舍入噪声之上）

    Returns:
        (limit, error)，error 为最后一次外推的增量

    Raises:
        ConvergenceError: 尾部振荡或不收敛
    """
    F = np.asarray(list(values), dtype=float)
    if len(F) < 6:
        raise DomainError("外推至少需要 6 个值，当前: {}".format(len(F)))
    tail = F[-6:].tolist()
    if not np.all(np.isfinite(F)):
        raise ConvergenceError("外推序列含非有限值", tail=tail)

    d = np.diff(F)
    floor = _noise_floor(F) + atol
    last = d[-3:]
    if np.all(np.abs(last) <= floor):
        return float(F[-1]), float(np.max(np.abs(last)))
    if np.any(np.abs(last) <= floor):
        return float(F[-1]), float(np.max(np.abs(last)))

    q = last[1:] / last[:-1]
    if np.any(q <= 0.0) or np.any(q >= 1.0):
        raise ConvergenceError("尾部不是 Cauchy 序列（增量比 {}）".format(
            ", ".join("{:.6g}".format(x) for x in q)), tail=tail)
    # 两次外推：L = F_{k+1} + d_k·q/(1 - q)
    estimates = F[-2:] + last[1:] * q / (1.0 - q)
    limit = float(estimates[-1])
    return limit, float(abs(estimates[-1] - estimates[-2]))


def increments_decay(values, ratio_tol=1e-6):
    # type: (Sequence[float], float) -> bool
    """
    判断序列在末三分之一层上的增量是否几何衰减（序列收敛）

    对数发散时增量比恰为 1，幂次发散时大于 1。
    """
    F = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(F)):
        return False
    third = max(len(F) // 3, 3)
    d = np.diff(F[-(third + 1):])
    floor = _noise_floor(F)
    if np.all(np.abs(d) <= floor):
        return True
    nonzero = np.abs(d[:-1]) > floor
    if not nonzero.any():
        return True
    q = np.abs(d[1:][nonzero] / d[:-1][nonzero])
    return bool(np.median(q) < 1.0 - ratio_tol)


def tail_converges(g, first=40, last=100, ratio_tol=1e-6, order=16):
    # type: (Integrand, int, int, float, int) -> bool
    """
    判断 ∫_0 g(s) ds 在 s = 0 处是否收敛

    取深层二进分段 [2^{-j-1}, 2^{-j}] 的积分 I_j。相邻比值的中位数须小于 1；
    1 - I_{j+1}/I_j 随 j 下降时按 I_j ≍ j^{-γ} 处理，要求 γ >= SUMMABLE_EXPONENT。
    """
    try:
        pieces, _ = _dyadic_pieces(g, 1.0, first, last, order)
    except NumericError:
        return False
    if not np.all(np.isfinite(pieces)):
        return False
    if np.all(pieces[-16:] == 0.0):
        return True
    if np.any(pieces[:-1] == 0.0):
        return bool(pieces[-1] == 0.0)
    ratios = pieces[1:] / pieces[:-1]
    if not np.median(ratios[-15:]) < 1.0 - ratio_tol:
        return False

    gaps = 1.0 - ratios
    quarter = max(len(gaps) // 4, 2)
    head, tail = np.median(gaps[:quarter]), np.median(gaps[-quarter:])
    if tail >= POWER_LAW_DRIFT * head:
        return True
    j = np.arange(first + 1, first + 1 + len(gaps), dtype=float)
    return bool(np.median(gaps[-quarter:] * j[-quarter:]) >= SUMMABLE_EXPONENT)
