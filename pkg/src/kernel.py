#!/usr/bin/env python
# encoding: utf-8
"""
Bergman 核系数级数

B^ω_a(z) = Σ_n c_n (z ā)^n，c_n = 1/(2ω_n)。提供逐点求值（含 z 方向 N 阶导数）、
圆周 L^p 均值 M_p^p、A^p_v 范数、核估计的比较积分与比值扫描、Littlewood-Paley 恒等式检查。

级数截断使用确证尾部上界：在增长模型 c_{n+1}/c_n <= ((n+1)/n)^γ 下取几何上界与
二项式上界中的较小者，上界低于容差乘以部分和时停止。
"""

# 标准库导入
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple, Union

# 第三方库导入
import numpy as np
from scipy import fft, optimize, special
from scipy.interpolate import CubicSpline

# 本地模块导入
from .quad import DyadicGrid, SupVerdict, composite_rule, integrate_s, sup_verdict
from .utils.configs import DEFAULT_NUMERICS, NumericsConfig
from .utils.errors import DomainError, NumericError, TruncationError
from .weights import (RadialWeight, area_mass, associated_moment, doubling_report, moment,
                      moment_table, tail_at_s, tail_function)

logger = logging.getLogger(__name__)

MAX_DERIVATIVE = 4
# 梯形规则的初始与最大点数
MIN_THETA_POINTS = 64
MAX_THETA_POINTS = 2 ** 22
# 增长指数的安全裕量
GROWTH_SAFETY = 1.0


@dataclass(frozen=True)
class KernelCoeffs:
    """核系数 c_0..c_{N_max} 与增长指数 γ"""
    weight: RadialWeight
    coeffs: np.ndarray
    n_max: int
    growth_exponent: float

    def falling(self, N):
        # type: (int) -> np.ndarray
        """n(n-1)⋯(n-N+1)，n = N..n_max"""
        n = np.arange(N, self.n_max + 1, dtype=float)
        return special.poch(n - N + 1.0, N)

    def derivative_coeffs(self, N):
        # type: (int) -> np.ndarray
        """c_n·n!/(n-N)!，n = N..n_max"""
        return self.coeffs[N:] * self.falling(N)


@dataclass(frozen=True)
class CoeffPoly:
    """解析多项式 Σ c_n z^n"""
    coefficients: Tuple[complex, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise DomainError("多项式至少需要一个系数")
        if not np.all(np.isfinite(np.asarray(self.coefficients, dtype=complex))):
            raise DomainError("多项式系数必须有限")

    @classmethod
    def monomial(cls, k):
        # type: (int) -> CoeffPoly
        return cls(tuple([0.0] * k + [1.0]))

    @property
    def degree(self):
        # type: () -> int
        return len(self.coefficients) - 1

    @property
    def array(self):
        # type: () -> np.ndarray
        return np.asarray(self.coefficients, dtype=complex)

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.array)

    def derivative(self):
        # type: () -> CoeffPoly
        if self.degree == 0:
            return CoeffPoly((0.0,))
        return CoeffPoly(tuple(np.polynomial.polynomial.polyder(self.array)))

    def _max_modulus(self, r):
        # type: (float) -> float
        """max_θ |f(r e^{iθ})|"""
        points = max(64, 8 * (self.degree + 1))
        coefficients = self.array * np.power(r, np.arange(self.degree + 1))
        folded = np.zeros(points, dtype=complex)
        np.add.at(folded, np.arange(self.degree + 1) % points, coefficients)
        return float(np.max(np.abs(fft.ifft(folded) * points)))

    def bloch_norm(self):
        # type: () -> float
        """|f(0)| + sup (1-|z|²)|f'(z)|"""
        derivative = self.derivative()

        def objective(r):
            return -(1.0 - r * r) * derivative._max_modulus(r)

        grid = np.linspace(0.0, 1.0, 513)
        values = np.array([objective(r) for r in grid])
        best = int(np.argmin(values))
        lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, len(grid) - 1)]
        result = optimize.minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                                          options={"xatol": 1e-12})
        seminorm = max(-float(result.fun), -float(values[best]))
        return abs(self.coefficients[0]) + seminorm


@dataclass(frozen=True)
class RatioScan:
    """measured/comparand 与其倒数的两个上确界判定"""
    forward: SupVerdict
    backward: SupVerdict

    @property
    def passes(self):
        # type: () -> bool
        return self.forward.bounded and self.backward.bounded

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "forward": self.forward.to_dict(),
            "backward": self.backward.to_dict(),
            "passes": self.passes,
        }


def _local_growth(coeffs):
    # type: (np.ndarray) -> float
    """max_n log(c_{n+1}/c_n)/log((n+1)/n)"""
    if len(coeffs) < 3:
        return 0.0
    n = np.arange(1, len(coeffs) - 1, dtype=float)
    local = np.log(coeffs[2:] / coeffs[1:-1]) / np.log1p(1.0 / n)
    return float(max(np.max(local), 0.0))


def kernel_coeffs(w, n_max, config=None):
    # type: (RadialWeight, int, Optional[NumericsConfig]) -> KernelCoeffs
    """
    计算核系数 c_n = 1/(2ω_n)

    Raises:
        DomainError: n_max < 1
        TruncationError: n_max 超过 max_terms
        NumericError: 矩下溢或系数非单调
    """
    config = config or DEFAULT_NUMERICS
    n_max = int(n_max)
    if n_max < 1:
        raise DomainError("N_max 必须 >= 1，当前: {}".format(n_max))
    if n_max > config.max_terms:
        raise TruncationError("请求的系数个数 {} 超过上限 {}".format(n_max, config.max_terms),
                              needed=n_max, available=config.max_terms)
    moments = moment_table(w, n_max, config)
    with np.errstate(divide="ignore", over="ignore"):
        coeffs = 0.5 / moments
    bad = np.nonzero(~np.isfinite(coeffs) | ~(coeffs > 0.0))[0]
    if len(bad):
        raise NumericError("矩 ω_{} 下溢（{}）".format(int(bad[0]), w.spec), location=int(bad[0]))
    decreasing = np.nonzero(np.diff(coeffs) < -1e-9 * coeffs[1:])[0]
    if len(decreasing):
        n = int(decreasing[0]) + 1
        raise NumericError("核系数在 n = {} 处递减（{}）".format(n, w.spec), location=n)

    gamma = _local_growth(coeffs)
    beta = doubling_report(w, config).exponent
    if np.isfinite(beta):
        gamma = max(gamma, beta)
    coeffs.flags.writeable = False
    return KernelCoeffs(w, coeffs, n_max, gamma + GROWTH_SAFETY)


def estimate_terms(x, growth, tol):
    # type: (float, float, float) -> int
    """满足 M^g x^M <= tol 的项数估计"""
    if x <= 0.0:
        return 1
    log_x = math.log(x)
    M = max(math.log(tol) / log_x, 1.0)
    for _ in range(8):
        M = max((growth * math.log(max(M, 1.0)) - math.log(tol)) / -log_x, 1.0)
    return int(math.ceil(1.25 * M)) + 16


def kernel_coeffs_for(w, x, N=0, config=None):
    # type: (RadialWeight, float, int, Optional[NumericsConfig]) -> KernelCoeffs
    """按 |a||z| 的上界自动确定 N_max 并计算系数"""
    config = config or DEFAULT_NUMERICS
    needed = estimate_terms(x, 4.0 + N + 2.0 * GROWTH_SAFETY, config.kernel_tol)
    n_max = max(config.n_max, needed)
    if n_max > config.max_terms:
        raise TruncationError("x = {!r} 需要约 {} 项，超过上限 {}".format(x, n_max, config.max_terms),
                              needed=n_max, available=config.max_terms)
    logger.debug("核系数自动定长: x = {!r}, N_max = {}".format(x, n_max))
    return kernel_coeffs(w, n_max, config)


def _tail_bounds(T, n, x, gamma, N, power):
    # type: (np.ndarray, np.ndarray, float, float, int, int) -> np.ndarray
    """
    部分和截止到各 n 时的尾部上界

    T 为各项模（power = 2 时为平方项），x 为每步的几何因子。
    """
    M = n.astype(float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        valid = (M >= 1.0) & (M + 1.0 - N > 0.0)
        step = np.where(valid, (np.power(1.0 + 1.0 / np.maximum(M, 1.0), gamma)
                                * (M + 1.0) / np.maximum(M + 1.0 - N, 1e-300)) ** power, np.inf)
        rho = step * x
        geometric = np.where(rho < 1.0, T * rho / (1.0 - rho), np.inf)
        g = math.ceil(power * (gamma + N))
        if x < 1.0:
            factor = math.expm1(-(g + 1) * math.log1p(-x)) if x > 0.0 else 0.0
            binomial = np.where(valid & (M - N + 1.0 >= g), T * factor, np.inf)
        else:
            binomial = np.full_like(T, np.inf)
    if x == 0.0:
        return np.zeros_like(T)
    return np.minimum(geometric, binomial)


def _certified_cutoff(partial, bounds, tol, n_available, x, growth):
    # type: (np.ndarray, np.ndarray, float, int, float, float) -> int
    """第一个满足 bound <= tol·|部分和| 的下标"""
    ok = np.nonzero(bounds <= tol * np.abs(partial))[0]
    if not len(ok):
        needed = estimate_terms(x, growth, tol)
        raise TruncationError("级数在 {} 项内未达到容差 {}（约需 {} 项，x = {!r}）".format(
            n_available, tol, needed, x), needed=needed, available=n_available)
    return int(ok[0])


def _check_point(a, z, N, config):
    a, z = complex(a), complex(z)
    if abs(a) >= 1.0 or abs(z) >= 1.0:
        raise DomainError("要求 |a| < 1 且 |z| < 1，当前 |a| = {}, |z| = {}".format(abs(a), abs(z)))
    if not 0 <= int(N) <= MAX_DERIVATIVE:
        raise DomainError("导数阶数必须在 [0, {}] 内，当前: {}".format(MAX_DERIVATIVE, N))
    x = abs(a) * abs(z)
    if x > config.x_max:
        raise DomainError("|a||z| = {!r} 超过 x_max = {!r}".format(x, config.x_max))
    return a, z, int(N), x


def kernel_eval(K, a, z, N=0, tol=None, config=None):
    # type: (KernelCoeffs, complex, complex, int, Optional[float], Optional[NumericsConfig]) -> complex
    """
    (B^ω_a)^{(N)}(z) = Σ_{n>=N} c_n·n!/(n-N)!·ā^n z^{n-N}

    Raises:
        DomainError: 点超出范围或 N > 4
        TruncationError: 所需项数超过 N_max
    """
    config = config or DEFAULT_NUMERICS
    tol = config.kernel_tol if tol is None else tol
    a, z, N, x = _check_point(a, z, N, config)
    if N > K.n_max:
        raise TruncationError("N = {} 超过 N_max = {}".format(N, K.n_max), needed=N, available=K.n_max)

    a_bar = a.conjugate()
    d = K.derivative_coeffs(N)
    k = np.arange(len(d))
    with np.errstate(under="ignore"):
        terms = d * a_bar ** N * np.power(z * a_bar, k)
        T = d * abs(a) ** N * np.power(x, k)
    partial = np.cumsum(terms)
    bounds = _tail_bounds(T, k + N, x, K.growth_exponent, N, 1)
    cutoff = _certified_cutoff(partial, bounds, tol, K.n_max, x, K.growth_exponent + N)
    return complex(partial[cutoff])


def _mean_by_coefficients(K, a, r, N, config):
    # type: (KernelCoeffs, complex, float, int, NumericsConfig) -> float
    """M_2²：Σ |c_n n!/(n-N)!|²·|a|^{2n} r^{2(n-N)}"""
    d = K.derivative_coeffs(N)
    k = np.arange(len(d))
    y = (abs(a) * r) ** 2
    with np.errstate(under="ignore"):
        T = d ** 2 * abs(a) ** (2 * N) * np.power(y, k)
    partial = np.cumsum(T)
    bounds = _tail_bounds(T, k + N, y, K.growth_exponent, N, 2)
    cutoff = _certified_cutoff(partial, bounds, config.kernel_tol, K.n_max, y,
                               2.0 * (K.growth_exponent + N))
    return float(partial[cutoff])


def _circle_coefficients(K, a, r, N, config):
    # type: (KernelCoeffs, complex, float, int, NumericsConfig) -> np.ndarray
    """截断后的 Taylor 系数 b_k，(B^ω_a)^{(N)}(r e^{iθ}) = Σ b_k e^{ikθ}"""
    a = complex(a)
    d = K.derivative_coeffs(N)
    k = np.arange(len(d))
    x = abs(a) * r
    with np.errstate(under="ignore"):
        b = d * a.conjugate() ** N * np.power(a.conjugate() * r, k)
        T = d * abs(a) ** N * np.power(x, k)
    partial = np.cumsum(T)
    bounds = _tail_bounds(T, k + N, x, K.growth_exponent, N, 1)
    cutoff = _certified_cutoff(partial, bounds, config.kernel_tol, K.n_max, x, K.growth_exponent + N)
    return b[:cutoff + 1]


def _folded_values(b, points):
    # type: (np.ndarray, int) -> np.ndarray
    """Σ b_k ζ^k 在 points 个单位根上的值（FFT 折叠求值）"""
    folded = np.zeros(points, dtype=complex)
    np.add.at(folded, np.arange(len(b)) % points, b)
    return fft.ifft(folded) * points


def _initial_points(x):
    # type: (float) -> int
    """被积函数峰宽约为 1 - x"""
    if x >= 1.0:
        return MAX_THETA_POINTS // 2
    target = 4.0 / max(1.0 - x, 1.0 / MAX_THETA_POINTS)
    return int(min(max(MIN_THETA_POINTS, 2 ** math.ceil(math.log2(target))), MAX_THETA_POINTS // 2))


def _mean_by_trapezoid(K, a, r, p, N, config):
    # type: (KernelCoeffs, complex, float, float, int, NumericsConfig) -> float
    b = _circle_coefficients(K, a, r, N, config)
    if len(b) == 1:
        return float(abs(b[0]) ** p)
    points = _initial_points(abs(a) * r)
    previous = np.mean(np.abs(_folded_values(b, points)) ** p)
    current = previous
    while points < MAX_THETA_POINTS:
        points *= 2
        current = np.mean(np.abs(_folded_values(b, points)) ** p)
        if abs(current - previous) <= config.trapezoid_rtol * abs(current):
            return float(current)
        previous = current
    raise NumericError("θ 方向梯形规则在 {} 点内未收敛（|a|r = {!r}）".format(points, abs(a) * r),
                       achieved_tol=abs(current - previous) / max(abs(current), 1e-300))


def circle_mean(K, a, r, p, N=0, method="auto", config=None):
    # type: (KernelCoeffs, complex, float, float, int, str, Optional[NumericsConfig]) -> float
    """
    M_p^p(r, (B^ω_a)^{(N)}) = (1/2π)∫|(B^ω_a)^{(N)}(r e^{iθ})|^p dθ

    Args:
        method: "auto"（p = 2 用系数和，其余用梯形规则）、"coefficients" 或 "trapezoid"

    Raises:
        NumericError: 梯形规则未收敛
    """
    config = config or DEFAULT_NUMERICS
    if not p > 0:
        raise DomainError("p 必须为正，当前: {}".format(p))
    if not 0.0 <= r < 1.0:
        raise DomainError("半径必须位于 [0, 1) 内，当前: {!r}".format(r))
    a, _, N, _ = _check_point(a, r, N, config)
    if method == "auto":
        method = "coefficients" if p == 2 else "trapezoid"
    if method == "coefficients":
        if p != 2:
            raise DomainError("系数和路径只适用于 p = 2")
        return _mean_by_coefficients(K, a, r, N, config)
    if method == "trapezoid":
        return _mean_by_trapezoid(K, a, r, p, N, config)
    raise DomainError("未知的求值方法: {}".format(method))


def _norm_by_rule(K, a, v, p, N, config):
    # type: (KernelCoeffs, complex, RadialWeight, float, int, NumericsConfig) -> float
    """
    p != 2：s 方向固定复合规则，向 s = 0 加密到 1 - |a| 以下 10 个倍频程

    最内层面板 [0, h] 上 M_p^p 视为常数，贡献 M_p^p(1 - h/2)·∫_0^h v。
    """
    depth = int(min(math.ceil(-math.log2(max(1.0 - abs(a), 2.0 ** -50))) + 10, 60))
    nodes, weights = composite_rule(depth, 6, 12)
    h = 2.0 ** -(depth + 1)
    outer = nodes >= h
    s = nodes[outer]
    means = np.array([circle_mean(K, a, 1.0 - si, p, N, config=config) for si in s])
    value = float(np.sum(weights[outer] * 2.0 * means * (1.0 - s) * v.omega(s)))
    innermost = circle_mean(K, a, 1.0 - 0.5 * h, p, N, config=config)
    return value + 2.0 * innermost * tail_at_s(v, h, config)


def bergman_norm(K, a, v, p, N=0, config=None):
    # type: (KernelCoeffs, complex, RadialWeight, float, int, Optional[NumericsConfig]) -> float
    """
    ‖(B^ω_a)^{(N)}‖^p_{A^p_v} = 2∫_0^1 M_p^p(r)·r·v(r) dr

    p = 2 时为 Σ |c_n n!/(n-N)!|²|a|^{2n}·2v_{n-N}。
    """
    config = config or DEFAULT_NUMERICS
    a, _, N, x = _check_point(a, 0.0, N, config)
    if abs(a) > config.x_max:
        raise DomainError("|a| = {!r} 超过 x_max".format(abs(a)))
    if p == 2:
        d = K.derivative_coeffs(N)
        k = np.arange(len(d))
        y = abs(a) ** 2
        v_moments = moment_table(v, len(d) - 1, config)
        with np.errstate(under="ignore"):
            T = d ** 2 * abs(a) ** (2 * N) * np.power(y, k) * 2.0 * v_moments
        partial = np.cumsum(T)
        bounds = _tail_bounds(T, k + N, y, K.growth_exponent, N, 2)
        cutoff = _certified_cutoff(partial, bounds, config.kernel_tol, K.n_max, y,
                                   2.0 * (K.growth_exponent + N))
        return float(partial[cutoff])

    return _norm_by_rule(K, a, v, p, N, config)


def thm1_mean_comparand(w, p, N, a, r, config=None):
    # type: (RadialWeight, float, int, complex, float, Optional[NumericsConfig]) -> float
    """∫_0^{|a|r} dt/(ω̂(t)^p (1-t)^{p(N+1)})"""
    config = config or DEFAULT_NUMERICS
    x = abs(a) * r
    if not 0.0 <= x < 1.0:
        raise DomainError("要求 0 <= |a|r < 1，当前: {!r}".format(x))
    if x == 0.0:
        return 0.0
    tail = tail_function(w, config)

    def g(s):
        return 1.0 / (np.power(tail(s), p) * np.power(s, p * (N + 1)))

    value, _ = integrate_s(g, 1.0 - x, 1.0, config=config)
    return value


def thm1_norm_comparand(w, v, p, N, a, config=None):
    # type: (RadialWeight, RadialWeight, float, int, complex, Optional[NumericsConfig]) -> float
    """∫_0^{|a|} v̂(t)/(ω̂(t)^p (1-t)^{p(N+1)}) dt"""
    config = config or DEFAULT_NUMERICS
    x = abs(a)
    if not 0.0 <= x < 1.0:
        raise DomainError("要求 |a| < 1，当前: {!r}".format(x))
    if x == 0.0:
        return 0.0
    w_tail = tail_function(w, config)
    v_tail = tail_function(v, config)

    def g(s):
        return v_tail(s) / (np.power(w_tail(s), p) * np.power(s, p * (N + 1)))

    value, _ = integrate_s(g, 1.0 - x, 1.0, config=config)
    return value


def cor2_local(w, v, p, N, a, config=None):
    # type: (RadialWeight, RadialWeight, float, int, complex, Optional[NumericsConfig]) -> float
    """v̂(a)/(ω̂(a)^p (1-|a|)^{p(N+1)-1})"""
    config = config or DEFAULT_NUMERICS
    x = abs(a)
    if not 0.0 <= x < 1.0:
        raise DomainError("要求 |a| < 1，当前: {!r}".format(x))
    s = 1.0 - x
    return tail_at_s(v, s, config) / (tail_at_s(w, s, config) ** p * s ** (p * (N + 1) - 1.0))


def ratio_scan(measured, comparand, grid=None, config=None, levels=None):
    # type: (Any, Any, Optional[DyadicGrid], Optional[NumericsConfig], Optional[Sequence[int]]) -> RatioScan
    """
    ≍ 验证：measured/comparand 与 comparand/measured 均有界时通过

    Args:
        measured, comparand: 按层排列的取值，或接收 r 数组的函数（需要 grid）
    """
    config = config or DEFAULT_NUMERICS
    if callable(measured) or callable(comparand):
        if grid is None:
            raise DomainError("以函数形式给出时必须提供网格")
        r = grid.r
        measured = measured(r) if callable(measured) else measured
        comparand = comparand(r) if callable(comparand) else comparand
        levels = grid.levels
    m = np.asarray(measured, dtype=float)
    c = np.asarray(comparand, dtype=float)
    if levels is None and grid is not None:
        levels = grid.levels
    if np.any(m <= 0.0) or np.any(c <= 0.0):
        raise DomainError("比值扫描要求两个量在网格上均为正")
    with np.errstate(over="ignore", divide="ignore"):
        forward = sup_verdict(m / c, config=config, levels=levels)
        backward = sup_verdict(c / m, config=config, levels=levels)
    return RatioScan(forward, backward)


def _scan_path(path, depth):
    # type: (str, int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]
    """返回 (层号, |a|, r)；对角路径 a = r，非对角路径 1 - r = 2(1 - |a|)"""
    if path == "diagonal":
        levels = np.arange(1, depth + 1)
        s = np.ldexp(1.0, -levels)
        return levels, 1.0 - s, 1.0 - s
    if path == "offdiagonal":
        levels = np.arange(2, depth + 2)
        s = np.ldexp(1.0, -levels)
        return levels, 1.0 - s, 1.0 - 2.0 * s
    raise DomainError("未知的扫描路径: {}".format(path))


def thm1_mean_scan(w, p, N=0, path="diagonal", K=None, config=None):
    # type: (RadialWeight, float, int, str, Optional[KernelCoeffs], Optional[NumericsConfig]) -> RatioScan
    """沿路径比较 M_p^p(r, (B^ω_a)^{(N)}) 与 thm1_mean_comparand"""
    config = config or DEFAULT_NUMERICS
    levels, a_values, r_values = _scan_path(path, config.ratio_scan_depth)
    if K is None:
        K = kernel_coeffs_for(w, float(a_values[-1] * r_values[-1]), N, config)
    measured = np.array([circle_mean(K, a, r, p, N, config=config) for a, r in zip(a_values, r_values)])
    comparand = np.array([thm1_mean_comparand(w, p, N, a, r, config) for a, r in zip(a_values, r_values)])
    logger.debug("核均值比值扫描 {} p={} N={} 路径={}".format(w.spec, p, N, path))
    return ratio_scan(measured, comparand, config=config, levels=levels)


def thm1_norm_scan(w, v, p, N=0, K=None, config=None):
    # type: (RadialWeight, RadialWeight, float, int, Optional[KernelCoeffs], Optional[NumericsConfig]) -> RatioScan
    """沿 |a| = 1 - 2^{-k} 比较 ‖(B^ω_a)^{(N)}‖^p_{A^p_v} 与 thm1_norm_comparand"""
    config = config or DEFAULT_NUMERICS
    levels, a_values, _ = _scan_path("diagonal", config.ratio_scan_depth)
    if K is None:
        K = kernel_coeffs_for(w, float(a_values[-1]), N, config)
    measured = np.array([bergman_norm(K, a, v, p, N, config) for a in a_values])
    comparand = np.array([thm1_norm_comparand(w, v, p, N, a, config) for a in a_values])
    return ratio_scan(measured, comparand, config=config, levels=levels)


def cor2_scan(w, v, p, N=0, K=None, config=None):
    # type: (RadialWeight, RadialWeight, float, int, Optional[KernelCoeffs], Optional[NumericsConfig]) -> RatioScan
    """比较核范数与局部量 cor2_local"""
    config = config or DEFAULT_NUMERICS
    levels, a_values, _ = _scan_path("diagonal", config.ratio_scan_depth)
    if K is None:
        K = kernel_coeffs_for(w, float(a_values[-1]), N, config)
    measured = np.array([bergman_norm(K, a, v, p, N, config) for a in a_values])
    comparand = np.array([cor2_local(w, v, p, N, a, config) for a in a_values])
    return ratio_scan(measured, comparand, config=config, levels=levels)


def lp1_check(f, w, config=None):
    # type: (CoeffPoly, RadialWeight, Optional[NumericsConfig]) -> Tuple[float, float, float]
    """
    Littlewood-Paley 恒等式 ‖f‖²_{A²_ω} = 4‖f'‖²_{A²_{ω*}} + ω(𝔻)|f(0)|²

    左侧用 ω 的矩，右侧用对 ω* 直接求积得到的矩，两侧独立计算。

    Returns:
        (lhs, rhs, rel_err)
    """
    c = f.array
    weights = np.abs(c) ** 2
    lhs = float(sum(weights[n] * 2.0 * moment(w, float(n), config) for n in range(len(c)) if weights[n]))
    rhs = area_mass(w, config) * weights[0]
    for n in range(1, len(c)):
        if weights[n]:
            rhs += 4.0 * n * n * weights[n] * 2.0 * associated_moment(w, float(n - 1))
    rhs = float(rhs)
    rel_err = abs(lhs - rhs) / max(abs(lhs), 1e-300)
    return lhs, rhs, rel_err


def _quadrature_moment(w, n, config):
    # type: (RadialWeight, int, NumericsConfig) -> float
    """不使用闭式的矩 ∫_0^1 r^{2n+1} ω(r) dr"""
    def g(s):
        return np.exp((2.0 * n + 1.0) * np.log1p(-s)) * w.omega(s)

    value, _ = integrate_s(g, w.min_s, 1.0, config=config)
    return value


def reproducing_check(f, w, a, K=None, config=None):
    # type: (CoeffPoly, RadialWeight, complex, Optional[KernelCoeffs], Optional[NumericsConfig]) -> Tuple[complex, complex, float]
    """
    ⟨f, B^ω_a⟩_{A²_ω} = Σ f_n·c_n a^n·2ω_n 与 f(a) 比较，ω_n 由求积计算

    Returns:
        (inner, f(a), rel_err)
    """
    config = config or DEFAULT_NUMERICS
    if K is None:
        K = kernel_coeffs(w, max(f.degree, 1), config)
    elif K.n_max < f.degree:
        raise TruncationError("多项式次数 {} 超过 N_max = {}".format(f.degree, K.n_max),
                              needed=f.degree, available=K.n_max)
    a = complex(a)
    inner = 0j
    for n, fn in enumerate(f.coefficients):
        if fn:
            inner += fn * K.coeffs[n] * a ** n * 2.0 * _quadrature_moment(w, n, config)
    expected = complex(f(a))
    rel_err = abs(inner - expected) / max(abs(expected), 1e-300)
    return inner, expected, rel_err


def m1_value(K, x, config=None):
    # type: (KernelCoeffs, float, Optional[NumericsConfig]) -> float
    """
    m_1(x) = (1/2π)∫|Σ c_n x^n e^{inθ}| dθ，梯形规则

    Raises:
        DomainError: x 不在 [0, x_max] 内
    """
    config = config or DEFAULT_NUMERICS
    if not 0.0 <= x <= config.x_max:
        raise DomainError("x 必须位于 [0, {!r}] 内，当前: {!r}".format(config.x_max, x))
    if x == 0.0:
        return float(K.coeffs[0])
    return _mean_by_trapezoid(K, complex(x), 1.0, 1.0, 0, config)


class M1Table:
    """
    圆周均值 m_1(x) = M_1(r, B^ω_a)（只依赖 x = |a|r）的插值表

    以 u = log2(1 - x) 为自变量，每个倍频程 16 个点，对 log m_1 做三次样条。
    """

    POINTS_PER_OCTAVE = 16

    def __init__(self, K, x_top, config=None):
        # type: (KernelCoeffs, float, Optional[NumericsConfig]) -> None
        self.config = config or DEFAULT_NUMERICS
        if not 0.0 < x_top <= self.config.x_max:
            raise DomainError("x_top 必须位于 (0, x_max] 内，当前: {!r}".format(x_top))
        self.K = K
        self.x_top = float(x_top)
        self.u_min = math.log2(1.0 - self.x_top)
        count = int(math.ceil(-self.u_min * self.POINTS_PER_OCTAVE)) + 1
        self.u = np.linspace(self.u_min, 0.0, max(count, 4))
        x = 1.0 - np.exp2(self.u)
        values = np.array([m1_value(K, float(xi), self.config) for xi in x])
        self._spline = CubicSpline(self.u, np.log(values))

    def __call__(self, x):
        # type: (Union[float, np.ndarray]) -> np.ndarray
        x = np.asarray(x, dtype=float)
        if np.any(x < 0.0) or np.any(x > self.x_top * (1.0 + 1e-15)):
            raise DomainError("m_1 插值表的范围为 [0, {!r}]".format(self.x_top))
        u = np.clip(np.log2(1.0 - np.minimum(x, self.x_top)), self.u_min, 0.0)
        return np.exp(self._spline(u))
