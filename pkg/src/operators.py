#!/usr/bin/env python
# encoding: utf-8
"""
径向子空间上的投影算子

P⁺_ω(f)(z) = ∫ |f(ζ)||B^ω_ζ(z)| ω(ζ) dA(ζ) 作用于径向函数 φ 时只依赖 m_1(x)：
    P⁺_ω(φ)(|z|) = 2∫_0^1 φ(ρ)·m_1(ρ|z|)·ρ ω(ρ) dρ

算子范数只给出下界：径向检验函数的比值 ‖P⁺φ‖/‖φ‖，且像的范数只在 |z| <= 1 - 2^{-D} 上计算。
"""

# 标准库导入
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

# 第三方库导入
import numpy as np
import pandas as pd
from scipy.interpolate import PchipInterpolator

# 本地模块导入
from .conditions.hardy import muckenhoupt_Q
from .kernel import CoeffPoly, KernelCoeffs, M1Table, kernel_coeffs_for, m1_value
from .quad import DyadicGrid, SupVerdict, Verdict, composite_rule, integrate_s, sup_verdict, tail_converges
from .utils.configs import DEFAULT_NUMERICS, NumericsConfig, operator_depths
from .utils.errors import DomainError, ParseError
from .weights import RadialWeight, moment, probe_grid, tail_function, transform_V

logger = logging.getLogger(__name__)

# 内层（ρ 方向）固定复合规则：向 ρ = 1 加密 48 层，二进指示函数的断点恰为面板端点
_INNER_LEVELS = (48, 8)
# 默认单项式检验函数的次数
DEFAULT_MONOMIALS = (0, 1, 2, 4, 8, 16, 32, 64, 128, 256)


@dataclass(frozen=True)
class RadialFunction:
    """
    径向检验函数 φ(ρ)

    evaluator 接收距离 s = 1 - ρ；s > support 处 φ = 0。
    """
    kind: str
    param: float
    label: str
    evaluator: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    support: float = 1.0
    _norms: Dict[Tuple[str, float, float], float] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def monomial(cls, n):
        # type: (int) -> RadialFunction
        """φ(ρ) = ρ^n"""
        if n < 0:
            raise DomainError("单项式次数必须非负，当前: {}".format(n))

        def evaluator(s):
            return np.power(1.0 - np.asarray(s, dtype=float), n)

        return cls("monomial", float(n), "r^{}".format(n), evaluator)

    @classmethod
    def indicator(cls, t):
        # type: (float) -> RadialFunction
        """φ = χ_{[t, 1)}"""
        if not 0.0 <= t < 1.0:
            raise DomainError("指示函数的端点必须位于 [0, 1) 内，当前: {!r}".format(t))

        def evaluator(s):
            return np.ones_like(np.asarray(s, dtype=float))

        return cls("indicator", float(t), "1[t={!r}]".format(t), evaluator, support=1.0 - t)

    @classmethod
    def tabulated(cls, r, values, label="tabulated"):
        # type: (Sequence[float], Sequence[float], str) -> RadialFunction
        """按半径给出的取值，PCHIP 插值；表格范围以外视为错误"""
        r = np.asarray(r, dtype=float)
        values = np.asarray(values, dtype=float)
        if len(r) < 2 or len(r) != len(values) or np.any(np.diff(r) <= 0.0):
            raise DomainError("表格函数需要至少两个严格递增的半径点")
        if r[0] > 0.0 or r[-1] < 1.0:
            raise DomainError("表格函数必须覆盖 [0, 1]，当前 [{!r}, {!r}]".format(r[0], r[-1]))
        interpolant = PchipInterpolator(r, values, extrapolate=False)

        def evaluator(s):
            return interpolant(1.0 - np.asarray(s, dtype=float))

        return cls("tabulated", math.nan, label, evaluator)

    @classmethod
    def from_csv(cls, path):
        # type: (str) -> RadialFunction
        """读取表头为 r,phi 的 CSV"""
        frame = pd.read_csv(path)
        if list(frame.columns) != ["r", "phi"]:
            raise ParseError("表格函数文件的表头必须为 r,phi，当前: {}".format(",".join(frame.columns)),
                             token=str(path))
        frame = frame.sort_values("r")
        return cls.tabulated(frame["r"].to_numpy(), frame["phi"].to_numpy(), label="file:{}".format(path))

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        values = np.where(s <= self.support, self.evaluator(np.minimum(s, self.support)), 0.0)
        return values

    def norm(self, v, p, config=None):
        # type: (RadialWeight, float, Optional[NumericsConfig]) -> float
        """‖φ‖_{L^p_v} = (2∫_0^1 |φ(ρ)|^p v(ρ) ρ dρ)^{1/p}，按 (v, p) 缓存"""
        key = (v.spec, v.factor, float(p))
        if key not in self._norms:
            def g(s):
                return np.power(np.abs(self.evaluator(s)), p) * v.omega(s) * (1.0 - s)

            value, _ = integrate_s(g, v.min_s, self.support, config=config)
            if not (value > 0.0 and np.isfinite(value)):
                raise DomainError("{} 的 L^{}_v 范数非有限或为 0".format(self.label, p))
            self._norms[key] = (2.0 * value) ** (1.0 / p)
        return self._norms[key]


@dataclass(frozen=True)
class OperatorEstimate:
    """算子范数下界与逐深度趋势"""
    lower_bound: float
    witness: str
    truncation_trend: Tuple[float, ...]
    depths: Tuple[int, ...]
    trend: Verdict
    trend_slope: float

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "lower_bound": self.lower_bound,
            "witness": self.witness,
            "truncation_trend": list(self.truncation_trend),
            "depths": list(self.depths),
            "trend": self.trend.value,
            "trend_slope": self.trend_slope,
        }


def default_tests(max_depth):
    # type: (int) -> List[RadialFunction]
    """单项式 r^n（n = 0, 1, 2, 4, ..., 256）与二进指示函数 χ_{[1-2^{-k}, 1)}，k = 1..max_depth"""
    tests = [RadialFunction.monomial(n) for n in DEFAULT_MONOMIALS]
    tests.extend(RadialFunction.indicator(1.0 - 2.0 ** -k) for k in range(1, max_depth + 1))
    return tests


def m1_profile(K, xs, config=None):
    # type: (KernelCoeffs, Iterable[float], Optional[NumericsConfig]) -> np.ndarray
    """圆周均值 m_1(x) 在给定 x 上的值（θ 方向梯形规则）"""
    config = config or DEFAULT_NUMERICS
    xs = np.asarray(list(xs), dtype=float)
    if np.any(xs < 0.0) or np.any(xs > config.x_max):
        raise DomainError("x 须在 [0, x_max = {!r}] 内".format(config.x_max))
    return np.array([m1_value(K, float(x), config) for x in xs])


def _m1_table(K, x_top, config):
    # type: (Union[KernelCoeffs, M1Table], float, NumericsConfig) -> M1Table
    if isinstance(K, M1Table):
        if K.x_top < x_top:
            raise DomainError("m_1 插值表只覆盖到 {!r}，需要 {!r}".format(K.x_top, x_top))
        return K
    return M1Table(K, max(x_top, 0.5), config)


def apply_Pplus_radial(K, phi, z_grid, config=None):
    # type: (Union[KernelCoeffs, M1Table], RadialFunction, Sequence[float], Optional[NumericsConfig]) -> np.ndarray
    """
    P⁺_ω(φ) 在 |z| ∈ z_grid 上的值

    Args:
        K: 核系数或已构造的 m_1 插值表（权重取自其中）
        phi: 径向函数
        z_grid: 半径 |z|，位于 [0, x_max] 内
    """
    config = config or DEFAULT_NUMERICS
    z = np.abs(np.asarray(z_grid, dtype=float))
    if np.any(z > config.x_max):
        raise DomainError("|z| 不能超过 x_max = {!r}".format(config.x_max))
    table = _m1_table(K, float(np.max(z)) if len(z) else 0.5, config)
    omega = table.K.weight

    # ρ 方向在 [0, support] 上积分：s = support·ξ
    xi, wi = composite_rule(*_INNER_LEVELS)
    s = phi.support * xi
    inside = s >= omega.min_s
    s, weights = s[inside], phi.support * wi[inside]
    rho = 1.0 - s
    column = 2.0 * weights * phi(s) * rho * omega.omega(s)
    return table(np.outer(z, rho)) @ column


def radial_projection_constant(K, phi, config=None):
    # type: (KernelCoeffs, RadialFunction, Optional[NumericsConfig]) -> float
    """径向 φ 的 P_ω(φ) 为常数 c_0·2∫_0^1 φ(ρ)ρ ω(ρ) dρ（只有 n = 0 项不与 φ 正交）"""
    omega = K.weight

    def g(s):
        return phi(s) * (1.0 - s) * omega.omega(s)

    value, _ = integrate_s(g, omega.min_s, phi.support, config=config)
    return float(K.coeffs[0]) * 2.0 * value


def moment_necessity(omega, v, p, n_max=4096, config=None):
    # type: (RadialWeight, RadialWeight, float, int, Optional[NumericsConfig]) -> SupVerdict
    """
    由 g_n = z^n 得到的必要条件

    A_n = (v_n/ω_n)^{p'}·W_{np'/2}/v_{np'/2}，其中 W = V_{p'}(ω, v) = (ω/v)^{p'}v。
    n 取 1..n_max 上每倍频程 4 个点。W 在边界处不可积时 A_n = ∞。

    Raises:
        DomainError: p <= 1 或 n_max < 32
    """
    config = config or DEFAULT_NUMERICS
    if not p > 1.0:
        raise DomainError("矩必要条件要求 p > 1，当前: {}".format(p))
    if n_max < 32:
        raise DomainError("n_max 至少为 32，当前: {}".format(n_max))
    q = p / (p - 1.0)
    n = np.unique(np.round(np.geomspace(1, n_max, 4 * int(math.log2(n_max)) + 1)).astype(int))

    W = transform_V(omega, v, p)
    if not W.has_closed_tail and not tail_converges(W.omega):
        logger.info("V_{{p'}} 在边界处不可积（{} / {}, p = {}）".format(omega.spec, v.spec, p))
        return sup_verdict(np.full(len(n), math.inf), levels=n, config=config)

    values = []  # type: List[float]
    for k in n:
        x = k * q / 2.0
        numerator = moment(v, float(k), config) / moment(omega, float(k), config)
        value = numerator ** q * moment(W, x, config) / moment(v, x, config)
        if not (np.isfinite(value) and value > 0.0):
            logger.warning("矩在 n = {} 处下溢，扫描截断".format(k))
            break
        values.append(value)
    if len(values) < 6:
        raise DomainError("矩扫描在 n = {} 处截断，剩余点数不足".format(n[len(values)]))
    return sup_verdict(values, levels=n[:len(values)], config=config)


def indicator_test(omega, p, t_grid=None, config=None):
    # type: (RadialWeight, float, Optional[DyadicGrid], Optional[NumericsConfig]) -> SupVerdict
    """
    Q(t) 在二进网格 t_k = 1 - 2^{-k} 上的上确界判定

    Divergent 说明 P⁺_ω 在 L^p_ω 上无界。
    """
    config = config or DEFAULT_NUMERICS
    grid = t_grid or probe_grid(omega, config)
    tail = tail_function(omega, config)
    values = [muckenhoupt_Q(omega, p, float(t), config, tail) for t in grid.r]
    return sup_verdict(values, levels=grid.levels, config=config)


def _trend(depths, maxima, config):
    # type: (Sequence[int], Sequence[float], NumericsConfig) -> Tuple[Verdict, float]
    """末两个深度间 log max 对 log D 的斜率"""
    if len(maxima) < 2:
        return Verdict.INCONCLUSIVE, math.nan
    slope = (math.log(maxima[-1]) - math.log(maxima[-2])) / (math.log(depths[-1]) - math.log(depths[-2]))
    if slope <= config.slope_tol:
        return Verdict.BOUNDED, slope
    if slope >= config.slope_min:
        return Verdict.DIVERGENT, slope
    return Verdict.INCONCLUSIVE, slope


def opnorm_lower(omega, v, p, tests=None, config=None):
    # type: (RadialWeight, RadialWeight, float, Optional[Sequence[RadialFunction]], Optional[NumericsConfig]) -> OperatorEstimate
    """
    ‖P⁺_ω‖_{L^p_v -> L^p_v} 的下界

    每个深度 D 构造一个离散 P⁺ 矩阵：行为 |z| <= 1 - 2^{-D} 上的外层节点，列为 ρ 方向的内层节点；
    全部检验函数作为同一矩阵的列一次求值。
    """
    config = config or DEFAULT_NUMERICS
    if not p >= 1.0:
        raise DomainError("p 必须 >= 1，当前: {}".format(p))
    depths = tuple(operator_depths(config))
    tests = list(tests) if tests is not None else default_tests(max(depths))
    if not tests:
        raise DomainError("至少需要一个检验函数")
    norms = np.array([phi.norm(v, p, config) for phi in tests])

    x_top = 1.0 - 2.0 ** -max(depths)
    K = kernel_coeffs_for(omega, x_top, 0, config)
    table = M1Table(K, x_top, config)

    xi, wi = composite_rule(*_INNER_LEVELS)
    inside = xi >= omega.min_s
    s_in, w_in = xi[inside], wi[inside]
    rho_in = 1.0 - s_in
    kernel_weights = 2.0 * w_in * rho_in * omega.omega(s_in)
    columns = np.column_stack([phi(s_in) for phi in tests])

    maxima, witnesses = [], []
    for D in depths:
        h = 2.0 ** -D
        eta, weta = composite_rule(D + 4, 4)
        s_out = h + (1.0 - h) * eta
        w_out = (1.0 - h) * weta
        keep = s_out >= v.min_s
        s_out, w_out = s_out[keep], w_out[keep]
        rho_out = 1.0 - s_out
        matrix = table(np.outer(rho_out, rho_in)) * kernel_weights[None, :]
        images = matrix @ columns
        outer = 2.0 * w_out * v.omega(s_out) * rho_out
        image_norms = np.power(outer @ np.power(np.abs(images), p), 1.0 / p)
        ratios = image_norms / norms
        best = int(np.argmax(ratios))
        maxima.append(float(ratios[best]))
        witnesses.append(tests[best].label)
        logger.debug("深度 {}: 下界 {:.6g}（{}）".format(D, ratios[best], tests[best].label))

    running = np.maximum.accumulate(maxima)
    best_depth = int(np.argmax(running))
    trend, slope = _trend(depths, running, config)
    return OperatorEstimate(float(running[-1]), witnesses[best_depth], tuple(float(m) for m in running),
                            depths, trend, slope)


def bloch_value(omega, k, config=None):
    # type: (RadialWeight, int, Optional[NumericsConfig]) -> float
    """P_ω((ζ/|ζ|)^k) = z^k·ω_{k/2}/ω_k 的 Bloch 范数"""
    if k < 0:
        raise DomainError("k 必须非负，当前: {}".format(k))
    ratio = moment(omega, k / 2.0, config) / moment(omega, float(k), config)
    return CoeffPoly.monomial(int(k)).bloch_norm() * ratio


def bloch_probe(omega, k_max=256, config=None):
    # type: (RadialWeight, int, Optional[NumericsConfig]) -> SupVerdict
    """
    L^∞ -> Bloch 有界性探测

    单位模函数 (ζ/|ζ|)^k 的投影只剩一个核项，无需二维求积；k 取 1..k_max 上每倍频程 4 个点。
    """
    config = config or DEFAULT_NUMERICS
    if k_max < 8:
        raise DomainError("k_max 至少为 8，当前: {}".format(k_max))
    k = np.unique(np.round(np.geomspace(1, k_max, 4 * int(math.log2(k_max)) + 1)).astype(int))
    values = [bloch_value(omega, int(kk), config) for kk in k]
    return sup_verdict(values, levels=k, config=config)
