#!/usr/bin/env python
# encoding: utf-8
"""
权重类别判定

倍增性：sup ω̂(r)/ω̂((1+r)/2) < ∞。
正则（Regular）：倍增且 ψ_ω(r)/(1-r) 上下有界。
快速增长（RapidlyIncreasing）：倍增且 ψ_ω(r)/(1-r) 在网格后半段本质递增并趋于无穷。
"""

# 标准库导入
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

# 第三方库导入
import numpy as np

# 本地模块导入
from .base import RadialWeight
from .functionals import probe_grid, psi_ratio_on_grid, tail_on_grid
from ..quad import DyadicGrid, SupVerdict, Verdict, extrapolate_limit, increments_decay, sup_verdict
from ..utils.configs import DEFAULT_NUMERICS, NumericsConfig
from ..utils.errors import ConvergenceError

logger = logging.getLogger(__name__)


class WeightClass(Enum):
    """权重类别"""
    REGULAR = "Regular"
    RAPIDLY_INCREASING = "RapidlyIncreasing"
    DOUBLING_ONLY = "DoublingOnly"
    NON_DOUBLING = "NonDoubling"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DoublingReport:
    """倍增常数 C、指数 β 与趋势判定"""
    constant: float
    exponent: float
    ok: bool
    verdict: SupVerdict
    truncated_depth: Optional[int] = None

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "constant": self.constant,
            "exponent": self.exponent,
            "ok": self.ok,
            "verdict": self.verdict.to_dict(),
            "truncated_depth": self.truncated_depth,
        }


@dataclass(frozen=True)
class KappaEstimate:
    """κ_ω 的外推值与误差；未收敛时 value 为 None"""
    value: Optional[float]
    error: Optional[float]
    converged: bool
    ratio_range: Tuple[float, float]

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "value": self.value,
            "error": self.error,
            "converged": self.converged,
            "ratio_range": list(self.ratio_range),
        }


@dataclass(frozen=True)
class ClassificationReport:
    """classify 的结果"""
    weight: str
    doubling_constant: float
    doubling_exponent: float
    regularity_ratio_range: Tuple[float, float]
    weight_class: WeightClass
    kappa: Optional[KappaEstimate]
    doubling: DoublingReport
    ratio_verdict: Optional[SupVerdict]
    grid_depth: int

    @property
    def is_regular(self):
        # type: () -> bool
        return self.weight_class is WeightClass.REGULAR

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "weight": self.weight,
            "class": self.weight_class.value,
            "doubling_constant": self.doubling_constant,
            "doubling_exponent": self.doubling_exponent,
            "regularity_ratio_range": list(self.regularity_ratio_range),
            "kappa": self.kappa.to_dict() if self.kappa else None,
            "doubling": self.doubling.to_dict(),
            "ratio_verdict": self.ratio_verdict.to_dict() if self.ratio_verdict else None,
            "grid_depth": self.grid_depth,
        }


def doubling_report(w, config=None, grid=None):
    # type: (RadialWeight, Optional[NumericsConfig], Optional[DyadicGrid]) -> DoublingReport
    """
    倍增常数 C = max ω̂(r)/ω̂((1+r)/2) 与指数 β

    网格上 (1+r_k)/2 = r_{k+1}，因此比值只需一层更深的 ω̂。
    ω̂ 下溢时记录截断深度，该层及更深的比值记为 inf。
    """
    config = config or DEFAULT_NUMERICS
    grid = grid or probe_grid(w, config)
    depth = grid.depth
    tails = tail_on_grid(w, DyadicGrid(depth + 1), config)

    truncated = None
    zero = np.nonzero(~(tails > 0.0))[0]
    if len(zero):
        truncated = int(zero[0])
        logger.warning("ω̂ 在第 {} 层下溢（{}）".format(truncated + 1, w.spec))

    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = tails[:-1] / tails[1:]
    ratios[~np.isfinite(ratios)] = np.inf
    verdict = sup_verdict(ratios, levels=grid.levels, config=config)

    usable = tails[:truncated] if truncated is not None else tails
    levels = np.arange(1, len(usable) + 1, dtype=float)
    exponent = math.nan
    if len(usable) >= 2:
        logs = np.log(usable)
        i, j = np.triu_indices(len(usable), k=1)
        exponent = float(np.max((logs[i] - logs[j]) / ((levels[j] - levels[i]) * math.log(2.0))))

    ok = verdict.verdict is Verdict.BOUNDED
    constant = float(np.max(ratios)) if ok else math.inf
    return DoublingReport(constant, exponent, ok, verdict, truncated)


def _essentially_increasing(values, factor):
    # type: (np.ndarray, float) -> bool
    """乘以容忍因子后单调不减"""
    running = np.maximum.accumulate(values)
    return bool(np.all(values * factor >= running))


def kappa(w, config=None, grid=None):
    # type: (RadialWeight, Optional[NumericsConfig], Optional[DyadicGrid]) -> KappaEstimate
    """
    κ_ω = lim ψ_ω(r)/(1-r) 的外推估计

    比值序列的增量不衰减或外推失败时返回 converged=False，value 与 error 为 None。
    """
    config = config or DEFAULT_NUMERICS
    grid = grid or probe_grid(w, config)
    ratios = psi_ratio_on_grid(w, grid, config)
    finite = ratios[np.isfinite(ratios)]
    ratio_range = (float(np.min(finite)), float(np.max(finite))) if len(finite) else (math.nan, math.nan)
    try:
        if not increments_decay(ratios):
            raise ConvergenceError("ψ_ω/(1-r) 的增量不衰减", tail=ratios[-6:].tolist())
        value, error = extrapolate_limit(ratios, atol=config.tol)
    except ConvergenceError as e:
        logger.warning("κ 外推未收敛（{}）: {}".format(w.spec, e))
        return KappaEstimate(None, None, False, ratio_range)
    return KappaEstimate(value, error, True, ratio_range)


def classify(w, config=None, grid=None):
    # type: (RadialWeight, Optional[NumericsConfig], Optional[DyadicGrid]) -> ClassificationReport
    """
    判定权重类别

    模糊的趋势给出 Inconclusive，不抛出异常。
    """
    config = config or DEFAULT_NUMERICS
    grid = grid or probe_grid(w, config)
    doubling = doubling_report(w, config, grid)

    def report(weight_class, ratio_range=(math.nan, math.nan), kappa_estimate=None, ratio_verdict=None):
        return ClassificationReport(w.spec, doubling.constant, doubling.exponent, ratio_range,
                                    weight_class, kappa_estimate, doubling, ratio_verdict, grid.depth)

    if doubling.verdict.verdict is Verdict.DIVERGENT:
        return report(WeightClass.NON_DOUBLING)
    if doubling.verdict.verdict is Verdict.INCONCLUSIVE:
        return report(WeightClass.INCONCLUSIVE)

    ratios = psi_ratio_on_grid(w, grid, config)
    if not np.all(np.isfinite(ratios)) or not np.all(ratios > 0.0):
        return report(WeightClass.INCONCLUSIVE)
    ratio_range = (float(np.min(ratios)), float(np.max(ratios)))
    upper = sup_verdict(ratios, levels=grid.levels, config=config)
    lower = sup_verdict(1.0 / ratios, levels=grid.levels, config=config)

    if upper.bounded and lower.bounded:
        if ratio_range[1] / ratio_range[0] > config.regular_ratio_bound:
            return report(WeightClass.DOUBLING_ONLY, ratio_range, ratio_verdict=upper)
        return report(WeightClass.REGULAR, ratio_range, kappa(w, config, grid), upper)

    if upper.divergent:
        second_half = ratios[len(ratios) // 2:]
        if _essentially_increasing(second_half, config.monotone_factor):
            return report(WeightClass.RAPIDLY_INCREASING, ratio_range, ratio_verdict=upper)
        return report(WeightClass.DOUBLING_ONLY, ratio_range, ratio_verdict=upper)

    return report(WeightClass.INCONCLUSIVE, ratio_range, ratio_verdict=upper)
