#!/usr/bin/env python
# encoding: utf-8
"""
κ 判据

对正则权重 ω、v，记 κ_ω = lim ψ_ω(r)/(1-r)。P_ω 在 L^p_v 上有界当且仅当 κ_ω/κ_v < p。
比值与 p 的差落在 κ 外推误差之内时不作判定，报告为边界情形。
"""

# 标准库导入
from dataclasses import dataclass
from typing import Any, Dict, Optional

# 本地模块导入
from .base import BaseCondition, ConditionResult, WeightPair
from ..quad import Verdict, sup_verdict
from ..utils.configs import DEFAULT_NUMERICS, NumericsConfig
from ..utils.decorators import register_condition, require_exponent
from ..utils.errors import ConvergenceError
from ..weights import RadialWeight, kappa, psi_ratio_on_grid

# 边界判定的最小相对宽度
BOUNDARY_RTOL = 1e-6


@dataclass(frozen=True)
class KappaCriterion:
    """κ_ω/κ_v 与 p 的比较"""
    ratio: float
    verdict: bool
    boundary: bool
    margin: float
    kappa_omega: float
    kappa_v: float

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "ratio": self.ratio,
            "verdict": self.verdict,
            "boundary": self.boundary,
            "margin": self.margin,
            "kappa_omega": self.kappa_omega,
            "kappa_v": self.kappa_v,
        }


def kappa_criterion(omega, v, p, config=None):
    # type: (RadialWeight, RadialWeight, float, Optional[NumericsConfig]) -> KappaCriterion
    """
    比较 κ_ω/κ_v 与 p

    Args:
        omega: 正则权重 ω
        v: 正则权重 v
        p: 指数

    Returns:
        KappaCriterion：verdict 为真当且仅当 ratio < p - margin

    Raises:
        ConvergenceError: 任一 κ 外推不收敛
    """
    config = config or DEFAULT_NUMERICS
    k_omega = kappa(omega, config)
    k_v = kappa(v, config)
    for weight, estimate in ((omega, k_omega), (v, k_v)):
        if not estimate.converged:
            raise ConvergenceError("{} 的 κ 外推不收敛".format(weight.spec),
                                   tail=list(estimate.ratio_range))
    ratio = k_omega.value / k_v.value
    margin = ratio * (k_omega.error / k_omega.value + k_v.error / k_v.value)
    boundary = abs(ratio - p) <= max(margin, BOUNDARY_RTOL * p)
    verdict = (not boundary) and ratio < p - margin
    return KappaCriterion(ratio, verdict, boundary, margin, k_omega.value, k_v.value)


@register_condition("KappaCrit")
class KappaCondition(BaseCondition):
    """κ_ω/κ_v < p（要求两个权重都是正则权重）"""
    MIN_P = 1.0
    DESCRIPTION = "κ_ω/κ_v < p"

    def profile(self, pair, p, N, grid):
        """(ψ_ω/(1-r))/(ψ_v/(1-r))，极限为 κ_ω/κ_v"""
        return psi_ratio_on_grid(pair.omega, grid, self.config) / psi_ratio_on_grid(pair.v, grid, self.config)

    @require_exponent
    def evaluate(self, omega, v, p, N=0, grid=None, pair=None):
        pair = pair or WeightPair(omega, v, self.config)
        grid = grid or pair.default_grid()
        criterion = kappa_criterion(omega, v, p, self.config)
        if criterion.boundary:
            verdict = Verdict.INCONCLUSIVE
        elif criterion.verdict:
            verdict = Verdict.BOUNDED
        else:
            verdict = Verdict.DIVERGENT
        sup = sup_verdict(self.profile(pair, p, N, grid), levels=grid.levels, config=self.config)
        return ConditionResult(self.ID, verdict, sup=sup, ratio=criterion.ratio, boundary=criterion.boundary,
                               grid_depth=grid.depth, details=criterion.to_dict())
