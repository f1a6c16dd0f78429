#!/usr/bin/env python
# encoding: utf-8
"""
正则权重的三种等价刻画（参数 a > 1）

ω₁ = ω^{1-a}(1-r)^{-a}，ω₂ = (ω(1-r))^{-1/a}ω：
- L9ii: ψ̃_{ω₁}(r) ≍ 1-r，以 F = ψ̃_{ω₁}/(1-r) + (1-r)/ψ̃_{ω₁} 的上确界判定
- L9iii: (ψ̃_{ω₁}/(1-r))·(ψ_ω/(1-r))^{a-1} 有界，且 ω 局部可比
- L9iv: ω₂ 是正则权重

作为 (ω, v, p) 条件求值时取 a = p，v 不参与计算。
"""

# 标准库导入
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

# 第三方库导入
import numpy as np

# 本地模块导入
from .base import BaseCondition, ConditionResult, WeightPair
from ..quad import Verdict, sup_verdict
from ..utils.configs import DEFAULT_NUMERICS, NumericsConfig
from ..utils.decorators import register_condition, require_exponent
from ..utils.errors import DomainError, LabError
from ..weights import (RadialWeight, WeightClass, classify, lemma9_omega1, lemma9_omega2, probe_grid,
                       psi_ratio_on_grid)

logger = logging.getLogger(__name__)

# 局部可比探测：t ∈ [r, r + (1-r)/2] 上的采样点数
_PROBE_POINTS = 9


def _omega1_ratio(w, a, grid, config):
    # type: (RadialWeight, float, Any, NumericsConfig) -> np.ndarray
    """ψ̃_{ω₁}(r_k)/(1 - r_k)"""
    omega1 = lemma9_omega1(w, a)
    pair = WeightPair(omega1, omega1, config)
    head = pair.head(omega1.omega, grid)
    s = grid.s
    return head / (omega1.omega(s) * s)


def _combine(first, second):
    # type: (Verdict, Verdict) -> Verdict
    if first is Verdict.DIVERGENT or second is Verdict.DIVERGENT:
        return Verdict.DIVERGENT
    if first is Verdict.BOUNDED and second is Verdict.BOUNDED:
        return Verdict.BOUNDED
    return Verdict.INCONCLUSIVE


class _RegularityCondition(BaseCondition):
    MIN_P = 1.0
    STRICT_MIN_P = True
    CHARACTERIZES = False


@register_condition("L9ii")
class HeadRatioCondition(_RegularityCondition):
    DESCRIPTION = "ψ̃_{ω₁}/(1-r) + (1-r)/ψ̃_{ω₁}"

    def profile(self, pair, p, N, grid):
        ratio = _omega1_ratio(pair.omega, p, grid, self.config)
        return ratio + 1.0 / ratio


@register_condition("L9iii")
class MuckenhouptProductCondition(_RegularityCondition):
    DESCRIPTION = "(ψ̃_{ω₁}/(1-r))·(ψ_ω/(1-r))^{a-1}，附局部可比探测"

    def profile(self, pair, p, N, grid):
        ratio = _omega1_ratio(pair.omega, p, grid, self.config)
        return ratio * np.power(psi_ratio_on_grid(pair.omega, grid, self.config), p - 1.0)

    @staticmethod
    def local_probe(w, grid):
        """max ω(t)/ω(r)，t ∈ [r, r + (1-r)/2]"""
        s = grid.s
        fractions = np.linspace(0.5, 1.0, _PROBE_POINTS)
        u = s[:, None] * fractions[None, :]
        return (w.omega(u) / w.omega(s)[:, None]).max(axis=1)

    @require_exponent
    def evaluate(self, omega, v, p, N=0, grid=None, pair=None):
        pair = pair or WeightPair(omega, v, self.config)
        grid = grid or pair.default_grid()
        product = sup_verdict(self.profile(pair, p, N, grid), levels=grid.levels, config=self.config)
        probe = sup_verdict(self.local_probe(omega, grid), levels=grid.levels, config=self.config)
        return ConditionResult(self.ID, _combine(product.verdict, probe.verdict), sup=product,
                               grid_depth=grid.depth, details={"local_probe": probe.to_dict()})


@register_condition("L9iv")
class TransformedRegularCondition(_RegularityCondition):
    DESCRIPTION = "ω₂ = (ω(1-r))^{-1/a}ω 为正则权重"

    def profile(self, pair, p, N, grid):
        """ψ_{ω₂}(r)/(1-r)"""
        return psi_ratio_on_grid(lemma9_omega2(pair.omega, p), grid, self.config)

    @require_exponent
    def evaluate(self, omega, v, p, N=0, grid=None, pair=None):
        try:
            omega2 = lemma9_omega2(omega, p)
        except DomainError as e:
            return ConditionResult(self.ID, Verdict.DIVERGENT, error=str(e))
        grid = grid or probe_grid(omega2, self.config)
        report = classify(omega2, self.config, grid)
        if report.weight_class is WeightClass.REGULAR:
            verdict = Verdict.BOUNDED
        elif report.weight_class is WeightClass.INCONCLUSIVE:
            verdict = Verdict.INCONCLUSIVE
        else:
            verdict = Verdict.DIVERGENT
        sup = report.ratio_verdict
        if sup is None:
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = psi_ratio_on_grid(omega2, grid, self.config)
            sup = sup_verdict(ratios, levels=grid.levels, config=self.config)
        return ConditionResult(self.ID, verdict, sup=sup, grid_depth=grid.depth,
                               details={"class": report.weight_class.value})


@dataclass(frozen=True)
class Lemma9Report:
    """三种正则刻画的逐项结果"""
    weight: str
    a: float
    results: Dict[str, ConditionResult]

    @property
    def all_hold(self):
        # type: () -> bool
        return all(result.bounded for result in self.results.values())

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "weight": self.weight,
            "a": self.a,
            "all_hold": self.all_hold,
            "results": {cid: result.to_dict() for cid, result in self.results.items()},
        }


def lemma9_check(w, a, config=None):
    # type: (RadialWeight, float, Optional[NumericsConfig]) -> Lemma9Report
    """
    依次检查 L9ii、L9iii、L9iv

    某一项的数值或定义域错误只记入该项，不影响其余两项。

    Raises:
        DomainError: a <= 1
    """
    if not a > 1.0:
        raise DomainError("参数 a 必须大于 1，当前: {}".format(a))
    config = config or DEFAULT_NUMERICS
    results = {}  # type: Dict[str, ConditionResult]
    for condition_cls in (HeadRatioCondition, MuckenhouptProductCondition, TransformedRegularCondition):
        condition = condition_cls(config)
        try:
            results[condition.ID] = condition.evaluate(w, w, a)
        except LabError as e:
            logger.warning("{} 求值失败（{}，a = {}）: {}".format(condition.ID, w.spec, a, e))
            results[condition.ID] = ConditionResult(condition.ID, Verdict.INCONCLUSIVE, error=str(e))
    return Lemma9Report(w.spec, a, results)
