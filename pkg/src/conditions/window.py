#!/usr/bin/env python
# encoding: utf-8
"""
自我改进指数窗口

在 p 处 EImpr 成立时：
- m = sup{δ >= 0 : EImpr 在 p - δ 处成立}
- M = inf{δ : ∫_0^1 v̂/(ω̂^{p-δ}(1-t)) dt < ∞}

满足 0 < m <= M < p；κ_ω、κ_v 存在时 m = M = p - κ_ω/κ_v。
"""

# 标准库导入
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

# 第三方库导入
import numpy as np

# 本地模块导入
from .base import WeightPair
from .improving import SelfImprovingCondition
from ..quad import increments_decay, sup_verdict, tail_converges
from ..utils.configs import DEFAULT_NUMERICS, NumericsConfig
from ..utils.errors import DomainError, LabError, PreconditionError
from ..weights import RadialWeight

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExponentWindow:
    """m、M 为二分区间的中点，bracket 为区间半宽"""
    p: float
    m: float
    M: float
    bracket: float

    def to_dict(self):
        # type: () -> Dict[str, float]
        return {"p": self.p, "m": self.m, "M": self.M, "bracket": self.bracket}


def _bisect(predicate, lo, hi, tol):
    # type: (Callable[[float], bool], float, float, float) -> Tuple[float, float]
    """predicate(lo) 为真、predicate(hi) 为假时，返回分界点的中点估计与区间半宽"""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), 0.5 * (hi - lo)


def exponent_window(omega, v, p, config=None):
    # type: (RadialWeight, RadialWeight, float, Optional[NumericsConfig]) -> ExponentWindow
    """
    二分估计 m 与 M

    Args:
        omega: 权重 ω
        v: 权重 v
        p: 指数，p > 0

    Returns:
        ExponentWindow

    Raises:
        DomainError: p <= 0
        PreconditionError: EImpr 在 p 处不成立
    """
    if not p > 0.0:
        raise DomainError("p 必须为正，当前: {}".format(p))
    config = config or DEFAULT_NUMERICS
    condition = SelfImprovingCondition(config)
    pair = WeightPair(omega, v, config)
    grid = pair.default_grid()

    at_p = sup_verdict(condition.profile(pair, p, 0, grid), levels=grid.levels, config=config)
    if not at_p.bounded:
        raise PreconditionError("EImpr 在 p = {} 处不成立（{}），无法估计指数窗口".format(p, at_p.verdict.value),
                                omega=omega.spec, v=v.spec, p=p)

    def improving_holds(delta):
        try:
            return increments_decay(condition.profile(pair, p - delta, 0, grid))
        except LabError as e:
            logger.debug("δ = {:.6f} 处 EImpr 求值失败: {}".format(delta, e))
            return False

    omega_tail, v_tail = pair.tail("omega"), pair.tail("v")
    if omega.has_closed_tail and v.has_closed_tail:
        first, last = 40, 100
    else:
        # 插值得到的 ω̂ 只覆盖到 max_depth 层附近
        first, last = config.max_depth - 24, config.max_depth + 2

    def integral_converges(delta):
        def g(s):
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                return v_tail(s) / (np.power(omega_tail(s), p - delta) * s)

        return tail_converges(g, first=first, last=last, order=config.panel_order)

    m, bracket = _bisect(improving_holds, 0.0, p, config.bisection_tol)
    if integral_converges(0.0):
        M = 0.0
    else:
        M, M_bracket = _bisect(lambda delta: not integral_converges(delta), 0.0, p, config.bisection_tol)
        bracket = max(bracket, M_bracket)
    logger.debug("指数窗口 p = {}: m = {:.4f}, M = {:.4f}".format(p, m, M))
    return ExponentWindow(p, m, M, bracket)
