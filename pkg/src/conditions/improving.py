#!/usr/bin/env python
# encoding: utf-8
"""
自我改进条件

sup_r ω̂(r)^p/v̂(r)·∫_0^r v̂/(ω̂^p(1-t)) dt < ∞。
p = 1 时同样有意义，与 T5c/T5d 的判定一致。
"""

# 第三方库导入
import numpy as np

# 本地模块导入
from .base import BaseCondition
from ..utils.decorators import register_condition


@register_condition("EImpr")
class SelfImprovingCondition(BaseCondition):
    """只依赖 ω̂、v̂ 的条件，满足时 p 可以向下改进"""
    MIN_P = 1.0
    DESCRIPTION = "ω̂^p/v̂·∫_0^r v̂/(ω̂^p(1-t))"

    def profile(self, pair, p, N, grid):
        omega_tail, v_tail = pair.tail("omega"), pair.tail("v")

        def g(s):
            return v_tail(s) / (np.power(omega_tail(s), p) * s)

        inner = pair.head(g, grid)
        return np.power(pair.tail_on("omega", grid), p) / pair.tail_on("v", grid) * inner
