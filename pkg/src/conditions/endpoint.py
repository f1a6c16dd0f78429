#!/usr/bin/env python
# encoding: utf-8
"""
p = 1 端点的两个条件

P_ω 在 L^1_v 上有界当且仅当下面两式之一（二者等价）有限：
- T5c: sup (ω(r)/v(r))·∫_0^r v̂/(ω̂(1-t)) dt
- T5d: sup (v̂(r)/ω̂(r))·∫_r^1 ω/(v(1-t)) dt

指数 p 不参与计算。
"""

# 第三方库导入
import numpy as np

# 本地模块导入
from .base import BaseCondition
from ..utils.decorators import register_condition


@register_condition("T5c")
class EndpointDensityCondition(BaseCondition):
    DESCRIPTION = "(ω/v)·∫_0^r v̂/(ω̂(1-t))"

    def profile(self, pair, p, N, grid):
        omega_tail, v_tail = pair.tail("omega"), pair.tail("v")

        def g(s):
            return v_tail(s) / (omega_tail(s) * s)

        inner = pair.head(g, grid)
        return pair.omega.omega(grid.s) / pair.density_on("v", grid) * inner


@register_condition("T5d")
class EndpointTailCondition(BaseCondition):
    DESCRIPTION = "(v̂/ω̂)·∫_r^1 ω/(v(1-t))"

    def profile(self, pair, p, N, grid):
        omega, v = pair.omega, pair.v

        def g(s):
            with np.errstate(divide="ignore", over="ignore"):
                return omega.omega(s) / (v.omega(s) * s)

        inner = pair.tail_integrals(g, grid)
        with np.errstate(over="ignore", invalid="ignore"):
            return pair.tail_on("v", grid) / pair.tail_on("omega", grid) * inner
