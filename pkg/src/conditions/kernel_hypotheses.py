#!/usr/bin/env python
# encoding: utf-8
"""
核积分均值与核范数估计的有界比值假设

记 e = p(N+1)：
- C2mean: [∫_0^r dt/(ω̂^p(1-t)^e)]·ω̂(r)^p(1-r)^{e-1}
- C2norm: [∫_0^r v̂/(ω̂^p(1-t)^e)]·ω̂(r)^p(1-r)^{e-1}/v̂(r)

两者有界时，M_p(r, ∂^N B^ω_a) 与 ‖∂^N B^ω_a‖_{A^p_v} 可由局部量 (1-|a|)^{1-e}/ω̂(a)^p 控制。
"""

# 第三方库导入
import numpy as np

# 本地模块导入
from .base import BaseCondition
from ..utils.decorators import register_condition


class _KernelHypothesis(BaseCondition):
    MIN_P = 0.0
    STRICT_MIN_P = True
    CHARACTERIZES = False


@register_condition("C2mean")
class KernelMeanHypothesis(_KernelHypothesis):
    DESCRIPTION = "[∫_0^r 1/(ω̂^p(1-t)^{p(N+1)})]·ω̂^p(1-r)^{p(N+1)-1}"

    def profile(self, pair, p, N, grid):
        e = p * (N + 1)
        omega_tail = pair.tail("omega")

        def g(s):
            return 1.0 / (np.power(omega_tail(s), p) * np.power(s, e))

        inner = pair.head(g, grid)
        return inner * np.power(pair.tail_on("omega", grid), p) * np.power(grid.s, e - 1.0)


@register_condition("C2norm")
class KernelNormHypothesis(_KernelHypothesis):
    DESCRIPTION = "[∫_0^r v̂/(ω̂^p(1-t)^{p(N+1)})]·ω̂^p(1-r)^{p(N+1)-1}/v̂"

    def profile(self, pair, p, N, grid):
        e = p * (N + 1)
        omega_tail, v_tail = pair.tail("omega"), pair.tail("v")

        def g(s):
            return v_tail(s) / (np.power(omega_tail(s), p) * np.power(s, e))

        inner = pair.head(g, grid)
        return (inner * np.power(pair.tail_on("omega", grid), p) * np.power(grid.s, e - 1.0)
                / pair.tail_on("v", grid))
