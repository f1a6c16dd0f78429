#!/usr/bin/env python
# encoding: utf-8
"""
p > 1 时 P_ω 在 L^p_v 上有界的五个等价条件

记 p' = p/(p-1)，s = 1 - r。网格上 ∫_r^1 对应 ∫_0^s，∫_0^r 对应 ∫_s^1。
"""

# 第三方库导入
import numpy as np

# 本地模块导入
from .base import BaseCondition
from ..utils.decorators import register_condition


def _conjugate(p):
    # type: (float) -> float
    return p / (p - 1.0)


class _BekolleCondition(BaseCondition):
    MIN_P = 1.0
    STRICT_MIN_P = True


@register_condition("T4c")
class DualTailCondition(_BekolleCondition):
    """sup v̂(r)^{1/p}·(∫_r^1 (ω/v)^{p'} v)^{1/p'}/ω̂(r)"""
    DESCRIPTION = "v̂^{1/p}·(∫_r^1 (ω/v)^{p'}v)^{1/p'}/ω̂"

    def profile(self, pair, p, N, grid):
        q = _conjugate(p)
        omega, v = pair.omega, pair.v

        def g(s):
            with np.errstate(divide="ignore", over="ignore"):
                return np.power(omega.omega(s), q) * np.power(v.omega(s), 1.0 - q)

        inner = pair.tail_integrals(g, grid)
        with np.errstate(over="ignore", invalid="ignore"):
            return (np.power(pair.tail_on("v", grid), 1.0 / p) * np.power(inner, 1.0 / q)
                    / pair.tail_on("omega", grid))


@register_condition("T4d")
class HardyTypeCondition(_BekolleCondition):
    """sup ω(r)^p(1-r)^{p-1}/v(r)·∫_0^r v/(ω^p(1-t)^p) dt"""
    DESCRIPTION = "ω^p(1-r)^{p-1}/v·∫_0^r v/(ω^p(1-t)^p)"

    def profile(self, pair, p, N, grid):
        omega, v = pair.omega, pair.v

        def g(s):
            return v.omega(s) / (np.power(omega.omega(s), p) * np.power(s, p))

        inner = pair.head(g, grid)
        s = grid.s
        density = pair.density_on("v", grid)
        return np.power(omega.omega(s), p) * np.power(s, p - 1.0) / density * inner


@register_condition("T4e")
class ProductCondition(_BekolleCondition):
    """sup (∫_0^r v/(ω^p(1-t)^p))^{1/p}·(∫_r^1 (ω/v)^{p'}v)^{1/p'}"""
    DESCRIPTION = "(∫_0^r v/(ω^p(1-t)^p))^{1/p}·(∫_r^1 (ω/v)^{p'}v)^{1/p'}"

    def profile(self, pair, p, N, grid):
        q = _conjugate(p)
        omega, v = pair.omega, pair.v

        def near(s):
            return v.omega(s) / (np.power(omega.omega(s), p) * np.power(s, p))

        def far(s):
            with np.errstate(divide="ignore", over="ignore"):
                return np.power(omega.omega(s), q) * np.power(v.omega(s), 1.0 - q)

        head = pair.head(near, grid)
        tail = pair.tail_integrals(far, grid)
        with np.errstate(over="ignore", invalid="ignore"):
            return np.power(head, 1.0 / p) * np.power(tail, 1.0 / q)


@register_condition("T4f")
class DensityTailCondition(_BekolleCondition):
    """
    sup v̂(r)^{1/p}·∫_r^1 ω/((1-t)v(t))^{1/p} dt / ω̂(r)

    表格权重要求严格为正。
    """
    DESCRIPTION = "v̂^{1/p}·∫_r^1 ω((1-t)v)^{-1/p}/ω̂"

    def profile(self, pair, p, N, grid):
        omega, v = pair.omega, pair.v
        pair.density_on("v", grid)

        def g(s):
            with np.errstate(divide="ignore", over="ignore"):
                return omega.omega(s) * np.power(s * v.omega(s), -1.0 / p)

        inner = pair.tail_integrals(g, grid)
        with np.errstate(over="ignore", invalid="ignore"):
            return np.power(pair.tail_on("v", grid), 1.0 / p) * inner / pair.tail_on("omega", grid)


@register_condition("T4g")
class DensityHeadCondition(_BekolleCondition):
    """
    sup ω(r)(1-r)^{1/p'}/v(r)^{1/p}·∫_0^r v^{1/p}/(ω(1-t)^{1+1/p'}) dt

    表格权重要求严格为正。
    """
    DESCRIPTION = "ω(1-r)^{1/p'}v^{-1/p}·∫_0^r v^{1/p}/(ω(1-t)^{1+1/p'})"

    def profile(self, pair, p, N, grid):
        q = _conjugate(p)
        omega, v = pair.omega, pair.v

        def g(s):
            return np.power(v.omega(s), 1.0 / p) / (omega.omega(s) * np.power(s, 1.0 + 1.0 / q))

        inner = pair.head(g, grid)
        s = grid.s
        density = pair.density_on("v", grid)
        return omega.omega(s) * np.power(s, 1.0 / q) / np.power(density, 1.0 / p) * inner
