#!/usr/bin/env python
# encoding: utf-8
"""
求积、二进网格与上确界判定
"""

# 标准库导入
import math

# 第三方库导入
import numpy as np
import pytest

# 本地模块导入
from src.quad import (DyadicGrid, Verdict, composite_rule, dyadic_integrals, extrapolate_limit, increments_decay,
                      integrate, integrate_s, sup_verdict, tail_converges)
from src.utils.errors import ConvergenceError, DivergentIntegralError, DomainError


class TestIntegrateS:
    """s 坐标下的自适应求积"""

    def test_polynomial_on_interior_interval(self):
        value, achieved = integrate_s(lambda s: s ** 2, 0.25, 1.0)
        np.testing.assert_allclose(value, (1.0 - 0.25 ** 3) / 3.0, rtol=1e-12)
        assert achieved <= 1e-10

    def test_integrable_singularity_at_zero(self):
        value, _ = integrate_s(lambda s: s ** -0.5, 0.0, 1.0)
        np.testing.assert_allclose(value, 2.0, rtol=1e-8)

    def test_log_singularity_at_zero(self):
        value, _ = integrate_s(lambda s: -np.log(s), 0.0, 0.5)
        np.testing.assert_allclose(value, 0.5 * (1.0 + math.log(2.0)), rtol=1e-8)

    def test_divergent_tail_raises(self):
        with pytest.raises(DivergentIntegralError):
            integrate_s(lambda s: 1.0 / s, 0.0, 0.5)

    def test_reversed_limits_negate(self):
        forward, _ = integrate_s(lambda s: s, 0.25, 0.75)
        backward, _ = integrate_s(lambda s: s, 0.75, 0.25)
        np.testing.assert_allclose(backward, -forward, rtol=1e-14)

    def test_empty_interval(self):
        assert integrate_s(lambda s: s, 0.3, 0.3) == (0.0, 0.0)

    def test_outside_unit_interval(self):
        with pytest.raises(DomainError):
            integrate_s(lambda s: s, -0.1, 0.5)

    def test_radius_coordinates(self):
        value, _ = integrate(lambda t: 2.0 * t, 0.0, 1.0)
        np.testing.assert_allclose(value, 1.0, rtol=1e-12)

    def test_radius_coordinates_boundary_form(self):
        # f 直接接收 s = 1 - t
        value, _ = integrate(lambda s: 1.0 / np.sqrt(s), 0.0, 1.0, boundary_form=True)
        np.testing.assert_allclose(value, 2.0, rtol=1e-8)

    def test_radius_limits_checked(self):
        with pytest.raises(DomainError):
            integrate(lambda t: t, 0.5, 0.2)


class TestCompositeRule:

    def test_weights_sum_to_one(self):
        nodes, weights = composite_rule(20, 4)
        np.testing.assert_allclose(weights.sum(), 1.0, rtol=1e-14)
        assert np.all((nodes > 0.0) & (nodes < 1.0))

    def test_resolves_endpoint_power(self):
        nodes, weights = composite_rule(48, 4)
        np.testing.assert_allclose(np.dot(weights, nodes ** -0.5), 2.0, rtol=1e-8)

    def test_read_only(self):
        nodes, _ = composite_rule(4, 4)
        with pytest.raises(ValueError):
            nodes[0] = 0.0


class TestDyadicGrid:

    def test_levels_and_points(self):
        grid = DyadicGrid(5)
        np.testing.assert_array_equal(grid.levels, [1, 2, 3, 4, 5])
        np.testing.assert_array_equal(grid.s, [0.5, 0.25, 0.125, 0.0625, 0.03125])
        np.testing.assert_array_equal(grid.r, 1.0 - grid.s)

    @pytest.mark.parametrize("depth", [2, 1001])
    def test_depth_range(self, depth):
        with pytest.raises(DomainError):
            DyadicGrid(depth)

    def test_deepened_respects_cap(self):
        assert DyadicGrid(36).deepened(12, 40).depth == 40
        assert DyadicGrid(20).deepened(12, 48).depth == 32

    def test_dyadic_integrals_of_constant(self):
        grid = DyadicGrid(10)
        result = dyadic_integrals(lambda s: np.ones_like(s), grid)
        k = grid.levels
        np.testing.assert_allclose(result.head, 1.0 - 2.0 ** -k, rtol=1e-12)
        np.testing.assert_allclose(result.tail, 2.0 ** -k, rtol=1e-10)

    def test_dyadic_integrals_divergent_tail(self):
        result = dyadic_integrals(lambda s: 1.0 / s, DyadicGrid(8))
        assert np.all(np.isinf(result.tail))
        np.testing.assert_allclose(result.head, np.log(2.0) * np.arange(1, 9), rtol=1e-10)


class TestSupVerdict:
    """有界 / 发散 / 不确定 的判定"""

    def test_constant_is_bounded(self):
        verdict = sup_verdict(np.full(30, 3.0))
        assert verdict.verdict is Verdict.BOUNDED
        assert verdict.sup_value == 3.0
        assert verdict.tail_slope == pytest.approx(0.0, abs=1e-12)

    def test_saturating_sequence_is_bounded(self):
        k = np.arange(1, 37)
        verdict = sup_verdict(1.0 - 2.0 ** -k)
        assert verdict.bounded
        np.testing.assert_allclose(verdict.sup_value, 1.0, atol=1e-10)
        assert verdict.argmax_level == 36

    def test_logarithmic_growth_is_divergent(self):
        k = np.arange(1, 37, dtype=float)
        verdict = sup_verdict(k * math.log(2.0))
        assert verdict.divergent
        np.testing.assert_allclose(verdict.tail_slope, 1.0, rtol=1e-12)

    def test_non_finite_is_divergent(self):
        values = np.ones(12)
        values[7] = np.inf
        verdict = sup_verdict(values)
        assert verdict.divergent
        assert verdict.sup_value == math.inf
        assert verdict.argmax_level == 8

    def test_callable_needs_grid(self):
        with pytest.raises(DomainError):
            sup_verdict(lambda r: r)

    def test_callable_on_grid(self):
        grid = DyadicGrid(20)
        verdict = sup_verdict(lambda r: 1.0 / (1.0 - r), grid=grid)
        assert verdict.divergent
        assert verdict.levels == tuple(range(1, 21))

    def test_too_few_values(self):
        with pytest.raises(DomainError):
            sup_verdict([1.0, 2.0, 3.0])

    def test_custom_levels(self):
        verdict = sup_verdict(np.full(8, 2.0), levels=range(10, 18))
        assert verdict.levels[0] == 10
        assert verdict.bounded

    def test_slow_convergence_from_below_is_bounded(self):
        # F = 2 - 2/k：末段对数斜率约 1/k，增量按 k^{-2} 衰减
        k = np.arange(1, 37, dtype=float)
        verdict = sup_verdict(2.0 - 2.0 / k)
        assert verdict.bounded
        assert verdict.tail_slope > 0.02
        assert verdict.argmax_level == 36

    def test_slow_convergence_on_geometric_levels(self):
        k = np.unique(np.round(np.geomspace(1, 256, 33)).astype(int))
        verdict = sup_verdict(3.0 - 5.0 / (k + 1.0), levels=k)
        assert verdict.bounded
        assert verdict.argmax_level == 256

    def test_iterated_logarithm_is_not_bounded(self):
        # 增量约 1/k，不可和
        k = np.arange(1, 37, dtype=float)
        verdict = sup_verdict(np.log(k + 1.0))
        assert verdict.divergent

    @pytest.mark.parametrize("scale", [1e-6, 1.0, 1e6])
    def test_scale_invariance(self, scale):
        k = np.arange(1, 37, dtype=float)
        for values in (np.full(36, 3.0), 1.0 - 2.0 ** -k, 2.0 - 2.0 / k, k * math.log(2.0), 2.0 ** k):
            base = sup_verdict(values)
            scaled = sup_verdict(scale * values)
            assert scaled.verdict is base.verdict
            assert scaled.argmax_level == base.argmax_level
            np.testing.assert_allclose(scaled.sup_value, scale * base.sup_value, rtol=1e-12)


class TestExtrapolation:

    def test_geometric_convergence(self):
        k = np.arange(1, 11)
        limit, error = extrapolate_limit(1.0 + 0.5 ** k)
        np.testing.assert_allclose(limit, 1.0, atol=1e-12)
        assert error < 1e-10

    def test_constant_sequence(self):
        limit, error = extrapolate_limit(np.full(8, 0.5))
        assert limit == 0.5
        assert error == 0.0

    def test_divergent_sequence(self):
        with pytest.raises(ConvergenceError):
            extrapolate_limit(np.arange(1.0, 11.0))

    def test_increments_decay(self):
        k = np.arange(1, 31)
        assert increments_decay(1.0 + 0.5 ** k)
        assert not increments_decay(k.astype(float))
        assert not increments_decay([1.0, np.inf, 2.0])

    def test_tail_converges(self):
        assert tail_converges(lambda s: s ** -0.5)
        assert not tail_converges(lambda s: 1.0 / s)
        assert not tail_converges(lambda s: s ** -1.5)

    def test_tail_converges_with_logarithmic_factors(self):
        # Σ j^{-2} 收敛，Σ j^{-1} 发散
        assert tail_converges(lambda s: 1.0 / (s * (1.0 - np.log(s)) ** 2))
        assert not tail_converges(lambda s: 1.0 / (s * (1.0 - np.log(s))))
