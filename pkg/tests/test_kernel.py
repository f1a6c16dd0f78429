#!/usr/bin/env python
# encoding: utf-8
"""
核系数、核求值、圆周均值与核范数
"""

# 标准库导入
import math

# 第三方库导入
import numpy as np
import pytest

# 本地模块导入
from src.kernel import (CoeffPoly, M1Table, bergman_norm, circle_mean, cor2_local, cor2_scan, estimate_terms,
                        kernel_coeffs, kernel_coeffs_for, kernel_eval, lp1_check, m1_value, ratio_scan,
                        reproducing_check, thm1_mean_comparand, thm1_mean_scan, thm1_norm_comparand, thm1_norm_scan)
from src.oracle import forelli_rudin, std_kernel, std_kernel_derivative
from src.utils.errors import DomainError, TruncationError
from src.weights import parse_weight


@pytest.fixture(scope="module")
def std0_coeffs():
    return kernel_coeffs_for(parse_weight("std:a=0"), 0.9)


class TestKernelCoeffs:

    def test_standard_weight_coefficients(self):
        K = kernel_coeffs(parse_weight("std:a=0"), 16)
        np.testing.assert_allclose(K.coeffs, np.arange(1, 18), rtol=1e-10)
        K1 = kernel_coeffs(parse_weight("std:a=1"), 16)
        n = np.arange(17)
        np.testing.assert_allclose(K1.coeffs, (n + 1) * (n + 2) / 2.0, rtol=1e-10)

    def test_derivative_coefficients(self):
        K = kernel_coeffs(parse_weight("std:a=0"), 8)
        # c_n·n(n-1)，n = 2..8
        n = np.arange(2, 9)
        np.testing.assert_allclose(K.derivative_coeffs(2), (n + 1) * n * (n - 1), rtol=1e-10)

    def test_coefficients_are_read_only(self):
        K = kernel_coeffs(parse_weight("pow:a=0"), 8)
        with pytest.raises(ValueError):
            K.coeffs[0] = 0.0

    def test_invalid_length(self):
        with pytest.raises(DomainError):
            kernel_coeffs(parse_weight("pow:a=0"), 0)
        with pytest.raises(TruncationError):
            kernel_coeffs(parse_weight("pow:a=0"), 2 ** 22)

    def test_automatic_length(self):
        K = kernel_coeffs_for(parse_weight("pow:a=0"), 0.999)
        assert K.n_max >= estimate_terms(0.999, 6.0, 1e-10)
        assert K.n_max > 4096

    def test_estimate_terms_grows_with_x(self):
        assert estimate_terms(0.0, 4.0, 1e-10) == 1
        assert estimate_terms(0.5, 4.0, 1e-10) < estimate_terms(0.9, 4.0, 1e-10)


class TestKernelEval:
    """与 std 族闭式比较"""

    @pytest.mark.parametrize("a, z", [(0.5, 0.5), (0.3 + 0.4j, -0.2 + 0.5j), (0.0, 0.7), (0.9j, 0.95)])
    def test_matches_closed_form(self, std0_coeffs, a, z):
        value = kernel_eval(std0_coeffs, a, z)
        np.testing.assert_allclose(value, std_kernel(0.0, a, z), rtol=1e-9)

    def test_known_value(self, std0_coeffs):
        np.testing.assert_allclose(kernel_eval(std0_coeffs, 0.5, 0.5), 16.0 / 9.0, rtol=1e-9)

    @pytest.mark.parametrize("N", [1, 2, 4])
    def test_derivatives(self, N):
        w = parse_weight("std:a=1")
        K = kernel_coeffs_for(w, 0.6, N)
        a, z = 0.6 + 0.2j, 0.3 - 0.7j
        np.testing.assert_allclose(kernel_eval(K, a, z, N), std_kernel_derivative(1.0, a, z, N), rtol=1e-9)

    def test_random_points(self, std0_coeffs):
        rng = np.random.default_rng(7)
        radius = 0.9 * np.sqrt(rng.uniform(size=(10, 2)))
        angle = rng.uniform(0.0, 2.0 * np.pi, size=(10, 2))
        points = radius * np.exp(1j * angle)
        for a, z in points:
            np.testing.assert_allclose(kernel_eval(std0_coeffs, a, z), std_kernel(0.0, a, z), rtol=1e-9)

    def test_truncation(self):
        K = kernel_coeffs(parse_weight("std:a=0"), 64)
        with pytest.raises(TruncationError) as info:
            kernel_eval(K, 0.99, 0.99)
        assert info.value.to_dict()["available"] == 64

    @pytest.mark.parametrize("a, z, N", [(1.0, 0.5, 0), (0.5, 1.2, 0), (0.5, 0.5, 5), (0.5, 0.5, -1)])
    def test_domain(self, std0_coeffs, a, z, N):
        with pytest.raises(DomainError):
            kernel_eval(std0_coeffs, a, z, N)


class TestCircleMean:

    def test_p2_coefficient_sum(self):
        w = parse_weight("std:a=0")
        K = kernel_coeffs_for(w, 0.72)
        value = circle_mean(K, 0.8, 0.9, 2.0)
        # Σ (n+1)² y^n = (1+y)/(1-y)³，y = 0.72²
        y = 0.72 ** 2
        np.testing.assert_allclose(value, (1.0 + y) / (1.0 - y) ** 3, rtol=1e-9)
        np.testing.assert_allclose(value, 13.593, rtol=1e-4)

    def test_trapezoid_agrees_with_coefficients(self):
        K = kernel_coeffs_for(parse_weight("pow:a=1"), 0.72)
        by_sum = circle_mean(K, 0.8, 0.9, 2.0, method="coefficients")
        by_rule = circle_mean(K, 0.8, 0.9, 2.0, method="trapezoid")
        np.testing.assert_allclose(by_rule, by_sum, rtol=1e-8)

    def test_p1_of_standard_kernel(self):
        # M_1(r, (1 - z ā)^{-2}) = 1/(1 - |a|²r²)
        K = kernel_coeffs_for(parse_weight("std:a=0"), 0.72)
        np.testing.assert_allclose(circle_mean(K, 0.8j, 0.9, 1.0), 1.0 / (1.0 - 0.72 ** 2), rtol=1e-6)

    def test_coefficients_only_for_p2(self, std0_coeffs):
        with pytest.raises(DomainError):
            circle_mean(std0_coeffs, 0.5, 0.5, 3.0, method="coefficients")

    @pytest.mark.parametrize("r, p", [(1.0, 2.0), (-0.1, 2.0), (0.5, 0.0)])
    def test_domain(self, std0_coeffs, r, p):
        with pytest.raises(DomainError):
            circle_mean(std0_coeffs, 0.5, r, p)

    def test_m1(self, std0_coeffs):
        np.testing.assert_allclose(m1_value(std0_coeffs, 0.72), 1.0 / (1.0 - 0.72 ** 2), rtol=1e-6)
        np.testing.assert_allclose(m1_value(std0_coeffs, 0.0), 1.0, rtol=1e-12)

    def test_m1_table(self, std0_coeffs):
        table = M1Table(std0_coeffs, 0.9)
        x = np.array([0.0, 0.3, 0.72, 0.9])
        np.testing.assert_allclose(table(x), 1.0 / (1.0 - x ** 2), rtol=1e-5)
        with pytest.raises(DomainError):
            table(0.95)


class TestBergmanNorm:

    def test_reproducing_norm(self):
        # ‖B_a‖²_{A²_ω} = B_a(a)
        w = parse_weight("std:a=0")
        K = kernel_coeffs_for(w, 0.5)
        np.testing.assert_allclose(bergman_norm(K, 0.5, w, 2.0), 16.0 / 9.0, rtol=1e-9)

    def test_rule_path_agrees_with_coefficients(self):
        w = parse_weight("std:a=0")
        K = kernel_coeffs_for(w, 0.5)
        np.testing.assert_allclose(bergman_norm(K, 0.5, w, 2.0 + 1e-9), bergman_norm(K, 0.5, w, 2.0), rtol=1e-5)

    def test_comparands(self):
        pow0, pow1 = parse_weight("pow:a=0"), parse_weight("pow:a=1")
        np.testing.assert_allclose(thm1_mean_comparand(pow0, 2.0, 0, 0.8, 0.625), 7.0 / 3.0, rtol=1e-9)
        np.testing.assert_allclose(thm1_mean_comparand(pow0, 1.0, 0, 0.8, 0.625), 1.0, rtol=1e-9)
        np.testing.assert_allclose(thm1_norm_comparand(pow0, pow1, 2.0, 0, 0.5), 0.5, rtol=1e-9)
        np.testing.assert_allclose(thm1_norm_comparand(pow0, pow0, 1.0, 0, 0.5), math.log(2.0), rtol=1e-9)
        assert thm1_mean_comparand(pow0, 2.0, 0, 0.0, 0.5) == 0.0

    @pytest.mark.parametrize("alpha, beta, p", [(0.0, 1.0, 2.0), (1.0, 0.0, 1.5), (0.5, 2.0, 3.0)])
    def test_norm_comparand_matches_forelli_rudin(self, alpha, beta, p):
        w = parse_weight("pow:a={}".format(alpha))
        v = parse_weight("pow:a={}".format(beta))
        np.testing.assert_allclose(thm1_norm_comparand(w, v, p, 0, 0.9), forelli_rudin(alpha, beta, p, 0.9),
                                   rtol=1e-9)

    def test_local_comparand(self):
        pow0 = parse_weight("pow:a=0")
        np.testing.assert_allclose(cor2_local(pow0, pow0, 2.0, 0, 0.5), 4.0, rtol=1e-12)
        np.testing.assert_allclose(cor2_local(pow0, pow0, 1.0, 0, 0.5), 1.0, rtol=1e-12)


class TestScans:

    def test_ratio_scan(self):
        k = np.arange(1, 21)
        scan = ratio_scan(2.0 ** k, 3.0 * 2.0 ** k)
        assert scan.passes
        scan = ratio_scan(2.0 ** k, np.ones(20))
        assert not scan.passes
        assert scan.forward.divergent

    def test_ratio_scan_rejects_non_positive(self):
        with pytest.raises(DomainError):
            ratio_scan(np.zeros(8), np.ones(8))

    def test_mean_scan_standard_weight(self):
        scan = thm1_mean_scan(parse_weight("std:a=0"), 2.0)
        assert scan.passes
        assert scan.to_dict()["passes"]

    @pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
    @pytest.mark.parametrize("text", ["std:a=1", "pow:a=2", "reglog:a=0,b=1"])
    def test_mean_scan_regular_weights(self, text, p):
        scan = thm1_mean_scan(parse_weight(text), p)
        assert scan.passes
        assert not scan.forward.divergent

    def test_mean_scan_off_diagonal(self):
        assert thm1_mean_scan(parse_weight("std:a=0"), 2.0, path="offdiagonal").passes

    def test_unknown_path(self):
        with pytest.raises(DomainError):
            thm1_mean_scan(parse_weight("std:a=0"), 2.0, path="radial")

    def test_norm_scan(self, pow0):
        # ‖B_a‖² = (1-|a|²)^{-2}，比较积分 ((1-|a|)^{-2} - 1)/2
        assert thm1_norm_scan(pow0, pow0, 2.0).passes

    def test_local_scan(self, pow0):
        assert cor2_scan(pow0, pow0, 2.0).passes


class TestIdentities:

    def test_reproducing_property(self):
        rng = np.random.default_rng(0)
        coefficients = rng.normal(size=9) + 1j * rng.normal(size=9)
        f = CoeffPoly(tuple(complex(c) for c in coefficients))
        inner, expected, rel_err = reproducing_check(f, parse_weight("pow:a=1"), 0.4 - 0.3j)
        np.testing.assert_allclose(inner, expected, rtol=1e-8)
        assert rel_err < 1e-8

    def test_littlewood_paley_identity(self):
        lhs, rhs, rel_err = lp1_check(CoeffPoly((0.0, 1.0)), parse_weight("pow:a=0"))
        np.testing.assert_allclose(lhs, 0.5, rtol=1e-12)
        np.testing.assert_allclose(rhs, 0.5, rtol=1e-8)
        assert rel_err < 1e-8

    def test_littlewood_paley_with_constant_term(self):
        lhs, rhs, _ = lp1_check(CoeffPoly((1.0, 0.0, 1.0)), parse_weight("pow:a=0"))
        np.testing.assert_allclose(lhs, 4.0 / 3.0, rtol=1e-12)
        np.testing.assert_allclose(rhs, 4.0 / 3.0, rtol=1e-6)

    def test_bloch_norm(self):
        np.testing.assert_allclose(CoeffPoly.monomial(2).bloch_norm(), 4.0 / (3.0 * math.sqrt(3.0)), rtol=1e-8)
        assert CoeffPoly((2.0,)).bloch_norm() == 2.0

    def test_empty_polynomial(self):
        with pytest.raises(DomainError):
            CoeffPoly(())
