#!/usr/bin/env python
# encoding: utf-8
"""
权重族、描述解析、泛函与变换
"""

# 标准库导入
import math

# 第三方库导入
import numpy as np
import pandas as pd
import pytest

# 本地模块导入
from src.quad import DyadicGrid
from src.utils.errors import DomainError, ParseError
from src.weights import (area_mass, associated_moment, associated_weight, derived_weight, head_integral,
                         lemma9_omega1, lemma9_omega2, moment, moment_table, parse_weight, probe_grid, psi,
                         psi_ratio_on_grid, psi_tilde, shift_weight, tail_at_s, tail_function, tail_integral,
                         tail_on_grid, total_mass, transform_V)


class TestParseWeight:
    """权重描述语法"""

    @pytest.mark.parametrize("text, spec", [
        ("pow:a=1", "pow:a=1"),
        ("  pow : a = 0.5 ", "pow:a=0.5"),
        ("std:a=0", "std:a=0"),
        ("log:a=2", "log:a=2,n=0"),
        ("log:n=1,a=3", "log:a=3,n=1"),
        ("exp", "exp:c=1"),
        ("reglog:a=0,b=2", "reglog:a=0,b=2"),
    ])
    def test_canonical_spec(self, text, spec):
        assert parse_weight(text).spec == spec

    def test_spec_round_trips(self):
        w = parse_weight("log:a=2.5,n=1")
        assert parse_weight(w.spec).spec == w.spec

    @pytest.mark.parametrize("text", ["", "   ", "nope:a=1", "pow:", "pow:a", "pow:a=x", "pow:b=1",
                                      "pow:a=1,a=2", "Pow:a=1", "log:n=1.5,a=2", "pow:a=1,norm=2"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_weight(text)

    def test_missing_required_parameter(self):
        with pytest.raises(ParseError):
            parse_weight("pow:scale=2")

    @pytest.mark.parametrize("text", ["pow:a=-2", "pow:a=-1", "log:a=1", "exp:c=0", "log:a=2,n=7",
                                      "pow:a=0,scale=0"])
    def test_domain_errors(self, text):
        with pytest.raises(DomainError):
            parse_weight(text)

    def test_error_reports_token(self):
        with pytest.raises(ParseError) as info:
            parse_weight("pow:q=1")
        assert info.value.to_dict()["token"] == "q"

    def test_scale_modifier(self):
        w = parse_weight("pow:a=1,scale=2")
        assert w.factor == 2.0
        assert w.spec == "pow:a=1,scale=2.0"
        np.testing.assert_allclose(w.omega(0.5), 1.0)

    def test_normalization(self):
        w = parse_weight("pow:a=1,norm=1")
        assert w.normalized
        np.testing.assert_allclose(w.factor, 2.0, rtol=1e-14)
        np.testing.assert_allclose(total_mass(w), 1.0, rtol=1e-12)
        assert w.spec.endswith("norm=1")


class TestFamilies:
    """闭式尾积分与矩同数值求积一致"""

    @pytest.mark.parametrize("text", ["pow:a=0.5", "pow:a=-0.5", "std:a=1", "std:a=-0.5",
                                      "reglog:a=0.5,b=1", "reglog:a=0,b=-0.5"])
    def test_closed_tail_matches_quadrature(self, text):
        w = parse_weight(text)
        for r in (0.0, 0.5, 0.9, 0.999):
            s = 1.0 - r
            closed = float(w.closed_tail(s))
            numeric = float(derived_tail(w, s))
            np.testing.assert_allclose(closed, numeric, rtol=1e-8)

    def test_std_tail_value(self):
        np.testing.assert_allclose(tail_integral(parse_weight("std:a=1"), 0.5), 0.4166667, rtol=1e-6)

    def test_exp_tail_underflows_gracefully(self):
        w = parse_weight("exp:c=1")
        values = w.closed_tail(np.ldexp(1.0, -np.arange(1, 13)))
        assert np.all(np.isfinite(values))
        assert values[-1] == 0.0

    def test_pow_moment(self, pow0):
        np.testing.assert_allclose(moment(pow0, 2.0), 1.0 / 6.0, rtol=1e-14)

    def test_moment_by_parts_without_closed_moment(self):
        # reglog:a=0,b=0 即 ω = 1，但只有闭式尾积分
        w = parse_weight("reglog:a=0,b=0")
        assert not w.has_closed_moment
        np.testing.assert_allclose(moment(w, 2.0), 1.0 / 6.0, rtol=1e-9)

    def test_moment_table_interpolated_range(self):
        w = parse_weight("reglog:a=0,b=1")
        table = moment_table(w, 4096)
        assert table.shape == (4097,)
        assert np.all(np.diff(table) < 0.0)
        for n in (10, 3000, 4096):
            np.testing.assert_allclose(table[n], moment(w, float(n)), rtol=1e-6)

    def test_negative_moment_index(self, pow0):
        with pytest.raises(DomainError):
            moment(pow0, -1.0)


def derived_tail(w, s):
    """不经闭式、直接求积的 ∫_0^s ω"""
    return tail_at_s(derived_weight(w.omega, "copy"), s)


class TestFunctionals:

    def test_tail_and_head_partition_mass(self, std0):
        for r in (0.1, 0.5, 0.95):
            np.testing.assert_allclose(tail_integral(std0, r) + head_integral(std0, r), total_mass(std0),
                                       rtol=1e-12)

    @pytest.mark.parametrize("r", [-0.1, 1.0, math.nan])
    def test_radius_out_of_range(self, pow0, r):
        with pytest.raises(DomainError):
            tail_integral(pow0, r)

    def test_area_mass(self):
        np.testing.assert_allclose(area_mass(parse_weight("std:a=0")), 1.0, rtol=1e-14)
        np.testing.assert_allclose(area_mass(parse_weight("pow:a=0")), 1.0, rtol=1e-14)
        np.testing.assert_allclose(area_mass(parse_weight("pow:a=1")), 1.0 / 3.0, rtol=1e-14)

    def test_psi(self, pow1):
        # ψ = (1-r)/2 对 pow:a=1
        np.testing.assert_allclose(psi(pow1, 0.75), 0.125, rtol=1e-12)

    def test_psi_ratio_of_rapidly_increasing_weight(self):
        # log:a=2：ψ(r)/(1-r) = log(e/(1-r))，第 k 层为 1 + k·log 2
        ratios = psi_ratio_on_grid(parse_weight("log:a=2"), DyadicGrid(20))
        np.testing.assert_allclose(ratios, 1.0 + np.arange(1, 21) * np.log(2.0), rtol=1e-12)
        np.testing.assert_allclose(ratios[-1], 14.8629, rtol=1e-5)

    def test_psi_tilde(self, pow0):
        np.testing.assert_allclose(psi_tilde(pow0, 0.25), 0.25, rtol=1e-12)

    def test_associated_weight(self, pow0):
        np.testing.assert_allclose(associated_weight(pow0, 0.5), 0.159074, rtol=1e-5)

    def test_associated_weight_without_closed_tail(self, pow0):
        w = derived_weight(pow0.omega, "pow0 copy")
        np.testing.assert_allclose(associated_weight(w, 0.5), associated_weight(pow0, 0.5), rtol=1e-8)

    def test_associated_weight_rejects_origin(self, pow0):
        with pytest.raises(DomainError):
            associated_weight(pow0, 0.0)

    def test_associated_moment(self, pow0):
        # ω ≡ 1 时 ω*_0 = 1/16
        np.testing.assert_allclose(associated_moment(pow0, 0.0), 1.0 / 16.0, rtol=1e-7)

    def test_tail_function_interpolation(self):
        w = parse_weight("reglog:a=1,b=2")
        tail = tail_function(derived_weight(w.omega, "reglog copy"))
        s = np.array([0.01, 1e-6, 1e-12])
        np.testing.assert_allclose(tail(s), w.closed_tail(s), rtol=1e-5)
        np.testing.assert_allclose(tail(0.01), w.closed_tail(0.01), rtol=1e-5)

    def test_tail_on_grid_uses_closed_form(self, pow1):
        grid = DyadicGrid(10)
        np.testing.assert_allclose(tail_on_grid(pow1, grid), grid.s ** 2 / 2.0, rtol=1e-15)

    def test_default_grid_depth(self, pow0, numerics):
        assert probe_grid(pow0, numerics).depth == numerics.grid_depth
        assert probe_grid(pow0, numerics, depth=10).depth == 10


class TestTabulatedWeight:

    @pytest.fixture
    def table_file(self, tmp_path):
        s = np.geomspace(2.0 ** -20, 1.0, 200)
        path = tmp_path / "flat.csv"
        pd.DataFrame({"s": s, "omega": np.ones_like(s)}).to_csv(str(path), index=False)
        return path

    def test_flat_table(self, table_file):
        w = parse_weight("tabulated:file={},tail={!r}".format(table_file, 2.0 ** -20))
        np.testing.assert_allclose(w.omega(np.array([0.5, 1e-3])), 1.0, rtol=1e-12)
        np.testing.assert_allclose(total_mass(w), 1.0, rtol=1e-10)
        np.testing.assert_allclose(tail_integral(w, 0.5), 0.5, rtol=1e-10)

    def test_grid_truncated_to_table(self, table_file, numerics):
        w = parse_weight("tabulated:file={}".format(table_file))
        assert probe_grid(w, numerics).depth == 19

    def test_out_of_table_evaluation(self, table_file):
        w = parse_weight("tabulated:file={}".format(table_file))
        with pytest.raises(DomainError):
            w.omega(2.0 ** -25)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            parse_weight("tabulated:file={}".format(tmp_path / "missing.csv"))

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        pd.DataFrame({"r": [0.1, 0.5], "w": [1.0, 1.0]}).to_csv(str(path), index=False)
        with pytest.raises(ParseError):
            parse_weight("tabulated:file={}".format(path))

    def test_non_positive_values(self, tmp_path):
        path = tmp_path / "zero.csv"
        pd.DataFrame({"s": [0.1, 0.5, 1.0], "omega": [1.0, 0.0, 1.0]}).to_csv(str(path), index=False)
        with pytest.raises(DomainError):
            parse_weight("tabulated:file={}".format(path))


class TestTransforms:

    def test_transform_V_pow_closed_tail(self, pow0, pow1):
        W = transform_V(pow1, pow0, 2.0)
        assert W.has_closed_tail
        np.testing.assert_allclose(W.omega(0.5), 0.25, rtol=1e-14)
        np.testing.assert_allclose(W.closed_tail(0.5), 0.125 / 3.0, rtol=1e-14)

    def test_transform_V_requires_p_above_one(self, pow0):
        with pytest.raises(DomainError):
            transform_V(pow0, pow0, 1.0)

    def test_shift_pow_stays_in_family(self, pow1):
        shifted = shift_weight(pow1, 1.5)
        assert shifted.spec == "pow:a=2.5"

    def test_shift_std(self):
        shifted = shift_weight(parse_weight("std:a=1"), 2.0)
        np.testing.assert_allclose(total_mass(shifted), 0.6, rtol=1e-9)

    def test_shift_not_integrable(self, pow0):
        with pytest.raises(DomainError):
            shift_weight(pow0, -1.0)
        with pytest.raises(DomainError):
            shift_weight(parse_weight("std:a=0"), -1.5)

    def test_scaled(self, pow0):
        w = pow0.scaled(3.0)
        np.testing.assert_allclose(total_mass(w), 3.0, rtol=1e-14)
        with pytest.raises(DomainError):
            pow0.scaled(0.0)

    def test_lemma9_weights(self, pow0):
        omega1 = lemma9_omega1(pow0, 2.0)
        omega2 = lemma9_omega2(pow0, 2.0)
        np.testing.assert_allclose(omega1.omega(0.25), 16.0, rtol=1e-14)
        np.testing.assert_allclose(omega2.omega(0.25), 2.0, rtol=1e-14)
        with pytest.raises(DomainError):
            lemma9_omega1(pow0, 1.0)
