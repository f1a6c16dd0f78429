#!/usr/bin/env python
# encoding: utf-8
"""
径向权重

导入本包即注册全部内置权重族。
"""

from . import families  # noqa: F401
from .base import RadialWeight, WeightFamily, derived_weight
from .classifier import (ClassificationReport, DoublingReport, KappaEstimate, WeightClass,
                         classify, doubling_report, kappa)
from .functionals import (area_mass, associated_moment, associated_profile, associated_weight,
                          head_integral, head_on_grid, moment, moment_table, probe_grid, psi,
                          psi_ratio_on_grid, psi_tilde, tail_at_s, tail_function, tail_integral, tail_on_grid,
                          total_mass)
from .parser import parse_weight
from .transforms import lemma9_omega1, lemma9_omega2, scaled, shift_weight, transform_V

__all__ = [
    "RadialWeight", "WeightFamily", "derived_weight",
    "ClassificationReport", "DoublingReport", "KappaEstimate", "WeightClass",
    "classify", "doubling_report", "kappa",
    "area_mass", "associated_moment", "associated_profile", "associated_weight",
    "head_integral", "head_on_grid", "moment", "moment_table", "probe_grid", "psi",
    "psi_ratio_on_grid", "psi_tilde", "tail_at_s", "tail_function", "tail_integral", "tail_on_grid", "total_mass",
    "parse_weight",
    "lemma9_omega1", "lemma9_omega2", "scaled", "shift_weight", "transform_V",
]
