#!/usr/bin/env python
# encoding: utf-8
"""
积分有界性条件

导入本包即注册全部内置条件。
"""

from . import bekolle, endpoint, improving, kappa, kernel_hypotheses, regularity  # noqa: F401
from .base import BaseCondition, ConditionReport, ConditionResult, OverallVerdict, WeightPair
from .checker import check_pair, default_conditions, eval_condition, resolve_condition
from .hardy import hardy_K, hardy_K_profile, muckenhoupt_Q
from .kappa import KappaCriterion, kappa_criterion
from .regularity import Lemma9Report, lemma9_check
from .window import ExponentWindow, exponent_window

__all__ = [
    "BaseCondition", "ConditionReport", "ConditionResult", "OverallVerdict", "WeightPair",
    "check_pair", "default_conditions", "eval_condition", "resolve_condition",
    "hardy_K", "hardy_K_profile", "muckenhoupt_Q",
    "KappaCriterion", "kappa_criterion",
    "Lemma9Report", "lemma9_check",
    "ExponentWindow", "exponent_window",
]
