# encoding: utf-8
"""
Bergman 数值实验室

径向权重、加权 Bergman 核与投影有界性条件的数值验证工具。
"""

__author__ = "bwyu"
__description__ = "Numerical laboratory for radial weights and weighted Bergman projections"
