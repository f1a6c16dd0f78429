# encoding: utf-8
"""
工具模块

包含配置管理、日志、异常层次、注册表、报告与 CSV 写入等功能。
"""
