#!/usr/bin/env python
# encoding: utf-8
"""
实验室装饰器

提供权重族与条件的注册装饰器，以及条件求值前的指数范围检查。
"""

# 标准库导入
import functools
from typing import TYPE_CHECKING, Any, Callable, Dict, Type

# 本地模块导入
from .errors import DomainError

if TYPE_CHECKING:
    # noinspection PyUnusedImports
    from ..conditions.base import BaseCondition
    from ..weights.base import WeightFamily

# 全局权重族注册表
FAMILY_REGISTRY = {}  # type: Dict[str, Type['WeightFamily']]

# 全局条件注册表
CONDITION_REGISTRY = {}  # type: Dict[str, Type['BaseCondition']]


def register_family(name):
    # type: (str) -> Callable
    """
    权重族注册装饰器

    Args:
        name (str): 权重描述语法中的族名，如 "std"、"log"

    Usage:
        @register_family("pow")
        class PowFamily(WeightFamily):
            pass
    """

    def decorator(cls):
        cls.NAME = name
        FAMILY_REGISTRY[name] = cls
        return cls

    return decorator


def register_condition(condition_id):
    # type: (str) -> Callable
    """
    条件注册装饰器

    Args:
        condition_id (str): 条件编号，与命令行 --conditions 的拼写一致（大小写不敏感）

    Usage:
        @register_condition("T4d")
        class HardyTypeCondition(BaseCondition):
            pass
    """

    def decorator(cls):
        cls.ID = condition_id
        CONDITION_REGISTRY[condition_id] = cls
        return cls

    return decorator


def require_exponent(func):
    # type: (Callable) -> Callable
    """
    装饰器：检查条件的指数 p 是否在该条件的适用范围内

    被装饰方法签名为 (self, omega, v, p, ...)，读取 self.MIN_P 与 self.STRICT_MIN_P。
    p 不在范围内时抛出 DomainError。
    """

    @functools.wraps(func)
    def wrapper(self, omega, v, p, *args, **kwargs):
        # type: (Any, Any, Any, float, *Any, **Any) -> Any
        min_p = getattr(self, "MIN_P", None)
        if min_p is not None:
            strict = getattr(self, "STRICT_MIN_P", False)
            if (strict and not p > min_p) or (not strict and p < min_p):
                raise DomainError("条件 {} 要求 p {} {}，当前 p = {}".format(
                    getattr(self, "ID", self.__class__.__name__), ">" if strict else ">=", min_p, p))
        return func(self, omega, v, p, *args, **kwargs)

    return wrapper
