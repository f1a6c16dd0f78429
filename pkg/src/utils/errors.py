#!/usr/bin/env python
# encoding: utf-8
"""
异常定义

实验室所有可预期错误的统一层次结构。每个异常携带稳定的退出码，
由 main.py 映射为进程退出状态：2 解析/定义域错误，3 数值错误，4 前置条件错误。
"""

# 标准库导入
from typing import Any, List, Optional


class LabError(Exception):
    """实验室错误基类"""

    exit_code = 1

    def __init__(self, message, **details):
        # type: (str, **Any) -> None
        super(LabError, self).__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        """转换为可写入报告的字典"""
        result = {"error": self.__class__.__name__, "message": self.message}
        for key, value in self.details.items():
            result[key] = value
        return result


class ParseError(LabError):
    """权重描述或命令行参数解析失败"""

    exit_code = 2

    def __init__(self, message, token=None):
        # type: (str, Optional[str]) -> None
        super(ParseError, self).__init__(message, token=token)
        self.token = token


class DomainError(LabError, ValueError):
    """参数超出允许范围"""

    exit_code = 2


class NumericError(LabError):
    """数值计算未达到要求的精度"""

    exit_code = 3

    def __init__(self, message, achieved_tol=None, **details):
        # type: (str, Optional[float], **Any) -> None
        super(NumericError, self).__init__(message, achieved_tol=achieved_tol, **details)
        self.achieved_tol = achieved_tol


class DivergentIntegralError(NumericError):
    """广义积分在端点处发散"""


class UnderflowError(NumericError):
    """深层网格处下溢，扫描被截断"""

    def __init__(self, message, depth=None):
        # type: (str, Optional[int]) -> None
        super(UnderflowError, self).__init__(message, depth=depth)
        self.depth = depth


class ConvergenceError(NumericError):
    """序列外推不收敛"""

    def __init__(self, message, tail=None):
        # type: (str, Optional[List[float]]) -> None
        tail = [float(x) for x in (tail if tail is not None else [])]
        super(ConvergenceError, self).__init__(message, tail=tail)
        self.tail = tail


class TruncationError(NumericError):
    """级数截断所需项数超出已计算的系数"""

    def __init__(self, message, needed=None, available=None):
        # type: (str, Optional[int], Optional[int]) -> None
        super(TruncationError, self).__init__(message, needed=needed, available=available)
        self.needed = needed
        self.available = available


class PreconditionError(LabError):
    """操作的前置条件不满足"""

    exit_code = 4
