#!/usr/bin/env python
# encoding: utf-8
"""
JSON 报告写入器

报告格式（schema 1）：
    {"schema": 1, "request": {...}, "result": {...}}

request 记录子命令、参数与数值配置，足以用 --replay 重新运行；
浮点数保留 repr 精度，inf/nan 写为字符串 "inf"/"-inf"/"nan"。
"""

# 标准库导入
import dataclasses
import json
import math
import os
import sys
import tempfile
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

# 第三方库导入
import numpy as np

# 本地模块导入
from .errors import ParseError

SCHEMA_VERSION = 1


def make_json_safe(obj):
    # type: (Any) -> Any
    """递归转换为 JSON 原生类型"""
    if hasattr(obj, "to_dict"):
        return make_json_safe(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return make_json_safe(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [make_json_safe(v) for v in obj.tolist()]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": make_json_safe(float(obj.real)), "im": make_json_safe(float(obj.imag))}
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, Path):
        return str(obj)
    return obj


class ReportWriter(object):
    """JSON 报告写入器：原子写入文件，或写到标准输出"""

    def __init__(self, output_dir, json_indent, logger):
        # type: (Path, int, object) -> None
        self.output_dir = output_dir
        self.json_indent = json_indent
        self.logger = logger

    def build(self, request, result):
        # type: (Dict[str, Any], Any) -> Dict[str, Any]
        return {
            "schema": SCHEMA_VERSION,
            "request": make_json_safe(request),
            "result": make_json_safe(result),
        }

    def dumps(self, report):
        # type: (Dict[str, Any]) -> str
        return json.dumps(report, indent=self.json_indent, ensure_ascii=False, allow_nan=False)

    def write(self, report, path=None):
        # type: (Dict[str, Any], Optional[str]) -> Optional[Path]
        """
        写出报告

        Args:
            report: build 的返回值
            path: 目标路径；None 时写到标准输出。相对路径基于输出目录

        Returns:
            Optional[Path]: 写入的文件路径
        """
        text = self.dumps(report) + "\n"
        if path is None:
            sys.stdout.write(text)
            return None
        target = self._resolve(path)
        atomic_write(target, text)
        self.logger.info("报告已写入: {}".format(target))
        return target

    def _resolve(self, path):
        # type: (str) -> Path
        target = Path(path)
        return target if target.is_absolute() else self.output_dir / target

    @staticmethod
    def read(path):
        # type: (str) -> Dict[str, Any]
        """
        读取报告并检查 schema

        Raises:
            ParseError: 文件不是 schema 1 的报告
        """
        try:
            with open(str(path), "r", encoding="utf-8") as f:
                report = json.load(f)
        except (OSError, IOError) as e:
            raise ParseError("无法读取报告 {}: {}".format(path, e), token=str(path))
        except ValueError as e:
            raise ParseError("报告不是合法的 JSON {}: {}".format(path, e), token=str(path))
        if not isinstance(report, dict) or report.get("schema") != SCHEMA_VERSION:
            raise ParseError("不支持的报告格式（需要 schema {}）: {}".format(SCHEMA_VERSION, path),
                             token=str(path))
        if "request" not in report or "result" not in report:
            raise ParseError("报告缺少 request 或 result 节: {}".format(path), token=str(path))
        return report

    def cleanup(self):
        # type: () -> None
        sys.stdout.flush()


def atomic_write(target, text):
    # type: (Path, str) -> None
    """在目标目录中写临时文件后 os.replace"""
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=str(target.parent), prefix=".{}.".format(target.name), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_name, str(target))
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
