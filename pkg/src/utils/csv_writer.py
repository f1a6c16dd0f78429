#!/usr/bin/env python
# encoding: utf-8
"""
CSV写入器

负责扫描结果的 CSV 输出，列固定为 level,r,s,value,verdict,param。
profile 扫描的 param 列为空；参数扫描的 level/r/s 列为空。
"""

# 标准库导入
import csv
import io
import math
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

# 第三方库导入
import pandas as pd

# 本地模块导入
from .errors import ParseError
from .report_writer import atomic_write

SWEEP_COLUMNS = ["level", "r", "s", "value", "verdict", "param"]


def _format_cell(value):
    # type: (Any) -> str
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


class CsvWriter(object):
    """CSV写入器 - 把扫描行原子写入文件或标准输出"""

    def __init__(self, output_dir, csv_delimiter, include_header, logger):
        # type: (Path, str, bool, object) -> None
        """
        初始化CSV写入器

        Args:
            output_dir: 相对路径的基准目录
            csv_delimiter: CSV分隔符
            include_header: 是否包含表头
            logger: 日志记录器
        """
        self.output_dir = output_dir
        self.csv_delimiter = csv_delimiter
        self.include_header = include_header
        self.logger = logger

    def render(self, rows):
        # type: (Iterable[Dict[str, Any]]) -> str
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=SWEEP_COLUMNS, delimiter=self.csv_delimiter,
                                lineterminator="\n")
        if self.include_header:
            writer.writeheader()
        count = 0
        for row in rows:
            unknown = set(row) - set(SWEEP_COLUMNS)
            if unknown:
                raise ValueError("扫描行包含未知列: {}".format(", ".join(sorted(unknown))))
            writer.writerow({column: _format_cell(row.get(column)) for column in SWEEP_COLUMNS})
            count += 1
        self.logger.debug("CSV 共 {} 行".format(count))
        return buffer.getvalue()

    def write(self, rows, path=None):
        # type: (Iterable[Dict[str, Any]], Optional[str]) -> Optional[Path]
        """
        写出扫描行

        Args:
            rows: 以 SWEEP_COLUMNS 为键的字典序列，缺失的列写为空
            path: 目标路径；None 时写到标准输出

        Returns:
            Optional[Path]: 写入的文件路径
        """
        text = self.render(rows)
        if path is None:
            sys.stdout.write(text)
            return None
        target = Path(path)
        if not target.is_absolute():
            target = self.output_dir / target
        atomic_write(target, text)
        self.logger.info("CSV 已写入: {}".format(target))
        return target

    def cleanup(self):
        # type: () -> None
        sys.stdout.flush()


def read_sweep(path, delimiter=","):
    # type: (str, str) -> pd.DataFrame
    """
    读取扫描 CSV

    Raises:
        ParseError: 表头与固定列不一致
    """
    frame = pd.read_csv(path, sep=delimiter, keep_default_na=False, na_values=["nan"],
                        dtype={"verdict": str})
    if list(frame.columns) != SWEEP_COLUMNS:
        raise ParseError("扫描 CSV 的表头必须为 {}".format(",".join(SWEEP_COLUMNS)), token=str(path))
    for column in ("level", "r", "s", "value", "param"):
        frame[column] = pd.to_numeric(frame[column].replace("", math.nan))
    return frame
