#!/usr/bin/env python
# encoding: utf-8
"""
应用上下文

按依赖顺序创建 ConfigManager 与 LogManager，其余组件（条件注册表、实验室、
报告与 CSV 写入器）在第一次使用时创建并缓存，退出时统一清理。
"""

# 标准库导入
import logging
from typing import TYPE_CHECKING, Any, Callable, Dict

# 本地模块导入
from .config_manager import ConfigManager
from .log_manager import LogManager

if TYPE_CHECKING:
    from .condition_registry import ConditionRegistry
    from .csv_writer import CsvWriter
    from .report_writer import ReportWriter
    from ..lab import BergmanLab


class ApplicationContext:
    """应用上下文：组件的创建、缓存与清理"""

    def __init__(self, config_file="config/lab_config.yaml"):
        # type: (str) -> None
        self.components = {}  # type: Dict[str, Any]

        self.config_manager = ConfigManager(config_file)
        # LogManager 依赖 ConfigManager，保持单例
        self.log_manager = LogManager(self.config_manager)

        self.base_dir = self.config_manager.get_base_dir()
        self.logger = self.log_manager.get_logger(self)
        self.logger.debug("应用上下文初始化完成: {}".format(config_file))

    def get_logger(self, obj=None):
        # type: (Any) -> logging.Logger
        """按名称、类或实例取得 logger"""
        return self.log_manager.get_logger(obj)

    def _lazy(self, name, factory):
        # type: (str, Callable[[], Any]) -> Any
        if name not in self.components:
            self.components[name] = factory()
            self.logger.debug("注册组件: {}".format(name))
        return self.components[name]

    def get_condition_registry(self):
        # type: () -> 'ConditionRegistry'
        """条件注册表（只扫描一次条件目录）"""
        from .condition_registry import ConditionRegistry
        return self._lazy("condition_registry", lambda: ConditionRegistry(context=self))

    def get_report_writer(self):
        # type: () -> 'ReportWriter'
        from .report_writer import ReportWriter
        output = self.config_manager.get_output_config()
        return self._lazy("report_writer", lambda: ReportWriter(
            self.config_manager.get_output_dir(), output.json_indent, self.get_logger(ReportWriter)))

    def get_csv_writer(self):
        # type: () -> 'CsvWriter'
        from .csv_writer import CsvWriter
        output = self.config_manager.get_output_config()
        return self._lazy("csv_writer", lambda: CsvWriter(
            self.config_manager.get_output_dir(), output.csv_delimiter, output.include_header,
            self.get_logger(CsvWriter)))

    def get_lab(self):
        # type: () -> 'BergmanLab'
        from ..lab import BergmanLab
        return self._lazy("lab", lambda: BergmanLab(context=self))

    def cleanup(self):
        # type: () -> None
        """清理所有已创建的组件"""
        for name, component in list(self.components.items()):
            if hasattr(component, "cleanup"):
                try:
                    component.cleanup()
                except Exception as e:
                    self.logger.error("清理组件失败 {}: {}".format(name, e))
        self.components.clear()
        self.logger.debug("应用上下文清理完成")
