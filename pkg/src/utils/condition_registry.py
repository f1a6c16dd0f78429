#!/usr/bin/env python
# encoding: utf-8
"""
条件注册管理器

负责条件模块的发现、注册和查询。
与配置系统解耦，避免循环依赖。
"""

# 标准库导入
import importlib
from typing import TYPE_CHECKING, Any, Dict, List, Type

# 本地模块导入
from .decorators import CONDITION_REGISTRY
from .errors import ParseError

if TYPE_CHECKING:
    # noinspection PyUnusedImports
    from .application_context import ApplicationContext
    from ..conditions.base import BaseCondition

# 不是条件模块的文件
_SKIPPED_MODULES = ("base.py", "checker.py", "window.py", "hardy.py")


class ConditionRegistry:
    """
    条件注册管理器

    扫描 conditions 目录并导入其中的模块，触发 @register_condition 注册。
    """

    def __init__(self, context):
        # type: ('ApplicationContext') -> None
        self.context = context
        self.logger = context.get_logger(self)
        self.conditions_dir = context.config_manager.get_conditions_dir()

        self._auto_discover_conditions()

    def _auto_discover_conditions(self):
        """导入 conditions 目录下所有非 '_' 开头的条件模块"""
        condition_files = sorted(self.conditions_dir.glob("*.py"))
        condition_files = [f for f in condition_files
                           if f.name not in _SKIPPED_MODULES and not f.name.startswith("_")]
        self.logger.debug("发现 {} 个条件模块文件".format(len(condition_files)))

        for condition_file in condition_files:
            module_name = condition_file.stem
            try:
                importlib.import_module("src.conditions.{}".format(module_name))
                self.logger.debug("成功导入条件模块: {}".format(module_name))
            except ImportError as e:
                self.logger.warning("导入条件模块失败 {}: {}".format(module_name, e))

        self.logger.info("自动发现完成，注册了 {} 个条件".format(len(CONDITION_REGISTRY)))

    @staticmethod
    def get_registered_conditions():
        # type: () -> Dict[str, Type['BaseCondition']]
        return CONDITION_REGISTRY.copy()

    def get_condition_ids(self):
        # type: () -> List[str]
        return sorted(self.get_registered_conditions())

    def is_condition_registered(self, condition_id):
        # type: (str) -> bool
        lowered = condition_id.lower()
        return any(cid.lower() == lowered for cid in self.get_registered_conditions())

    def get_condition_class(self, condition_id):
        # type: (str) -> Type['BaseCondition']
        """
        按编号获取条件类（大小写不敏感）

        Raises:
            ParseError: 条件未注册
        """
        lowered = condition_id.lower()
        for cid, condition_cls in self.get_registered_conditions().items():
            if cid.lower() == lowered:
                return condition_cls
        raise ParseError("条件 '{}' 未注册（可用: {}）".format(
            condition_id, ", ".join(self.get_condition_ids())), token=condition_id)

    def parse_condition_list(self, text):
        # type: (str) -> List[str]
        """把逗号分隔的条件列表解析为规范编号"""
        ids = [token.strip() for token in text.split(",") if token.strip()]
        if not ids:
            raise ParseError("条件列表为空", token=text)
        return [self.get_condition_class(cid).ID for cid in ids]

    def get_statistics(self):
        # type: () -> Dict[str, Any]
        conditions = self.get_registered_conditions()
        return {
            "total_registered": len(conditions),
            "condition_ids": sorted(conditions),
            "characterizing": sorted(cid for cid, cls in conditions.items() if cls.CHARACTERIZES),
        }
