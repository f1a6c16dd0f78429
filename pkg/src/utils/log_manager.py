#!/usr/bin/env python
# encoding: utf-8
"""
日志管理器

应用命名空间与根 logger 共用配置文件中的 handlers：组件通过 get_logger(self)
取得以类名命名的 logger，数值模块使用 logging.getLogger(__name__) 向根传播。
scipy/numpy 发出的 warnings（如 IntegrationWarning）经 py.warnings 记录到同一处。
"""

# 标准库导入
import copy
import logging
import logging.config
import threading
from pathlib import Path
from typing import Any, Dict, List

# 本地模块导入
from .config_manager import ConfigManager
from .configs import LogConfig


def parse_level(name):
    # type: (str) -> int
    """级别名转为数值，未知名称按 INFO 处理"""
    level = logging.getLevelName(str(name).upper())
    return level if isinstance(level, int) else logging.INFO


class LogManager:
    """日志管理类（单例）"""

    _instance = None
    _lock = threading.Lock()

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super(LogManager, cls).__new__(cls)
        return cls._instance

    def __init__(self, config_manager, log_dir="logs"):
        # type: (ConfigManager, str) -> None
        if not hasattr(self, "_initialized"):
            self._initialized = False
            self._setup(config_manager, log_dir)
            self._initialized = True

    @classmethod
    def reset(cls):
        """丢弃单例（测试中切换配置文件时使用）"""
        with cls._lock:
            if cls._instance is not None:
                logging.captureWarnings(False)
            cls._instance = None

    def _setup(self, config_manager, log_dir):
        # type: (ConfigManager, str) -> None
        self.loggers = {}  # type: Dict[str, logging.Logger]
        self.config_manager = config_manager
        self.log_dir = Path(log_dir) if Path(log_dir).is_absolute() else config_manager.get_base_dir() / log_dir
        self.namespace = config_manager.get_app_name()

        config = config_manager.get_log_config()
        self.level = parse_level(config.level)
        self.formatters = dict(config.formatters)
        logging.config.dictConfig(self._build_dict_config(config))
        logging.captureWarnings(True)

        self.logger = self.get_logger(self)
        self.logger.debug("日志管理器初始化完成，级别 {}".format(logging.getLevelName(self.level)))

    def _build_dict_config(self, config):
        # type: (LogConfig) -> Dict[str, Any]
        """把 LogConfig 整理为 dictConfig 字典：文件路径落到日志目录，格式随级别选择"""
        log_config = copy.deepcopy(config.to_dict())
        log_config.pop("level", None)
        formatter = "detailed" if self.level <= logging.DEBUG else "simple"

        for handler in log_config["handlers"].values():
            if "filename" in handler:
                self.log_dir.mkdir(parents=True, exist_ok=True)
                handler["filename"] = str(self.log_dir / handler["filename"])
            if formatter in log_config["formatters"]:
                handler["formatter"] = formatter

        handler_names = list(log_config["handlers"])  # type: List[str]
        level_name = logging.getLevelName(self.level)
        log_config.setdefault("loggers", {})
        log_config["loggers"][self.namespace] = {"level": level_name, "handlers": handler_names, "propagate": False}
        log_config["root"] = {"level": level_name, "handlers": handler_names}
        log_config["disable_existing_loggers"] = False
        return log_config

    def get_logger(self, obj=None):
        # type: (Any) -> logging.Logger
        """按名称、类或实例取得 logger；缺省为应用命名空间"""
        if isinstance(obj, str):
            name = obj
        elif obj is not None:
            name = obj.__name__ if isinstance(obj, type) else obj.__class__.__name__
        else:
            name = self.namespace

        if name not in self.loggers:
            logger = logging.getLogger(name)
            logger.setLevel(self.level)
            self.loggers[name] = logger
        return self.loggers[name]

    def set_level(self, level):
        # type: (int) -> None
        """调整全部 logger 的级别；降到 DEBUG 时 handlers 改用 detailed 格式"""
        self.level = level
        targets = [logging.getLogger(), logging.getLogger(self.namespace)] + list(self.loggers.values())
        for logger in targets:
            logger.setLevel(level)

        fmt = self.formatters.get("detailed" if level <= logging.DEBUG else "simple", {}).get("format")
        if fmt:
            for handler in logging.getLogger().handlers + logging.getLogger(self.namespace).handlers:
                handler.setFormatter(logging.Formatter(fmt))
        self.logger.debug("日志级别已调整为 {}".format(logging.getLevelName(level)))
