#!/usr/bin/env python
# encoding: utf-8
"""
配置管理器

负责加载、验证和管理实验室的配置信息。
配置文件缺失或为空时回退到配置类的硬编码默认值。
"""

# 标准库导入
import sys
from pathlib import Path
from typing import Any, Dict

# 第三方库导入
import yaml

# 本地模块导入
from .configs import AppConfig, LogConfig, NumericsConfig, OutputConfig


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_file="config/lab_config.yaml"):
        # type: (str) -> None
        """
        初始化配置管理器

        Args:
            config_file: 配置文件路径（相对路径基于工具根目录）
        """
        self._setup_config_manager(config_file)

    def _setup_config_manager(self, config_file):
        # type: (str) -> None
        # 工具根目录
        self.base_dir = Path(__file__).parent.parent.parent.resolve()
        self.config_file = config_file

        self._load_config()
        self._validate_config()

    def _resolve_path(self):
        # type: () -> Path
        path = Path(self.config_file)
        if path.is_absolute():
            return path
        return self.base_dir / path

    def _load_config(self):
        """
        加载配置文件

        注意：此方法在logger初始化之前调用，因此使用sys.stdout/stderr输出
        """
        config_path = self._resolve_path()
        self.config_data = self._get_default_config_data()

        if not config_path.exists():
            sys.stderr.write("配置文件不存在: {}，使用默认配置\n".format(config_path))
            return
        if not config_path.is_file():
            sys.stderr.write("配置路径不是文件: {}，使用默认配置\n".format(config_path))
            return

        try:
            with open(str(config_path), "r") as f:
                config_data = yaml.safe_load(f)
        except (OSError, IOError) as e:
            sys.stderr.write("读取配置文件失败: {}。错误: {}\n".format(config_path, e))
            raise
        except yaml.YAMLError as e:
            sys.stderr.write("配置文件YAML格式错误: {}。请检查语法\n".format(e))
            raise

        if not config_data:
            sys.stderr.write("配置文件为空，使用默认配置\n")
            return
        if not isinstance(config_data, dict):
            raise ValueError("配置文件顶层必须为字典，当前类型: {}".format(type(config_data).__name__))

        # 缺失的节使用默认值
        for section, defaults in self._get_default_config_data().items():
            if section not in config_data:
                config_data[section] = defaults
        self.config_data = config_data

    @staticmethod
    def _get_default_config_data():
        # type: () -> Dict[str, Dict[str, Any]]
        """加载默认配置"""
        return {
            "app": AppConfig().to_dict(),
            "logging": LogConfig().to_dict(),
            "output": OutputConfig().to_dict(),
            "numerics": NumericsConfig().to_dict(),
        }

    def _validate_config(self):
        """验证配置"""
        self.app_config = AppConfig.validate(self.config_data.get("app"))
        self.log_config = LogConfig.validate(self.config_data.get("logging"))
        self.output_config = OutputConfig.validate(self.config_data.get("output"))
        self.numerics_config = NumericsConfig.validate(self.config_data.get("numerics"))

    def get_base_dir(self):
        # type: () -> Path
        """获取工具根目录"""
        return self.base_dir

    def get_conditions_dir(self):
        # type: () -> Path
        """获取条件模块目录"""
        return self.base_dir / "src" / "conditions"

    def get_output_dir(self):
        # type: () -> Path
        """获取报告输出目录"""
        output_dir = Path(self.output_config.output_dir)
        return output_dir if output_dir.is_absolute() else self.base_dir / output_dir

    def get_app_name(self):
        # type: () -> str
        """获取应用名称"""
        return self.app_config.name

    def get_version_info(self):
        # type: () -> str
        """获取版本信息字符串"""
        return "{} {}".format(self.app_config.name, self.app_config.version)

    def get_app_config(self):
        # type: () -> AppConfig
        return self.app_config

    def get_log_config(self):
        # type: () -> LogConfig
        return self.log_config

    def get_output_config(self):
        # type: () -> OutputConfig
        return self.output_config

    def get_numerics_config(self):
        # type: () -> NumericsConfig
        return self.numerics_config
