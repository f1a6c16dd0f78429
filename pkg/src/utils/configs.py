#!/usr/bin/env python
# encoding: utf-8
"""
配置类定义

统一定义所有配置类，提供硬编码的默认值作为兜底配置。
包含应用、日志、输出与数值计算各节的配置，以及单次运行的 RunConfig。
每个配置类都包含自己的验证逻辑。
"""

# 标准库导入
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

# 本地模块导入
from .config_validator import ConfigValidator

MAX_GRID_DEPTH = 48


class ValidatedConfig(ABC):
    """可验证配置的基类"""

    @classmethod
    @abstractmethod
    def validate(cls, config):
        # type: (Dict[str, Any]) -> 'ValidatedConfig'
        """验证配置 - 子类需要实现"""

    @staticmethod
    def _check_section(config, section):
        # type: (Any, str) -> None
        if config is None:
            raise ValueError("{}配置不能为空。请在配置文件中添加'{}'节".format(section, section))
        if not isinstance(config, dict):
            raise ValueError("{}配置必须为字典类型，当前类型: {}。请检查YAML格式".format(
                section, type(config).__name__))

    def to_dict(self):
        # type: () -> Dict[str, Any]
        """转换为字典（写入报告的 request 节）"""
        return dict((key, value) for key, value in self.__dict__.items() if not key.startswith('_'))


class AppConfig(ValidatedConfig):
    """应用配置"""

    def __init__(self, name="bergman_lab", version="1.0.0",
                 description="Radial weights and weighted Bergman projections laboratory",
                 environment="production", debug=False, **kwargs):
        self.name = name
        self.version = version
        self.description = description
        self.environment = environment
        self.debug = debug
        for key, value in kwargs.items():
            setattr(self, key, value)

    @classmethod
    def validate(cls, config):
        # type: (Dict[str, Any]) -> 'AppConfig'
        """
        验证应用配置

        Raises:
            ValueError: 配置验证失败时抛出
        """
        cls._check_section(config, "app")
        ConfigValidator.validate_required(config, ["name", "version", "environment"])
        ConfigValidator.validate_string(config.get("environment"), "environment",
                                        allowed_values=["development", "production"])
        try:
            return cls(**config)
        except TypeError as e:
            raise ValueError("应用配置中存在无效的配置项: {}".format(e))


class LogConfig(ValidatedConfig):
    """日志配置"""

    def __init__(self, version=1, level="INFO", formatters=None, handlers=None, loggers=None, **kwargs):
        self.version = version
        self.level = level

        if formatters is None:
            formatters = {
                "detailed": {"format": "%(asctime)s [%(levelname)s] %(name)s:%(lineno)d %(message)s"},
                "simple": {"format": "%(levelname)s: %(message)s"}
            }
        self.formatters = formatters

        # 控制台输出到 stderr，stdout 留给 JSON 报告
        if handlers is None:
            handlers = {
                "console": {"class": "logging.StreamHandler", "formatter": "simple", "stream": "ext://sys.stderr"},
                "file": {"class": "logging.handlers.TimedRotatingFileHandler", "formatter": "detailed",
                         "filename": "lab.log", "when": "D", "interval": 1, "backupCount": 30}
            }
        self.handlers = handlers
        self.loggers = loggers if loggers is not None else {}
        for key, value in kwargs.items():
            setattr(self, key, value)

    @classmethod
    def validate(cls, config):
        # type: (Dict[str, Any]) -> 'LogConfig'
        """
        验证日志配置

        Raises:
            ValueError: 配置验证失败时抛出
        """
        cls._check_section(config, "logging")
        ConfigValidator.validate_required(config, ["version", "level", "formatters", "handlers"])
        if config.get("version") != 1:
            raise ValueError("日志版本必须为 1，当前值: {}".format(config.get("version")))
        ConfigValidator.validate_string(config.get("level"), "level",
                                        allowed_values=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
        ConfigValidator.validate_dict(config.get("formatters"), "formatters")
        ConfigValidator.validate_dict(config.get("handlers"), "handlers")
        try:
            return cls(**config)
        except TypeError as e:
            raise ValueError("日志配置中存在无效的配置项: {}".format(e))


class OutputConfig(ValidatedConfig):
    """报告输出配置"""

    def __init__(self, output_dir="output", format="json", csv_delimiter=",",
                 include_header=True, json_indent=2, **kwargs):
        self.output_dir = output_dir
        self.format = format
        self.csv_delimiter = csv_delimiter
        self.include_header = include_header
        self.json_indent = json_indent
        for key, value in kwargs.items():
            setattr(self, key, value)

    @classmethod
    def validate(cls, config):
        # type: (Dict[str, Any]) -> 'OutputConfig'
        """
        验证输出配置

        Raises:
            ValueError: 配置验证失败时抛出
        """
        cls._check_section(config, "output")
        ConfigValidator.validate_required(config, ["output_dir", "format", "csv_delimiter"])
        ConfigValidator.validate_string(config.get("format"), "format", allowed_values=["json", "csv"])
        csv_delimiter = config.get("csv_delimiter")
        ConfigValidator.validate_string(csv_delimiter, "csv_delimiter")
        if len(csv_delimiter) != 1:
            raise ValueError("csv_delimiter 必须为单字符，当前长度: {}。示例: ',' 或 '\\t'".format(
                len(csv_delimiter)))
        if "include_header" in config:
            ConfigValidator.validate_bool(config["include_header"], "include_header")
        if "json_indent" in config:
            ConfigValidator.validate_int(config["json_indent"], "json_indent", min_val=0, max_val=8)
        try:
            return cls(**config)
        except TypeError as e:
            raise ValueError("输出配置中存在无效的配置项: {}".format(e))


class NumericsConfig(ValidatedConfig):
    """
    数值计算配置

    网格深度、积分容差、上确界判定阈值以及核级数截断参数。
    所有数值函数在未显式传入配置时使用此类的默认值。
    """

    SCHEMA = {
        "grid_depth": {"type": int, "min": 6, "max": MAX_GRID_DEPTH, "default": 36},
        "max_depth": {"type": int, "min": 6, "max": MAX_GRID_DEPTH, "default": 48},
        "tol": {"type": float, "exclusive_min": 0.0, "max": 1e-2, "default": 1e-10},
        "slope_tol": {"type": float, "exclusive_min": 0.0, "default": 0.02},
        "slope_min": {"type": float, "exclusive_min": 0.0, "default": 0.2},
        "panel_order": {"type": int, "min": 4, "max": 64, "default": 16},
        "x_max": {"type": float, "exclusive_min": 0.0, "max": 0.99999999, "default": 0.999999},
        "n_max": {"type": int, "min": 1, "default": 4096},
        "max_terms": {"type": int, "min": 64, "default": 2 ** 21},
        "kernel_tol": {"type": float, "exclusive_min": 0.0, "default": 1e-10},
        "trapezoid_rtol": {"type": float, "exclusive_min": 0.0, "default": 1e-7},
        "regular_ratio_bound": {"type": float, "exclusive_min": 1.0, "default": 1e3},
        "monotone_factor": {"type": float, "min": 1.0, "default": 1.05},
        "bisection_tol": {"type": float, "exclusive_min": 0.0, "default": 1e-3},
        "ratio_scan_depth": {"type": int, "min": 6, "max": 24, "default": 14},
        "deepen_step": {"type": int, "min": 0, "default": 12},
        "operator_depths": {"type": list, "min_length": 1, "item_type": int, "default": [4, 6, 8, 10]},
        "seed": {"type": int, "min": 0, "default": 0},
    }

    def __init__(self, **kwargs):
        values = ConfigValidator.merge_with_defaults(
            kwargs, ConfigValidator.extract_defaults_from_schema(self.SCHEMA))
        for key, value in values.items():
            setattr(self, key, value)

    @classmethod
    def validate(cls, config):
        # type: (Dict[str, Any]) -> 'NumericsConfig'
        """
        验证数值配置

        Raises:
            ValueError: 配置验证失败时抛出
        """
        cls._check_section(config, "numerics")
        try:
            ConfigValidator.validate_schema(config, cls.SCHEMA)
        except ValueError as e:
            raise ValueError("数值配置无效: {}".format(e))
        numerics = cls(**config)
        if numerics.grid_depth > numerics.max_depth:
            raise ValueError("grid_depth ({}) 不能超过 max_depth ({})".format(
                numerics.grid_depth, numerics.max_depth))
        if numerics.slope_tol >= numerics.slope_min:
            raise ValueError("slope_tol ({}) 必须小于 slope_min ({})".format(
                numerics.slope_tol, numerics.slope_min))
        return numerics

    def replace(self, **overrides):
        # type: (**Any) -> 'NumericsConfig'
        """返回应用覆盖项后的新配置（原对象不变），并重新验证"""
        values = self.to_dict()
        values.update(dict((k, v) for k, v in overrides.items() if v is not None))
        return NumericsConfig.validate(values)


DEFAULT_NUMERICS = NumericsConfig()


class RunConfig(ValidatedConfig):
    """
    单次运行配置

    由配置文件的 numerics/output 节与命令行覆盖项合并而成。
    """

    def __init__(self, numerics=None, output_format="json", output_path=None):
        # type: (Optional[NumericsConfig], str, Optional[str]) -> None
        self.numerics = numerics if numerics is not None else DEFAULT_NUMERICS
        self.output_format = output_format
        self.output_path = output_path

    @classmethod
    def validate(cls, config):
        # type: (Dict[str, Any]) -> 'RunConfig'
        """
        验证运行配置

        Args:
            config: 包含 numerics（字典）、output_format、output_path 的字典

        Raises:
            ValueError: 配置验证失败时抛出
        """
        cls._check_section(config, "run")
        numerics = NumericsConfig.validate(config.get("numerics") or {})
        output_format = config.get("output_format", "json")
        ConfigValidator.validate_string(output_format, "output_format", allowed_values=["json", "csv"])
        output_path = config.get("output_path")
        if output_path is not None:
            ConfigValidator.validate_string(output_path, "output_path")
        return cls(numerics, output_format, output_path)

    @classmethod
    def from_sources(cls, numerics, output_config, overrides):
        # type: (NumericsConfig, OutputConfig, Dict[str, Any]) -> 'RunConfig'
        """
        合并配置文件与命令行覆盖项

        Args:
            numerics: 配置文件中的数值配置
            output_config: 配置文件中的输出配置
            overrides: 命令行覆盖项，值为 None 的键被忽略
        """
        numeric_keys = [key for key in overrides if key in NumericsConfig.SCHEMA]
        values = numerics.to_dict()
        for key in numeric_keys:
            if overrides[key] is not None:
                values[key] = overrides[key]
        return cls.validate({
            "numerics": values,
            "output_format": overrides.get("format") or output_config.format,
            "output_path": overrides.get("out"),
        })

    def to_dict(self):
        # type: () -> Dict[str, Any]
        return {
            "numerics": self.numerics.to_dict(),
            "output_format": self.output_format,
        }


def operator_depths(config):
    # type: (NumericsConfig) -> List[int]
    """算子截断深度列表（升序、去重）"""
    return sorted(set(int(d) for d in config.operator_depths))
