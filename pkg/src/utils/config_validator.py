#!/usr/bin/env python
# encoding: utf-8
"""
通用配置验证框架

为配置节、权重族参数和命令行覆盖提供统一的校验方法与错误信息格式。

使用方式：
    from src.utils.config_validator import ConfigValidator

    ConfigValidator.validate_required(config, ["grid_depth", "tol"])
    ConfigValidator.validate_int(config.get("grid_depth"), "grid_depth", min_val=6, max_val=48)
    ConfigValidator.validate_float(config.get("tol"), "tol", min_val=1e-16, max_val=1e-2)
"""

# 标准库导入
from typing import Any, Dict, List, Optional, Union


class ConfigValidator(object):
    """
    通用配置验证器

    所有验证方法在验证失败时抛出 ValueError。
    """

    @staticmethod
    def validate_required(config, required_fields):
        # type: (Dict[str, Any], List[str]) -> None
        """config 必须为字典，且 required_fields 中的字段都不为 None"""
        if config is None:
            raise ValueError("配置不能为空")

        if not isinstance(config, dict):
            raise ValueError("配置必须为字典类型，当前类型: {}".format(type(config).__name__))

        missing_fields = [field for field in required_fields if config.get(field) is None]
        if missing_fields:
            raise ValueError("配置中缺少必需字段: {}".format(", ".join(missing_fields)))

    @staticmethod
    def validate_type(value, expected_type, field_name):
        # type: (Any, Union[type, tuple], str) -> None
        """
        验证字段类型，布尔值不被视为数值

        Raises:
            ValueError: 类型不匹配时抛出
        """
        numeric = expected_type in (int, float, (int, float))
        if isinstance(value, bool) and numeric:
            raise ValueError("{} 必须为数值，当前为布尔值: {}".format(field_name, value))
        if not isinstance(value, expected_type):
            if isinstance(expected_type, tuple):
                type_name = "/".join(t.__name__ for t in expected_type)
            else:
                type_name = expected_type.__name__
            raise ValueError("{} 必须为 {} 类型，当前类型: {}".format(
                field_name, type_name, type(value).__name__))

    @staticmethod
    def validate_int(value, field_name, min_val=None, max_val=None):
        # type: (Any, str, Optional[int], Optional[int]) -> None
        """整数字段，可选闭区间 [min_val, max_val]"""
        ConfigValidator.validate_type(value, int, field_name)
        ConfigValidator._validate_range(value, field_name, min_val, max_val)

    @staticmethod
    def validate_float(value, field_name, min_val=None, max_val=None):
        # type: (Any, str, Optional[float], Optional[float]) -> None
        """
        验证浮点数字段（整数亦可）

        Raises:
            ValueError: 验证失败时抛出
        """
        ConfigValidator.validate_type(value, (int, float), field_name)
        ConfigValidator._validate_range(value, field_name, min_val, max_val)

    @staticmethod
    def _validate_range(value, field_name, min_val, max_val):
        if min_val is not None and value < min_val:
            raise ValueError("{} 必须大于等于 {}，当前值: {}".format(field_name, min_val, value))
        if max_val is not None and value > max_val:
            raise ValueError("{} 必须小于等于 {}，当前值: {}".format(field_name, max_val, value))

    @staticmethod
    def validate_bool(value, field_name):
        # type: (Any, str) -> None
        """验证布尔字段"""
        ConfigValidator.validate_type(value, bool, field_name)

    @staticmethod
    def validate_string(value, field_name, allowed_values=None):
        # type: (Any, str, Optional[List[str]]) -> None
        """字符串字段，可限定取值"""
        ConfigValidator.validate_type(value, str, field_name)
        if allowed_values is not None and value not in allowed_values:
            raise ValueError("{} 必须是 {} 之一，当前值: '{}'".format(
                field_name, ", ".join(allowed_values), value))

    @staticmethod
    def validate_list(value, field_name, min_length=None, item_type=None):
        # type: (Any, str, Optional[int], Optional[type]) -> None
        """列表字段：最小长度与元素类型（如 operator_depths）"""
        ConfigValidator.validate_type(value, list, field_name)
        if min_length is not None and len(value) < min_length:
            raise ValueError("{} 列表长度必须大于等于 {}，当前长度: {}".format(
                field_name, min_length, len(value)))
        if item_type is not None:
            for i, item in enumerate(value):
                ConfigValidator.validate_type(item, item_type, "{}[{}]".format(field_name, i))

    @staticmethod
    def validate_dict(value, field_name, required_keys=None):
        # type: (Any, str, Optional[List[str]]) -> None
        """验证字典字段及其必需键"""
        ConfigValidator.validate_type(value, dict, field_name)
        if required_keys is not None:
            missing_keys = [key for key in required_keys if key not in value]
            if missing_keys:
                raise ValueError("{} 字典中缺少必需键: {}".format(field_name, ", ".join(missing_keys)))

    @staticmethod
    def validate_schema(config, schema):
        # type: (Dict[str, Any], Dict[str, Dict[str, Any]]) -> None
        """
        根据模式验证配置

        Args:
            config: 配置字典
            schema: 配置模式，格式为:
                {
                    "field_name": {
                        "type": int/float/str/list,
                        "required": True/False,
                        "min": 下界 (可选),
                        "max": 上界 (可选),
                        "exclusive_min": 严格下界 (可选),
                        "allowed": [values] (可选),
                        "default": 默认值 (可选)
                    }
                }

        Raises:
            ValueError: 验证失败或存在未知字段时抛出
        """
        unknown = [key for key in config if key not in schema]
        if unknown:
            raise ValueError("未知字段: {}".format(", ".join(sorted(unknown))))

        for field_name, field_schema in schema.items():
            if field_name not in config or config[field_name] is None:
                if field_schema.get("required", False):
                    raise ValueError("配置中缺少必需字段: {}".format(field_name))
                continue

            value = config[field_name]
            field_type = field_schema.get("type")
            if field_type is float:
                ConfigValidator.validate_float(value, field_name,
                                               field_schema.get("min"), field_schema.get("max"))
            elif field_type is int:
                ConfigValidator.validate_int(value, field_name,
                                             field_schema.get("min"), field_schema.get("max"))
            elif field_type is list:
                ConfigValidator.validate_list(value, field_name, field_schema.get("min_length"),
                                              field_schema.get("item_type"))
            elif field_type is not None:
                ConfigValidator.validate_type(value, field_type, field_name)

            exclusive_min = field_schema.get("exclusive_min")
            if exclusive_min is not None and not value > exclusive_min:
                raise ValueError("{} 必须大于 {}，当前值: {}".format(field_name, exclusive_min, value))

            allowed = field_schema.get("allowed")
            if allowed is not None:
                ConfigValidator.validate_string(value, field_name, allowed_values=allowed)

    @staticmethod
    def merge_with_defaults(config, defaults):
        # type: (Dict[str, Any], Dict[str, Any]) -> Dict[str, Any]
        """将配置与默认值合并"""
        result = defaults.copy()
        if config:
            result.update(config)
        return result

    @staticmethod
    def extract_defaults_from_schema(schema):
        # type: (Dict[str, Dict[str, Any]]) -> Dict[str, Any]
        """从模式中提取默认值"""
        return dict((name, field["default"]) for name, field in schema.items() if "default" in field)
