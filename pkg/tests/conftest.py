#!/usr/bin/env python
# encoding: utf-8
"""
测试共享夹具
"""

# 标准库导入
from pathlib import Path

# 第三方库导入
import pytest
import yaml

# 本地模块导入
from src.utils.application_context import ApplicationContext
from src.utils.configs import DEFAULT_NUMERICS
from src.utils.log_manager import LogManager
from src.weights import parse_weight


@pytest.fixture
def numerics():
    return DEFAULT_NUMERICS


@pytest.fixture
def fast_numerics():
    """较浅的网格，用于只关心判定结果的测试"""
    return DEFAULT_NUMERICS.replace(grid_depth=24, max_depth=36)


@pytest.fixture
def pow0():
    return parse_weight("pow:a=0")


@pytest.fixture
def pow1():
    return parse_weight("pow:a=1")


@pytest.fixture
def std0():
    return parse_weight("std:a=0")


@pytest.fixture
def lab_config(tmp_path):
    # type: (Path) -> Path
    """只有控制台 handler 的配置文件，输出目录位于 tmp_path"""
    config = {
        "app": {"name": "bergman_lab_test", "version": "0.0.1", "environment": "development"},
        "logging": {
            "version": 1,
            "level": "WARNING",
            "formatters": {
                "detailed": {"format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s"},
                "simple": {"format": "%(levelname)s: %(message)s"},
            },
            "handlers": {
                "console": {"class": "logging.StreamHandler", "formatter": "simple",
                            "stream": "ext://sys.stderr"},
            },
        },
        "output": {
            "output_dir": str(tmp_path / "output"),
            "format": "json",
            "csv_delimiter": ",",
            "include_header": True,
            "json_indent": 2,
        },
        "numerics": {"grid_depth": 24, "max_depth": 36},
    }
    path = tmp_path / "lab_config.yaml"
    with open(str(path), "w") as f:
        yaml.safe_dump(config, f)
    return path


@pytest.fixture
def context(lab_config):
    LogManager.reset()
    ctx = ApplicationContext(str(lab_config))
    yield ctx
    ctx.cleanup()
    LogManager.reset()


@pytest.fixture(autouse=True)
def _fresh_log_manager():
    """LogManager 是单例，每个测试结束后丢弃"""
    yield
    LogManager.reset()
