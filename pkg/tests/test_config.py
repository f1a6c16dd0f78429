#!/usr/bin/env python
# encoding: utf-8
"""
配置加载、验证与报告写入
"""

# 标准库导入
import json
import math

# 第三方库导入
import numpy as np
import pytest
import yaml

# 本地模块导入
from src.quad import Verdict
from src.utils.config_manager import ConfigManager
from src.utils.configs import DEFAULT_NUMERICS, NumericsConfig, OutputConfig, RunConfig, operator_depths
from src.utils.csv_writer import SWEEP_COLUMNS, read_sweep
from src.utils.errors import ParseError
from src.utils.report_writer import SCHEMA_VERSION, make_json_safe


class TestConfigManager:

    def test_missing_file_uses_defaults(self, tmp_path):
        manager = ConfigManager(str(tmp_path / "absent.yaml"))
        assert manager.get_numerics_config().grid_depth == 36
        assert manager.get_output_config().format == "json"
        assert manager.get_version_info().startswith("bergman_lab ")

    def test_loads_file(self, lab_config, tmp_path):
        manager = ConfigManager(str(lab_config))
        assert manager.get_app_name() == "bergman_lab_test"
        assert manager.get_numerics_config().grid_depth == 24
        assert manager.get_output_dir() == tmp_path / "output"

    def test_missing_sections_fall_back(self, tmp_path):
        path = tmp_path / "partial.yaml"
        path.write_text(yaml.safe_dump({"numerics": {"tol": 1e-8}}))
        manager = ConfigManager(str(path))
        assert manager.get_numerics_config().tol == 1e-8
        assert manager.get_app_config().name == "bergman_lab"

    def test_top_level_must_be_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError):
            ConfigManager(str(path))

    def test_invalid_section(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text(yaml.safe_dump({"output": {"output_dir": "out", "format": "xml", "csv_delimiter": ","}}))
        with pytest.raises(ValueError):
            ConfigManager(str(path))


class TestNumericsConfig:
    """数值配置的验证规则"""

    def test_defaults(self):
        assert DEFAULT_NUMERICS.grid_depth == 36
        assert DEFAULT_NUMERICS.max_terms == 2 ** 21
        assert DEFAULT_NUMERICS.operator_depths == [4, 6, 8, 10]

    @pytest.mark.parametrize("overrides", [
        {"grid_depth": 60},
        {"grid_depth": 5},
        {"tol": 0.0},
        {"grid_depth": 40, "max_depth": 30},
        {"slope_tol": 0.3},
        {"operator_depths": []},
        {"unknown_key": 1},
        {"grid_depth": True},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ValueError):
            DEFAULT_NUMERICS.replace(**overrides)

    def test_replace_keeps_original(self):
        changed = DEFAULT_NUMERICS.replace(grid_depth=20, tol=None)
        assert changed.grid_depth == 20
        assert changed.tol == DEFAULT_NUMERICS.tol
        assert DEFAULT_NUMERICS.grid_depth == 36

    def test_operator_depths_sorted_unique(self):
        config = NumericsConfig.validate({"operator_depths": [8, 4, 8, 6]})
        assert operator_depths(config) == [4, 6, 8]


class TestRunConfig:

    def test_from_sources(self):
        run = RunConfig.from_sources(DEFAULT_NUMERICS, OutputConfig(),
                                     {"grid_depth": 20, "tol": None, "format": "csv", "out": "a.csv",
                                      "weight": "pow:a=1"})
        assert run.numerics.grid_depth == 20
        assert run.numerics.tol == DEFAULT_NUMERICS.tol
        assert run.output_format == "csv"
        assert run.output_path == "a.csv"
        assert set(run.to_dict()) == {"numerics", "output_format"}

    def test_defaults_from_output_config(self):
        run = RunConfig.from_sources(DEFAULT_NUMERICS, OutputConfig(), {})
        assert run.output_format == "json"
        assert run.output_path is None

    def test_invalid_override(self):
        with pytest.raises(ValueError):
            RunConfig.from_sources(DEFAULT_NUMERICS, OutputConfig(), {"max_depth": 100})


class TestReportWriter:

    def test_make_json_safe(self):
        data = make_json_safe({
            "values": np.array([1.0, np.inf, -np.inf, np.nan]),
            "z": 0.5 - 2j,
            "n": np.int64(3),
            "flag": np.bool_(True),
            "verdict": Verdict.BOUNDED,
            "pair": (1, 2.5),
        })
        assert data["values"] == [1.0, "inf", "-inf", "nan"]
        assert data["z"] == {"re": 0.5, "im": -2.0}
        assert data["n"] == 3 and isinstance(data["n"], int)
        assert data["flag"] is True
        assert data["verdict"] == "Bounded"
        assert data["pair"] == [1, 2.5]
        json.dumps(data, allow_nan=False)

    def test_floats_keep_full_precision(self, context):
        writer = context.get_report_writer()
        report = writer.build({"cmd": "x"}, {"value": 1.0 / 3.0})
        assert json.loads(writer.dumps(report))["result"]["value"] == 1.0 / 3.0

    def test_write_and_read(self, context):
        writer = context.get_report_writer()
        report = writer.build({"cmd": "classify", "args": {"weight": "pow:a=1"}}, {"kappa": 0.5})
        target = writer.write(report, "nested/report.json")
        assert target == context.config_manager.get_output_dir() / "nested" / "report.json"
        loaded = writer.read(str(target))
        assert loaded["schema"] == SCHEMA_VERSION
        assert loaded == report

    def test_write_to_stdout(self, context, capsys):
        writer = context.get_report_writer()
        assert writer.write(writer.build({}, {"a": 1})) is None
        assert json.loads(capsys.readouterr().out)["result"] == {"a": 1}

    @pytest.mark.parametrize("content", ["not json", '{"schema": 2, "request": {}, "result": {}}',
                                         '{"schema": 1, "request": {}}', "[1, 2]"])
    def test_read_rejects_bad_reports(self, tmp_path, context, content):
        path = tmp_path / "bad.json"
        path.write_text(content)
        with pytest.raises(ParseError):
            context.get_report_writer().read(str(path))

    def test_read_missing_file(self, tmp_path, context):
        with pytest.raises(ParseError):
            context.get_report_writer().read(str(tmp_path / "missing.json"))


class TestCsvWriter:

    def test_render(self, context):
        rows = [
            {"level": 1, "r": 0.5, "s": 0.5, "value": 1.0 / 3.0, "verdict": "Bounded"},
            {"level": 2, "r": 0.75, "s": 0.25, "value": math.inf, "verdict": "Bounded"},
        ]
        text = context.get_csv_writer().render(rows)
        lines = text.splitlines()
        assert lines[0] == ",".join(SWEEP_COLUMNS)
        assert lines[1] == "1,0.5,0.5,{!r},Bounded,".format(1.0 / 3.0)
        assert lines[2].endswith(",inf,Bounded,")

    def test_unknown_column(self, context):
        with pytest.raises(ValueError):
            context.get_csv_writer().render([{"level": 1, "extra": 2}])

    def test_write_and_read_back(self, context):
        rows = [{"param": p, "value": 2.0 * p, "verdict": "Bounded"} for p in (1.5, 2.0, 2.5)]
        target = context.get_csv_writer().write(rows, "sweep.csv")
        frame = read_sweep(str(target))
        assert list(frame.columns) == SWEEP_COLUMNS
        np.testing.assert_allclose(frame["param"], [1.5, 2.0, 2.5])
        np.testing.assert_allclose(frame["value"], [3.0, 4.0, 5.0])
        assert frame["level"].isna().all()
        assert list(frame["verdict"]) == ["Bounded"] * 3

    def test_read_rejects_other_header(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ParseError):
            read_sweep(str(path))


class TestConditionRegistry:

    def test_discovers_conditions(self, context):
        registry = context.get_condition_registry()
        ids = registry.get_condition_ids()
        for cid in ("T4c", "T4d", "T4e", "T4f", "T4g", "T5c", "T5d", "EImpr", "KappaCrit",
                    "C2mean", "C2norm", "L9ii", "L9iii", "L9iv"):
            assert cid in ids
        statistics = registry.get_statistics()
        assert "L9ii" not in statistics["characterizing"]
        assert "T4c" in statistics["characterizing"]

    def test_parse_condition_list(self, context):
        registry = context.get_condition_registry()
        assert registry.parse_condition_list(" t4c, EIMPR ,") == ["T4c", "EImpr"]
        assert registry.is_condition_registered("kappacrit")

    @pytest.mark.parametrize("text", ["", " , ", "T4c,nope"])
    def test_parse_condition_list_errors(self, context, text):
        with pytest.raises(ParseError):
            context.get_condition_registry().parse_condition_list(text)

    def test_registry_is_cached(self, context):
        assert context.get_condition_registry() is context.get_condition_registry()
