#!/usr/bin/env python
# encoding: utf-8
"""
命令行入口：子命令、输出格式、退出码与报告重放
"""

# 标准库导入
import json

# 第三方库导入
import numpy as np
import pytest

# 本地模块导入
from main import main
from src.lab import parse_complex, parse_p_range
from src.utils.csv_writer import SWEEP_COLUMNS, read_sweep
from src.utils.errors import ParseError


@pytest.fixture
def run(lab_config):
    """以测试配置调用 main，返回退出码"""
    def _run(*argv):
        return main(["-c", str(lab_config)] + list(argv))
    return _run


@pytest.fixture
def output_dir(tmp_path):
    return tmp_path / "output"


def read_json(path):
    with open(str(path), "r", encoding="utf-8") as f:
        return json.load(f)


class TestParsing:

    def test_parse_complex(self):
        assert parse_complex("0.3+0.4j", "a") == 0.3 + 0.4j
        assert parse_complex(" 0.5 ", "a") == 0.5
        assert parse_complex(0.25, "a") == 0.25
        with pytest.raises(ParseError):
            parse_complex("abc", "a")

    def test_parse_p_range(self):
        np.testing.assert_allclose(parse_p_range("1:2:3"), [1.0, 1.5, 2.0])
        assert len(parse_p_range("1.1:4:0")) == 0
        for text in ("1:2", "a:2:3", "1:2:-1"):
            with pytest.raises(ParseError):
                parse_p_range(text)


class TestClassifyCommand:

    def test_classify_to_file(self, run, output_dir):
        assert run("classify", "--weight", "pow:a=1", "--out", "classify.json") == 0
        report = read_json(output_dir / "classify.json")
        assert report["schema"] == 1
        assert report["request"]["command"] == "classify"
        assert report["request"]["numerics"]["grid_depth"] == 24
        assert report["result"]["class"] == "Regular"
        assert report["result"]["kappa"]["value"] == pytest.approx(0.5, rel=1e-6)

    def test_classify_to_stdout(self, run, capsys):
        assert run("classify", "--weight", "exp:c=1") == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["class"] == "NonDoubling"

    def test_classify_with_lemma9(self, run, capsys):
        assert run("classify", "--weight", "pow:a=0", "--lemma9", "2") == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["lemma9"]["all_hold"]

    @pytest.mark.parametrize("weight", ["pow:a=x", "nope:a=1", "pow:a=-3"])
    def test_bad_weight(self, run, weight):
        assert run("classify", "--weight", weight) == 2

    def test_csv_only_for_sweep(self, run):
        assert run("classify", "--weight", "pow:a=1", "--format", "csv") == 2

    def test_invalid_override(self, run):
        assert run("classify", "--weight", "pow:a=1", "--grid-depth", "60") == 2

    def test_grid_depth_override_recorded(self, run, output_dir):
        assert run("classify", "--weight", "pow:a=1", "--grid-depth", "12", "--out", "c.json") == 0
        report = read_json(output_dir / "c.json")
        assert report["request"]["numerics"]["grid_depth"] == 12
        assert report["result"]["grid_depth"] == 12


class TestKernelCommand:

    def test_eval_matches_closed_form(self, run, capsys):
        assert run("kernel", "--weight", "std:a=0", "--a", "0.5", "--z", "0.5") == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["value"]["re"] == pytest.approx(16.0 / 9.0, rel=1e-9)
        assert result["value"]["im"] == pytest.approx(0.0, abs=1e-12)
        assert result["oracle"]["match"]
        assert result["reproducing"]["rel_err"] < 1e-6

    def test_mean(self, run, capsys):
        assert run("kernel", "--weight", "std:a=0", "--a", "0.8", "--r", "0.9", "--p", "2", "--mode", "mean") == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["value"] == pytest.approx(13.593, rel=1e-4)
        assert result["comparand"] > 0.0

    def test_mean_requires_radius(self, run):
        assert run("kernel", "--weight", "std:a=0", "--a", "0.8", "--mode", "mean") == 2

    def test_norm_with_closed_comparand(self, run, capsys):
        assert run("kernel", "--weight", "pow:a=0", "--v", "pow:a=1", "--a", "0.5", "--mode", "norm") == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["comparand"] == pytest.approx(0.5, rel=1e-9)
        assert result["oracle"]["rel_err"] < 1e-9

    def test_point_outside_disc(self, run):
        assert run("kernel", "--weight", "std:a=0", "--a", "1.5", "--z", "0.1") == 2


class TestSweepCommand:

    def test_Q_profile_csv(self, run, output_dir):
        assert run("sweep", "--quantity", "Q", "--omega", "log:a=2", "--p", "2",
                   "--format", "csv", "--out", "q.csv") == 0
        frame = read_sweep(str(output_dir / "q.csv"))
        assert 0 < len(frame) <= 24
        assert set(frame["verdict"]) == {"Divergent"}
        assert frame["value"].iloc[-1] > frame["value"].iloc[len(frame) // 2]
        np.testing.assert_allclose(frame["r"] + frame["s"], 1.0)

    def test_parameter_sweep(self, run, output_dir):
        assert run("sweep", "--quantity", "T4d", "--omega", "pow:a=0", "--v", "pow:a=0",
                   "--p-range", "1.5:3:4", "--format", "csv", "--out", "p.csv") == 0
        frame = read_sweep(str(output_dir / "p.csv"))
        np.testing.assert_allclose(frame["param"], [1.5, 2.0, 2.5, 3.0])
        assert set(frame["verdict"]) == {"Bounded"}
        assert frame["level"].isna().all()

    def test_empty_parameter_range(self, run, output_dir):
        assert run("sweep", "--quantity", "T4d", "--omega", "pow:a=0", "--v", "pow:a=1",
                   "--p-range", "1.1:4:0", "--format", "csv", "--out", "empty.csv") == 0
        frame = read_sweep(str(output_dir / "empty.csv"))
        assert list(frame.columns) == SWEEP_COLUMNS
        assert len(frame) == 0

    def test_profile_only_quantity(self, run):
        assert run("sweep", "--quantity", "psi", "--omega", "pow:a=1", "--p-range", "1:2:3") == 2

    def test_sweep_json(self, run, capsys):
        assert run("sweep", "--quantity", "doubling", "--omega", "pow:a=1") == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["mode"] == "profile"
        assert result["rows"][0]["value"] == pytest.approx(4.0)

    def test_kappa_profile(self, run, capsys):
        assert run("sweep", "--quantity", "KappaCrit", "--omega", "pow:a=1", "--v", "pow:a=0", "--p", "2") == 0
        rows = json.loads(capsys.readouterr().out)["result"]["rows"]
        assert len(rows) == 24
        np.testing.assert_allclose([row["value"] for row in rows], 0.5, rtol=1e-6)
        assert {row["verdict"] for row in rows} == {"Bounded"}

    def test_kappa_parameter_sweep(self, run, output_dir):
        assert run("sweep", "--quantity", "KappaCrit", "--omega", "pow:a=0", "--v", "pow:a=1",
                   "--p-range", "1.5:3:4", "--format", "csv", "--out", "k.csv") == 0
        frame = read_sweep(str(output_dir / "k.csv"))
        np.testing.assert_allclose(frame["value"], 2.0, rtol=1e-6)
        assert list(frame["verdict"]) == ["Divergent", "Inconclusive", "Bounded", "Bounded"]

    def test_transformed_weight_profile(self, run, capsys):
        assert run("sweep", "--quantity", "L9iv", "--omega", "pow:a=0", "--p", "2") == 0
        rows = json.loads(capsys.readouterr().out)["result"]["rows"]
        assert len(rows) > 0
        assert {row["verdict"] for row in rows} == {"Bounded"}

    def test_profile_without_levels(self, run):
        # ω₂ 不可积，没有逐层取值
        assert run("sweep", "--quantity", "L9iv", "--omega", "log:a=2", "--p", "2") == 2


class TestCheckCommand:

    def test_check(self, run, capsys):
        assert run("check", "--omega", "pow:a=1", "--v", "pow:a=1", "--p", "2", "--conditions", "T4c,t4d") == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["overall"] == "Bounded"
        assert set(result["conditions"]) == {"T4c", "T4d"}

    def test_unknown_condition(self, run):
        assert run("check", "--omega", "pow:a=1", "--v", "pow:a=1", "--p", "2", "--conditions", "T4c,X1") == 2

    def test_window_precondition(self, run):
        assert run("check", "--omega", "pow:a=0", "--v", "pow:a=1", "--p", "2", "--conditions", "EImpr",
                   "--window") == 4


class TestReplay:

    def test_replay_identical(self, run, output_dir, capsys):
        assert run("classify", "--weight", "pow:a=1", "--out", "r.json") == 0
        assert run("--replay", str(output_dir / "r.json")) == 0
        fresh = json.loads(capsys.readouterr().out)
        assert fresh["result"] == read_json(output_dir / "r.json")["result"]

    def test_replay_mismatch(self, run, output_dir):
        assert run("classify", "--weight", "pow:a=1", "--out", "t.json") == 0
        path = output_dir / "t.json"
        report = read_json(path)
        report["result"]["kappa"]["value"] = 0.25
        path.write_text(json.dumps(report))
        assert run("--replay", str(path)) == 3

    def test_replay_bad_file(self, run, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("{}")
        assert run("--replay", str(path)) == 2


def test_no_command(run):
    assert run() == 2
