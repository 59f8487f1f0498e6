"""
命令行工具测试
"""

import csv
import io
import json

import pytest
import yaml

from lfamily.cli import dispatch
from lfamily.exceptions import AccuracyError


@pytest.fixture
def run(tmp_path):
    """执行命令并返回 (退出码, 输出文件文本)"""

    def _run(*args, name="out.txt"):
        out = tmp_path / name
        argv = list(args) + ["--out", str(out), "--cache-dir", str(tmp_path / "cache"), "--log-level", "ERROR"]
        code = dispatch(argv)
        text = out.read_text(encoding="utf-8") if out.exists() else None
        return code, text

    return _run


class TestCommands:
    def test_characters_json(self, run):
        code, text = run("characters", "--order", "2", "--Q", "2")
        assert code == 0
        report = json.loads(text)
        assert report["command"] == "characters"
        assert report["result"]["size"] == 2
        assert [c["q"] for c in report["result"]["characters"]] == [3, 4]
        assert "lfunc.t_cap" in report["config"]["settings"]
        assert not any(key.startswith("runtime.") for key in report["config"]["settings"])

    def test_characters_csv(self, run):
        code, text = run("characters", "--order", "3", "--Q", "6", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(text)))
        assert [int(r["q"]) for r in rows] == [7, 7, 9, 9]
        assert set(rows[0]) == {"q", "exponents", "order", "parity", "conductor"}

    def test_human_is_yaml(self, run):
        code, text = run("zdbounds", "--sigma", "0.75", "--Q", "10", "--T", "10", "--format", "human")
        assert code == 0
        report = yaml.safe_load(text)
        names = [e["name"] for e in report["result"]["entries"]]
        assert "real_second_moment" in names

    def test_eval(self, run):
        code, text = run("eval", "--q", "4", "--chi", "1", "--sigma", "2", "--method", "oracle")
        assert code == 0
        result = json.loads(text)["result"]
        assert result["results"][0]["value_re"] == pytest.approx(0.915965594177219, abs=1e-12)
        assert result["functional_equation_residual"] < 1e-8

    def test_zdbounds_values(self, run):
        code, text = run("zdbounds", "--sigma", "0.75", "--Q", "10", "--T", "10")
        assert code == 0
        entries = {e["name"]: e for e in json.loads(text)["result"]["entries"]}
        assert entries["real_second_moment"]["value"] == pytest.approx(100 ** (2 / 3), rel=1e-12)

    def test_reproducible_output(self, run):
        first = run("characters", "--order", "3", "--Q", "30", "--reproducible", "--workers", "1", name="a.json")
        second = run("characters", "--order", "3", "--Q", "30", "--reproducible", "--workers", "2", name="b.json")
        assert first[0] == second[0] == 0
        assert first[1] == second[1]
        assert json.loads(first[1])["wall_time"] is None


@pytest.mark.integration
class TestDeterminism:
    WORKLOADS = {
        "characters": ("characters", "--order", "3", "--Q", "30"),
        "scaling": ("scaling", "--js", "2", "--Qs", "3,4", "--Ts", "1,2"),
        "zero_count": ("zeros", "--j", "2", "--Q", "5", "--sigma", "0.55", "--T", "3"),
    }

    @pytest.mark.parametrize("workload", sorted(WORKLOADS))
    def test_reports_identical_across_workers(self, run, workload):
        args = self.WORKLOADS[workload]
        outputs = []
        for workers in (1, 4, 8):
            code, text = run(*args, "--reproducible", "--workers", str(workers), name=f"{workload}-{workers}.json")
            assert code == 0
            outputs.append(text)
        assert outputs[0] == outputs[1] == outputs[2]


class TestExitCodes:
    def test_usage_error(self, run):
        code, text = run("characters")
        assert code == 3
        assert text is None

    def test_missing_config_file(self, run, tmp_path):
        code, _ = run("zdbounds", "--sigma", "0.75", "--Q", "10", "--T", "10", "--config", str(tmp_path / "missing.yaml"))
        assert code == 3

    def test_domain_error(self, run):
        code, text = run("eval", "--q", "15", "--chi", "1")
        assert code == 1
        assert text is None

    def test_domain_error_from_bounds(self, run):
        code, _ = run("zdbounds", "--sigma", "0.4", "--Q", "10", "--T", "10")
        assert code == 1

    def test_accuracy_error(self, run, mocker):
        mocker.patch("lfamily.cli.hardy_littlewood_second_moment", side_effect=AccuracyError("积分未收敛"))
        code, text = run("hl", "--T", "10")
        assert code == 2
        assert text is None
