"""
配置管理、执行器与日志测试
"""

import pytest

from lfamily.core.config import (
    get_config,
    get_config_bool,
    get_config_float,
    get_config_int,
    get_settings,
    override_config,
    reload_config,
)
from lfamily.core.executor import OrderedExecutor, ordered_map, settings_snapshot
from lfamily.core.logger import setup_logging
from lfamily.exceptions import ConfigurationError


def _square(x):
    return x * x


class TestConfig:
    def test_defaults(self):
        assert get_config_float("lfunc.t_cap") == 200.0
        assert get_config_int("moments.gl_nodes") == 16
        assert get_config_float("sieve.slack") == pytest.approx(1e-6)
        assert get_config_bool("logging.json") is False

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("LFAMILY_LFUNC__T_CAP", "300")
        reload_config()
        assert get_config_float("lfunc.t_cap") == 300.0
        assert get_config_float("lfunc.tolerance") == pytest.approx(1e-12)

    def test_override_config(self):
        override_config({"lfunc.t_cap": 50, "moments.tolerance": None})
        assert get_config_float("lfunc.t_cap") == 50.0
        assert get_config_float("moments.tolerance") == pytest.approx(1e-6)

    def test_config_file(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("lfunc:\n  t_cap: 150\nzeros:\n  detector_C: 2.5\n", encoding="utf-8")
        get_settings(str(path))
        assert get_config_float("lfunc.t_cap") == 150.0
        assert get_config_float("zeros.detector_C") == 2.5
        assert get_config_int("lfunc.batch_size") == 256

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(ConfigurationError) as info:
            get_settings(str(tmp_path / "missing.yaml"))
        assert info.value.exit_code == 3

    def test_unknown_key_default(self):
        assert get_config("nothing.here", "fallback") == "fallback"
        assert get_config_int("lfunc.tolerance_missing", 7) == 7


class TestExecutor:
    def test_snapshot_excludes_runtime(self):
        snapshot = settings_snapshot()
        assert snapshot["lfunc.t_cap"] == 200.0
        assert not any(key.startswith(("runtime.", "logging.", "app.")) for key in snapshot)

    def test_snapshot_follows_overrides(self):
        override_config({"zeros.K": 3.0})
        assert settings_snapshot()["zeros.K"] == 3.0

    @pytest.mark.parametrize("workers", [1, 3])
    def test_ordered_map_threads(self, workers):
        with OrderedExecutor(max_workers=workers, executor_type="thread") as executor:
            assert executor.map(_square, range(20)) == [x * x for x in range(20)]

    def test_ordered_map_serial(self):
        assert ordered_map(_square, [3, 1, 2], workers=1) == [9, 1, 4]
        assert ordered_map(_square, [], workers=4) == []


class TestLogging:
    def test_setup_logging_level(self, capsys):
        from loguru import logger

        setup_logging(level="WARNING")
        logger.info("不应输出")
        logger.warning("应当输出")
        err = capsys.readouterr().err
        assert "应当输出" in err
        assert "不应输出" not in err
