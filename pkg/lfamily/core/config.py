"""
配置管理模块

使用 Dynaconf 提供配置管理功能
支持配置文件优先级、环境变量覆盖（前缀 LFAMILY_）以及命令行覆盖
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dynaconf import Dynaconf

from ..exceptions import ConfigurationError

DEFAULT_SETTINGS: Dict[str, Any] = {
    "app": {
        "name": "lfamily",
        "version": "0.2.0",
    },
    "logging": {
        "level": "INFO",
        "json": False,
        "rotation": "10 MB",
        "retention": "7 days",
    },
    "runtime": {
        "workers": 1,
        "executor_type": "process",
        "seed": 0,
        "cache_dir": ".lfamily_cache",
        "format": "json",
    },
    "arith": {
        "trial_division_limit": 1_000_000,
    },
    "characters": {
        "modulus_cap": 20000,
    },
    "lfunc": {
        "t_cap": 200.0,
        "tolerance": 1e-12,
        "afe_cap": 100000.0,
        "bernoulli_terms": 10,
        "fd_step": 1e-4,
        "gamma_cutoff": 1e-16,
        "batch_size": 256,
    },
    "moments": {
        "gl_nodes": 16,
        "panel_width": 0.25,
        "max_panels": 400000,
        "tolerance": 1e-6,
        "epsilon": 0.0,
        "greedy_refine": 10,
    },
    "sieve": {
        "slack": 1e-6,
    },
    "zeros": {
        "min_step": 1e-7,
        "bisection_width": 1e-8,
        "detector_C": 1.0,
        "C1": 1.0,
        "C2": 1.0,
        "K": 2.0,
        "contour_shift": 0.25,
        "grid_version": 1,
    },
    "cache": {
        "version": "1",
    },
}


def _find_project_root() -> str:
    """查找项目根目录"""
    current_dir = Path(__file__).parent.absolute()

    while current_dir.parent != current_dir:
        if (current_dir / 'pyproject.toml').exists():
            return str(current_dir)
        current_dir = current_dir.parent

    return os.getcwd()


def _get_config_files(config_file: Optional[str] = None) -> list:
    """获取配置文件列表，按优先级排序

    优先级：环境变量 > 参数指定 > 项目根目录/conf > 项目根目录
    """
    project_root = _find_project_root()

    config_files = []
    added_paths = set()

    config_paths = [
        os.getenv('LFAMILY_CONFIG_FILE'),
        config_file,
        os.path.join(project_root, 'conf', 'config.yaml'),
        os.path.join(project_root, 'conf', 'config.yml'),
        os.path.join(project_root, 'config.yaml'),
        os.path.join(project_root, 'config.yml'),
    ]

    for config_path in config_paths:
        if not config_path:
            continue
        if config_path == config_file and not os.path.exists(config_path):
            raise ConfigurationError(f"配置文件不存在: {config_path}", config_key="config_file")
        if os.path.exists(config_path) and config_path not in added_paths:
            config_files.append(config_path)
            added_paths.add(config_path)

    # Dynaconf 后加载的文件优先级更高
    return list(reversed(config_files))


def create_settings(config_file: Optional[str] = None) -> Dynaconf:
    """创建 Dynaconf 设置实例"""
    config_files = _get_config_files(config_file)

    settings = Dynaconf(
        settings_files=config_files,
        envvar_prefix="LFAMILY",
        envvar_separator="__",
        env_parse_values=True,
        ignore_unknown_envvars=True,
        merge_enabled=True,
        # 默认值作为初始键载入，配置文件与环境变量在其上合并
        **{section.upper(): copy.deepcopy(values) for section, values in DEFAULT_SETTINGS.items()},
    )

    return settings


# 全局配置实例
_settings: Optional[Dynaconf] = None
_config_file: Optional[str] = None


def get_settings(config_file: Optional[str] = None) -> Dynaconf:
    """获取 Dynaconf 设置实例"""
    global _settings, _config_file

    if _settings is None or (config_file is not None and config_file != _config_file):
        _settings = create_settings(config_file)
        _config_file = config_file

    return _settings


def get_config(key: str, default: Any = None) -> Any:
    """获取配置值的便捷函数"""
    return get_settings().get(key, default)


def get_config_str(key: str, default: str = "") -> str:
    """获取字符串配置值的便捷函数"""
    value = get_config(key, default)
    return str(value) if value is not None else default


def get_config_int(key: str, default: int = 0) -> int:
    """获取整数配置值的便捷函数"""
    value = get_config(key, default)
    try:
        return int(value)
    except (ValueError, TypeError):
        return default


def get_config_float(key: str, default: float = 0.0) -> float:
    """获取浮点配置值的便捷函数"""
    value = get_config(key, default)
    try:
        return float(value)
    except (ValueError, TypeError):
        return default


def get_config_bool(key: str, default: bool = False) -> bool:
    """获取布尔配置值的便捷函数"""
    value = get_config(key, default)
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        return value.lower() in ('true', '1', 'yes', 'on')
    return bool(value)


def override_config(overrides: Mapping[str, Any]) -> None:
    """
    以点号分隔的键覆盖配置（命令行参数、worker 进程同步父进程配置）

    Args:
        overrides: 形如 {"lfunc.t_cap": 300} 的映射
    """
    settings = get_settings()
    for key, value in overrides.items():
        if value is None:
            continue
        settings.set(key, value)


def reload_config() -> None:
    """重新加载配置"""
    global _settings, _config_file
    _settings = None
    _config_file = None
