"""
lfamily 核心模块

配置、日志、并行执行与结果缓存
"""

from .cache import CacheEntry, ResultCache
from .config import get_config, get_settings, override_config, reload_config
from .executor import OrderedExecutor, ordered_map, settings_snapshot
from .logger import setup_logging

__all__ = [
    "CacheEntry",
    "ResultCache",
    "get_config",
    "get_settings",
    "override_config",
    "reload_config",
    "OrderedExecutor",
    "ordered_map",
    "settings_snapshot",
    "setup_logging",
]
