"""
日志管理模块

基于 loguru，各模块通过 logger.bind(name=...) 获取带名称的日志器。
报告写到标准输出，日志只写到标准错误或日志文件
"""

import logging
import os
import sys
from typing import Any, Dict, Optional, Union

from dynaconf import Dynaconf
from loguru import logger as loguru_logger

from .config import get_settings

WORKER_ENV = "LFAMILY_WORKER_ID"

# 走标准 logging 的第三方库，默认级别
DEFAULT_THIRD_PARTY = {"dynaconf": "WARNING"}


def _worker_tag() -> str:
    worker_id = os.environ.get(WORKER_ENV)
    return f"Worker-{worker_id}" if worker_id else "Main"


def _log_format(with_worker: bool) -> str:
    """文本日志格式；进程池 worker 中额外带 worker 标识"""
    worker = "<yellow>{extra[worker]}</yellow> | " if with_worker else ""
    return (
        "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | "
        + worker
        + "<level>{level: <8}</level> | "
        "<cyan>{extra[name]}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
        "<level>{message}</level>"
    )


def _sink_options(level: str, use_json: bool, with_worker: bool) -> Dict[str, Any]:
    options: Dict[str, Any] = {"level": level, "backtrace": True, "diagnose": False}
    if use_json:
        options["serialize"] = True
    else:
        options["format"] = _log_format(with_worker)
    return options


def _quiet_third_party(levels: Any) -> None:
    merged = dict(DEFAULT_THIRD_PARTY)
    if isinstance(levels, dict):
        merged.update(levels)
    for name, level_name in merged.items():
        if isinstance(level_name, str):
            logging.getLogger(name).setLevel(getattr(logging, level_name.upper(), logging.WARNING))


def setup_logging(config: Optional[Union[str, Dynaconf]] = None, level: Optional[str] = None) -> None:
    """
    根据配置初始化 loguru 日志系统

    Args:
        config: 配置文件路径或 Dynaconf 对象，None 时使用当前配置
        level: 覆盖 logging.level
    """
    settings = config if isinstance(config, Dynaconf) else get_settings(config)

    log_level = str(level or settings.get("logging.level", "INFO")).upper()
    json_flag = settings.get("logging.json", False)
    use_json = json_flag if isinstance(json_flag, bool) else str(json_flag).lower() in ("true", "1", "yes", "on")
    with_worker = bool(os.environ.get(WORKER_ENV))

    loguru_logger.remove()
    loguru_logger.configure(extra={"worker": _worker_tag(), "name": "lfamily"})

    console = _sink_options(log_level, use_json, with_worker)
    if not use_json:
        console["colorize"] = sys.stderr.isatty()
    loguru_logger.add(sys.stderr, **console)

    log_file = settings.get("logging.file")
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        loguru_logger.add(
            log_file,
            rotation=settings.get("logging.rotation", "10 MB"),
            retention=settings.get("logging.retention", "7 days"),
            **_sink_options(log_level, use_json, with_worker),
        )

    _quiet_third_party(settings.get("logging.third_party", {}))


def setup_worker_logging(level: str = "INFO") -> None:
    """
    进程池 worker 的日志初始化，由执行器的 initializer 调用

    Args:
        level: 父进程的日志级别
    """
    os.environ[WORKER_ENV] = str(os.getpid())
    loguru_logger.remove()
    loguru_logger.configure(extra={"worker": _worker_tag(), "name": "lfamily"})
    loguru_logger.add(sys.stderr, colorize=False, **_sink_options(level.upper(), False, True))
