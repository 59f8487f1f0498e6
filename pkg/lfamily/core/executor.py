"""
并行执行工具模块

提供按输入顺序返回结果的执行器，结果与 worker 数量无关
"""

from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

from loguru import logger as loguru_logger

from .config import get_config, get_config_int, get_config_str, get_settings, override_config, reload_config

logger = loguru_logger.bind(name="executor")

T = TypeVar("T")
R = TypeVar("R")


def settings_snapshot() -> Dict[str, Any]:
    """导出数值相关的配置（点号键），供 worker 进程复现与报告回显"""
    settings = get_settings()
    snapshot: Dict[str, Any] = {}
    for section in ("arith", "characters", "lfunc", "moments", "sieve", "zeros", "cache"):
        values = settings.get(section, {}) or {}
        for key, value in dict(values).items():
            snapshot[f"{section}.{key}"] = value
    return snapshot


def _init_worker(snapshot: Dict[str, Any], log_level: str) -> None:
    """worker 进程初始化：同步配置并配置日志"""
    from .logger import setup_worker_logging

    reload_config()
    override_config(snapshot)
    setup_worker_logging(log_level)


class OrderedExecutor:
    """有序执行器，map 的结果总是按输入顺序排列"""

    def __init__(self, max_workers: Optional[int] = None, executor_type: Optional[str] = None):
        """
        初始化执行器

        Args:
            max_workers: 最大工作线程/进程数，None 时读取 runtime.workers
            executor_type: 执行器类型，'thread' 或 'process'，None 时读取 runtime.executor_type
        """
        self.max_workers = max(1, max_workers if max_workers is not None else get_config_int("runtime.workers", 1))
        self.executor_type = executor_type or get_config_str("runtime.executor_type", "process")
        self._executor: Optional[Executor] = None

    @property
    def executor(self) -> Executor:
        """获取执行器实例"""
        if self._executor is None:
            if self.executor_type == 'thread':
                self._executor = ThreadPoolExecutor(max_workers=self.max_workers)
            elif self.executor_type == 'process':
                self._executor = ProcessPoolExecutor(
                    max_workers=self.max_workers,
                    initializer=_init_worker,
                    initargs=(settings_snapshot(), str(get_config("logging.level", "INFO"))),
                )
            else:
                raise ValueError(f"不支持的执行器类型: {self.executor_type}")
        return self._executor

    def map(self, func: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        对每个元素执行函数，按输入顺序返回结果

        Args:
            func: 要执行的函数（process 模式下必须可 pickle）
            items: 输入元素

        Returns:
            与输入顺序一致的结果列表
        """
        items = list(items)
        if self.max_workers == 1 or len(items) <= 1:
            return [func(item) for item in items]
        logger.debug(f"并行执行 {len(items)} 个任务 ({self.executor_type} x {self.max_workers})")
        return list(self.executor.map(func, items))

    def close(self) -> None:
        """关闭执行器，释放资源"""
        if self._executor:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "OrderedExecutor":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    """
    快速执行有序并行 map 的便捷函数

    Args:
        func: 要执行的函数
        items: 输入元素
        workers: worker 数量，None 时读取配置

    Returns:
        按输入顺序排列的结果
    """
    with OrderedExecutor(max_workers=workers) as executor:
        return executor.map(func, items)
