"""
分段自适应 Gauss-Legendre 积分

逐层处理：同一层所有待定分段的节点一次性向量化求值，
分段接受条件 |I₁ − I₂| ≤ rel_tol·|I₂| + abs_tol·h，
否则二分。结果按分段左端点顺序补偿求和，与求值批次无关
"""

import math
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np
from loguru import logger as loguru_logger
from pydantic import BaseModel, Field

from ..core.config import get_config_int
from ..exceptions import AccuracyError

logger = loguru_logger.bind(name="quadrature")

VectorFunction = Callable[[np.ndarray], np.ndarray]


class QuadratureResult(BaseModel):
    """积分结果"""

    value: complex = Field(description="积分值")
    error: float = Field(ge=0.0, description="误差估计 Σ|I₁ − I₂|")
    panels: int = Field(ge=0, description="被接受的分段数")
    evaluations: int = Field(ge=0, description="被积函数求值次数")


@lru_cache(maxsize=16)
def gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """[-1, 1] 上的 n 点 Gauss-Legendre 节点与权重"""
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_points(left: np.ndarray, right: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """每个分段的节点与权重，形状 (P, n)"""
    x, w = gauss_legendre(n)
    half = (right - left)[:, None] / 2
    mid = (right + left)[:, None] / 2
    return mid + half * x[None, :], half * w[None, :]


def uniform_panels(a: float, b: float, width: float) -> np.ndarray:
    """把 [a, b] 等分为宽度不超过 width 的分段边界"""
    count = max(1, math.ceil((b - a) / width - 1e-12))
    return np.linspace(a, b, count + 1)


def integrate_panels(
    func: VectorFunction,
    a: float,
    b: float,
    initial_width: float,
    rel_tol: float,
    abs_tol: float = 1e-14,
    max_panels: Optional[int] = None,
    nodes: Optional[int] = None,
    breakpoints: Optional[List[float]] = None,
) -> QuadratureResult:
    """
    自适应分段积分 ∫_a^b func

    Args:
        func: 向量化被积函数（实值或复值）
        a: 下限
        b: 上限
        initial_width: 初始分段宽度
        rel_tol: 相对容差
        abs_tol: 每单位长度的绝对容差
        max_panels: 分段预算，默认 moments.max_panels
        nodes: 每段节点数，默认 moments.gl_nodes
        breakpoints: 额外的分段边界（例如对称点 0）

    Returns:
        QuadratureResult

    Raises:
        AccuracyError: 超出分段预算，携带部分估计
    """
    if b <= a:
        return QuadratureResult(value=0.0, error=0.0, panels=0, evaluations=0)
    n = nodes or get_config_int("moments.gl_nodes", 16)
    budget = max_panels or get_config_int("moments.max_panels", 400000)

    cuts = [a, b] + [p for p in (breakpoints or []) if a < p < b]
    cuts = sorted(set(cuts))
    edges = np.concatenate(
        [uniform_panels(lo, hi, initial_width)[:-1] for lo, hi in zip(cuts[:-1], cuts[1:])] + [np.array([b])]
    )
    left = edges[:-1]
    right = edges[1:]

    x, w = panel_points(left, right, n)
    coarse = (func(x.reshape(-1)).reshape(x.shape) * w).sum(axis=1)
    evaluations = x.size

    accepted_left: List[float] = []
    accepted_value: List[complex] = []
    accepted_error: List[float] = []

    while len(left):
        mid = (left + right) / 2
        xs, ws = panel_points(np.concatenate([left, mid]), np.concatenate([mid, right]), n)
        halves = (func(xs.reshape(-1)).reshape(xs.shape) * ws).sum(axis=1)
        evaluations += xs.size
        lower, upper = halves[: len(left)], halves[len(left):]
        fine = lower + upper
        err = np.abs(fine - coarse)
        ok = err <= rel_tol * np.abs(fine) + abs_tol * (right - left)

        accepted_left.extend(left[ok].tolist())
        accepted_value.extend(fine[ok].tolist())
        accepted_error.extend(err[ok].tolist())

        bad = ~ok
        if len(accepted_left) + 2 * int(bad.sum()) > budget:
            partial = math.fsum(np.real(accepted_value)) + math.fsum(np.real(fine[bad]))
            raise AccuracyError(
                f"积分 [{a:g}, {b:g}] 超出分段预算 {budget}",
                partial=partial,
                details={"panels": len(accepted_left), "pending": int(bad.sum())},
            )
        left, right = np.concatenate([left[bad], mid[bad]]), np.concatenate([mid[bad], right[bad]])
        coarse = np.concatenate([lower[bad], upper[bad]])
        if len(left):
            logger.debug(f"[{a:g}, {b:g}] 二分 {int(bad.sum())} 个分段")

    order = np.argsort(np.asarray(accepted_left), kind="stable")
    values = np.asarray(accepted_value, dtype=np.complex128)[order]
    total = complex(math.fsum(values.real), math.fsum(values.imag))
    return QuadratureResult(
        value=total,
        error=math.fsum(accepted_error),
        panels=len(accepted_left),
        evaluations=evaluations,
    )
