"""
ζ 在临界线上的二阶矩 ∫|ζ(½+it)|² dt
"""

import math
from typing import Optional

import numpy as np
from loguru import logger as loguru_logger

from ..characters import character_from_key
from ..core.config import get_config_float
from ..exceptions import DomainError
from ..lfunc import integrate_panels, l_values_batch
from .models import HardyLittlewoodReport

logger = loguru_logger.bind(name="moments")

EULER_GAMMA = 0.5772156649015329


def refined_main_term(T: float) -> float:
    """T(log(T/2π) + 2γ − 1)"""
    return T * (math.log(T / (2 * math.pi)) + 2 * EULER_GAMMA - 1)


def hardy_littlewood_second_moment(T: float, tol: Optional[float] = None, T0: float = 0.0) -> HardyLittlewoodReport:
    """
    ∫_{T0}^{T} |ζ(½+it)|² dt，以及与 T log T 和精化主项之比

    Args:
        T: 上限，1 ≤ T ≤ 500；T 超过 lfunc.t_cap 时积分使用上限 T
        tol: 分段相对容差
        T0: 下限（用于可加性检查）

    Raises:
        DomainError: T 越界
        AccuracyError: 积分失败
    """
    if not (1 <= T <= 500 and 0 <= T0 <= T):
        raise DomainError(f"需要 1 ≤ T ≤ 500 且 0 ≤ T0 ≤ T，得到 T0={T0}, T={T}", parameter="T", value=T)
    tol = tol if tol is not None else get_config_float("moments.tolerance", 1e-6)
    zeta = character_from_key(1, ())
    t_cap = max(T, get_config_float("lfunc.t_cap", 200.0))

    def integrand(t: np.ndarray) -> np.ndarray:
        values, _ = l_values_batch(zeta, 0.5 + 1j * t, t_cap=t_cap)
        return np.abs(values) ** 2

    width = min(get_config_float("moments.panel_width", 0.25), math.pi / math.log(T + 3))
    result = integrate_panels(integrand, T0, T, width, rel_tol=tol)
    value = max(result.value.real, 0.0)

    ratio = refined = None
    if T0 == 0 and T > 1:
        ratio = value / (T * math.log(T))
        refined = value / refined_main_term(T)
    logger.info(f"∫_{T0:g}^{T:g} |ζ(½+it)|² dt = {value:.8g}")
    return HardyLittlewoodReport(
        T0=T0,
        T=T,
        value=value,
        quadrature_error=result.error,
        main_term_ratio=ratio,
        refined_ratio=refined,
    )
