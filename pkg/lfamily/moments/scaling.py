"""
标度网格：在 (j, Q, T) 网格上计算积分矩、贪心离散矩探测与指数拟合

网格单元分发给 worker，每个单元内部串行计算，结果按单元顺序汇总
"""

import math
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger as loguru_logger

from ..characters import enumerate_family
from ..core.executor import ordered_map
from ..exceptions import DomainError
from .family_moments import discrete_family_moment, integrated_family_moment
from .fit import exponent_fit
from .models import ScalingCell, ScalingFit, ScalingReport, ScalingSample
from .wellspaced import SpacingStrategy, family_wellspaced

logger = loguru_logger.bind(name="scaling")


def _scaling_cell(args: Tuple[int, float, float, int, float, Optional[float], bool]) -> ScalingCell:
    j, Q, T, k, delta, tol, probe = args
    fam = enumerate_family(j, Q, workers=1)
    integrated = integrated_family_moment(j, Q, T, k, tol=tol, family=fam, workers=1)

    discrete_value = discrete_ratio = None
    if probe:
        sets = family_wellspaced(fam, T, delta, SpacingStrategy.GREEDY_LOCAL_MAXIMA)
        discrete_value = discrete_family_moment(j, Q, sets, k, family=fam).value
        denominator = (1 / delta + 1) * integrated.value
        discrete_ratio = discrete_value / denominator if denominator > 0 else None

    logger.debug(f"单元 j={j} Q={Q} T={T}: 积分矩 {integrated.value:.6g}")
    return ScalingCell(
        j=j,
        Q=Q,
        T=T,
        value=integrated.value,
        quadrature_error=integrated.quadrature_error,
        family_size=len(fam),
        t_condition=T >= Q ** 0.2,
        discrete_value=discrete_value,
        discrete_ratio=discrete_ratio,
    )


def run_scaling_grid(
    js: Sequence[int],
    Qs: Sequence[float],
    Ts: Sequence[float],
    k: int = 1,
    delta: float = 1.0,
    tol: Optional[float] = None,
    probe: bool = True,
    workers: Optional[int] = None,
) -> ScalingReport:
    """
    标度实验

    Args:
        js: 族的阶
        Qs: Q 网格
        Ts: T 网格
        k: 幂次的一半
        delta: 贪心离散探测的间距
        tol: 积分相对容差
        probe: 是否计算贪心离散矩与比率
        workers: 并行 worker 数（按单元分发）

    Returns:
        ScalingReport：单元列表、每个 j 的拟合（无法拟合时为 None）以及 T < Q^{1/5} 的 (Q, T)
    """
    grid = [(j, float(Q), float(T), k, delta, tol, probe) for j in js for Q in Qs for T in Ts]
    cells: List[ScalingCell] = ordered_map(_scaling_cell, grid, workers=workers)

    fits: Dict[str, Optional[ScalingFit]] = {}
    for j in js:
        samples = [ScalingSample(Q=c.Q, T=c.T, value=c.value) for c in cells if c.j == j and c.value > 0]
        try:
            fits[str(j)] = exponent_fit(samples)
            logger.info(f"j={j}: α = {fits[str(j)].alpha:.4f}, β = {fits[str(j)].beta:.4f}")
        except DomainError as e:
            logger.warning(f"j={j} 无法拟合: {e.message}")
            fits[str(j)] = None

    flagged = sorted({(c.Q, c.T) for c in cells if not c.t_condition})
    if flagged:
        logger.info(f"{len(flagged)} 个 (Q, T) 不满足 T ≥ Q^(1/5)")
    return ScalingReport(k=k, delta=delta, cells=cells, fits=fits, flagged=flagged)


def discrete_probe_bound(report: ScalingReport, constant: float = 10.0) -> bool:
    """所有单元的离散比率都不超过 constant"""
    ratios = [c.discrete_ratio for c in report.cells if c.discrete_ratio is not None]
    return all(r <= constant for r in ratios) and all(math.isfinite(r) for r in ratios)
