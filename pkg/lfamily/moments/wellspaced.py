"""
良好间隔点集的构造
"""

from enum import Enum
from typing import Dict, Optional

import numpy as np
from loguru import logger as loguru_logger

from ..characters import CharacterFamily, DirichletCharacter
from ..characters.character import CharacterKey
from ..core.config import get_config_int
from ..exceptions import DomainError
from ..lfunc import l_values_batch
from .models import SPACING_SLACK, WellSpacedSet

logger = loguru_logger.bind(name="moments")


class SpacingStrategy(str, Enum):
    GRID = "grid"
    GREEDY_LOCAL_MAXIMA = "greedy_local_maxima"


def grid_points(T: float, delta: float) -> np.ndarray:
    """−T + δ/2 + kδ，k = 0, 1, ...，不超过 T − δ/2"""
    count = int(np.floor((2 * T - delta) / delta + SPACING_SLACK)) + 1
    return -T + delta / 2 + delta * np.arange(max(count, 0))


def generate_wellspaced(
    chi: DirichletCharacter,
    T: float,
    delta: float,
    strategy: SpacingStrategy = SpacingStrategy.GRID,
) -> WellSpacedSet:
    """
    构造 δ-良好间隔点集

    Args:
        chi: 特征（贪心策略用来扫描 |L(½+it,χ)|）
        T: 区间参数，T ≥ δ > 0
        delta: 最小间距
        strategy: grid 或 greedy_local_maxima

    Returns:
        WellSpacedSet
    """
    if not (T >= delta > 0):
        raise DomainError(f"需要 T ≥ δ > 0，得到 T={T}, δ={delta}", parameter="delta", value=delta)
    strategy = SpacingStrategy(strategy)
    if strategy is SpacingStrategy.GRID:
        return WellSpacedSet(delta=delta, T=T, points=tuple(grid_points(T, delta).tolist()))

    refine = get_config_int("moments.greedy_refine", 10)
    step = delta / refine
    lo, hi = delta / 2 - T, T - delta / 2
    scan = lo + step * np.arange(int(np.floor((hi - lo) / step + SPACING_SLACK)) + 1)
    values, _ = l_values_batch(chi, 0.5 + 1j * scan)
    mags = np.abs(values)

    padded = np.concatenate([[-np.inf], mags, [-np.inf]])
    peaks = np.nonzero((mags >= padded[:-2]) & (mags >= padded[2:]))[0]
    # 按 |L| 降序，相同时按 t 升序
    order = sorted(peaks.tolist(), key=lambda i: (-mags[i], scan[i]))
    chosen = []
    for i in order:
        t = float(scan[i])
        if all(abs(t - c) >= delta for c in chosen):
            chosen.append(t)
    logger.debug(f"{chi.label}: 贪心选出 {len(chosen)} 个峰值点（扫描 {len(scan)} 点）")
    return WellSpacedSet(delta=delta, T=T, points=tuple(sorted(chosen)))


def family_wellspaced(
    family: CharacterFamily,
    T: float,
    delta: float,
    strategy: SpacingStrategy = SpacingStrategy.GRID,
) -> Dict[CharacterKey, WellSpacedSet]:
    """为族中每个特征构造点集"""
    return {chi.key: generate_wellspaced(chi, T, delta, strategy) for chi in family.members}


def random_wellspaced(T: float, delta: float, seed: Optional[int], size: Optional[int] = None) -> WellSpacedSet:
    """
    随机良好间隔点集：在网格点上加入不破坏间距的随机扰动后随机抽取

    Args:
        T: 区间参数
        delta: 最小间距
        seed: 随机种子
        size: 点数上限，None 时随机
    """
    rng = np.random.default_rng(seed)
    base = -T + delta / 2 + 2 * delta * np.arange(int(np.floor((2 * T - delta) / (2 * delta) + SPACING_SLACK)) + 1)
    jitter = rng.uniform(0.0, delta * (1 - 1e-9), size=len(base))
    points = np.minimum(base + jitter, T - delta / 2)
    keep = rng.random(len(points)) < 0.7 if size is None else np.isin(np.arange(len(points)), rng.permutation(len(points))[:size])
    return WellSpacedSet(delta=delta, T=T, points=tuple(points[keep].tolist()))
