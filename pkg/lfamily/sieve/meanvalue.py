"""
离散均值定理的比率报告

    Σ_{(s,χ)∈𝒮} |Σ'_{n≤N} a_n χ(n) n^{-s}|²

与 (δ^{-1}+1)Δ_j(Q,T,N) 及 (δ^{-1}+1)(N + QT^{1/2}|𝒮|) 乘以 Σ'|a_n|² n^{-2σ₀} 比较。
两者都含未知常数，只报告比率
"""

import math
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger as loguru_logger

from ..characters import CharacterFamily, enumerate_family
from ..characters.character import CharacterKey
from ..exceptions import DomainError, SpacingError
from ..lfunc import dirichlet_polynomial_batch
from ..moments.models import SPACING_SLACK
from ..moments.wellspaced import random_wellspaced
from .bounds import delta_bound
from .models import CoefficientVector, MeanValueReport

logger = loguru_logger.bind(name="sieve")

PointSets = Mapping[CharacterKey, Sequence[Tuple[float, float]]]


def _check_points(key: CharacterKey, points: Sequence[Tuple[float, float]], T: float, delta: float, sigma0: float):
    ordered = sorted(points, key=lambda p: p[1])
    for sigma_t, t in ordered:
        if not (sigma0 <= sigma_t < 1):
            raise DomainError(
                f"特征 {key} 的 σ_t = {sigma_t} 不在 [{sigma0}, 1) 内", parameter="sigma_t", value=sigma_t,
            )
        if abs(t) > T + SPACING_SLACK:
            raise SpacingError(f"特征 {key} 的点 t = {t} 不在 [-{T}, {T}] 内", pair=(t,))
    for (_, x), (_, y) in zip(ordered[:-1], ordered[1:]):
        if y - x < delta - SPACING_SLACK:
            raise SpacingError(f"特征 {key} 的点 {x} 与 {y} 的间距小于 δ = {delta}", pair=(x, y))
    return ordered


def random_point_sets(
    family: CharacterFamily, T: float, delta: float, sigma0: float, seed: int,
) -> Dict[CharacterKey, List[Tuple[float, float]]]:
    """为族中第 i 个特征以种子 seed + i 生成随机良好间隔点集，σ_t = σ₀"""
    return {
        chi.key: [(sigma0, t) for t in random_wellspaced(T, delta, seed + i).points]
        for i, chi in enumerate(family.members)
    }


def meanvalue_check(
    j: int,
    Q: float,
    T: float,
    delta: float,
    point_sets: PointSets,
    coeffs: CoefficientVector,
    sigma0: float,
    family: Optional[CharacterFamily] = None,
) -> MeanValueReport:
    """
    计算离散均值的左端与两个右端

    Args:
        j: 族的阶
        Q: 参数 Q
        T: 点集的范围 [-T, T]
        delta: 每个特征的点集间距
        point_sets: 特征键到 (σ_t, t) 列表的映射，缺失视为空集
        coeffs: 系数，下标上界 N 取 coeffs.upper
        sigma0: σ₀

    Raises:
        DomainError: σ_t 越界、未知特征键或 j 不受支持
        SpacingError: 间距或区间约束不满足
    """
    fam = family if family is not None else enumerate_family(j, Q)
    known = {chi.key for chi in fam.members}
    unknown = [key for key in point_sets if key not in known]
    if unknown:
        raise DomainError(f"点集包含不在 O_{j}({Q}) 中的特征 {unknown[0]}", parameter="point_sets", value=unknown[0])

    n, a = coeffs.arrays()
    N = coeffs.upper
    parts = []
    count = 0
    for chi in fam.members:
        ordered = _check_points(chi.key, point_sets.get(chi.key, ()), T, delta, sigma0)
        if not ordered:
            continue
        s = np.array([sigma_t + 1j * t for sigma_t, t in ordered], dtype=np.complex128)
        values = dirichlet_polynomial_batch(n, a, s, chi)
        parts.extend((np.abs(values) ** 2).tolist())
        count += len(ordered)
    lhs = math.fsum(parts)

    damped_norm = math.fsum((np.abs(a) ** 2 * n.astype(np.float64) ** (-2 * sigma0)).tolist())
    factor = 1 / delta + 1
    rhs_sieve = factor * delta_bound(j, Q, T, N) * damped_norm
    rhs_count = factor * (N + Q * math.sqrt(T) * count) * damped_norm
    report = MeanValueReport(
        j=j,
        Q=Q,
        T=T,
        delta=delta,
        N=N,
        sigma0=sigma0,
        lhs=lhs,
        rhs_sieve=rhs_sieve,
        rhs_count=rhs_count,
        ratio_sieve=lhs / rhs_sieve if rhs_sieve > 0 else None,
        ratio_count=lhs / rhs_count if rhs_count > 0 else None,
        point_count=count,
        family_size=len(fam),
        seed=coeffs.seed,
    )
    logger.info(
        f"均值检验 j={j} Q={Q} T={T} δ={delta}: |𝒮|={count}, "
        f"比率 {report.ratio_sieve or 0.0:.4g} / {report.ratio_count or 0.0:.4g}"
    )
    return report
