"""
幅角原理计数零点

沿矩形 [σ, 1.5] + i[t_lo, t_hi] 逆时针跟踪 arg L(s,χ)，每步相位变化须小于 π/2，
不满足的线段二分加密。右边延伸到绝对收敛区 Re s > 1，不改变计数
"""

import math
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger as loguru_logger

from ..characters import CharacterFamily, DirichletCharacter, enumerate_family, is_principal
from ..core.config import get_config_float
from ..core.executor import ordered_map
from ..exceptions import (
    ContourNearZeroError,
    DomainError,
    InternalConsistencyError,
    LFamilyException,
    WindingRejectedError,
)
from ..lfunc import l_values_batch
from .critical import zero_gap_estimate
from .density import zero_density_bounds
from .models import Contour, FamilyZeroCountReport, ZeroCountReport

logger = loguru_logger.bind(name="zeros")

RIGHT_EDGE = 1.5
MAX_PHASE_STEP = math.pi / 2
WINDING_REJECT = 0.25
SIGMA_PERTURBATION = 1e-4


def _track_edge(chi: DirichletCharacter, start: complex, end: complex, step: float) -> Tuple[float, int]:
    """
    沿线段 start → end 的相位总变化

    Returns:
        (相位变化, 求值次数)

    Raises:
        ContourNearZeroError: 最小步长下相位变化仍 ≥ π/2
    """
    min_step = get_config_float("zeros.min_step", 1e-7)
    length = abs(end - start)
    n = max(1, math.ceil(length / step))
    u = np.linspace(0.0, 1.0, n + 1)
    values, _ = l_values_batch(chi, start + u * (end - start))
    evaluations = len(u)

    while True:
        dphi = np.angle(values[1:] / values[:-1])
        bad = np.abs(dphi) >= MAX_PHASE_STEP
        if not bad.any():
            return math.fsum(dphi.tolist()), evaluations
        seg = np.nonzero(bad)[0]
        if np.min(u[seg + 1] - u[seg]) * length < min_step:
            i = int(seg[np.argmin(u[seg + 1] - u[seg])])
            where = start + u[i] * (end - start)
            raise ContourNearZeroError(
                f"{chi.label}: 围道在 {where:.8g} 附近过于接近零点",
                details={"character": chi.label, "point": [where.real, where.imag]},
            )
        mid = (u[seg] + u[seg + 1]) / 2
        mid_values, _ = l_values_batch(chi, start + mid * (end - start))
        evaluations += len(mid)
        u = np.concatenate([u, mid])
        values = np.concatenate([values, mid_values])
        order = np.argsort(u, kind="stable")
        u, values = u[order], values[order]


def _winding(chi: DirichletCharacter, sigma: float, t_lo: float, t_hi: float, scale: float) -> Tuple[float, int]:
    q = chi.modulus
    T = max(abs(t_lo), abs(t_hi))
    horizontal = min(0.1, 1 / math.log(q * (T + 3))) * scale
    vertical = zero_gap_estimate(q, T) / 8 * scale
    corners = [
        complex(sigma, t_lo),
        complex(RIGHT_EDGE, t_lo),
        complex(RIGHT_EDGE, t_hi),
        complex(sigma, t_hi),
    ]
    steps = [horizontal, vertical, horizontal, vertical]
    total, evaluations = [], 0
    # 边的顺序固定：下、右、上、左
    for i, step in enumerate(steps):
        change, n = _track_edge(chi, corners[i], corners[(i + 1) % 4], step)
        total.append(change)
        evaluations += n
    return math.fsum(total) / (2 * math.pi), evaluations


def count_zeros_box(chi: DirichletCharacter, sigma: float, t_lo: float, t_hi: float) -> ZeroCountReport:
    """
    [σ, 1.5] + i[t_lo, t_hi] 内的零点个数

    以初始步长和减半步长各计算一次，两次的整数结果必须一致

    Raises:
        DomainError: χ 非本原或为主特征，σ 或区间不合法
        ContourNearZeroError: 围道过于接近零点
        WindingRejectedError: 绕数离整数超过 0.25
        InternalConsistencyError: 两次计算结果不一致
    """
    if is_principal(chi) or not chi.primitive:
        raise DomainError(f"幅角原理计数需要本原非主特征，得到 {chi.label}", parameter="chi", value=chi.label)
    if not (0 < sigma < RIGHT_EDGE) or not (t_lo < t_hi):
        raise DomainError(
            f"不合法的矩形 σ={sigma}, t ∈ [{t_lo}, {t_hi}]", parameter="sigma", value=(sigma, t_lo, t_hi),
        )

    counts = []
    winding = residual = 0.0
    evaluations = 0
    for scale in (1.0, 0.5):
        w, n = _winding(chi, sigma, t_lo, t_hi, scale)
        evaluations += n
        rounded = round(w)
        res = abs(w - rounded)
        if res >= WINDING_REJECT:
            raise WindingRejectedError(res, details={"character": chi.label, "winding": w, "scale": scale})
        if rounded < 0:
            raise InternalConsistencyError(
                f"{chi.label}: 绕数为负 ({w:.4f})", check="winding_sign", details={"character": chi.label},
            )
        counts.append(rounded)
        if scale == 1.0:
            winding, residual = w, res

    if counts[0] != counts[1]:
        raise InternalConsistencyError(
            f"{chi.label}: 步长减半后计数 {counts[0]} → {counts[1]}",
            check="step_halving",
            details={"character": chi.label, "counts": counts},
        )
    logger.debug(f"{chi.label}: σ={sigma} t∈[{t_lo:g},{t_hi:g}] 零点数 {counts[0]}（残差 {residual:.2e}）")
    return ZeroCountReport(
        character=chi.label,
        sigma=sigma,
        T=max(abs(t_lo), abs(t_hi)),
        count=counts[0],
        winding=winding,
        winding_residual=residual,
        contour=Contour(sigma=sigma, right=RIGHT_EDGE, t_lo=t_lo, t_hi=t_hi),
        evaluations=evaluations,
        halving_agrees=True,
    )


def count_zeros_rectangle(chi: DirichletCharacter, sigma: float, T: float) -> ZeroCountReport:
    """
    N(σ,T,χ)：R(σ,T) = [σ,1] + i[-T,T] 内的零点个数

    Raises:
        DomainError: σ 不在 (½, 1) 或 T 不为正
    """
    if not (0.5 < sigma < 1):
        raise DomainError(f"σ 必须在 (1/2, 1) 内，得到 {sigma}", parameter="sigma", value=sigma)
    if T <= 0:
        raise DomainError(f"T 必须为正，得到 {T}", parameter="T", value=T)
    return count_zeros_box(chi, sigma, -T, T)


def _count_character(args: Tuple[DirichletCharacter, float, float]) -> ZeroCountReport:
    chi, sigma, T = args
    try:
        return count_zeros_rectangle(chi, sigma, T)
    except ContourNearZeroError:
        for shifted in (sigma + SIGMA_PERTURBATION, sigma - SIGMA_PERTURBATION):
            logger.warning(f"{chi.label}: 围道接近零点，σ 改为 {shifted}")
            try:
                report = count_zeros_rectangle(chi, shifted, T)
                return report.model_copy(update={"perturbed": True})
            except ContourNearZeroError:
                continue
        raise
    except LFamilyException as e:
        e.details.setdefault("character", chi.label)
        raise


def family_zero_count(
    j: int,
    Q: float,
    sigma: float,
    T: float,
    family: Optional[CharacterFamily] = None,
    workers: Optional[int] = None,
) -> FamilyZeroCountReport:
    """
    Σ_{χ∈O_j(Q)} N(σ,T,χ)，附同一 (σ,Q,T) 的零点密度上界表（Q, T ≥ 2 时）

    围道过近零点时依次尝试 σ ± 1e-4；其余错误带上特征标签原样抛出
    """
    fam = family if family is not None else enumerate_family(j, Q)
    reports: List[ZeroCountReport] = ordered_map(_count_character, [(chi, sigma, T) for chi in fam.members], workers=workers)
    total = sum(r.count for r in reports)
    bounds = zero_density_bounds(sigma, Q, T) if Q >= 2 and T >= 2 and 0.5 < sigma < 1 else None
    logger.info(f"O_{j}({Q}) σ={sigma} T={T}: 共 {total} 个零点（{len(fam)} 个特征）")
    return FamilyZeroCountReport(
        j=j,
        Q=Q,
        sigma=sigma,
        T=T,
        count=total,
        family_size=len(fam),
        per_character=reports,
        bounds=bounds,
    )
