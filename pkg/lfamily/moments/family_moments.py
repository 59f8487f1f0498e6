"""
特征族的矩：固定 t、积分、离散与导数矩

对每个特征独立计算（可并行），再按特征顺序补偿求和，
因此结果与 worker 数无关
"""

import math
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger as loguru_logger

from ..characters import CharacterFamily, DirichletCharacter, enumerate_family
from ..characters.character import CharacterKey
from ..core.config import get_config_float
from ..core.executor import ordered_map
from ..exceptions import DomainError
from ..lfunc import integrate_panels, l_values_batch
from .models import CharacterMoment, MomentReport, WellSpacedSet

logger = loguru_logger.bind(name="moments")


def initial_panel_width(q: int, T: float) -> float:
    """min(panel_width, π/log(q(T+3)))，与零点间距同量级"""
    return min(get_config_float("moments.panel_width", 0.25), math.pi / math.log(q * (T + 3)))


def check_sigma(sigma: float, Q: float, T: float) -> None:
    """|σ − ½| ≤ ½(log QT)^{-1}"""
    limit = 0.5 / math.log(max(Q * T, math.e))
    if abs(sigma - 0.5) > limit + 1e-15:
        raise DomainError(f"σ = {sigma} 偏离临界线超过 {limit:.4g}", parameter="sigma", value=sigma)


def power_values(
    chi: DirichletCharacter,
    ts: Sequence[float],
    k: int,
    sigma: float = 0.5,
) -> Tuple[np.ndarray, np.ndarray]:
    """|L(σ+it,χ)|^{2k} 及其传播误差 2k|L|^{2k-1}·err"""
    ts = np.asarray(ts, dtype=np.float64)
    if len(ts) == 0:
        return np.zeros(0), np.zeros(0)
    values, bounds = l_values_batch(chi, sigma + 1j * ts)
    mod = np.abs(values)
    return mod ** (2 * k), 2 * k * mod ** (2 * k - 1) * bounds


def _label(chi: DirichletCharacter) -> str:
    return chi.label


def _resolve_family(j: int, Q: float, family: Optional[CharacterFamily]) -> CharacterFamily:
    return family if family is not None else enumerate_family(j, Q)


def family_moment_fixed_t(
    j: int,
    Q: float,
    t: float,
    k: int = 1,
    family: Optional[CharacterFamily] = None,
) -> MomentReport:
    """
    Σ_{χ∈O_j(Q)} |L(½+it,χ)|^{2k}

    空族返回 0（family_size = 0）
    """
    fam = _resolve_family(j, Q, family)
    items = []
    for chi in fam.members:
        vals, errs = power_values(chi, [t], k)
        items.append(CharacterMoment(
            character=_label(chi), q=chi.modulus, value=math.fsum(vals), error=math.fsum(errs), points=1,
        ))
    return MomentReport(
        mode="fixed_t",
        j=j,
        Q=Q,
        T=abs(t),
        t=t,
        power=2 * k,
        value=math.fsum(item.value for item in items),
        quadrature_error=math.fsum(item.error for item in items),
        family_size=len(fam),
        per_character=items,
    )


def _integrate_character(args: Tuple[DirichletCharacter, float, int, float, float, bool]) -> CharacterMoment:
    chi, T, k, sigma, tol, derivative = args

    if derivative:
        def integrand(t: np.ndarray) -> np.ndarray:
            values, _ = l_values_batch(chi, sigma + 1j * t, derivative=True)
            return np.abs(values) ** 2
    else:
        def integrand(t: np.ndarray) -> np.ndarray:
            values, _ = l_values_batch(chi, sigma + 1j * t)
            return np.abs(values) ** (2 * k)

    result = integrate_panels(
        integrand,
        -T,
        T,
        initial_panel_width(chi.modulus, T),
        rel_tol=tol,
        breakpoints=[0.0],
    )
    logger.debug(f"{chi.label}: ∫ = {result.value.real:.6g}，{result.panels} 个分段")
    return CharacterMoment(
        character=chi.label,
        q=chi.modulus,
        value=max(result.value.real, 0.0),
        error=result.error,
        points=result.panels,
    )


def _integrated(
    j: int,
    Q: float,
    T: float,
    k: int,
    tol: Optional[float],
    sigma: float,
    derivative: bool,
    family: Optional[CharacterFamily],
    workers: Optional[int],
) -> MomentReport:
    if T < 0:
        raise DomainError(f"T 必须非负，得到 {T}", parameter="T", value=T)
    check_sigma(sigma, Q, max(T, 1.0))
    fam = _resolve_family(j, Q, family)
    tol = tol if tol is not None else get_config_float("moments.tolerance", 1e-6)
    items: List[CharacterMoment] = ordered_map(
        _integrate_character,
        [(chi, T, k, sigma, tol, derivative) for chi in fam.members],
        workers=workers,
    )
    value = math.fsum(item.value for item in items)
    logger.info(f"{'导数' if derivative else ''}积分矩 j={j} Q={Q} T={T} 2k={2 * k}: {value:.8g}（{len(fam)} 个特征）")
    return MomentReport(
        mode="derivative" if derivative else "integrated",
        j=j,
        Q=Q,
        T=T,
        power=2 if derivative else 2 * k,
        sigma=sigma,
        value=value,
        quadrature_error=math.fsum(item.error for item in items),
        family_size=len(fam),
        per_character=items,
    )


def integrated_family_moment(
    j: int,
    Q: float,
    T: float,
    k: int = 1,
    tol: Optional[float] = None,
    sigma: float = 0.5,
    family: Optional[CharacterFamily] = None,
    workers: Optional[int] = None,
) -> MomentReport:
    """
    Σ_χ ∫_{-T}^{T} |L(σ+it,χ)|^{2k} dt

    Args:
        j: 族的阶
        Q: 参数 Q
        T: 积分区间
        k: 幂次的一半
        tol: 每个分段的相对容差，默认 moments.tolerance
        sigma: 实部，需满足 |σ − ½| ≤ ½(log QT)^{-1}
        family: 已枚举的族（可选）
        workers: 并行 worker 数

    Raises:
        AccuracyError: 超出分段预算，携带部分估计
    """
    return _integrated(j, Q, T, k, tol, sigma, False, family, workers)


def integrated_derivative_moment(
    j: int,
    Q: float,
    T: float,
    tol: Optional[float] = None,
    family: Optional[CharacterFamily] = None,
    workers: Optional[int] = None,
) -> MomentReport:
    """Σ_χ ∫_{-T}^{T} |L'(½+it,χ)|² dt"""
    return _integrated(j, Q, T, 1, tol, 0.5, True, family, workers)


def discrete_family_moment(
    j: int,
    Q: float,
    sets: Mapping[CharacterKey, WellSpacedSet],
    k: int = 1,
    family: Optional[CharacterFamily] = None,
    compare: bool = False,
    workers: Optional[int] = None,
) -> MomentReport:
    """
    Σ_χ Σ_{t∈𝒯_χ} |L(½+it,χ)|^{2k}

    Args:
        sets: 特征键到点集的映射，所有点集的 T、δ 必须相同；缺失视为空集
        compare: 是否同时计算 (δ^{-1}+1)·积分矩

    Raises:
        SpacingError: 点集违反间距约束（构造 WellSpacedSet 时检查）
        DomainError: 点集的 T、δ 不一致，或包含族外的特征键
    """
    fam = _resolve_family(j, Q, family)
    known = {chi.key for chi in fam.members}
    unknown = [key for key in sets if key not in known]
    if unknown:
        raise DomainError(f"点集包含不在 O_{j}({Q}) 中的特征 {unknown[0]}", parameter="sets", value=unknown[0])
    params = {(s.T, s.delta) for s in sets.values()}
    if len(params) > 1:
        raise DomainError("所有点集必须共享同一 T 与 δ", parameter="sets", value=sorted(params))
    T, delta = next(iter(params)) if params else (0.0, None)

    items = []
    for chi in fam.members:
        ws = sets.get(chi.key)
        ts = ws.as_array() if ws is not None else np.zeros(0)
        vals, errs = power_values(chi, ts, k)
        items.append(CharacterMoment(
            character=chi.label, q=chi.modulus, value=math.fsum(vals), error=math.fsum(errs), points=len(ts),
        ))

    comparison = None
    if compare and delta is not None and T > 0:
        integrated = integrated_family_moment(j, Q, T, k, family=fam, workers=workers)
        comparison = (1 / delta + 1) * integrated.value

    return MomentReport(
        mode="discrete",
        j=j,
        Q=Q,
        T=T,
        power=2 * k,
        delta=delta,
        value=math.fsum(item.value for item in items),
        quadrature_error=math.fsum(item.error for item in items),
        family_size=len(fam),
        per_character=items,
        comparison=comparison,
    )
