"""
大筛左端的暴力计算

离散形式 Σ_χ |Σ' a_n χ(n)|²，积分形式 Σ_χ ∫_{-T}^{T} |Σ' a_n χ(n) n^{-it}|² dt。
积分形式按闭式核 ∫(n/m)^{it} dt 精确组装，不做数值积分
"""

import cmath
import math
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger as loguru_logger

from ..arith import discrete_log, squarefree_mask, unit_group
from ..characters import CharacterFamily, DirichletCharacter, char_values, enumerate_family
from ..exceptions import DomainError, NotAUnitError
from ..lfunc import integrate_panels
from .bounds import delta_bound
from .models import CoefficientVector, ProbeCell, SieveProbeReport, SieveReport

logger = loguru_logger.bind(name="sieve")


def squarefree_range(lo: float, hi: float) -> np.ndarray:
    """(lo, hi] 内的无平方因子数"""
    top = int(math.floor(hi))
    if top < 1:
        return np.zeros(0, dtype=np.int64)
    mask = squarefree_mask(top)
    n = np.arange(top + 1, dtype=np.int64)
    return n[mask & (n > lo)]


def random_unit_coefficients(N: float, seed: int, dyadic: bool = True) -> CoefficientVector:
    """
    单位模、相位均匀分布的随机系数

    Args:
        N: 长度参数
        seed: 随机种子（记录在向量与报告中）
        dyadic: True 时下标取 (N, 2N] 的无平方因子数，否则取 [1, N]
    """
    indices = squarefree_range(N, 2 * N) if dyadic else squarefree_range(0, N)
    if len(indices) == 0:
        raise DomainError(f"N = {N} 时没有可用的无平方因子下标", parameter="N", value=N)
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0.0, 2 * math.pi, size=len(indices))
    return CoefficientVector(
        N=N,
        indices=tuple(indices.tolist()),
        values=tuple(np.exp(1j * phases).tolist()),
        seed=seed,
        dyadic=dyadic,
    )


def single_coefficient(n0: int, N: float, value: complex = 1.0, dyadic: bool = True) -> CoefficientVector:
    """只有 a_{n₀} 非零的系数向量"""
    return CoefficientVector(N=N, indices=(int(n0),), values=(complex(value),), dyadic=dyadic)


def kernel_matrix(n: np.ndarray, T: float) -> np.ndarray:
    """K(n,m) = ∫_{-T}^{T} (n/m)^{it} dt：n = m 时为 2T，否则 2 sin(T log(n/m)) / log(n/m)"""
    logs = np.log(n.astype(np.float64))
    diff = logs[:, None] - logs[None, :]
    return 2 * T * np.sinc(T * diff / math.pi)


def _family(j: int, Q: float, family: Optional[CharacterFamily]) -> CharacterFamily:
    return family if family is not None else enumerate_family(j, Q)


def _twisted(chi: DirichletCharacter, coeffs: CoefficientVector) -> np.ndarray:
    n, a = coeffs.arrays()
    return a * char_values(chi, n)


def _report(
    mode: str, j: int, Q: float, T: float, coeffs: CoefficientVector, lhs: float, size: int,
) -> SieveReport:
    bound = delta_bound(j, Q, T, coeffs.N)
    norm = coeffs.norm
    return SieveReport(
        mode=mode,
        j=j,
        Q=Q,
        T=T,
        N=coeffs.N,
        lhs=lhs,
        norm=norm,
        delta_bound=bound,
        ratio=lhs / (norm * bound),
        family_size=size,
        seed=coeffs.seed,
    )


def sieve_lhs_discrete(
    j: int, Q: float, coeffs: CoefficientVector, family: Optional[CharacterFamily] = None,
) -> SieveReport:
    """
    Σ_{χ∈O_j(Q)} |Σ' a_n χ(n)|²，与 Δ_j(Q,1,N)·Σ'|a_n|² 比较

    Raises:
        DomainError: j 不受支持
    """
    fam = _family(j, Q, family)
    parts = []
    for chi in fam.members:
        b = _twisted(chi, coeffs)
        parts.append(abs(complex(math.fsum(b.real), math.fsum(b.imag))) ** 2)
    lhs = math.fsum(parts)
    logger.debug(f"离散大筛 j={j} Q={Q} N={coeffs.N}: lhs = {lhs:.8g}")
    return _report("discrete", j, Q, 1.0, coeffs, lhs, len(fam))


def _reference_value(chi: DirichletCharacter, n: int) -> complex:
    """由离散对数直接计算 χ(n)，不经过特征值表"""
    group = unit_group(chi.modulus)
    try:
        logs = discrete_log(group, n)
    except NotAUnitError:
        return 0j
    phase = sum(e * l / o for e, l, o in zip(chi.exponents, logs, group.orders))
    return cmath.exp(2j * math.pi * phase)


def sieve_lhs_discrete_reference(
    j: int, Q: float, coeffs: CoefficientVector, family: Optional[CharacterFamily] = None,
) -> float:
    """特征 × 下标的二重循环，作为 sieve_lhs_discrete 的独立对照"""
    fam = _family(j, Q, family)
    total = 0.0
    for chi in fam.members:
        acc = 0j
        for n, a in zip(coeffs.indices, coeffs.values):
            acc += a * _reference_value(chi, n)
        total += abs(acc) ** 2
    return total


def sieve_lhs_integrated(
    j: int, Q: float, T: float, coeffs: CoefficientVector, family: Optional[CharacterFamily] = None,
) -> SieveReport:
    """
    Σ_χ ∫_{-T}^{T} |Σ' a_n χ(n) n^{-it}|² dt = Σ_χ Σ_{n,m} b_n conj(b_m) K(n,m)

    T < 1 时比率中的 Δ_j 按 T = 1 计算

    Raises:
        DomainError: j 不受支持或 T ≤ 0
    """
    if T <= 0:
        raise DomainError(f"T 必须为正，得到 {T}", parameter="T", value=T)
    fam = _family(j, Q, family)
    n, _ = coeffs.arrays()
    kernel = kernel_matrix(n, T)
    parts = []
    for chi in fam.members:
        b = _twisted(chi, coeffs)
        parts.append(max(float(np.vdot(b, kernel @ b).real), 0.0))
    lhs = math.fsum(parts)
    logger.debug(f"积分大筛 j={j} Q={Q} T={T} N={coeffs.N}: lhs = {lhs:.8g}")
    return _report("integrated", j, Q, max(T, 1.0), coeffs, lhs, len(fam)).model_copy(update={"T": T})


def sieve_lhs_integrated_quadrature(
    j: int, Q: float, T: float, coeffs: CoefficientVector, family: Optional[CharacterFamily] = None,
    rel_tol: float = 1e-10,
) -> float:
    """对 t 直接做数值积分的对照值"""
    fam = _family(j, Q, family)
    n, _ = coeffs.arrays()
    logs = np.log(n.astype(np.float64))
    total = []
    for chi in fam.members:
        b = _twisted(chi, coeffs)

        def integrand(t: np.ndarray, b: np.ndarray = b) -> np.ndarray:
            return np.abs(np.exp(-1j * np.outer(t, logs)) @ b) ** 2

        total.append(integrate_panels(integrand, -T, T, 0.25, rel_tol=rel_tol).value.real)
    return math.fsum(total)


def sieve_scaling_probe(
    Qs: Sequence[float] = (8, 16, 32, 64),
    Ns: Sequence[float] = (8, 16, 32, 64),
    Ts: Sequence[float] = (4, 16),
    trials: int = 50,
    seed: int = 0,
    constant: float = 10.0,
) -> SieveProbeReport:
    """
    j = 2 积分大筛的经验探测：max lhs/‖a‖² 与 constant·(QT+N) 比较

    第 i 次试验使用种子 seed + i
    """
    cells: List[ProbeCell] = []
    for Q in Qs:
        fam = enumerate_family(2, Q)
        for N in Ns:
            vectors = [random_unit_coefficients(N, seed + i) for i in range(trials)]
            for T in Ts:
                worst = max(sieve_lhs_integrated(2, Q, T, v, family=fam).lhs / v.norm for v in vectors)
                bound = constant * (Q * T + N)
                cells.append(ProbeCell(Q=Q, T=T, N=N, max_ratio=worst, bound=bound, within=worst <= bound))
                logger.debug(f"Q={Q} N={N} T={T}: max lhs/‖a‖² = {worst:.6g}（上界 {bound:g}）")
    report = SieveProbeReport(trials=trials, seed=seed, cells=cells)
    logger.info(f"大筛标度探测完成：{len(cells)} 个单元，全部在界内 = {report.all_within}")
    return report
