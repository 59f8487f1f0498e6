"""
去平方部分的分块比较与临界长度约化

|L(½+it,χ)|² 与按 n = ℓ²m（m 无平方因子）分块的 Dirichlet 多项式之和比较：

    Σ_χ Σ_{ℓ≤√(2N)} ℓ^{-1} |Σ'_{N/ℓ² < n ≤ 2N/ℓ²} χ(n) n^{-½-it}|²，N = (QT)^{1/2+ε}
"""

import math
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger as loguru_logger

from ..characters import CharacterFamily, enumerate_family
from ..core.config import get_config_float
from ..exceptions import DomainError
from ..lfunc import dirichlet_polynomial_batch
from ..sieve.bounds import delta_bound
from ..sieve.large_sieve import squarefree_range
from .family_moments import power_values
from .models import CriticalLengthReport, SquarePartComparison

logger = loguru_logger.bind(name="moments")


def square_part_blocks(N: float) -> List[Tuple[int, np.ndarray]]:
    """
    (ℓ, (N/ℓ², 2N/ℓ²] 内的无平方因子数)，ℓ = 1..⌊√(2N)⌋

    N < 1 时返回空列表
    """
    if N < 1:
        return []
    top = math.isqrt(int(math.floor(2 * N)))
    return [(ell, squarefree_range(N / ell ** 2, 2 * N / ell ** 2)) for ell in range(1, top + 1)]


def square_part_comparison(
    j: int,
    Q: float,
    T: float,
    t: float,
    epsilon: Optional[float] = None,
    family: Optional[CharacterFamily] = None,
) -> SquarePartComparison:
    """
    固定 t 的族二阶矩与分块 Dirichlet 多项式之和

    Args:
        j: 族的阶
        Q: 参数 Q
        T: 参数 T（决定 N）
        t: 求值点，|t| ≤ T
        epsilon: N 的指数余量，默认 moments.epsilon

    Returns:
        SquarePartComparison；常数未知，只报告比率
    """
    if abs(t) > T:
        raise DomainError(f"需要 |t| ≤ T，得到 t={t}, T={T}", parameter="t", value=t)
    eps = epsilon if epsilon is not None else get_config_float("moments.epsilon", 0.0)
    fam = family if family is not None else enumerate_family(j, Q)
    N = (Q * T) ** (0.5 + eps)
    blocks = square_part_blocks(N)
    s = [0.5 + 1j * t]

    lhs_parts, rhs_parts = [], []
    for chi in fam.members:
        vals, _ = power_values(chi, [t], 1)
        lhs_parts.append(float(vals[0]))
        for ell, n in blocks:
            if len(n) == 0:
                continue
            value = dirichlet_polynomial_batch(n, np.ones(len(n), dtype=np.complex128), s, chi)[0]
            rhs_parts.append(abs(value) ** 2 / ell)

    lhs = math.fsum(lhs_parts)
    rhs = math.fsum(rhs_parts)
    degenerate = N < 1
    logger.info(f"去平方分块 j={j} Q={Q} T={T} t={t} N={N:.4g}: lhs={lhs:.6g} rhs={rhs:.6g}")
    return SquarePartComparison(
        j=j,
        Q=Q,
        T=T,
        t=t,
        epsilon=eps,
        N=N,
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs if rhs > 0 else None,
        degenerate=degenerate,
        blocks=len(blocks),
        family_size=len(fam),
    )


def critical_length_reduction(j: int, Q: float, T: float) -> CriticalLengthReport:
    """Δ_j(Q,T,(QT)^{1/2}) 与 QT 的比较，以及 T ≥ Q^{1/5} 是否成立"""
    QT = Q * T
    value = delta_bound(j, Q, T, math.sqrt(QT))
    return CriticalLengthReport(
        j=j,
        Q=Q,
        T=T,
        delta_value=value,
        QT=QT,
        ratio=value / QT,
        t_condition=T >= Q ** 0.2,
    )
