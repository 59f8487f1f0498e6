"""
大筛密度因子 Δ_j(Q,T,N) 的公式
"""

from typing import List

from ..exceptions import DomainError

SUPPORTED_ORDERS = (2, 3, 4, 6)


def delta_bound_terms(j: int, Q: float, T: float, N: float) -> List[float]:
    """
    Δ_j 取最小值之前的全部表达式

    Raises:
        DomainError: j 不受支持，或 Q、T、N < 1
    """
    if j not in SUPPORTED_ORDERS:
        raise DomainError(f"Δ_j 只对 j ∈ {SUPPORTED_ORDERS} 有定义，得到 {j}", parameter="j", value=j)
    if min(Q, T, N) < 1:
        raise DomainError(f"需要 Q, T, N ≥ 1，得到 ({Q}, {T}, {N})", parameter="Q", value=(Q, T, N))
    if j == 2:
        return [Q * T + N]
    if j in (3, 6):
        return [
            Q ** (5 / 3) * T + N,
            Q ** (4 / 3) * T + Q ** 0.5 * N,
            Q ** (11 / 9) * T + Q ** (2 / 3) * N,
            Q * T + Q ** (1 / 3) * N ** (5 / 3) * T ** (-2 / 3) + N ** (12 / 5) * T ** (-7 / 5),
        ]
    return [
        Q ** 1.5 * T + N,
        Q ** 1.25 * T + Q ** 0.5 * N,
        Q ** (7 / 6) * T + Q ** (2 / 3) * N,
        Q * T + Q ** (1 / 3) * N ** (5 / 3) * T ** (-2 / 3) + N ** (7 / 3) * T ** (-4 / 3),
    ]


def delta_bound(j: int, Q: float, T: float, N: float) -> float:
    """Δ_j(Q,T,N)；T = 1 时即离散形式的 D_j(Q,N)"""
    return min(delta_bound_terms(j, Q, T, N))
