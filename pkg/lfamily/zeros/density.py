"""
零点密度上界公式与检测器参数

所有表达式都不含 (QT)^ε 与隐含常数，按原样精确计算
"""

import math
from typing import Dict, List, Optional

from ..core.config import get_config_float
from ..exceptions import DomainError
from ..sieve.bounds import delta_bound
from .models import BoundEntry, DetectorChoice, DetectorParameters, ZeroDensityTable


def _check(sigma: float, Q: float, T: float) -> None:
    if not (0.5 < sigma < 1):
        raise DomainError(f"σ 必须在 (1/2, 1) 内，得到 {sigma}", parameter="sigma", value=sigma)
    if Q < 2 or T < 2:
        raise DomainError(f"需要 Q, T ≥ 2，得到 Q={Q}, T={T}", parameter="Q", value=(Q, T))


def choice_v(sigma: float, Q: float, T: float) -> float:
    """V = Q^{(4σ-3)/2} T^{(3σ-2)/2}"""
    return Q ** ((4 * sigma - 3) / 2) * T ** ((3 * sigma - 2) / 2)


def zero_density_bounds(sigma: float, Q: float, T: float) -> ZeroDensityTable:
    """
    各族零点计数上界

    Args:
        sigma: σ ∈ (½, 1)
        Q: Q ≥ 2
        T: T ≥ 2

    Returns:
        ZeroDensityTable，每项带适用条件及其是否满足

    Raises:
        DomainError: 参数越界
    """
    _check(sigma, Q, T)
    s = sigma
    QT = Q * T
    second_t = T ** (4 * (1 - s) / (3 - 2 * s))
    q4t3 = (Q ** 4 * T ** 3) ** (1 - s)
    fourth_tail = QT ** (7 * (1 - s) / (2 * s))
    fifth_root = T >= Q ** 0.2

    entries: List[BoundEntry] = [
        BoundEntry(
            name="real_classical",
            value=QT ** ((7 - 6 * s) / (6 - 4 * s)),
            valid=True,
            condition="j = 2",
        ),
        BoundEntry(
            name="real_fourth_moment",
            value=min((Q ** 3 * T ** 4) ** ((1 - s) / (2 - s)), QT ** (3 * (1 - s) / s)),
            valid=True,
            condition="j = 2",
        ),
        BoundEntry(
            name="real_second_moment",
            value=min(QT ** (4 * (1 - s) / (3 - 2 * s)), q4t3),
            valid=True,
            condition="j = 2",
        ),
        BoundEntry(
            name="cubic_fourth_moment",
            value=min(Q ** ((125 - 108 * s) / (90 - 72 * s)) * T ** ((49 - 44 * s) / (22 - 8 * s)), fourth_tail),
            valid=T >= Q ** (2 / 3),
            condition="j = 3, T ≥ Q^(2/3)",
        ),
        BoundEntry(
            name="quartic_fourth_moment",
            value=min(Q ** ((41 - 36 * s) / (30 - 24 * s)) * T ** ((49 - 44 * s) / (22 - 8 * s)), fourth_tail),
            valid=T >= Q ** 0.5,
            condition="j = 4, T ≥ Q^(1/2)",
        ),
        BoundEntry(
            name="cubic_second_moment",
            value=min(
                Q ** ((16 - 10 * s) / 9) * second_t,
                Q ** (16 * (1 - s) / (9 - 6 * s)) * second_t,
                q4t3,
            ),
            valid=fifth_root,
            condition="j = 3 或 6, T ≥ Q^(1/5)",
        ),
        BoundEntry(
            name="quartic_second_moment",
            value=min(
                Q ** ((5 - 3 * s) / 3) * second_t,
                Q ** (5 * (1 - s) / (3 - 2 * s)) * second_t,
                q4t3,
            ),
            valid=fifth_root,
            condition="j = 4, T ≥ Q^(1/5)",
        ),
        BoundEntry(
            name="density_conjecture",
            value=QT ** (2 * (1 - s)),
            valid=True,
            condition="猜想",
        ),
    ]
    return ZeroDensityTable(
        sigma=sigma,
        Q=Q,
        T=T,
        entries=entries,
        metadata={"V": choice_v(sigma, Q, T)},
    )


def zero_count_bound(j: int, sigma: float, Q: float, T: float, X: float, Y: float) -> float:
    """(QT)^{1/2} Y^{1/2-σ} Δ_j(Q,T,X)^{1/2} + Δ_j(Q,T,X) X^{1-2σ} + Δ_j(Q,T,Y) Y^{1-2σ}"""
    dx = delta_bound(j, Q, T, X)
    dy = delta_bound(j, Q, T, Y)
    return math.sqrt(Q * T) * Y ** (0.5 - sigma) * math.sqrt(dx) + dx * X ** (1 - 2 * sigma) + dy * Y ** (1 - 2 * sigma)


def large_x_threshold(sigma: float, Q: float, T: float, C1: Optional[float] = None) -> float:
    """X^{2σ-1} = C₁ Q T^{1/2}"""
    C1 = C1 if C1 is not None else get_config_float("zeros.C1", 1.0)
    _check(sigma, Q, T)
    return (C1 * Q * math.sqrt(T)) ** (1 / (2 * sigma - 1))


def large_y_threshold(
    sigma: float, Q: float, T: float, C2: Optional[float] = None, V: Optional[float] = None,
) -> float:
    """Y^{2σ-1} = C₂ V² Q T^{1/2}，V 默认取 choice_v"""
    C2 = C2 if C2 is not None else get_config_float("zeros.C2", 1.0)
    _check(sigma, Q, T)
    V = V if V is not None else choice_v(sigma, Q, T)
    return (C2 * V ** 2 * Q * math.sqrt(T)) ** (1 / (2 * sigma - 1))


def _choices(j: int, sigma: float, Q: float, T: float) -> Dict[str, tuple]:
    ty = T ** (2 / (3 - 2 * sigma))
    if j == 2:
        return {"first": (Q * T, (Q * T) ** (2 / (3 - 2 * sigma)))}
    if j in (3, 6):
        return {
            "first": (Q ** (5 / 9) * T, Q ** (5 / 9) * ty),
            "second": (Q ** (5 / 3) * T, Q ** (8 / (9 - 6 * sigma)) * ty),
        }
    if j == 4:
        return {
            "first": (Q ** 0.5 * T, Q ** 0.5 * ty),
            "second": (Q ** 1.5 * T, Q ** (5 / (6 - 4 * sigma)) * ty),
        }
    raise DomainError(f"检测器参数只对 j ∈ (2, 3, 4, 6) 有定义，得到 {j}", parameter="j", value=j)


def detector_parameters(j: int, sigma: float, Q: float, T: float) -> DetectorParameters:
    """
    每个族的 (X, Y) 取法、对应计数上界，以及大 X、大 Y 阈值

    X ≤ Y 仅在第二项小于第一项时成立，结果如实报告
    """
    _check(sigma, Q, T)
    K = get_config_float("zeros.K", 2.0)
    cap = (Q * T) ** K
    choices = [
        DetectorChoice(
            term=term,
            X=X,
            Y=Y,
            count_bound=zero_count_bound(j, sigma, Q, T, X, Y),
            x_le_y=X <= Y,
            within_cap=Y <= cap,
        )
        for term, (X, Y) in _choices(j, sigma, Q, T).items()
    ]
    return DetectorParameters(
        j=j,
        sigma=sigma,
        Q=Q,
        T=T,
        choices=choices,
        large_x=large_x_threshold(sigma, Q, T),
        large_y=large_y_threshold(sigma, Q, T),
        V=choice_v(sigma, Q, T),
        C1=get_config_float("zeros.C1", 1.0),
        C2=get_config_float("zeros.C2", 1.0),
        K=K,
    )
