"""
Gallagher 型不等式的数值检验

    Σ_{t∈𝒯} N_δ(t)^{-1} |f(t)|² ≤ δ^{-1} ∫_{-T}^{T} |f|² + (∫|f|²)^{1/2} (∫|f'|²)^{1/2}

f 取临界线上的 L(½+it,χ)，或 Dirichlet 多项式 Σ a_n χ(n) n^{-it}。
该不等式没有隐含常数，结果直接断言
"""

import math
from typing import Mapping, Optional, Union

import numpy as np
from loguru import logger as loguru_logger

from ..characters import DirichletCharacter, char_values
from ..core.config import get_config_float
from ..exceptions import DomainError
from ..lfunc import coefficient_arrays, integrate_panels, l_values_batch
from ..moments.models import WellSpacedSet, check_wellspaced
from .large_sieve import kernel_matrix
from .models import CoefficientVector, GallagherReport

logger = loguru_logger.bind(name="sieve")

PolynomialCoefficients = Union[CoefficientVector, Mapping[int, complex]]


def neighbour_counts(points: np.ndarray, delta: float) -> np.ndarray:
    """N_δ(t) = #{t' ∈ 𝒯 : |t − t'| < δ}"""
    if len(points) == 0:
        return np.zeros(0, dtype=np.int64)
    return (np.abs(points[:, None] - points[None, :]) < delta).sum(axis=1)


def _polynomial_parts(coeffs: PolynomialCoefficients, chi: Optional[DirichletCharacter]):
    if isinstance(coeffs, CoefficientVector):
        n, a = coeffs.arrays()
    else:
        n, a = coefficient_arrays(coeffs)
    if chi is not None:
        a = a * char_values(chi, n)
    return n, a


def _polynomial_side(coeffs, chi, T: float, ts: np.ndarray):
    n, b = _polynomial_parts(coeffs, chi)
    logs = np.log(n.astype(np.float64))
    values = np.exp(-1j * np.outer(ts, logs)) @ b if len(ts) else np.zeros(0, dtype=np.complex128)
    kernel = kernel_matrix(n, T)
    db = b * (-1j * logs)
    integral = max(float(np.vdot(b, kernel @ b).real), 0.0)
    integral_d = max(float(np.vdot(db, kernel @ db).real), 0.0)
    return values, integral, integral_d


def _l_side(chi: DirichletCharacter, T: float, ts: np.ndarray, tol: float):
    values, _ = l_values_batch(chi, 0.5 + 1j * ts) if len(ts) else (np.zeros(0, dtype=np.complex128), None)
    width = min(0.25, math.pi / math.log(chi.modulus * (T + 3)))

    def f2(t: np.ndarray) -> np.ndarray:
        return np.abs(l_values_batch(chi, 0.5 + 1j * t)[0]) ** 2

    # d/dt L(½+it) = i L'(½+it)，模长相同
    def df2(t: np.ndarray) -> np.ndarray:
        return np.abs(l_values_batch(chi, 0.5 + 1j * t, derivative=True)[0]) ** 2

    integral = integrate_panels(f2, -T, T, width, rel_tol=tol, breakpoints=[0.0]).value.real
    integral_d = integrate_panels(df2, -T, T, width, rel_tol=tol, breakpoints=[0.0]).value.real
    return values, integral, integral_d


def gallagher_check(
    T: float,
    delta: float,
    points: WellSpacedSet,
    chi: Optional[DirichletCharacter] = None,
    coeffs: Optional[PolynomialCoefficients] = None,
    tol: float = 1e-9,
) -> GallagherReport:
    """
    检验 Gallagher 型不等式

    Args:
        T: 积分区间 [-T, T]
        delta: 间距 δ
        points: 点集 𝒯，须位于 [δ/2 − T, T − δ/2]
        chi: 特征；coeffs 为 None 时 f = L(½+it,χ)，否则作为多项式的扭曲（可省略）
        coeffs: Dirichlet 多项式系数
        tol: L 情形下两个积分的相对容差

    Returns:
        GallagherReport，holds = lhs ≤ rhs·(1 + sieve.slack)

    Raises:
        SpacingError: 点集不满足区间或间距约束
        DomainError: 未给出 f
    """
    check_wellspaced(list(points.points), delta, T)
    ts = points.as_array()

    if coeffs is not None:
        target = "dirichlet_poly"
        values, integral, integral_d = _polynomial_side(coeffs, chi, T, ts)
    elif chi is not None:
        target = "l_on_critical_line"
        values, integral, integral_d = _l_side(chi, T, ts, tol)
    else:
        raise DomainError("需要特征 χ 或多项式系数", parameter="f")

    counts = neighbour_counts(ts, delta)
    lhs = math.fsum((np.abs(values) ** 2 / counts).tolist())
    rhs = integral / delta + math.sqrt(integral * integral_d)
    slack = get_config_float("sieve.slack", 1e-6)
    holds = lhs <= rhs + slack * rhs
    if not holds:
        logger.warning(f"Gallagher 不等式不成立: lhs = {lhs:.10g} > rhs = {rhs:.10g}")
    logger.debug(f"Gallagher {target}: |𝒯|={len(ts)} lhs={lhs:.6g} rhs={rhs:.6g}")
    return GallagherReport(
        target=target,
        character=chi.label if chi is not None else None,
        T=T,
        delta=delta,
        points=len(ts),
        lhs=lhs,
        rhs=rhs,
        integral_f=integral,
        integral_df=integral_d,
        holds=holds,
    )
