"""
Dirichlet 多项式、磨光子与 Mellin 变换对象
"""

import math
from typing import Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger as loguru_logger
from pydantic import BaseModel, Field
from scipy.special import loggamma

from ..arith import moebius_table, tau_k_table
from ..characters import DirichletCharacter, char_values, is_principal
from ..core.config import get_config_float
from ..exceptions import DomainError
from .evaluate import l_values_batch
from .quadrature import integrate_panels
from .types import MollifierCoefficients, PointLike, as_complex

logger = loguru_logger.bind(name="series")

MOLLIFIER_NMAX_CAP = 10_000_000

Coefficients = Union[Mapping[int, complex], Sequence[complex], np.ndarray]


def coefficient_arrays(coeffs: Coefficients) -> Tuple[np.ndarray, np.ndarray]:
    """
    规范化系数为 (n, a_n)，按 n 升序

    列表/数组按下标 n 解释（下标 0 忽略），映射按键解释
    """
    if isinstance(coeffs, Mapping):
        items = sorted((int(n), complex(a)) for n, a in coeffs.items() if int(n) >= 1)
        n = np.array([i for i, _ in items], dtype=np.int64)
        a = np.array([v for _, v in items], dtype=np.complex128)
    else:
        arr = np.asarray(coeffs, dtype=np.complex128)
        n = np.arange(1, len(arr), dtype=np.int64)
        a = arr[1:]
    keep = a != 0
    return n[keep], a[keep]


def dirichlet_polynomial_batch(
    n: np.ndarray,
    a: np.ndarray,
    s: Sequence[complex],
    chi: Optional[DirichletCharacter] = None,
) -> np.ndarray:
    """
    Σ_n a_n χ(n) n^{-s}，对每个 s 按 n 升序做补偿求和

    Args:
        n: 升序下标
        a: 系数
        s: 求值点数组
        chi: 特征，None 时取 1
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    if len(n) == 0:
        return np.zeros(len(s_arr), dtype=np.complex128)
    weights = a * (char_values(chi, n) if chi is not None else 1.0)
    log_n = np.log(n.astype(np.float64))
    out = np.empty(len(s_arr), dtype=np.complex128)
    for i, si in enumerate(s_arr):
        terms = weights * np.exp(-si * log_n)
        out[i] = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return out


def dirichlet_polynomial(coeffs: Coefficients, s: PointLike, chi: Optional[DirichletCharacter] = None) -> complex:
    """Σ_n a_n χ(n) n^{-s}（χ 省略时因子为 1）"""
    n, a = coefficient_arrays(coeffs)
    return complex(dirichlet_polynomial_batch(n, a, [as_complex(s)], chi)[0])


def mollifier_coefficients(X: float, nmax: int) -> MollifierCoefficients:
    """
    𝔪_{X,n} = Σ_{d|n, d≤X} μ(d)

    Raises:
        DomainError: 不满足 2 ≤ X ≤ nmax，或 nmax 超出因子表上限
    """
    if not (2 <= X <= nmax):
        raise DomainError(f"需要 2 ≤ X ≤ nmax，得到 X={X}, nmax={nmax}", parameter="X", value=X)
    if nmax > MOLLIFIER_NMAX_CAP:
        raise DomainError(f"nmax = {nmax} 超出上限 {MOLLIFIER_NMAX_CAP}", parameter="nmax", value=nmax)
    x_int = math.floor(X)
    mu = moebius_table(x_int)
    coefficients = np.zeros(nmax + 1, dtype=np.int64)
    for d in np.nonzero(mu)[0]:
        coefficients[d::d] += int(mu[d])
    coefficients[0] = 0
    return MollifierCoefficients(X=X, nmax=nmax, coefficients=coefficients)


def mollifier_batch(chi: DirichletCharacter, X: float, s: Sequence[complex]) -> np.ndarray:
    """M_X(s,χ) = Σ_{n≤X} μ(n)χ(n)n^{-s}"""
    mu = moebius_table(math.floor(X))
    n = np.nonzero(mu)[0].astype(np.int64)
    return dirichlet_polynomial_batch(n, mu[n].astype(np.complex128), s, chi)


def mollified_l_batch(chi: DirichletCharacter, X: float, s: Sequence[complex]) -> np.ndarray:
    """𝔐_X(s,χ) = M_X(s,χ)·L(s,χ)"""
    values, _ = l_values_batch(chi, s)
    return mollifier_batch(chi, X, s) * values


def mollified_l(s: PointLike, chi: DirichletCharacter, X: float) -> complex:
    return complex(mollified_l_batch(chi, X, [as_complex(s)])[0])


def smoothed_sum_length(k: int, U: float, threshold: float = 1e-14) -> int:
    """最小的 n 使 e^{-n/U}(2√n)^{k-1} < threshold（τ_k(n) ≤ (2√n)^{k-1}）"""
    n = U * math.log(1 / threshold)
    for _ in range(50):
        n_next = U * (math.log(1 / threshold) + (k - 1) * math.log(2 * math.sqrt(max(n, 1.0))))
        if abs(n_next - n) < 0.5:
            n = n_next
            break
        n = n_next
    return max(2, math.ceil(n) + 1)


def smoothed_power_sum(chi: DirichletCharacter, s: PointLike, k: int, U: float) -> complex:
    """
    Σ_n τ_k(n) χ(n) n^{-s} e^{-n/U}

    Raises:
        DomainError: k < 1 或 U 不在 [2, 10^5]
    """
    if k < 1:
        raise DomainError(f"k 必须 ≥ 1，得到 {k}", parameter="k", value=k)
    if not (2 <= U <= 1e5):
        raise DomainError(f"U 必须在 [2, 1e5] 内，得到 {U}", parameter="U", value=U)
    n_max = smoothed_sum_length(k, U)
    tau = tau_k_table(n_max, k)
    n = np.arange(1, n_max + 1, dtype=np.int64)
    coeffs = tau[1:] * np.exp(-n / U)
    return complex(dirichlet_polynomial_batch(n, coeffs.astype(np.complex128), [as_complex(s)], chi)[0])


class MellinIdentity(BaseModel):
    """L(s)^k 与平滑幂和通过移位围道积分的恒等式的各项"""

    power_value: complex = Field(description="L(s,χ)^k")
    smoothed_sum: complex = Field(description="Σ τ_k χ(n) n^{-s} e^{-n/U}")
    contour_integral: complex = Field(description="(2πi)^{-1}∫ L(w)^k Γ(w-s) U^{w-s} dw")
    residual: float = Field(ge=0.0, description="|L^k − Σ + ∫|")
    quadrature_error: float = Field(ge=0.0, description="围道积分误差估计")


def gamma_truncation(c: float, scale: float, cutoff: float) -> float:
    """|Γ(c+iy)|·scale < cutoff 的最小 |y|"""
    y = 1.0
    while y < 1000 and math.exp(loggamma(complex(c, y)).real) * scale >= cutoff:
        y += 1.0
    return y


def mellin_identity(
    chi: DirichletCharacter,
    s: PointLike,
    k: int,
    U: float,
    c_offset: float = -0.25,
) -> MellinIdentity:
    """
    在 Re w = σ + c_offset 上计算移位围道积分，与 L(s)^k 和平滑幂和比较

    Raises:
        DomainError: χ 主特征或非本原，c_offset 不在 (-1, 0)
    """
    if is_principal(chi) or not chi.primitive:
        raise DomainError(f"Mellin 恒等式需要本原非主特征，得到 {chi.label}", parameter="chi", value=chi.label)
    if not (-1.0 < c_offset < 0.0):
        raise DomainError(f"c_offset 必须在 (-1, 0) 内以避开 Γ 的极点，得到 {c_offset}", parameter="c_offset", value=c_offset)
    sc = as_complex(s)
    cutoff = get_config_float("lfunc.gamma_cutoff", 1e-16)
    y_max = gamma_truncation(c_offset, U ** c_offset, cutoff)

    def integrand(y: np.ndarray) -> np.ndarray:
        w = c_offset + 1j * y
        values, _ = l_values_batch(chi, sc + w)
        return values ** k * np.exp(loggamma(w) + w * math.log(U))

    quad = integrate_panels(integrand, -y_max, y_max, 0.5, rel_tol=1e-12, abs_tol=1e-13, breakpoints=[0.0])
    integral = quad.value / (2 * math.pi)
    power_value = complex(l_values_batch(chi, [sc])[0][0]) ** k
    smoothed = smoothed_power_sum(chi, sc, k, U)
    residual = abs(power_value - smoothed + integral)
    logger.debug(f"Mellin 恒等式 {chi.label} s={sc} k={k} U={U}: 残差 {residual:.3g}")
    return MellinIdentity(
        power_value=power_value,
        smoothed_sum=smoothed,
        contour_integral=integral,
        residual=residual,
        quadrature_error=quad.error / (2 * math.pi),
    )


def mellin_identity_residual(
    chi: DirichletCharacter,
    s: PointLike,
    k: int,
    U: float,
    c_offset: float = -0.25,
) -> float:
    """|L(s,χ)^k − Σ τ_k χ(n) n^{-s} e^{-n/U} + (2πi)^{-1}∫_{(σ+c)} L(w,χ)^k Γ(w−s) U^{w−s} dw|"""
    return mellin_identity(chi, s, k, U, c_offset).residual
