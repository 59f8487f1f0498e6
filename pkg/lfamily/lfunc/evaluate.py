"""
Dirichlet L 函数求值

两条独立路径：
- Hurwitz 预言机（可信路径）：L(s,χ) = q^{-s} Σ_{gcd(a,q)=1} χ(a) ζ(s, a/q)
- 近似函数方程（mpmath 不完全 Γ 函数，快速路径）

两者必须互相校验；另提供导数、完备化 Λ、Euler 乘积等检查工具
"""

import cmath
import math
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import mpmath
import numpy as np
from loguru import logger as loguru_logger
from scipy.special import digamma, loggamma

from ..arith import prime_sieve
from ..characters import DirichletCharacter, character_table, conjugate, is_principal, root_number
from ..characters.character import character_phases, phase_table
from ..core.config import get_config_float, get_config_int
from ..exceptions import AccuracyError, DomainError, PoleError
from .hurwitz import check_point, hurwitz_batch
from .types import EvalMethod, EvalResult, PointLike, as_complex

logger = loguru_logger.bind(name="lfunc")

_EPS = np.finfo(float).eps


def _unit_residues(chi: DirichletCharacter) -> Tuple[np.ndarray, np.ndarray]:
    """a = 1..q 中 χ(a) ≠ 0 的 a 及 χ(a)"""
    q = chi.modulus
    a = np.arange(1, q + 1, dtype=np.int64)
    values = character_table(chi)[a % q]
    keep = values != 0
    return a[keep], values[keep]


def _row_fsum(matrix: np.ndarray) -> np.ndarray:
    """逐行补偿求和（固定顺序）"""
    return np.array(
        [complex(math.fsum(row.real), math.fsum(row.imag)) for row in matrix],
        dtype=np.complex128,
    )


def _l_at_one(chi: DirichletCharacter, derivative: bool) -> Tuple[complex, float]:
    """
    非主特征在 s = 1 处的极限值

    L(1,χ) = −q^{-1} Σ χ(a) ψ(a/q)
    L'(1,χ) = q^{-1} Σ χ(a) (log q · ψ(a/q) − γ₁(a/q))，γ₁ 为广义 Stieltjes 常数
    """
    q = chi.modulus
    a, chi_a = _unit_residues(chi)
    psi = digamma(a / q)
    terms = chi_a * psi
    if not derivative:
        value = -complex(math.fsum(terms.real), math.fsum(terms.imag)) / q
        return value, 8 * _EPS * float(np.abs(psi).sum()) / q
    gamma1 = np.array([float(mpmath.stieltjes(1, mpmath.mpf(int(n)) / q)) for n in a])
    terms = chi_a * (math.log(q) * psi - gamma1)
    value = complex(math.fsum(terms.real), math.fsum(terms.imag)) / q
    return value, 8 * _EPS * float((math.log(q) * np.abs(psi) + np.abs(gamma1)).sum()) / q


def _l_batch(
    chi: DirichletCharacter,
    s: Sequence[complex],
    tol: Optional[float],
    derivative: bool,
    t_cap: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """批量 Hurwitz 预言机求值，返回 (values, error_bounds, terms_used)"""
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    t_cap = t_cap if t_cap is not None else get_config_float("lfunc.t_cap", 200.0)
    if np.any(np.abs(s_arr.imag) > t_cap):
        bad = float(s_arr.imag[np.argmax(np.abs(s_arr.imag))])
        raise DomainError(f"|t| = {abs(bad)} 超出上限 {t_cap}", parameter="t", value=bad, details={"t_cap": t_cap})
    at_one = s_arr == 1
    if np.any(at_one) and is_principal(chi):
        raise PoleError()
    q = chi.modulus
    a, chi_a = _unit_residues(chi)
    values = np.empty(len(s_arr), dtype=np.complex128)
    bounds = np.empty(len(s_arr), dtype=np.float64)
    terms = np.full(len(s_arr), len(a), dtype=np.int64)
    if np.any(at_one):
        limit, limit_bound = _l_at_one(chi, derivative)
        values[at_one] = limit
        bounds[at_one] = limit_bound

    regular = ~at_one
    rest = s_arr[regular]
    if len(rest) == 0:
        return values, bounds, terms
    zeta, zeta_bound, nodes = hurwitz_batch(rest, a / q, tol)
    scale = np.exp(-rest * math.log(q))
    base = _row_fsum(zeta * chi_a[None, :])
    bound = np.abs(scale) * zeta_bound.sum(axis=1)
    terms[regular] = nodes * len(a)
    if not derivative:
        values[regular] = scale * base
        bounds[regular] = bound
        return values, bounds, terms
    dzeta, dzeta_bound, _ = hurwitz_batch(rest, a / q, tol, derivative=True)
    dbase = _row_fsum(dzeta * chi_a[None, :])
    values[regular] = scale * (dbase - math.log(q) * base)
    bounds[regular] = np.abs(scale) * (dzeta_bound.sum(axis=1) + math.log(q) * zeta_bound.sum(axis=1))
    return values, bounds, terms


def l_values_batch(
    chi: DirichletCharacter,
    s: Sequence[complex],
    tol: Optional[float] = None,
    derivative: bool = False,
    t_cap: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    批量 Hurwitz 预言机求值，所有网格消费者共用

    点按 lfunc.batch_size 分块求值；每个点的结果与分块方式无关

    Args:
        chi: 特征
        s: 复数点数组
        tol: 每个 Hurwitz 项的容差
        derivative: True 时返回 L'(s,χ)
        t_cap: |t| 上限，None 时读取 lfunc.t_cap

    Returns:
        (values, error_bounds)
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    size = max(1, get_config_int("lfunc.batch_size", 256))
    if len(s_arr) <= size:
        values, bounds, _ = _l_batch(chi, s_arr, tol, derivative, t_cap)
        return values, bounds
    chunks = [_l_batch(chi, s_arr[i:i + size], tol, derivative, t_cap) for i in range(0, len(s_arr), size)]
    return np.concatenate([c[0] for c in chunks]), np.concatenate([c[1] for c in chunks])


def l_value_oracle(s: PointLike, chi: DirichletCharacter, tol: Optional[float] = None) -> EvalResult:
    """
    Hurwitz 预言机求 L(s,χ)；非主特征在 s = 1 处取极限值

    Raises:
        PoleError: 主特征在 s = 1
        DomainError: |t| 超出上限
        AccuracyError: 达不到容差
    """
    sc = as_complex(s)
    check_point(sc, principal=is_principal(chi))
    values, bounds, nodes = _l_batch(chi, [sc], tol, False)
    return EvalResult(
        value=complex(values[0]),
        abs_error_bound=float(bounds[0]),
        terms_used=int(nodes[0]),
        method=EvalMethod.HURWITZ_ORACLE,
    )


def l_derivative(s: PointLike, chi: DirichletCharacter, tol: Optional[float] = None) -> EvalResult:
    """L'(s,χ)，逐项微分的 Hurwitz 级数（权重 -log(n+a)）"""
    sc = as_complex(s)
    check_point(sc, principal=is_principal(chi))
    values, bounds, nodes = _l_batch(chi, [sc], tol, True)
    return EvalResult(
        value=complex(values[0]),
        abs_error_bound=float(bounds[0]),
        terms_used=int(nodes[0]),
        method=EvalMethod.HURWITZ_ORACLE,
    )


def l_derivative_fd(s: PointLike, chi: DirichletCharacter, step: Optional[float] = None) -> EvalResult:
    """L'(s,χ) 的中心差分，步长默认 lfunc.fd_step"""
    sc = as_complex(s)
    h = step if step is not None else get_config_float("lfunc.fd_step", 1e-4)
    values, bounds = l_values_batch(chi, [sc - h, sc + h])
    return EvalResult(
        value=complex((values[1] - values[0]) / (2 * h)),
        abs_error_bound=float((bounds[0] + bounds[1]) / (2 * h)),
        terms_used=2,
        method=EvalMethod.FINITE_DIFFERENCE,
    )


def l_derivative_crosscheck(s: PointLike, chi: DirichletCharacter) -> Tuple[EvalResult, EvalResult]:
    """返回 (逐项微分, 中心差分) 两条导数路径"""
    return l_derivative(s, chi), l_derivative_fd(s, chi)


def gamma_factor(s: np.ndarray, chi: DirichletCharacter) -> np.ndarray:
    """(q/π)^{(s+κ)/2} Γ((s+κ)/2)"""
    z = (np.asarray(s, dtype=np.complex128) + chi.parity) / 2
    return np.exp(z * math.log(chi.modulus / math.pi) + loggamma(z))


def completed_l(s: PointLike, chi: DirichletCharacter) -> EvalResult:
    """Λ(s,χ) = (q/π)^{(s+κ)/2} Γ((s+κ)/2) L(s,χ)"""
    sc = as_complex(s)
    lval = l_value_oracle(sc, chi)
    factor = complex(gamma_factor(np.array([sc]), chi)[0])
    return EvalResult(
        value=factor * lval.value,
        abs_error_bound=abs(factor) * lval.abs_error_bound,
        terms_used=lval.terms_used,
        method=lval.method,
    )


def functional_equation_residual(s: PointLike, chi: DirichletCharacter) -> float:
    """|Λ(s,χ) − ε(χ)Λ(1−s,χ̄)| / |Λ(s,χ)|"""
    sc = as_complex(s)
    lhs = completed_l(sc, chi).value
    rhs = root_number(chi) * completed_l(1 - sc, conjugate(chi)).value
    return abs(lhs - rhs) / abs(lhs)


def euler_product(s: PointLike, chi: DirichletCharacter, pmax: int = 100_000) -> complex:
    """Π_{p ≤ pmax} (1 − χ(p) p^{-s})^{-1}，以对数和的补偿求和计算"""
    sc = as_complex(s)
    primes = prime_sieve(pmax)
    chi_p = character_table(chi)[primes % chi.modulus]
    logs = -np.log1p(-chi_p * np.exp(-sc * np.log(primes.astype(np.float64))))
    return cmath.exp(complex(math.fsum(logs.real), math.fsum(logs.imag)))


# ---------------------------------------------------------------------------
# 近似函数方程
#
# L(s,χ) = Γ(z)^{-1} [ Σ χ(n) n^{-s} Γ(z, πn²/q)
#                      + ε (q/π)^{1/2-s} Σ χ̄(n) n^{s-1} Γ(z', πn²/q) ]
# z = (s+κ)/2, z' = (1-s+κ)/2
# ---------------------------------------------------------------------------

def afe_working_dps(t: float) -> int:
    """抵消 Γ 因子 e^{-π|t|/4} 的工作精度"""
    return 20 + math.ceil(math.pi * abs(t) / (4 * math.log(10)))


def afe_terms(q: int, t: float, tol: float) -> int:
    return math.ceil(math.sqrt(q * (math.log(1 / tol) + math.pi * abs(t) / 4 + 10) / math.pi)) + 1


@lru_cache(maxsize=2048)
def _incomplete_gammas(q: int, kappa: int, s_re: float, s_im: float, n_max: int, dps: int) -> Tuple[tuple, tuple]:
    """Γ(z, πn²/q) 与 Γ(z', πn²/q)，n = 1..n_max+1，同一 (q, κ, s) 的所有特征共用"""
    with mpmath.workdps(dps):
        s = mpmath.mpc(s_re, s_im)
        z = (s + kappa) / 2
        zp = (1 - s + kappa) / 2
        x = [mpmath.pi * n * n / q for n in range(1, n_max + 2)]
        g1 = tuple(mpmath.gammainc(z, xn) for xn in x)
        g2 = tuple(mpmath.gammainc(zp, xn) for xn in x)
    return g1, g2


@lru_cache(maxsize=4096)
def _mp_root_number(q: int, exponents: tuple, kappa: int, dps: int):
    m, phases = phase_table(q, exponents)
    with mpmath.workdps(dps):
        tau = mpmath.mpc(0)
        for a in range(1, q):
            if phases[a] >= 0:
                tau += mpmath.expjpi(mpmath.mpf(2 * int(phases[a])) / m + mpmath.mpf(2 * a) / q)
        return tau / (mpmath.mpc(0, 1) ** kappa * mpmath.sqrt(q))


def l_value_afe(s: PointLike, chi: DirichletCharacter, tol: float = 1e-10) -> EvalResult:
    """
    近似函数方程求 L(s,χ)

    Args:
        s: 临界带内的点，0 ≤ σ ≤ 1
        chi: 本原非主特征
        tol: 截断容差

    Raises:
        DomainError: χ 非本原，s 不在临界带，或 q(|t|+1) 超出 lfunc.afe_cap
        AccuracyError: 截断误差估计超过容差
    """
    sc = as_complex(s)
    q = chi.modulus
    if not chi.primitive or q == 1:
        raise DomainError(f"近似函数方程需要本原非主特征，得到 {chi.label}", parameter="chi", value=chi.label)
    if not (0.0 <= sc.real <= 1.0):
        raise DomainError(f"近似函数方程只在临界带内使用，σ = {sc.real}", parameter="sigma", value=sc.real)
    cap = get_config_float("lfunc.afe_cap", 1e5)
    if q * (abs(sc.imag) + 1) > cap:
        raise DomainError(
            f"q(|t|+1) = {q * (abs(sc.imag) + 1):g} 超出 afe_cap {cap:g}",
            parameter="t",
            value=sc.imag,
            details={"afe_cap": cap},
        )

    dps = afe_working_dps(sc.imag)
    n_max = afe_terms(q, sc.imag, tol)
    kappa = chi.parity
    g1, g2 = _incomplete_gammas(q, kappa, sc.real, sc.imag, n_max, dps)
    m, phases = character_phases(chi)
    eps = _mp_root_number(q, chi.exponents, kappa, dps)

    with mpmath.workdps(dps):
        s_mp = mpmath.mpc(sc.real, sc.imag)
        z = (s_mp + kappa) / 2
        first = mpmath.mpc(0)
        second = mpmath.mpc(0)
        for n in range(1, n_max + 1):
            ph = int(phases[n % q])
            if ph < 0:
                continue
            chi_n = mpmath.expjpi(mpmath.mpf(2 * ph) / m)
            n_mp = mpmath.mpf(n)
            first += chi_n * n_mp ** (-s_mp) * g1[n - 1]
            second += mpmath.conj(chi_n) * n_mp ** (s_mp - 1) * g2[n - 1]
        n_mp = mpmath.mpf(n_max + 1)
        tail1 = abs(n_mp ** (-s_mp) * g1[n_max])
        tail2 = abs(n_mp ** (s_mp - 1) * g2[n_max])
        reflect = eps * (mpmath.mpf(q) / mpmath.pi) ** (mpmath.mpf(1) / 2 - s_mp)
        gamma_z = mpmath.gamma(z)
        value = (first + reflect * second) / gamma_z
        # 尾项按首个被截去项的两倍估计
        bound = float(2 * (tail1 + abs(reflect) * tail2) / abs(gamma_z))
        result = complex(value)

    if bound > tol:
        raise AccuracyError(f"近似函数方程截断误差 {bound:.3g} 超过容差 {tol:g}", partial=abs(result))
    return EvalResult(
        value=result,
        abs_error_bound=bound + 1e-15 * max(1.0, abs(result)),
        terms_used=2 * n_max,
        method=EvalMethod.SMOOTHED_AFE,
    )
