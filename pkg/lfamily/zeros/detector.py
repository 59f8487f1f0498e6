"""
零点检测器

在临界线零点 ρ = ½ + iγ 处计算磨光恒等式

    Σ_n 𝔪_{X,n} χ(n) n^{-s} e^{-n/Y} = (2πi)^{-1} ∫_{(2)} 𝔐_X(s+w,χ) Γ(w) Y^w dw

的两侧，以及 R₁（长 Dirichlet 多项式尾部）与 R₂（Γ 加权积分）两个分量
"""

import math
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger as loguru_logger
from scipy.special import loggamma

from ..characters import DirichletCharacter
from ..core.config import get_config_float
from ..exceptions import DomainError
from ..lfunc import dirichlet_polynomial_batch, integrate_panels, mollified_l_batch, mollifier_coefficients
from ..lfunc.series import MOLLIFIER_NMAX_CAP, gamma_truncation
from .models import CriticalZero, DetectorClass, DetectorReport

logger = loguru_logger.bind(name="detector")

THRESHOLD = 1 / 6
# e^{-40} 以下的项忽略
SMOOTHING_CUTOFF = 40.0
MAX_SCAN_STEP = 0.05


def _direct_sums(chi: DirichletCharacter, rho: complex, X: float, Y: float):
    """(Σ_{n≥1}, Σ_{X<n≤Y²})，系数 𝔪_{X,n} e^{-n/Y}"""
    nmax = int(max(math.floor(Y * Y), math.ceil(SMOOTHING_CUTOFF * Y)))
    m = mollifier_coefficients(X, nmax)
    n, a = m.support()
    weights = a.astype(np.complex128) * np.exp(-n / Y)
    full = dirichlet_polynomial_batch(n, weights, [rho], chi)[0]
    window = (n > X) & (n <= Y * Y)
    r1 = dirichlet_polynomial_batch(n[window], weights[window], [rho], chi)[0]
    return complex(full), complex(r1)


def _shifted_integral(chi: DirichletCharacter, rho: complex, X: float, Y: float) -> complex:
    """(2πi)^{-1} ∫_{(-c)} 𝔐_X(ρ+w,χ) Γ(w) Y^w dw，c = zeros.contour_shift"""
    c = get_config_float("zeros.contour_shift", 0.25)
    cutoff = get_config_float("lfunc.gamma_cutoff", 1e-16)
    v_max = gamma_truncation(-c, Y ** (-c) * X, cutoff)
    log_y = math.log(Y)

    def integrand(v: np.ndarray) -> np.ndarray:
        w = -c + 1j * v
        return mollified_l_batch(chi, X, rho + w) * np.exp(loggamma(w) + w * log_y)

    quad = integrate_panels(integrand, -v_max, v_max, 0.5, rel_tol=1e-12, abs_tol=1e-13, breakpoints=[0.0])
    return quad.value / (2 * math.pi)


def _r2_integral(chi: DirichletCharacter, rho: complex, X: float, Y: float, U: float, tol: float) -> complex:
    """(2π)^{-1} ∫_{-U}^{U} (𝔐_X(ρ+iu) − 𝔐_X(ρ)) Γ(iu) Y^{iu} du，u = 0 处的奇点已消去"""
    at_rho = mollified_l_batch(chi, X, [rho])[0]
    log_y = math.log(Y)

    def integrand(u: np.ndarray) -> np.ndarray:
        w = 1j * u
        return (mollified_l_batch(chi, X, rho + w) - at_rho) * np.exp(loggamma(w) + w * log_y)

    quad = integrate_panels(integrand, -U, U, 0.25, rel_tol=tol, abs_tol=1e-13, breakpoints=[0.0])
    return quad.value / (2 * math.pi)


def classify(r1: float, r2: float) -> DetectorClass:
    big1, big2 = r1 >= THRESHOLD, r2 >= THRESHOLD
    if big1 and big2:
        return DetectorClass.BOTH
    if big1:
        return DetectorClass.R1
    if big2:
        return DetectorClass.R2
    return DetectorClass.NEITHER


def detector_check(
    chi: DirichletCharacter,
    zero: CriticalZero,
    X: float,
    Y: float,
    C: Optional[float] = None,
    Q: Optional[float] = None,
    T: Optional[float] = None,
    tol: float = 1e-10,
) -> DetectorReport:
    """
    在零点（或任意临界线上的点）处计算检测器

    Args:
        chi: 本原特征
        zero: 零点 ½ + iγ（β 取 ½）
        X: 磨光长度，2 ≤ X ≤ Y²
        Y: 平滑参数
        C: 积分半宽 C log QT 中的常数，默认 zeros.detector_C
        Q: 默认取 χ 的导子
        T: 默认取 max(2, |γ|+1)
        tol: R₂ 积分的相对容差

    Returns:
        DetectorReport；identity_residual 等于 |𝔐_X(ρ)|（恒等式成立时），零点处应接近 0

    Raises:
        DomainError: 参数越界
        AccuracyError: Γ 加权积分失败
    """
    if not (2 <= X <= Y * Y <= MOLLIFIER_NMAX_CAP):
        raise DomainError(f"需要 2 ≤ X ≤ Y² ≤ {MOLLIFIER_NMAX_CAP}，得到 X={X}, Y={Y}", parameter="X", value=(X, Y))
    if not chi.primitive:
        raise DomainError(f"{chi.label} 不是本原特征", parameter="chi", value=chi.label)
    C = C if C is not None else get_config_float("zeros.detector_C", 1.0)
    Q = Q if Q is not None else float(chi.conductor)
    T = T if T is not None else max(2.0, abs(zero.gamma) + 1)
    U = C * math.log(max(Q * T, math.e))
    rho = complex(0.5, zero.gamma)

    full, r1_sum = _direct_sums(chi, rho, X, Y)
    shifted = _shifted_integral(chi, rho, X, Y)
    residual = abs(full - shifted)
    r1 = abs(r1_sum)
    r2 = abs(_r2_integral(chi, rho, X, Y, U, tol))

    count = int(math.ceil(2 * U / MAX_SCAN_STEP)) + 1
    ts = zero.gamma + np.linspace(-U, U, count)
    mags = np.abs(mollified_l_batch(chi, X, 0.5 + 1j * ts))
    peak = int(np.argmax(mags))

    cls = classify(r1, r2)
    logger.info(
        f"{chi.label} γ={zero.gamma:.6f}: r1={r1:.4g} r2={r2:.4g} 残差={residual:.2e} → {cls.value}"
    )
    return DetectorReport(
        zero=zero,
        X=X,
        Y=Y,
        C=C,
        Q=Q,
        T=T,
        r1_value=r1,
        r2_value=r2,
        identity_residual=residual,
        classification=cls,
        t_max=float(ts[peak]),
        mollified_max=float(mags[peak]),
    )


def spaced_zero_subset(
    zeros: Sequence[CriticalZero], Q: float, T: float, C: Optional[float] = None,
) -> List[CriticalZero]:
    """按 γ 升序贪心选取，相邻间距 ≥ 3C log QT"""
    C = C if C is not None else get_config_float("zeros.detector_C", 1.0)
    gap = 3 * C * math.log(Q * T)
    chosen: List[CriticalZero] = []
    for z in sorted(zeros, key=lambda z: z.gamma):
        if not chosen or z.gamma - chosen[-1].gamma >= gap:
            chosen.append(z)
    return chosen
