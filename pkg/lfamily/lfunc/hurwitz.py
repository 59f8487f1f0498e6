"""
Hurwitz ζ 函数的 Euler-Maclaurin 求值

ζ(s,a) = Σ_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + ½(N+a)^{-s}
         + Σ_{k=1}^{M} B_{2k}/(2k)! · (s)_{2k-1} (N+a)^{-s-2k+1} + R

|R| 以第 M+1 个修正项乘 |s+2M+1|/(σ+2M+1) 估计。节点数 N₀ = max(2⌈|t|⌉, 30)，
未达到容差时翻倍，超出翻倍次数则抛出 AccuracyError
"""

import math
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from loguru import logger as loguru_logger
from scipy.special import bernoulli

from ..core.config import get_config_float, get_config_int
from ..exceptions import AccuracyError, DomainError, PoleError
from .types import EvalMethod, EvalResult, PointLike, as_complex

logger = loguru_logger.bind(name="lfunc")

_EPS = np.finfo(float).eps
_MAX_DOUBLINGS = 8
# 单个求值块的最大元素数 (点 × a × n)
_BLOCK_ELEMENTS = 1 << 21


@lru_cache(maxsize=8)
def _em_coefficients(m: int) -> np.ndarray:
    """B_{2k}/(2k)!，k = 1..m+1"""
    b = bernoulli(2 * m + 2)
    return np.array([b[2 * k] / math.factorial(2 * k) for k in range(1, m + 2)])


def initial_nodes(t: np.ndarray) -> np.ndarray:
    return np.maximum(2 * np.ceil(np.abs(t)), 30).astype(np.int64)


def check_point(s: complex, t_cap: Optional[float] = None, principal: bool = True) -> None:
    """
    检查 s 是否在求值区域内

    Args:
        s: 求值点
        t_cap: |t| 上限，None 时读取 lfunc.t_cap
        principal: 是否为主特征（含 ζ）；只有主特征在 s = 1 有极点

    Raises:
        PoleError: 主特征且 s = 1
        DomainError: |t| 超出上限
    """
    if principal and s == 1:
        raise PoleError()
    cap = t_cap if t_cap is not None else get_config_float("lfunc.t_cap", 200.0)
    if abs(s.imag) > cap:
        raise DomainError(f"|t| = {abs(s.imag)} 超出上限 {cap}", parameter="t", value=s.imag, details={"t_cap": cap})


def _em_block(
    s: np.ndarray,
    a: np.ndarray,
    n_nodes: int,
    derivative: bool,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    对固定节点数 N 计算 ζ(s,a) 或 ∂_s ζ(s,a)

    Args:
        s: 形状 (S,) 的复数点
        a: 形状 (A,) 的参数，a ∈ (0,1]
        n_nodes: 节点数 N
        derivative: 是否返回导数

    Returns:
        (values, truncation_bound, rounding_bound)，形状均为 (S, A)
    """
    m = get_config_int("lfunc.bernoulli_terms", 10)
    coeffs = _em_coefficients(m)
    sc = s[:, None]
    x = a[:, None] + np.arange(n_nodes, dtype=np.float64)[None, :]
    log_x = np.log(x)
    terms = np.exp(-s[:, None, None] * log_x[None, :, :])
    if derivative:
        terms = -log_x[None, :, :] * terms
    main = terms.sum(axis=2)
    rounding = 4.0 * _EPS * np.abs(terms).sum(axis=2)

    xn = (a + n_nodes)[None, :]
    log_xn = np.log(xn)
    pw = np.exp(-sc * log_xn)
    if derivative:
        dpw = -log_xn * pw
        tail = xn * (dpw / (sc - 1) - pw / (sc - 1) ** 2) + 0.5 * dpw
    else:
        tail = pw * xn / (sc - 1) + 0.5 * pw

    rising = sc.astype(np.complex128)
    drising = np.ones_like(rising)
    for k in range(1, m + 2):
        scale = coeffs[k - 1] * xn ** (-(2 * k - 1))
        if derivative:
            term = scale * (drising * pw + rising * dpw)
        else:
            term = scale * rising * pw
        if k == m + 1:
            factor = np.abs(sc + 2 * m + 1) / (sc.real + 2 * m + 1)
            truncation = np.abs(term) * factor
            break
        tail = tail + term
        f1 = sc + 2 * k - 1
        f2 = sc + 2 * k
        drising = drising * f1 * f2 + rising * (f1 + f2)
        rising = rising * f1 * f2
    return main + tail, truncation, rounding + 4.0 * _EPS * np.abs(tail)


def hurwitz_batch(
    s: np.ndarray,
    a: np.ndarray,
    tol: Optional[float] = None,
    derivative: bool = False,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    批量求 ζ(s,a)（或 ∂_s ζ(s,a)）

    每个点的节点数只由该点的 |t| 与容差决定，与批次组成无关，
    因此同一输入总是得到同一输出

    Args:
        s: 复数点数组
        a: 参数数组，a ∈ (0,1]
        tol: 截断容差，None 时读取 lfunc.tolerance
        derivative: 是否求导

    Returns:
        (values (S,A), error_bounds (S,A), nodes (S,))

    Raises:
        AccuracyError: 翻倍 8 次后仍未达到容差
    """
    s = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    a = np.atleast_1d(np.asarray(a, dtype=np.float64))
    tol = tol if tol is not None else get_config_float("lfunc.tolerance", 1e-12)
    if np.any(a <= 0) or np.any(a > 1):
        raise DomainError("Hurwitz 参数 a 必须在 (0,1] 内", parameter="a", value=a.tolist())
    if np.any(s == 1):
        raise PoleError()
    if np.any(s.real + 2 * get_config_int("lfunc.bernoulli_terms", 10) + 1 <= 0):
        raise DomainError("Re s 过小，Euler-Maclaurin 余项估计失效", parameter="sigma", value=float(s.real.min()))

    values = np.empty((len(s), len(a)), dtype=np.complex128)
    bounds = np.empty((len(s), len(a)), dtype=np.float64)
    nodes = initial_nodes(s.imag)
    pending = np.arange(len(s))

    for _ in range(_MAX_DOUBLINGS + 1):
        if len(pending) == 0:
            break
        failed = []
        for n_nodes in np.unique(nodes[pending]):
            group = pending[nodes[pending] == n_nodes]
            chunk = max(1, _BLOCK_ELEMENTS // (len(a) * int(n_nodes)))
            for start in range(0, len(group), chunk):
                idx = group[start:start + chunk]
                vals, trunc, rnd = _em_block(s[idx], a, int(n_nodes), derivative)
                values[idx] = vals
                bounds[idx] = trunc + rnd
                bad = np.any(~(trunc <= tol), axis=1)
                failed.extend(idx[bad].tolist())
        pending = np.array(sorted(failed), dtype=np.int64)
        if len(pending):
            nodes[pending] *= 2
            logger.debug(f"{len(pending)} 个点未达到容差 {tol:g}，节点数翻倍")
    if len(pending):
        worst = int(pending[0])
        raise AccuracyError(
            f"Hurwitz ζ 在 s={s[worst]} 处无法达到容差 {tol:g}",
            partial=float(bounds[worst].max()),
            details={"nodes": int(nodes[worst])},
        )
    return values, bounds, nodes


def hurwitz_zeta(s: PointLike, a: float, tol: Optional[float] = None) -> EvalResult:
    """
    ζ(s,a) = Σ_{n≥0} (n+a)^{-s}

    Args:
        s: 求值点，s ≠ 1，|t| ≤ lfunc.t_cap
        a: 参数，a ∈ (0,1]
        tol: 容差，默认 lfunc.tolerance

    Returns:
        EvalResult
    """
    sc = as_complex(s)
    check_point(sc)
    values, bounds, nodes = hurwitz_batch(np.array([sc]), np.array([a]), tol)
    return EvalResult(
        value=complex(values[0, 0]),
        abs_error_bound=float(bounds[0, 0]),
        terms_used=int(nodes[0]),
        method=EvalMethod.HURWITZ_ORACLE,
    )


def zeta_value(s: PointLike, tol: Optional[float] = None) -> EvalResult:
    """Riemann ζ(s) = ζ(s,1)"""
    return hurwitz_zeta(s, 1.0, tol)
