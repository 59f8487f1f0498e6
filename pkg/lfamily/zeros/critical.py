"""
临界线零点：旋转后的实函数 Z_χ(t) 的变号点加二分细化

    Z_χ(t) = ε(χ)^{-1/2} (q/π)^{it/2} e^{i arg Γ((½+κ+it)/2)} L(½+it,χ)

与 ε^{-1/2}Λ(½+it,χ) 相差一个正因子，因此是实值函数
"""

import json
import math
from typing import List, Optional

import numpy as np
from loguru import logger as loguru_logger
from scipy.special import loggamma

from ..characters import DirichletCharacter, root_number_sqrt
from ..core.cache import ResultCache
from ..core.config import get_config_float, get_config_int
from ..exceptions import DomainError, InternalConsistencyError
from ..lfunc import l_values_batch
from .models import CriticalZero

logger = loguru_logger.bind(name="zeros")

BRANCH_TOLERANCE = 1e-8
ZERO_VALUE_TOLERANCE = 1e-6


def zero_gap_estimate(q: int, T: float) -> float:
    """平均零点间距 2π/log(q(T+3)/2π)，上限为 1"""
    return min(1.0, 2 * math.pi / max(math.log(q * (T + 3) / (2 * math.pi)), 1.0))


def rotated_values(chi: DirichletCharacter, ts: np.ndarray, check: bool = True) -> np.ndarray:
    """
    Z_χ(t) 的实部

    Raises:
        InternalConsistencyError: 虚部超过 1e-8·max(1, |Z|)（平方根分支不一致）
    """
    ts = np.asarray(ts, dtype=np.float64)
    values, _ = l_values_batch(chi, 0.5 + 1j * ts)
    phase = ts / 2 * math.log(chi.modulus / math.pi) + loggamma((0.5 + chi.parity + 1j * ts) / 2).imag
    z = values * np.exp(1j * phase) / root_number_sqrt(chi)
    if check:
        bad = np.abs(z.imag) > BRANCH_TOLERANCE * np.maximum(1.0, np.abs(z))
        if bad.any():
            i = int(np.argmax(bad))
            raise InternalConsistencyError(
                f"{chi.label}: 旋转后的 Λ 在 t = {ts[i]:.6g} 处虚部为 {z.imag[i]:.3g}",
                check="root_number_branch",
                details={"character": chi.label, "t": float(ts[i])},
            )
    return z.real


def _cache_key(chi: DirichletCharacter, T: float, offset: float) -> dict:
    return {
        "character": [chi.modulus, list(chi.exponents)],
        "T": T,
        "offset": offset,
        "grid_version": get_config_int("zeros.grid_version", 1),
    }


def critical_line_zeros(
    chi: DirichletCharacter,
    T: float,
    offset: float = 0.0,
    cache: Optional[ResultCache] = None,
) -> List[CriticalZero]:
    """
    [-T, T] 内 L(½+it,χ) 的零点

    Args:
        chi: 本原特征
        T: 扫描范围
        offset: 扫描网格的平移（以步长为单位，0 ≤ offset < 1）
        cache: 结果缓存，键为 (特征, T, offset, 网格版本)

    Returns:
        按 γ 升序的零点列表

    Raises:
        DomainError: χ 非本原或 T 不为正
        InternalConsistencyError: 分支不一致，或细化后 |L| 超过 1e-6
    """
    if not chi.primitive:
        raise DomainError(f"{chi.label} 不是本原特征", parameter="chi", value=chi.label)
    if T <= 0:
        raise DomainError(f"T 必须为正，得到 {T}", parameter="T", value=T)

    key = _cache_key(chi, T, offset)
    if cache is not None:
        payload = cache.get("zeros", key)
        if payload is not None:
            logger.debug(f"{chi.label}: 零点列表命中缓存")
            return [CriticalZero(**item) for item in json.loads(payload)]

    width = get_config_float("zeros.bisection_width", 1e-8)
    step = zero_gap_estimate(chi.modulus, T) / 8
    count = int(math.floor((2 * T - offset * step) / step)) + 1
    grid = -T + offset * step + step * np.arange(count)
    if grid[-1] < T:
        grid = np.append(grid, T)
    z = rotated_values(chi, grid)

    exact = np.nonzero(z == 0)[0]
    brackets = np.nonzero(z[:-1] * z[1:] < 0)[0]
    lo, hi = grid[brackets].copy(), grid[brackets + 1].copy()
    z_lo = z[brackets].copy()
    while len(lo) and np.max(hi - lo) > width:
        mid = (lo + hi) / 2
        z_mid = rotated_values(chi, mid)
        left = np.sign(z_mid) == np.sign(z_lo)
        lo = np.where(left, mid, lo)
        z_lo = np.where(left, z_mid, z_lo)
        hi = np.where(left, hi, mid)

    gammas = np.concatenate([(lo + hi) / 2, grid[exact]])
    widths = np.concatenate([hi - lo, np.zeros(len(exact))])
    order = np.argsort(gammas, kind="stable")
    gammas, widths = gammas[order], widths[order]
    magnitudes = np.abs(l_values_batch(chi, 0.5 + 1j * gammas)[0]) if len(gammas) else np.zeros(0)

    zeros = []
    for gamma, w, mag in zip(gammas, widths, magnitudes):
        if mag > ZERO_VALUE_TOLERANCE:
            raise InternalConsistencyError(
                f"{chi.label}: γ = {gamma:.10f} 处 |L| = {mag:.3g} 超过 {ZERO_VALUE_TOLERANCE}",
                check="zero_value",
                details={"character": chi.label, "gamma": float(gamma)},
            )
        zeros.append(CriticalZero(character=chi.label, gamma=float(gamma), width=float(w), l_abs=float(mag)))
    logger.info(f"{chi.label}: [-{T:g}, {T:g}] 内找到 {len(zeros)} 个临界线零点")

    if cache is not None:
        cache.put("zeros", key, json.dumps([z.model_dump() for z in zeros], sort_keys=True).encode())
    return zeros
