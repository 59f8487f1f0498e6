"""
单位群 (ℤ/qℤ)* 的结构与离散对数

生成元的规范选择：奇素数幂取模 p 的最小原根（若在 p² 下失效则加 p），
2^e (e ≥ 3) 取 (−1, 5)，4 取 −1。所有生成元经 CRT 提升到模 q，
在其他素数幂分量上为 1
"""

import math
import threading
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from loguru import logger as loguru_logger
from pydantic import BaseModel, ConfigDict, Field

from ..core.config import get_config_int
from ..exceptions import DomainError, NotAUnitError
from .factor import euler_phi, factorize

logger = loguru_logger.bind(name="arith")

_table_lock = threading.Lock()


class UnitComponent(BaseModel):
    """素数幂 p^e 对应的分量"""

    model_config = ConfigDict(frozen=True)

    p: int = Field(description="素数")
    e: int = Field(description="指数")
    generators: Tuple[int, ...] = Field(description="生成元（已提升到模 q）")
    orders: Tuple[int, ...] = Field(description="生成元的阶")


class UnitGroupStructure(BaseModel):
    """(ℤ/qℤ)* 的分解"""

    model_config = ConfigDict(frozen=True)

    modulus: int = Field(ge=1, description="模 q")
    components: Tuple[UnitComponent, ...] = Field(description="按素数递增排列的分量")

    @property
    def generators(self) -> List[int]:
        return [g for c in self.components for g in c.generators]

    @property
    def orders(self) -> List[int]:
        return [o for c in self.components for o in c.orders]

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        result = 1
        for o in self.orders:
            result *= o
        return result


def multiplicative_order(g: int, m: int) -> int:
    """g 模 m 的乘法阶（通过 φ(m) 的素因子逐步约化）"""
    if m == 1:
        return 1
    order = euler_phi(m)
    if pow(g, order, m) != 1:
        raise DomainError(f"{g} 不是模 {m} 的单位", parameter="g", value=g)
    for r, _ in factorize(order).factors:
        while order % r == 0 and pow(g, order // r, m) == 1:
            order //= r
    return order


def _primitive_root_mod_prime(p: int) -> int:
    phi_factors = [r for r, _ in factorize(p - 1).factors]
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in phi_factors):
            return g
    return 1  # p = 2


def _local_generators(p: int, e: int) -> List[Tuple[int, int]]:
    """模 p^e 的规范生成元及其阶"""
    pe = p ** e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(pe - 1, 2), (5, 2 ** (e - 2))]
    g = _primitive_root_mod_prime(p)
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return [(g % pe, (p - 1) * p ** (e - 1))]


@lru_cache(maxsize=4096)
def unit_group(q: int) -> UnitGroupStructure:
    """
    构建 (ℤ/qℤ)* 的结构

    Args:
        q: 模，q ≥ 1

    Returns:
        UnitGroupStructure，生成元的阶经过重新计算验证
    """
    if q < 1 or q > 2 ** 63 - 1:
        raise DomainError(f"unit_group 需要 1 ≤ q ≤ 2^63-1，得到 {q}", parameter="q", value=q)
    components = []
    for p, e in factorize(q).factors:
        pe = p ** e
        rest = q // pe
        # CRT：在 p^e 上为 g，在其余分量上为 1
        generators = []
        orders = []
        for g_local, o in _local_generators(p, e):
            g = (1 + (g_local - 1) * (rest * pow(rest, -1, pe))) % q if rest > 1 else g_local % q
            if rest > 1 and (g - 1) % rest != 0:
                raise DomainError(f"CRT 提升失败: q={q}, p^e={pe}", parameter="q", value=q)
            actual = multiplicative_order(g_local, pe)
            if actual != o:
                raise DomainError(f"生成元 {g_local} 模 {pe} 的阶为 {actual}，预期 {o}", parameter="q", value=q)
            generators.append(g)
            orders.append(o)
        components.append(UnitComponent(p=p, e=e, generators=tuple(generators), orders=tuple(orders)))
    return UnitGroupStructure(modulus=q, components=tuple(components))


@lru_cache(maxsize=256)
def _dlog_table(q: int) -> np.ndarray:
    """
    模 q 的离散对数表，形状 (q, rank)；非单位的行为 -1

    穷举所有指数组合构建
    """
    cap = get_config_int("characters.modulus_cap", 20000)
    if q > cap:
        raise DomainError(f"模 {q} 超出上限 {cap}", parameter="q", value=q, details={"cap": cap})
    group = unit_group(q)
    values = np.array([1 % q], dtype=np.int64)
    exponents = np.zeros((1, 0), dtype=np.int64)
    for g, o in zip(group.generators, group.orders):
        powers = np.empty(o, dtype=np.int64)
        acc = 1 % q
        for k in range(o):
            powers[k] = acc
            acc = acc * g % q
        values = (values[:, None] * powers[None, :] % q).reshape(-1)
        exponents = np.concatenate(
            [np.repeat(exponents, o, axis=0), np.tile(np.arange(o, dtype=np.int64), len(exponents))[:, None]],
            axis=1,
        )
    table = np.full((q, group.rank), -1, dtype=np.int64)
    table[values] = exponents
    logger.debug(f"模 {q} 离散对数表已构建 (φ={len(values)})")
    return table


def dlog_table(q: int) -> np.ndarray:
    """线程安全的离散对数表访问"""
    with _table_lock:
        table = _dlog_table(q)
    table.flags.writeable = False
    return table


def discrete_log(group: UnitGroupStructure, n: int) -> List[int]:
    """
    n 关于规范生成元的指数向量

    Raises:
        NotAUnitError: gcd(n, q) > 1
    """
    q = group.modulus
    row = dlog_table(q)[int(n) % q]
    if group.rank and row[0] < 0:
        raise NotAUnitError(n, q)
    if not group.rank and math.gcd(int(n), q) != 1:
        raise NotAUnitError(n, q)
    return [int(x) for x in row]
