"""
整数分解与积性函数

试除法分解（上限由 arith.trial_division_limit 配置）加确定性 Miller-Rabin，
以及供级数模块使用的筛法表（Möbius、无平方因子掩码、τ_k）
"""

import math
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from loguru import logger as loguru_logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import get_config_int
from ..exceptions import DomainError

logger = loguru_logger.bind(name="arith")

MAX_INPUT = 2 ** 63 - 1

# 对 n < 3.3e24 确定性成立的底
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class Factorization(BaseModel):
    """正整数的素因子分解"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1, description="被分解的整数")
    factors: Tuple[Tuple[int, int], ...] = Field(default=(), description="(素数, 指数) 列表，素数严格递增")

    @model_validator(mode="after")
    def _check_product(self) -> "Factorization":
        product = 1
        previous = 1
        for p, e in self.factors:
            if p <= previous or e < 1:
                raise ValueError("素因子必须严格递增且指数为正")
            previous = p
            product *= p ** e
        if product != self.n:
            raise ValueError(f"因子乘积 {product} 不等于 {self.n}")
        return self

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]


def is_prime(n: int) -> bool:
    """确定性 Miller-Rabin 素性检验"""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """
    试除法分解 n

    Args:
        n: 1 ≤ n ≤ 2^63 - 1

    Returns:
        Factorization

    Raises:
        DomainError: n 越界，或余因子超出试除上限且不是素数
    """
    if not isinstance(n, (int, np.integer)) or n < 1 or n > MAX_INPUT:
        raise DomainError(f"factorize 需要 1 ≤ n ≤ 2^63-1，得到 {n}", parameter="n", value=n)
    n = int(n)
    limit = get_config_int("arith.trial_division_limit", 1_000_000)

    factors: List[Tuple[int, int]] = []
    m = n
    p = 2
    while p * p <= m and p <= limit:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        if p * p <= m and not is_prime(m):
            raise DomainError(
                f"余因子 {m} 超出试除上限 {limit} 且为合数",
                parameter="n",
                value=n,
                details={"cofactor": m, "limit": limit},
            )
        factors.append((m, 1))
    return Factorization(n=n, factors=tuple(factors))


def moebius(n: int) -> int:
    """Möbius 函数 μ(n)"""
    f = factorize(n)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def tau_k(n: int, k: int) -> int:
    """n 写成 k 个有序因子乘积的方式数"""
    if k < 1:
        raise DomainError(f"tau_k 需要 k ≥ 1，得到 {k}", parameter="k", value=k)
    result = 1
    for _, e in factorize(n).factors:
        result *= math.comb(e + k - 1, k - 1)
    return result


def squarefree_decompose(m: int) -> Tuple[int, int]:
    """
    将 m 写成 n·ℓ²，n 无平方因子

    Returns:
        (n, ℓ)
    """
    n = 1
    ell = 1
    for p, e in factorize(m).factors:
        ell *= p ** (e // 2)
        if e % 2:
            n *= p
    return n, ell


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n).factors)


def divisors(n: int) -> List[int]:
    """n 的全部正因子，升序"""
    result = [1]
    for p, e in factorize(n).factors:
        result = [d * p ** k for d in result for k in range(e + 1)]
    return sorted(result)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n).factors:
        result = result // p * (p - 1)
    return result


# ---------------------------------------------------------------------------
# 筛法表（下标 0..nmax，下标 0 无意义）
# ---------------------------------------------------------------------------

def prime_sieve(nmax: int) -> np.ndarray:
    """Eratosthenes 筛，返回不超过 nmax 的素数"""
    if nmax < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(nmax + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(nmax) + 1):
        if flags[i]:
            flags[i * i::i] = False
    return np.nonzero(flags)[0].astype(np.int64)


def moebius_table(nmax: int) -> np.ndarray:
    """μ(n)，n = 0..nmax"""
    mu = np.ones(nmax + 1, dtype=np.int8)
    mu[0] = 0
    for p in prime_sieve(nmax):
        p = int(p)
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    return mu


def squarefree_mask(nmax: int) -> np.ndarray:
    """无平方因子掩码，n = 0..nmax"""
    mask = np.ones(nmax + 1, dtype=bool)
    mask[0] = False
    for p in prime_sieve(math.isqrt(nmax)):
        mask[int(p) * int(p)::int(p) * int(p)] = False
    return mask


def tau_k_table(nmax: int, k: int) -> np.ndarray:
    """
    τ_k(n)，n = 0..nmax，由 τ_1 ≡ 1 反复与常函数 1 做 Dirichlet 卷积得到

    Returns:
        float64 数组（k 较大时整数值可能超出 int64）
    """
    if k < 1:
        raise DomainError(f"tau_k_table 需要 k ≥ 1，得到 {k}", parameter="k", value=k)
    table = np.ones(nmax + 1, dtype=np.float64)
    table[0] = 0.0
    for _ in range(k - 1):
        convolved = np.zeros_like(table)
        for d in range(1, nmax + 1):
            convolved[d::d] += table[d]
        table = convolved
    logger.debug(f"τ_{k} 表已构建，nmax={nmax}")
    return table
