"""
Dirichlet 特征

特征由模 q 与规范生成元下的指数向量表示；阶、奇偶性与导子在构造时精确计算
"""

import cmath
import math
from functools import lru_cache, reduce
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np
from loguru import logger as loguru_logger
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..arith import divisors, dlog_table, unit_group
from ..core.config import get_config_int
from ..exceptions import DomainError

logger = loguru_logger.bind(name="characters")

CharacterKey = Tuple[int, Tuple[int, ...]]


class DirichletCharacter(BaseModel):
    """模 q 的 Dirichlet 特征（不可变，可在 worker 间传递）"""

    model_config = ConfigDict(frozen=True)

    modulus: int = Field(ge=1, description="模 q")
    exponents: Tuple[int, ...] = Field(description="规范生成元下的指数向量")
    order: int = Field(ge=1, description="精确乘法阶")
    parity: int = Field(description="κ = 0 偶特征，κ = 1 奇特征")
    conductor: int = Field(ge=1, description="导子 q*")
    primitive: bool = Field(description="是否本原")

    @field_validator("parity")
    @classmethod
    def _check_parity(cls, v: int) -> int:
        if v not in (0, 1):
            raise ValueError("parity 必须是 0 或 1")
        return v

    @property
    def key(self) -> CharacterKey:
        """稳定的身份/序列化键"""
        return (self.modulus, self.exponents)

    @property
    def label(self) -> str:
        return f"{self.modulus}.{'-'.join(str(e) for e in self.exponents) or '0'}"

    def record(self) -> Dict[str, object]:
        """报告中使用的序列化记录"""
        return {
            "q": self.modulus,
            "exponents": list(self.exponents),
            "order": self.order,
            "parity": self.parity,
            "conductor": self.conductor,
        }

    def __call__(self, n: int) -> complex:
        return char_value(self, n)


def _character_order(orders: Sequence[int], exponents: Sequence[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), (o // math.gcd(o, e) for o, e in zip(orders, exponents)), 1)


@lru_cache(maxsize=4096)
def phase_table(q: int, exponents: Tuple[int, ...]) -> Tuple[int, np.ndarray]:
    """
    整数相位表：χ(n) = exp(2πi·phase[n]/m)，m 为特征的阶；非单位处为 -1
    """
    group = unit_group(q)
    m = _character_order(group.orders, exponents)
    weights = np.array([e * m // o for e, o in zip(exponents, group.orders)], dtype=np.int64)
    table = dlog_table(q)
    phases = (table @ weights) % m if len(weights) else np.zeros(q, dtype=np.int64)
    units = table[:, 0] >= 0 if len(weights) else np.array([math.gcd(n, q) == 1 for n in range(q)])
    phases = np.where(units, phases, -1)
    phases.flags.writeable = False
    return m, phases


@lru_cache(maxsize=64)
def roots_of_unity(m: int) -> np.ndarray:
    """m 次单位根表，±1、±i 精确，且 roots[m-k] = conj(roots[k])"""
    roots = np.empty(m, dtype=np.complex128)
    for k in range(m):
        if 2 * k > m:
            roots[k] = roots[m - k].conjugate()
        elif 4 * k == m:
            roots[k] = 1j
        elif 2 * k == m:
            roots[k] = -1.0
        elif k == 0:
            roots[k] = 1.0
        else:
            roots[k] = cmath.exp(2j * math.pi * k / m)
    roots.flags.writeable = False
    return roots


def character_phases(chi: DirichletCharacter) -> Tuple[int, np.ndarray]:
    return phase_table(chi.modulus, chi.exponents)


@lru_cache(maxsize=4096)
def _table(q: int, exponents: Tuple[int, ...]) -> np.ndarray:
    m, phases = phase_table(q, exponents)
    values = np.where(phases >= 0, roots_of_unity(m)[np.maximum(phases, 0)], 0.0).astype(np.complex128)
    values.flags.writeable = False
    return values


def character_table(chi: DirichletCharacter) -> np.ndarray:
    """χ(0), χ(1), ..., χ(q-1)"""
    return _table(chi.modulus, chi.exponents)


def char_value(chi: DirichletCharacter, n: int) -> complex:
    """χ(n)；gcd(n, q) > 1 时为 0"""
    return complex(character_table(chi)[int(n) % chi.modulus])


def char_values(chi: DirichletCharacter, ns: np.ndarray) -> np.ndarray:
    """对整数数组向量化求 χ(n)"""
    return character_table(chi)[np.asarray(ns, dtype=np.int64) % chi.modulus]


def _conductor(q: int, exponents: Tuple[int, ...]) -> int:
    _, phases = phase_table(q, exponents)
    for d in divisors(q):
        idx = np.arange(1 % d, q, d)
        ph = phases[idx]
        if np.all(ph[ph >= 0] == 0):
            return d
    return q


def character_from_key(q: int, exponents: Sequence[int]) -> DirichletCharacter:
    """
    由 (q, 指数向量) 构造特征

    Args:
        q: 模
        exponents: 每个生成元一个指数，按生成元的阶约化

    Raises:
        DomainError: 指数向量长度与单位群秩不符，或 q 超出上限
    """
    cap = get_config_int("characters.modulus_cap", 20000)
    if q < 1 or q > cap:
        raise DomainError(f"模 {q} 超出范围 [1, {cap}]", parameter="q", value=q, details={"cap": cap})
    group = unit_group(q)
    if len(exponents) != group.rank:
        raise DomainError(
            f"模 {q} 的指数向量长度应为 {group.rank}，得到 {len(exponents)}",
            parameter="exponents",
            value=list(exponents),
        )
    reduced = tuple(int(e) % o for e, o in zip(exponents, group.orders))
    order = _character_order(group.orders, reduced)
    _, phases = phase_table(q, reduced)
    parity = 0 if phases[(q - 1) % q] == 0 else 1
    conductor = _conductor(q, reduced)
    return DirichletCharacter(
        modulus=q,
        exponents=reduced,
        order=order,
        parity=parity,
        conductor=conductor,
        primitive=conductor == q,
    )


def conductor_and_primitivity(chi: DirichletCharacter) -> Tuple[int, bool]:
    """导子与本原性（穷举检验 q 的每个因子）"""
    conductor = _conductor(chi.modulus, chi.exponents)
    return conductor, conductor == chi.modulus


def conductor_from_components(chi: DirichletCharacter) -> int:
    """各素数幂分量局部导子之积，仅作交叉检验"""
    group = unit_group(chi.modulus)
    result = 1
    offset = 0
    for comp in group.components:
        local = chi.exponents[offset:offset + len(comp.orders)]
        offset += len(comp.orders)
        result *= _conductor(comp.p ** comp.e, tuple(local))
    return result


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    orders = unit_group(chi.modulus).orders
    exps = tuple((-e) % o for e, o in zip(chi.exponents, orders))
    return chi.model_copy(update={"exponents": exps})


def is_principal(chi: DirichletCharacter) -> bool:
    return chi.order == 1


def is_real(chi: DirichletCharacter) -> bool:
    return chi.order <= 2


def enumerate_characters(q: int) -> List[DirichletCharacter]:
    """
    模 q 的全部 φ(q) 个特征，按指数向量字典序

    Raises:
        DomainError: q 超出 characters.modulus_cap
    """
    cap = get_config_int("characters.modulus_cap", 20000)
    if q < 1 or q > cap:
        raise DomainError(f"模 {q} 超出范围 [1, {cap}]", parameter="q", value=q, details={"cap": cap})
    orders = unit_group(q).orders
    characters = [character_from_key(q, exps) for exps in product(*(range(o) for o in orders))]
    logger.debug(f"模 {q} 共 {len(characters)} 个特征")
    return characters
