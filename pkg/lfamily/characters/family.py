"""
固定阶特征族 O_j(Q)

O_j(Q) = 导子 q ∈ (Q, 2Q]、精确阶为 j 的本原特征。可信路径逐个 q 枚举 j-挠指数向量，
再检验精确阶与本原性；family_oracle 则对全部特征做过滤，二者必须一致
"""

import math
from itertools import product
from typing import List, Optional, Tuple

from loguru import logger as loguru_logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..arith import unit_group
from ..core.executor import ordered_map
from .character import DirichletCharacter, character_from_key, conjugate, enumerate_characters

logger = loguru_logger.bind(name="characters")


class CharacterFamily(BaseModel):
    """特征族 O_j(Q)"""

    model_config = ConfigDict(frozen=True)

    order: int = Field(ge=1, description="阶 j")
    Q: float = Field(description="导子区间 (Q, 2Q] 的参数")
    members: Tuple[DirichletCharacter, ...] = Field(default=(), description="按 (q, 指数向量) 排序的成员")

    @model_validator(mode="after")
    def _check_members(self) -> "CharacterFamily":
        keys = [chi.key for chi in self.members]
        if keys != sorted(set(keys)):
            raise ValueError("成员必须按 (q, 指数向量) 排序且无重复")
        for chi in self.members:
            if not chi.primitive or chi.order != self.order or not (self.Q < chi.modulus <= 2 * self.Q):
                raise ValueError(f"特征 {chi.label} 不属于 O_{self.order}({self.Q})")
        return self

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def records(self) -> List[dict]:
        return [chi.record() for chi in self.members]


def moduli_in_range(Q: float) -> range:
    """(Q, 2Q] 中的整数"""
    return range(math.floor(Q) + 1, math.floor(2 * Q) + 1)


def _family_members_for_modulus(args: Tuple[int, int]) -> List[DirichletCharacter]:
    q, j = args
    orders = unit_group(q).orders
    # χ^j 为主特征 ⇔ 每个指数是 o_i / gcd(o_i, j) 的倍数
    steps = [o // math.gcd(o, j) for o in orders]
    members = []
    for exps in product(*(range(0, o, s) for o, s in zip(orders, steps))):
        chi = character_from_key(q, exps)
        if chi.order == j and chi.primitive:
            members.append(chi)
    return members


def enumerate_family(j: int, Q: float, workers: Optional[int] = None) -> CharacterFamily:
    """
    枚举 O_j(Q)

    Args:
        j: 阶，j ≥ 1（边界比较只用 j ∈ {2,3,4,6}）
        Q: 参数，导子落在 (Q, 2Q]
        workers: 并行 worker 数，按 q 顺序合并

    Returns:
        CharacterFamily，空族不是错误
    """
    moduli = list(moduli_in_range(Q))
    chunks = ordered_map(_family_members_for_modulus, [(q, j) for q in moduli], workers=workers)
    members = tuple(chi for chunk in chunks for chi in chunk)
    logger.debug(f"O_{j}({Q}) 共 {len(members)} 个成员，q ∈ ({Q}, {2 * Q}]")
    return CharacterFamily(order=j, Q=Q, members=members)


def family_oracle(j: int, Q: float) -> CharacterFamily:
    """过滤全部特征得到的参考族，仅用于交叉检验"""
    members = tuple(
        chi
        for q in moduli_in_range(Q)
        for chi in enumerate_characters(q)
        if chi.order == j and chi.primitive
    )
    return CharacterFamily(order=j, Q=Q, members=members)


def is_conjugate_closed(family: CharacterFamily) -> bool:
    keys = {chi.key for chi in family.members}
    return all(conjugate(chi).key in keys for chi in family.members)
