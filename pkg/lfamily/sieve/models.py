"""
大筛实验的数据模型
"""

from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..arith import is_squarefree
from ..exceptions import DomainError


class CoefficientVector(BaseModel):
    """
    无平方因子下标上的系数 a_n

    dyadic 为 True 时下标位于 (N, 2N]，否则位于 [1, N]
    """

    model_config = ConfigDict(frozen=True)

    N: float = Field(ge=1.0, description="长度参数 N")
    indices: Tuple[int, ...] = Field(description="升序的无平方因子下标")
    values: Tuple[complex, ...] = Field(description="系数 a_n")
    seed: Optional[int] = Field(default=None, description="随机向量的种子")
    dyadic: bool = Field(default=True, description="下标是否位于 (N, 2N]")

    @model_validator(mode="after")
    def _check(self) -> "CoefficientVector":
        if len(self.indices) != len(self.values):
            raise DomainError("下标与系数长度不一致", parameter="coeffs")
        if list(self.indices) != sorted(set(self.indices)):
            raise DomainError("下标必须严格递增", parameter="coeffs")
        lo, hi = (self.N, 2 * self.N) if self.dyadic else (0, self.N)
        for n in self.indices:
            if not (lo < n <= hi):
                raise DomainError(f"下标 {n} 不在 ({lo:g}, {hi:g}] 内", parameter="coeffs", value=n)
            if not is_squarefree(n):
                raise DomainError(f"下标 {n} 不是无平方因子数", parameter="coeffs", value=n)
        if self.norm <= 0:
            raise DomainError("系数范数 Σ'|a_n|² 必须为正", parameter="coeffs")
        return self

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(np.asarray(self.values, dtype=np.complex128)) ** 2))

    @property
    def upper(self) -> float:
        return 2 * self.N if self.dyadic else self.N

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.indices, dtype=np.int64), np.asarray(self.values, dtype=np.complex128)

    def damped(self, sigma0: float) -> "CoefficientVector":
        """a_n n^{-σ₀}"""
        n, a = self.arrays()
        return self.model_copy(update={"values": tuple((a * n.astype(np.float64) ** (-sigma0)).tolist())})


class SieveReport(BaseModel):
    """大筛左端与 Δ_j 的比较"""

    mode: str = Field(description="discrete / integrated")
    j: int
    Q: float
    T: float = Field(description="discrete 模式下为 1")
    N: float
    lhs: float = Field(ge=0.0)
    norm: float = Field(ge=0.0, description="Σ'|a_n|²")
    delta_bound: float = Field(ge=0.0, description="Δ_j(Q,T,N)")
    ratio: float = Field(ge=0.0, description="lhs / (norm·Δ_j)")
    family_size: int = Field(ge=0)
    seed: Optional[int] = None

    def csv_rows(self) -> List[Dict[str, object]]:
        return [self.model_dump()]


class GallagherReport(BaseModel):
    """Σ_t N_δ(t)^{-1}|f(t)|² ≤ δ^{-1}∫|f|² + (∫|f|²)^{1/2}(∫|f'|²)^{1/2}"""

    target: str = Field(description="l_on_critical_line 或 dirichlet_poly")
    character: Optional[str] = None
    T: float
    delta: float
    points: int = Field(ge=0)
    lhs: float = Field(ge=0.0)
    rhs: float = Field(ge=0.0)
    integral_f: float = Field(ge=0.0, description="∫|f|²")
    integral_df: float = Field(ge=0.0, description="∫|f'|²")
    holds: bool

    def csv_rows(self) -> List[Dict[str, object]]:
        return [self.model_dump()]


class MeanValueReport(BaseModel):
    """离散均值定理两个右端的比率报告（不作断言）"""

    j: int
    Q: float
    T: float
    delta: float
    N: float
    sigma0: float
    lhs: float = Field(ge=0.0)
    rhs_sieve: float = Field(ge=0.0, description="(δ^{-1}+1)Δ_j(Q,T,N)Σ'|a_n|²n^{-2σ₀}")
    rhs_count: float = Field(ge=0.0, description="(δ^{-1}+1)(N + QT^{1/2}|𝒮|)Σ'|a_n|²n^{-2σ₀}")
    ratio_sieve: Optional[float] = None
    ratio_count: Optional[float] = None
    point_count: int = Field(ge=0, description="|𝒮|")
    family_size: int = Field(ge=0)
    seed: Optional[int] = None

    def csv_rows(self) -> List[Dict[str, object]]:
        return [self.model_dump()]


class ProbeCell(BaseModel):
    Q: float
    T: float
    N: float
    max_ratio: float = Field(description="max lhs/norm")
    bound: float = Field(description="10·(QT+N)")
    within: bool


class SieveProbeReport(BaseModel):
    """j = 2 积分大筛的经验探测"""

    trials: int
    seed: int
    cells: List[ProbeCell]

    @property
    def all_within(self) -> bool:
        return all(c.within for c in self.cells)

    def csv_rows(self) -> List[Dict[str, object]]:
        return [c.model_dump() for c in self.cells]
