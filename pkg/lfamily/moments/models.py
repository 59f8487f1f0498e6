"""
矩实验的数据模型
"""

from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import SpacingError

# 间距比较的浮点余量
SPACING_SLACK = 1e-12


def check_wellspaced(points: List[float], delta: float, T: float) -> None:
    """
    检查点集有序、间距 ≥ δ 且位于 [δ/2 − T, T − δ/2]

    Raises:
        SpacingError: 指出违反约束的点对（或单点）
    """
    lo, hi = delta / 2 - T, T - delta / 2
    for p in points:
        if p < lo - SPACING_SLACK or p > hi + SPACING_SLACK:
            raise SpacingError(f"点 {p} 不在区间 [{lo}, {hi}] 内", pair=(p,), details={"T": T, "delta": delta})
    for x, y in zip(points[:-1], points[1:]):
        if y - x < delta - SPACING_SLACK:
            raise SpacingError(f"点 {x} 与 {y} 的间距小于 δ = {delta}", pair=(x, y), details={"delta": delta})


class WellSpacedSet(BaseModel):
    """δ-良好间隔点集"""

    model_config = ConfigDict(frozen=True)

    delta: float = Field(gt=0.0, description="最小间距 δ")
    T: float = Field(gt=0.0, description="区间参数 T")
    points: Tuple[float, ...] = Field(default=(), description="升序点列")

    @field_validator("points")
    @classmethod
    def _sorted(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        return tuple(sorted(float(p) for p in v))

    @model_validator(mode="after")
    def _check(self) -> "WellSpacedSet":
        check_wellspaced(list(self.points), self.delta, self.T)
        return self

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.float64)


class CharacterMoment(BaseModel):
    """单个特征的贡献"""

    character: str = Field(description="特征标签 q.e1-e2")
    q: int = Field(description="模")
    value: float = Field(ge=0.0, description="贡献值")
    error: float = Field(ge=0.0, description="误差估计")
    points: int = Field(default=0, description="离散点数或积分分段数")


class MomentReport(BaseModel):
    """矩报告"""

    mode: str = Field(description="fixed_t / integrated / discrete / derivative")
    j: int = Field(description="族的阶")
    Q: float = Field(description="参数 Q")
    T: float = Field(description="积分或离散区间参数 T")
    power: int = Field(description="幂次 2k")
    sigma: float = Field(default=0.5, description="实部 σ")
    t: Optional[float] = Field(default=None, description="固定 t（fixed_t 模式）")
    delta: Optional[float] = Field(default=None, description="间距 δ（discrete 模式）")
    value: float = Field(ge=0.0, description="矩的值")
    quadrature_error: float = Field(ge=0.0, description="积分与求值误差估计")
    family_size: int = Field(ge=0, description="|O_j(Q)|")
    per_character: List[CharacterMoment] = Field(default_factory=list, description="逐特征贡献")
    comparison: Optional[float] = Field(default=None, description="(δ^{-1}+1)·积分矩（discrete 模式）")

    def csv_rows(self) -> List[Dict[str, object]]:
        rows = []
        for item in self.per_character:
            rows.append({
                "mode": self.mode,
                "j": self.j,
                "Q": self.Q,
                "T": self.T,
                "power": self.power,
                "character": item.character,
                "value": item.value,
                "error": item.error,
            })
        rows.append({
            "mode": self.mode,
            "j": self.j,
            "Q": self.Q,
            "T": self.T,
            "power": self.power,
            "character": "total",
            "value": self.value,
            "error": self.quadrature_error,
        })
        return rows


class ScalingSample(BaseModel):
    Q: float = Field(gt=0.0)
    T: float = Field(gt=0.0)
    value: float


class ScalingFit(BaseModel):
    """log value ≈ c + α log Q + β log T 的最小二乘拟合"""

    samples: List[ScalingSample] = Field(description="样本")
    constant: float = Field(description="常数项 c")
    alpha: float = Field(description="Q 的指数 α")
    beta: float = Field(description="T 的指数 β")
    max_residual: float = Field(ge=0.0, description="最大对数残差")
    residuals: List[float] = Field(default_factory=list, description="逐样本对数残差")

    def csv_rows(self) -> List[Dict[str, object]]:
        return [
            {"Q": s.Q, "T": s.T, "value": s.value, "residual": r, "alpha": self.alpha, "beta": self.beta}
            for s, r in zip(self.samples, self.residuals)
        ]


class HardyLittlewoodReport(BaseModel):
    """∫_{T0}^{T} |ζ(½+it)|² dt"""

    T0: float = Field(default=0.0, description="下限")
    T: float = Field(description="上限")
    value: float = Field(ge=0.0, description="积分值")
    quadrature_error: float = Field(ge=0.0, description="误差估计")
    main_term_ratio: Optional[float] = Field(default=None, description="与 T log T 之比")
    refined_ratio: Optional[float] = Field(default=None, description="与 T(log(T/2π)+2γ−1) 之比")

    def csv_rows(self) -> List[Dict[str, object]]:
        return [self.model_dump()]


class SquarePartComparison(BaseModel):
    """固定 t 的二阶矩与无平方因子分块 Dirichlet 多项式之和的比较"""

    j: int
    Q: float
    T: float
    t: float
    epsilon: float
    N: float = Field(description="(QT)^{1/2+ε}")
    lhs: float = Field(ge=0.0, description="Σ_χ |L(½+it,χ)|²")
    rhs: float = Field(ge=0.0, description="Σ_χ Σ_ℓ ℓ^{-1}|Σ' χ(n) n^{-1/2-it}|²")
    ratio: Optional[float] = Field(default=None, description="lhs / rhs")
    degenerate: bool = Field(description="N < 1 时 rhs = 0")
    blocks: int = Field(ge=0, description="ℓ 分块数")
    family_size: int = Field(ge=0)

    def csv_rows(self) -> List[Dict[str, object]]:
        return [self.model_dump()]


class CriticalLengthReport(BaseModel):
    """Δ_j(Q,T,(QT)^{1/2}) 与 QT 的比较"""

    j: int
    Q: float
    T: float
    delta_value: float = Field(description="Δ_j(Q,T,(QT)^{1/2})")
    QT: float
    ratio: float = Field(description="Δ_j / QT")
    t_condition: bool = Field(description="T ≥ Q^{1/5}")

    def csv_rows(self) -> List[Dict[str, object]]:
        return [self.model_dump()]


class ScalingCell(BaseModel):
    """标度网格的一个单元"""

    j: int
    Q: float
    T: float
    value: float = Field(ge=0.0, description="积分矩")
    quadrature_error: float = Field(ge=0.0)
    family_size: int = Field(ge=0)
    t_condition: bool = Field(description="T ≥ Q^{1/5}")
    discrete_value: Optional[float] = Field(default=None, description="贪心离散矩")
    discrete_ratio: Optional[float] = Field(default=None, description="离散矩 / ((δ^{-1}+1)·积分矩)")


class ScalingReport(BaseModel):
    """标度实验：网格单元与每个 j 的指数拟合"""

    k: int
    delta: float
    cells: List[ScalingCell]
    fits: Dict[str, Optional[ScalingFit]] = Field(description="键为 j")
    flagged: List[Tuple[float, float]] = Field(default_factory=list, description="不满足 T ≥ Q^{1/5} 的 (Q, T)")

    def csv_rows(self) -> List[Dict[str, object]]:
        rows = []
        for cell in self.cells:
            fit = self.fits.get(str(cell.j))
            rows.append({
                **cell.model_dump(),
                "alpha": fit.alpha if fit else None,
                "beta": fit.beta if fit else None,
            })
        return rows
