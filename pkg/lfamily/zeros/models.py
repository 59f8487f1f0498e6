"""
零点实验的数据模型
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class Contour(BaseModel):
    """矩形 [sigma, right] + i[t_lo, t_hi]"""

    sigma: float
    right: float
    t_lo: float
    t_hi: float


class ZeroCountReport(BaseModel):
    """幅角原理计数"""

    character: str
    sigma: float
    T: float
    count: int = Field(ge=0)
    winding: float = Field(description="未取整的绕数")
    winding_residual: float = Field(ge=0.0, lt=0.25, description="|绕数 − count|")
    contour: Contour
    evaluations: int = Field(ge=0, description="L 的求值次数")
    halving_agrees: bool = Field(default=True, description="步长减半重算结果一致")
    perturbed: bool = Field(default=False, description="σ 是否因围道过近零点而微调")

    def csv_rows(self) -> List[Dict[str, object]]:
        return [{
            "character": self.character,
            "sigma": self.sigma,
            "T": self.T,
            "count": self.count,
            "winding_residual": self.winding_residual,
        }]


class CriticalZero(BaseModel):
    """临界线上的零点 ½ + iγ"""

    character: str
    gamma: float
    width: float = Field(ge=0.0, description="二分区间宽度")
    l_abs: float = Field(ge=0.0, description="|L(½+iγ,χ)|")


class ZeroListReport(BaseModel):
    character: str
    T: float
    zeros: List[CriticalZero]

    def csv_rows(self) -> List[Dict[str, object]]:
        return [z.model_dump() for z in self.zeros]


class DetectorClass(str, Enum):
    R1 = "R1"
    R2 = "R2"
    BOTH = "both"
    NEITHER = "neither"


class DetectorReport(BaseModel):
    """零点检测器在一个零点处的两个分量与恒等式残差"""

    zero: CriticalZero
    X: float
    Y: float
    C: float
    Q: float
    T: float
    r1_value: float = Field(ge=0.0, description="|Σ_{X<n≤Y²} 𝔪_{X,n} χ(n) n^{-ρ} e^{-n/Y}|")
    r2_value: float = Field(ge=0.0, description="(2π)^{-1}|∫ 𝔐_X(½+i(γ+u)) Γ(iu) Y^{iu} du|")
    identity_residual: float = Field(ge=0.0, description="|Σ_n 𝔪_{X,n}χ(n)n^{-ρ}e^{-n/Y} − 移位围道积分|")
    classification: DetectorClass
    t_max: float = Field(description="|u| ≤ C log QT 内使 |𝔐_X(½+it)| 最大的 t")
    mollified_max: float = Field(ge=0.0, description="该最大值")

    def csv_rows(self) -> List[Dict[str, object]]:
        return [{
            "character": self.zero.character,
            "gamma": self.zero.gamma,
            "X": self.X,
            "Y": self.Y,
            "C": self.C,
            "r1_value": self.r1_value,
            "r2_value": self.r2_value,
            "identity_residual": self.identity_residual,
            "classification": self.classification.value,
        }]


class BoundEntry(BaseModel):
    name: str
    value: float = Field(gt=0.0)
    valid: bool = Field(description="适用条件是否满足")
    condition: str = Field(description="适用条件")


class ZeroDensityTable(BaseModel):
    """零点密度上界（不含 (QT)^ε 与隐含常数）"""

    sigma: float
    Q: float
    T: float
    entries: List[BoundEntry]
    metadata: Dict[str, float] = Field(default_factory=dict, description="V = Q^{(4σ-3)/2}T^{(3σ-2)/2} 等")

    def get(self, name: str) -> BoundEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def values(self) -> Dict[str, float]:
        return {e.name: e.value for e in self.entries}

    def csv_rows(self) -> List[Dict[str, object]]:
        return [{"sigma": self.sigma, "Q": self.Q, "T": self.T, **e.model_dump()} for e in self.entries]


class FamilyZeroCountReport(BaseModel):
    j: int
    Q: float
    sigma: float
    T: float
    count: int = Field(ge=0)
    family_size: int = Field(ge=0)
    per_character: List[ZeroCountReport] = Field(default_factory=list)
    bounds: Optional[ZeroDensityTable] = None

    def csv_rows(self) -> List[Dict[str, object]]:
        rows = [row for r in self.per_character for row in r.csv_rows()]
        rows.append({"character": "total", "sigma": self.sigma, "T": self.T, "count": self.count, "winding_residual": None})
        return rows


class DetectorChoice(BaseModel):
    """(X, Y) 的取法及对应计数上界"""

    term: str = Field(description="first / second")
    X: float
    Y: float
    count_bound: float
    x_le_y: bool = Field(description="X ≤ Y")
    within_cap: bool = Field(description="Y ≤ (QT)^K")


class DetectorParameters(BaseModel):
    j: int
    sigma: float
    Q: float
    T: float
    choices: List[DetectorChoice]
    large_x: float = Field(description="X^{2σ-1} = C₁QT^{1/2} 的解")
    large_y: float = Field(description="Y^{2σ-1} = C₂V²QT^{1/2} 的解")
    V: float
    C1: float
    C2: float
    K: float

    def csv_rows(self) -> List[Dict[str, object]]:
        return [{"j": self.j, "sigma": self.sigma, "Q": self.Q, "T": self.T, **c.model_dump()} for c in self.choices]
