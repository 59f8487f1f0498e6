"""
命令级报告模型：把底层结果包装成带 csv_rows 的报告
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ..sieve.models import GallagherReport
from ..zeros.models import DetectorReport


class FamilyTable(BaseModel):
    """特征族 O_j(Q) 的列表"""

    j: int
    Q: float
    size: int = Field(ge=0)
    characters: List[Dict[str, Any]] = Field(default_factory=list, description="每个特征的 {q, exponents, order, parity, conductor}")

    def csv_rows(self) -> List[Dict[str, object]]:
        return [
            {**row, "exponents": "-".join(str(e) for e in row["exponents"])}
            for row in self.characters
        ]


class EvaluationReport(BaseModel):
    """单点 L(s,χ) 求值"""

    character: Dict[str, Any]
    sigma: float
    t: float
    results: List[Dict[str, Any]] = Field(description="各方法的 EvalResult 记录")
    functional_equation_residual: Optional[float] = None

    def csv_rows(self) -> List[Dict[str, object]]:
        return [
            {
                "q": self.character["q"],
                "exponents": "-".join(str(e) for e in self.character["exponents"]),
                "sigma": self.sigma,
                "t": self.t,
                "method": r["method"],
                "value_re": r["value_re"],
                "value_im": r["value_im"],
                "abs_error_bound": r["abs_error_bound"],
                "terms_used": r["terms_used"],
            }
            for r in self.results
        ]


class GallagherMatrixReport(BaseModel):
    """多个特征上的 Gallagher 检验"""

    reports: List[GallagherReport]
    failures: int = Field(ge=0)

    def csv_rows(self) -> List[Dict[str, object]]:
        return [row for r in self.reports for row in r.csv_rows()]


class DetectorBatchReport(BaseModel):
    """多个零点上的检测器"""

    character: str
    reports: List[DetectorReport]

    def csv_rows(self) -> List[Dict[str, object]]:
        return [row for r in self.reports for row in r.csv_rows()]
