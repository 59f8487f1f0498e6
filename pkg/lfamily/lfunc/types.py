"""
L 函数求值的数据模型
"""

from enum import Enum
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class SPoint(BaseModel):
    """复平面上的点 s = σ + it"""

    model_config = ConfigDict(frozen=True)

    sigma: float = Field(description="Re s")
    t: float = Field(default=0.0, description="Im s")

    @model_validator(mode="after")
    def _check_finite(self) -> "SPoint":
        if not (np.isfinite(self.sigma) and np.isfinite(self.t)):
            raise ValueError("s 必须有限")
        return self

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)

    @classmethod
    def of(cls, s: "PointLike") -> "SPoint":
        if isinstance(s, SPoint):
            return s
        s = complex(s)
        return cls(sigma=s.real, t=s.imag)


PointLike = Union[SPoint, complex, float, int]


def as_complex(s: PointLike) -> complex:
    return s.s if isinstance(s, SPoint) else complex(s)


class EvalMethod(str, Enum):
    """求值路径"""

    HURWITZ_ORACLE = "hurwitz_oracle"
    SMOOTHED_AFE = "smoothed_afe"
    FINITE_DIFFERENCE = "finite_difference"


class EvalResult(BaseModel):
    """求值结果及误差界"""

    value: complex = Field(description="函数值")
    abs_error_bound: float = Field(ge=0.0, description="绝对误差界")
    terms_used: int = Field(gt=0, description="使用的项数")
    method: EvalMethod = Field(description="求值路径")

    def record(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "abs": abs(self.value),
            "abs_error_bound": self.abs_error_bound,
            "terms_used": self.terms_used,
            "method": self.method.value,
        }


class MollifierCoefficients(BaseModel):
    """𝔪_{X,n} = Σ_{d|n, d≤X} μ(d)，n = 1..nmax"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    X: float = Field(ge=2.0, description="截断参数 X")
    nmax: int = Field(ge=1, description="最大下标")
    coefficients: np.ndarray = Field(description="长度 nmax+1 的整数数组，下标 0 不用")

    @field_validator("coefficients")
    @classmethod
    def _check_shape(cls, v: np.ndarray) -> np.ndarray:
        if v.ndim != 1 or v.dtype.kind != "i":
            raise ValueError("coefficients 必须是一维整数数组")
        return v

    def __getitem__(self, n: int) -> int:
        return int(self.coefficients[n])

    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        """非零系数的 (n, 𝔪_{X,n})"""
        n = np.nonzero(self.coefficients)[0]
        return n, self.coefficients[n]
