"""
经验标度指数拟合
"""

from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from ..exceptions import DomainError
from .models import ScalingFit, ScalingSample

SampleLike = Union[ScalingSample, Tuple[float, float, float], Sequence[float]]


def exponent_fit(samples: Iterable[SampleLike]) -> ScalingFit:
    """
    最小二乘拟合 log value ≈ c + α log Q + β log T

    Args:
        samples: (Q, T, value) 样本，至少 4 个，Q 和 T 至少各有 2 个不同值

    Raises:
        DomainError: 样本不足、值非正或设计矩阵退化
    """
    parsed = [s if isinstance(s, ScalingSample) else ScalingSample(Q=s[0], T=s[1], value=s[2]) for s in samples]
    if len(parsed) < 4:
        raise DomainError(f"至少需要 4 个样本，得到 {len(parsed)}", parameter="samples", value=len(parsed))
    if any(s.value <= 0 for s in parsed):
        raise DomainError("所有样本值必须为正才能取对数", parameter="samples")
    if len({s.Q for s in parsed}) < 2 or len({s.T for s in parsed}) < 2:
        raise DomainError("样本至少需要 2 个不同的 Q 和 2 个不同的 T", parameter="samples")

    design = np.column_stack([
        np.ones(len(parsed)),
        np.log([s.Q for s in parsed]),
        np.log([s.T for s in parsed]),
    ])
    target = np.log([s.value for s in parsed])
    coef, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < 3:
        raise DomainError("设计矩阵退化（log Q 与 log T 共线）", parameter="samples")
    residuals = target - design @ coef
    return ScalingFit(
        samples=parsed,
        constant=float(coef[0]),
        alpha=float(coef[1]),
        beta=float(coef[2]),
        max_residual=float(np.max(np.abs(residuals))),
        residuals=[float(r) for r in residuals],
    )
