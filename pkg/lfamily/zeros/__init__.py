"""
零点：幅角原理计数、临界线零点、零点检测器与零点密度上界
"""

from .models import (
    BoundEntry,
    Contour,
    CriticalZero,
    DetectorChoice,
    DetectorClass,
    DetectorParameters,
    DetectorReport,
    FamilyZeroCountReport,
    ZeroCountReport,
    ZeroDensityTable,
    ZeroListReport,
)
from .density import (
    choice_v,
    detector_parameters,
    large_x_threshold,
    large_y_threshold,
    zero_count_bound,
    zero_density_bounds,
)
from .critical import critical_line_zeros, rotated_values, zero_gap_estimate
from .counting import count_zeros_box, count_zeros_rectangle, family_zero_count
from .detector import classify, detector_check, spaced_zero_subset

__all__ = [
    "BoundEntry",
    "Contour",
    "CriticalZero",
    "DetectorChoice",
    "DetectorClass",
    "DetectorParameters",
    "DetectorReport",
    "FamilyZeroCountReport",
    "ZeroCountReport",
    "ZeroDensityTable",
    "ZeroListReport",
    "choice_v",
    "detector_parameters",
    "large_x_threshold",
    "large_y_threshold",
    "zero_count_bound",
    "zero_density_bounds",
    "critical_line_zeros",
    "rotated_values",
    "zero_gap_estimate",
    "count_zeros_box",
    "count_zeros_rectangle",
    "family_zero_count",
    "classify",
    "detector_check",
    "spaced_zero_subset",
]
