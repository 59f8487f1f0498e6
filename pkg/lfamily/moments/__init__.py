"""
特征族的矩：固定 t、积分、离散、导数矩、Hardy–Littlewood 积分与标度实验

导入顺序：models、wellspaced、family_moments 须先于 square_part（后者经由 sieve 包回到本包）
"""

from .models import (
    SPACING_SLACK,
    CharacterMoment,
    CriticalLengthReport,
    HardyLittlewoodReport,
    MomentReport,
    ScalingCell,
    ScalingFit,
    ScalingReport,
    ScalingSample,
    SquarePartComparison,
    WellSpacedSet,
    check_wellspaced,
)
from .wellspaced import SpacingStrategy, family_wellspaced, generate_wellspaced, grid_points, random_wellspaced
from .family_moments import (
    check_sigma,
    discrete_family_moment,
    family_moment_fixed_t,
    integrated_derivative_moment,
    integrated_family_moment,
    power_values,
)
from .hardy_littlewood import EULER_GAMMA, hardy_littlewood_second_moment, refined_main_term
from .fit import exponent_fit
from .square_part import critical_length_reduction, square_part_blocks, square_part_comparison
from .scaling import discrete_probe_bound, run_scaling_grid

__all__ = [
    "SPACING_SLACK",
    "CharacterMoment",
    "CriticalLengthReport",
    "HardyLittlewoodReport",
    "MomentReport",
    "ScalingCell",
    "ScalingFit",
    "ScalingReport",
    "ScalingSample",
    "SquarePartComparison",
    "WellSpacedSet",
    "check_wellspaced",
    "SpacingStrategy",
    "family_wellspaced",
    "generate_wellspaced",
    "grid_points",
    "random_wellspaced",
    "check_sigma",
    "discrete_family_moment",
    "family_moment_fixed_t",
    "integrated_derivative_moment",
    "integrated_family_moment",
    "power_values",
    "EULER_GAMMA",
    "hardy_littlewood_second_moment",
    "refined_main_term",
    "exponent_fit",
    "critical_length_reduction",
    "square_part_blocks",
    "square_part_comparison",
    "discrete_probe_bound",
    "run_scaling_grid",
]
