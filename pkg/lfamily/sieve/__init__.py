"""
大筛：Δ_j 公式、左端暴力计算、Gallagher 与均值检验
"""

from .bounds import SUPPORTED_ORDERS, delta_bound, delta_bound_terms
from .models import (
    CoefficientVector,
    GallagherReport,
    MeanValueReport,
    ProbeCell,
    SieveProbeReport,
    SieveReport,
)
from .large_sieve import (
    kernel_matrix,
    random_unit_coefficients,
    sieve_lhs_discrete,
    sieve_lhs_discrete_reference,
    sieve_lhs_integrated,
    sieve_lhs_integrated_quadrature,
    sieve_scaling_probe,
    single_coefficient,
    squarefree_range,
)
from .gallagher import gallagher_check, neighbour_counts
from .meanvalue import meanvalue_check, random_point_sets

__all__ = [
    "SUPPORTED_ORDERS",
    "delta_bound",
    "delta_bound_terms",
    "CoefficientVector",
    "GallagherReport",
    "MeanValueReport",
    "ProbeCell",
    "SieveProbeReport",
    "SieveReport",
    "kernel_matrix",
    "random_unit_coefficients",
    "sieve_lhs_discrete",
    "sieve_lhs_discrete_reference",
    "sieve_lhs_integrated",
    "sieve_lhs_integrated_quadrature",
    "sieve_scaling_probe",
    "single_coefficient",
    "squarefree_range",
    "gallagher_check",
    "neighbour_counts",
    "meanvalue_check",
    "random_point_sets",
]
