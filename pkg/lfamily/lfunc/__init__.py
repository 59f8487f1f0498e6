"""
L 函数求值：Hurwitz 预言机、近似函数方程、Dirichlet 多项式与磨光子
"""

from .evaluate import (
    completed_l,
    euler_product,
    functional_equation_residual,
    gamma_factor,
    l_derivative,
    l_derivative_crosscheck,
    l_derivative_fd,
    l_value_afe,
    l_value_oracle,
    l_values_batch,
)
from .hurwitz import hurwitz_batch, hurwitz_zeta, zeta_value
from .quadrature import QuadratureResult, gauss_legendre, integrate_panels
from .series import (
    MellinIdentity,
    coefficient_arrays,
    dirichlet_polynomial,
    dirichlet_polynomial_batch,
    mellin_identity,
    mellin_identity_residual,
    mollified_l,
    mollified_l_batch,
    mollifier_batch,
    mollifier_coefficients,
    smoothed_power_sum,
)
from .types import EvalMethod, EvalResult, MollifierCoefficients, SPoint

__all__ = [
    "completed_l",
    "euler_product",
    "functional_equation_residual",
    "gamma_factor",
    "l_derivative",
    "l_derivative_crosscheck",
    "l_derivative_fd",
    "l_value_afe",
    "l_value_oracle",
    "l_values_batch",
    "hurwitz_batch",
    "hurwitz_zeta",
    "zeta_value",
    "QuadratureResult",
    "gauss_legendre",
    "integrate_panels",
    "MellinIdentity",
    "coefficient_arrays",
    "dirichlet_polynomial",
    "dirichlet_polynomial_batch",
    "mellin_identity",
    "mellin_identity_residual",
    "mollified_l",
    "mollified_l_batch",
    "mollifier_batch",
    "mollifier_coefficients",
    "smoothed_power_sum",
    "EvalMethod",
    "EvalResult",
    "MollifierCoefficients",
    "SPoint",
]
