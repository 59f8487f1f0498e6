"""
整数与积性函数基础模块
"""

from .factor import (
    Factorization,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_squarefree,
    moebius,
    moebius_table,
    prime_sieve,
    squarefree_decompose,
    squarefree_mask,
    tau_k,
    tau_k_table,
)
from .unit_group import UnitComponent, UnitGroupStructure, discrete_log, dlog_table, multiplicative_order, unit_group

__all__ = [
    "Factorization",
    "divisors",
    "euler_phi",
    "factorize",
    "is_prime",
    "is_squarefree",
    "moebius",
    "moebius_table",
    "prime_sieve",
    "squarefree_decompose",
    "squarefree_mask",
    "tau_k",
    "tau_k_table",
    "UnitComponent",
    "UnitGroupStructure",
    "discrete_log",
    "dlog_table",
    "multiplicative_order",
    "unit_group",
]
