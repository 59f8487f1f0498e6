"""
Gauss 和与根数
"""

import cmath
import math

import numpy as np

from ..exceptions import DomainError
from .character import DirichletCharacter, character_table


def gauss_sum(chi: DirichletCharacter) -> complex:
    """
    τ(χ) = Σ_{a mod q} χ(a) e(a/q)

    Raises:
        DomainError: χ 非本原（此时 |τ| 一般不等于 √q）
    """
    if not chi.primitive:
        raise DomainError(
            f"gauss_sum 需要本原特征，{chi.label} 的导子为 {chi.conductor}",
            parameter="chi",
            value=chi.label,
        )
    q = chi.modulus
    a = np.arange(q, dtype=np.int64)
    terms = character_table(chi) * np.exp(2j * np.pi * a / q)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def root_number(chi: DirichletCharacter) -> complex:
    """ε(χ) = τ(χ) / (i^κ √q)，模为 1"""
    tau = gauss_sum(chi)
    return tau / ((1j ** chi.parity) * math.sqrt(chi.modulus))


def root_number_sqrt(chi: DirichletCharacter) -> complex:
    """ε(χ)^{1/2} 的固定分支（主辐角的一半）"""
    eps = root_number(chi)
    return cmath.exp(0.5j * cmath.phase(eps))
