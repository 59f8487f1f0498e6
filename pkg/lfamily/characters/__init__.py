"""
Dirichlet 特征、特征族与 Gauss 和
"""

from .character import (
    DirichletCharacter,
    char_value,
    char_values,
    character_from_key,
    character_table,
    conductor_and_primitivity,
    conductor_from_components,
    conjugate,
    enumerate_characters,
    is_principal,
    is_real,
)
from .family import CharacterFamily, enumerate_family, family_oracle, is_conjugate_closed
from .gauss import gauss_sum, root_number, root_number_sqrt

__all__ = [
    "DirichletCharacter",
    "char_value",
    "char_values",
    "character_from_key",
    "character_table",
    "conductor_and_primitivity",
    "conductor_from_components",
    "conjugate",
    "enumerate_characters",
    "is_principal",
    "is_real",
    "CharacterFamily",
    "enumerate_family",
    "family_oracle",
    "is_conjugate_closed",
    "gauss_sum",
    "root_number",
    "root_number_sqrt",
]
