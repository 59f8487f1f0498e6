"""
Dirichlet 特征、特征族与 Gauss 和测试
"""

import cmath
import math

import numpy as np
import pytest

from lfamily.arith import euler_phi, unit_group
from lfamily.characters import (
    char_value,
    character_from_key,
    character_table,
    conductor_and_primitivity,
    conductor_from_components,
    conjugate,
    enumerate_characters,
    enumerate_family,
    family_oracle,
    gauss_sum,
    is_conjugate_closed,
    is_principal,
    is_real,
    root_number,
)
from lfamily.exceptions import DomainError


class TestCharacter:
    def test_counts(self):
        for q in (1, 2, 3, 8, 12, 15, 60):
            assert len(enumerate_characters(q)) == euler_phi(q)

    def test_orders_mod_5(self):
        assert sorted(chi.order for chi in enumerate_characters(5)) == [1, 2, 4, 4]

    def test_value_at_generator(self, chi7_cubic):
        g = unit_group(7).generators[0]
        assert chi7_cubic.order == 3
        assert abs(char_value(chi7_cubic, g) - cmath.exp(2j * math.pi / 3)) < 1e-15

    def test_non_units_vanish(self, chi3):
        assert char_value(chi3, 2) == -1
        assert char_value(chi3, 3) == 0
        assert char_value(chi3, 0) == 0

    def test_multiplicative(self):
        rng = np.random.default_rng(3)
        for chi in enumerate_characters(60)[:8]:
            for m, n in rng.integers(1, 10_000, size=(200, 2)):
                assert abs(chi(int(m) * int(n)) - chi(int(m)) * chi(int(n))) < 1e-12

    def test_orthogonality(self):
        for q in range(2, 100):
            for chi in enumerate_characters(q):
                total = character_table(chi).sum()
                expected = euler_phi(q) if is_principal(chi) else 0
                assert abs(total - expected) < 1e-9

    def test_key_and_label(self):
        chi = character_from_key(15, [1, 3])
        assert chi.key == (15, (1, 3))
        assert chi.label == "15.1-3"
        assert chi.record()["order"] == chi.order

    def test_bad_exponent_length(self):
        with pytest.raises(DomainError):
            character_from_key(15, [1])

    def test_modulus_cap(self):
        with pytest.raises(DomainError):
            enumerate_characters(10 ** 6)


class TestConductor:
    def test_principal(self):
        assert conductor_and_primitivity(character_from_key(12, [0, 0])) == (1, False)

    def test_primitive_mod_4(self, chi4):
        assert conductor_and_primitivity(chi4) == (4, True)

    def test_induced_from_mod_3(self):
        chi = character_from_key(9, [3])
        assert chi.order == 2
        assert conductor_and_primitivity(chi) == (3, False)

    def test_local_product_agrees(self):
        for q in range(2, 120):
            for chi in enumerate_characters(q):
                assert conductor_from_components(chi) == chi.conductor


class TestFamily:
    def test_small_families(self):
        assert [chi.modulus for chi in enumerate_family(2, 2)] == [3, 4]
        assert len(enumerate_family(3, 2)) == 0
        assert [chi.modulus for chi in enumerate_family(3, 6)] == [7, 7, 9, 9]
        assert len(enumerate_family(4, 4)) == 2

    @pytest.mark.parametrize("j", [2, 3, 4, 6])
    @pytest.mark.parametrize("Q", [10, 50])
    def test_matches_oracle(self, j, Q):
        assert enumerate_family(j, Q).members == family_oracle(j, Q).members

    @pytest.mark.slow
    @pytest.mark.parametrize("j", [2, 3, 4, 6])
    def test_matches_oracle_large(self, j):
        assert enumerate_family(j, 100).members == family_oracle(j, 100).members

    def test_members_are_primitive_of_exact_order(self):
        family = enumerate_family(6, 30)
        for chi in family:
            assert chi.primitive
            assert chi.order == 6
            assert 30 < chi.modulus <= 60

    def test_conjugate_closed(self):
        for j in (2, 3, 4, 6):
            assert is_conjugate_closed(enumerate_family(j, 40))

    def test_real_family_is_real_valued(self):
        for chi in enumerate_family(2, 30):
            assert np.all(np.abs(character_table(chi).imag) < 1e-15)

    def test_is_real(self, chi7_cubic):
        assert all(is_real(chi) for chi in enumerate_family(2, 20))
        assert not is_real(chi7_cubic)

    def test_non_integer_q(self):
        assert [chi.modulus for chi in enumerate_family(2, 2.5)] == [3, 4, 5]


class TestGaussSum:
    def test_known_values(self, chi3, chi4):
        assert abs(gauss_sum(chi3) - 1j * math.sqrt(3)) < 1e-12
        assert abs(gauss_sum(chi4) - 2j) < 1e-12
        assert abs(gauss_sum(character_from_key(5, [2])) - math.sqrt(5)) < 1e-12

    def test_modulus_is_sqrt_q(self):
        for q in range(3, 80):
            for chi in enumerate_characters(q):
                if chi.primitive:
                    assert abs(abs(gauss_sum(chi)) - math.sqrt(q)) < 1e-9

    def test_root_numbers(self, chi3, chi4, chi7_cubic):
        assert abs(root_number(chi3) - 1) < 1e-12
        assert abs(root_number(chi4) - 1) < 1e-12
        eps = root_number(chi7_cubic)
        assert abs(abs(eps) - 1) < 1e-12
        assert abs(root_number(conjugate(chi7_cubic)) - eps.conjugate()) < 1e-12

    def test_rejects_imprimitive(self):
        with pytest.raises(DomainError):
            gauss_sum(character_from_key(9, [3]))
