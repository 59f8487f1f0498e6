"""
大筛、Gallagher 与离散均值测试
"""

import math

import numpy as np
import pytest

from lfamily.characters import enumerate_family
from lfamily.exceptions import DomainError, SpacingError
from lfamily.lfunc import integrate_panels
from lfamily.moments import SpacingStrategy, WellSpacedSet, generate_wellspaced, random_wellspaced
from lfamily.sieve import (
    CoefficientVector,
    delta_bound,
    delta_bound_terms,
    gallagher_check,
    kernel_matrix,
    meanvalue_check,
    neighbour_counts,
    random_point_sets,
    random_unit_coefficients,
    sieve_lhs_discrete,
    sieve_lhs_discrete_reference,
    sieve_lhs_integrated,
    sieve_lhs_integrated_quadrature,
    sieve_scaling_probe,
    single_coefficient,
)


class TestDeltaBound:
    def test_real_family(self):
        assert delta_bound(2, 10, 10, 100) == 200

    def test_cubic_first_term(self):
        assert delta_bound_terms(3, 1, 1, 1)[0] == 2
        assert all(term >= 1 for term in delta_bound_terms(3, 1, 1, 1))

    def test_quartic_minimum(self):
        expected = 16 + 16 ** (1 / 3) + 1
        assert delta_bound(4, 16, 1, 1) == pytest.approx(expected, rel=1e-12)
        assert delta_bound(4, 16, 1, 1) == min(delta_bound_terms(4, 16, 1, 1))

    def test_sextic_equals_cubic(self):
        assert delta_bound(6, 20, 3, 50) == delta_bound(3, 20, 3, 50)

    def test_unsupported_order(self):
        with pytest.raises(DomainError):
            delta_bound(5, 10, 10, 10)

    def test_rejects_small_parameters(self):
        with pytest.raises(DomainError):
            delta_bound(2, 0.5, 10, 10)


class TestCoefficients:
    def test_random_vector_is_seeded(self):
        a = random_unit_coefficients(20, seed=5)
        b = random_unit_coefficients(20, seed=5)
        assert a.values == b.values
        assert a.norm == pytest.approx(len(a.indices))
        assert all(20 < n <= 40 for n in a.indices)

    def test_zero_vector_rejected(self):
        with pytest.raises(DomainError):
            CoefficientVector(N=10, indices=(11,), values=(0j,))

    def test_non_squarefree_index_rejected(self):
        with pytest.raises(DomainError):
            CoefficientVector(N=10, indices=(12,), values=(1 + 0j,))

    def test_index_outside_dyadic_range(self):
        with pytest.raises(DomainError):
            single_coefficient(5, 10)


class TestDiscreteSieve:
    def test_single_coefficient(self):
        family = enumerate_family(2, 10)
        report = sieve_lhs_discrete(2, 10, single_coefficient(1, 1, dyadic=False), family=family)
        assert report.lhs == pytest.approx(len(family))

    def test_single_large_prime(self):
        family = enumerate_family(3, 10)
        report = sieve_lhs_discrete(3, 10, single_coefficient(23, 12, value=2.0), family=family)
        assert report.lhs == pytest.approx(4 * len(family))

    def test_cancellation(self):
        coeffs = CoefficientVector(N=5, indices=(1, 2, 5), values=(1 + 0j, 2 + 0j, -1 + 0j), dyadic=False)
        report = sieve_lhs_discrete(2, 2, coeffs)
        assert report.lhs == pytest.approx(0.0, abs=1e-24)
        assert report.ratio == pytest.approx(0.0, abs=1e-24)

    @pytest.mark.parametrize("j", [2, 3, 4, 6])
    def test_matches_reference(self, j):
        coeffs = random_unit_coefficients(10, seed=1)
        fast = sieve_lhs_discrete(j, 10, coeffs).lhs
        slow = sieve_lhs_discrete_reference(j, 10, coeffs)
        assert abs(fast - slow) <= 1e-9 * max(1.0, slow)

    def test_ratio_uses_discrete_bound(self):
        coeffs = random_unit_coefficients(10, seed=2)
        report = sieve_lhs_discrete(2, 10, coeffs)
        assert report.delta_bound == delta_bound(2, 10, 1, 10)
        assert report.ratio == pytest.approx(report.lhs / (coeffs.norm * report.delta_bound))


class TestIntegratedSieve:
    def test_diagonal(self):
        family = enumerate_family(2, 10)
        report = sieve_lhs_integrated(2, 10, 3.0, single_coefficient(1, 1, dyadic=False), family=family)
        assert report.lhs == pytest.approx(6.0 * len(family))

    def test_small_t_limit(self):
        coeffs = random_unit_coefficients(10, seed=3)
        T = 1e-6
        integrated = sieve_lhs_integrated(2, 10, T, coeffs).lhs
        discrete = sieve_lhs_discrete(2, 10, coeffs).lhs
        assert integrated / T == pytest.approx(2 * discrete, rel=1e-6)

    def test_rejects_non_positive_t(self):
        with pytest.raises(DomainError):
            sieve_lhs_integrated(2, 10, 0.0, random_unit_coefficients(10, seed=0))

    def test_matches_quadrature(self):
        coeffs = random_unit_coefficients(20, seed=4)
        closed = sieve_lhs_integrated(3, 6, 5.0, coeffs).lhs
        numeric = sieve_lhs_integrated_quadrature(3, 6, 5.0, coeffs)
        assert abs(closed - numeric) <= 1e-6 * numeric

    def test_kernel_entries(self):
        rng = np.random.default_rng(8)
        for n, m in rng.integers(1, 200, size=(20, 2)):
            T = float(rng.uniform(0.5, 20))
            kernel = kernel_matrix(np.array([n, m]), T)[0, 1]
            log_ratio = math.log(n / m)
            numeric = integrate_panels(
                lambda t: np.exp(1j * t * log_ratio), -T, T, 0.25, rel_tol=1e-12,
            ).value
            assert abs(kernel - numeric.real) < 1e-9
            assert abs(numeric.imag) < 1e-9

    def test_scaling_probe_small(self):
        report = sieve_scaling_probe(Qs=(8,), Ns=(8,), Ts=(4,), trials=5)
        assert len(report.cells) == 1
        assert report.all_within

    @pytest.mark.slow
    def test_scaling_probe_full(self):
        assert sieve_scaling_probe().all_within


class TestGallagher:
    def test_constant_function(self):
        points = WellSpacedSet(delta=1.0, T=1.0, points=(0.0,))
        report = gallagher_check(1.0, 1.0, points, coeffs={1: 1.0})
        assert report.lhs == pytest.approx(1.0)
        assert report.rhs == pytest.approx(2.0)
        assert report.holds

    def test_empty_set(self):
        report = gallagher_check(1.0, 1.0, WellSpacedSet(delta=1.0, T=1.0, points=()), coeffs={1: 1.0})
        assert report.lhs == 0
        assert report.holds

    def test_points_outside_interval(self):
        points = WellSpacedSet(delta=1.0, T=5.0, points=(3.0,))
        with pytest.raises(SpacingError):
            gallagher_check(1.0, 1.0, points, coeffs={1: 1.0})

    def test_requires_target(self):
        with pytest.raises(DomainError):
            gallagher_check(1.0, 1.0, WellSpacedSet(delta=1.0, T=1.0, points=()))

    @pytest.mark.parametrize("delta", [0.25, 0.5, 1.0, 2.0])
    def test_random_polynomials(self, delta, chi7_cubic):
        for seed in range(5):
            coeffs = random_unit_coefficients(20, seed=seed)
            points = random_wellspaced(10.0, delta, seed=seed)
            report = gallagher_check(10.0, delta, points, chi=chi7_cubic, coeffs=coeffs)
            assert report.target == "dirichlet_poly"
            assert report.holds

    def test_l_function(self, chi5_quartic):
        points = generate_wellspaced(chi5_quartic, 5.0, 0.5, SpacingStrategy.GREEDY_LOCAL_MAXIMA)
        report = gallagher_check(5.0, 0.5, points, chi=chi5_quartic)
        assert report.target == "l_on_critical_line"
        assert report.holds

    @pytest.mark.slow
    @pytest.mark.parametrize("j", [2, 3])
    @pytest.mark.parametrize("index", range(10))
    @pytest.mark.parametrize("delta", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("T", [5.0, 10.0])
    @pytest.mark.parametrize("strategy", list(SpacingStrategy))
    def test_l_function_matrix(self, j, index, delta, T, strategy):
        chi = enumerate_family(j, 40).members[index]
        points = generate_wellspaced(chi, T, delta, strategy)
        report = gallagher_check(T, delta, points, chi=chi)
        assert report.lhs <= report.rhs + 1e-6 * report.rhs

    def test_neighbour_counts(self):
        counts = neighbour_counts(np.array([0.0, 0.4, 1.5]), 0.5)
        assert counts.tolist() == [2, 2, 1]


class TestMeanValue:
    def test_empty_sets(self):
        coeffs = random_unit_coefficients(10, seed=0)
        report = meanvalue_check(2, 10, 10.0, 1.0, {}, coeffs, 0.5)
        assert report.lhs == 0
        assert report.point_count == 0

    def test_single_point_matches_discrete_sieve(self):
        family = enumerate_family(2, 10)
        coeffs = random_unit_coefficients(10, seed=6)
        sigma0 = 0.6
        sets = {chi.key: [(sigma0, 0.0)] for chi in family}
        report = meanvalue_check(2, 10, 1.0, 1.0, sets, coeffs, sigma0, family=family)
        expected = sieve_lhs_discrete(2, 10, coeffs.damped(sigma0), family=family).lhs
        assert report.lhs == pytest.approx(expected, rel=1e-12)

    def test_random_sets(self):
        family = enumerate_family(2, 10)
        coeffs = random_unit_coefficients(10, seed=7)
        sets = random_point_sets(family, 10.0, 1.0, 0.6, seed=7)
        report = meanvalue_check(2, 10, 10.0, 1.0, sets, coeffs, 0.6, family=family)
        assert report.ratio_sieve is not None and math.isfinite(report.ratio_sieve)
        assert report.ratio_count is not None and math.isfinite(report.ratio_count)

    def test_sigma_out_of_range(self, chi3):
        family = enumerate_family(2, 2)
        coeffs = random_unit_coefficients(10, seed=0)
        with pytest.raises(DomainError):
            meanvalue_check(2, 2, 10.0, 1.0, {chi3.key: [(0.4, 0.0)]}, coeffs, 0.5, family=family)

    def test_unknown_character(self, chi7_cubic):
        coeffs = random_unit_coefficients(10, seed=0)
        with pytest.raises(DomainError):
            meanvalue_check(2, 2, 10.0, 1.0, {chi7_cubic.key: [(0.5, 0.0)]}, coeffs, 0.5)

    def test_spacing(self, chi3):
        coeffs = random_unit_coefficients(10, seed=0)
        with pytest.raises(SpacingError):
            meanvalue_check(2, 2, 10.0, 1.0, {chi3.key: [(0.5, 0.0), (0.5, 0.5)]}, coeffs, 0.5)
