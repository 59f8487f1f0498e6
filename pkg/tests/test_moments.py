"""
族的矩、良好间隔点集、标度拟合与去平方分块测试
"""

import math

import numpy as np
import pytest

from lfamily.characters import enumerate_family
from lfamily.exceptions import DomainError, SpacingError
from lfamily.lfunc import l_values_batch
from lfamily.moments import (
    SpacingStrategy,
    WellSpacedSet,
    critical_length_reduction,
    discrete_family_moment,
    discrete_probe_bound,
    exponent_fit,
    family_moment_fixed_t,
    family_wellspaced,
    generate_wellspaced,
    grid_points,
    hardy_littlewood_second_moment,
    integrated_derivative_moment,
    integrated_family_moment,
    random_wellspaced,
    run_scaling_grid,
    square_part_blocks,
    square_part_comparison,
)


class TestFixedT:
    def test_empty_family(self):
        report = family_moment_fixed_t(3, 2, 0.0)
        assert report.value == 0
        assert report.family_size == 0

    def test_two_smallest_real_characters(self, chi3, chi4):
        report = family_moment_fixed_t(2, 2, 0.0)
        expected = sum(abs(l_values_batch(chi, [0.5])[0][0]) ** 2 for chi in (chi3, chi4))
        assert report.family_size == 2
        assert abs(report.value - expected) < 1e-12

    def test_fourth_power_is_square_of_second(self):
        second = family_moment_fixed_t(3, 6, 2.5, k=1)
        fourth = family_moment_fixed_t(3, 6, 2.5, k=2)
        squares = sum(item.value ** 2 for item in second.per_character)
        assert abs(fourth.value - squares) < 1e-10 * max(1.0, squares)


class TestIntegrated:
    def test_zero_length(self):
        assert integrated_family_moment(2, 2, 0.0).value == 0

    def test_small_interval_matches_point_value(self):
        T = 1e-6
        report = integrated_family_moment(2, 2, T)
        point = family_moment_fixed_t(2, 2, 0.0).value
        assert abs(report.value / (2 * T) - point) < 1e-3 * point

    def test_negative_t(self):
        with pytest.raises(DomainError):
            integrated_family_moment(2, 2, -1.0)

    def test_sigma_window(self):
        with pytest.raises(DomainError):
            integrated_family_moment(2, 10, 10.0, sigma=0.9)

    def test_per_character_sum(self):
        report = integrated_family_moment(3, 6, 2.0)
        assert report.family_size == 4
        assert abs(report.value - math.fsum(item.value for item in report.per_character)) < 1e-12

    def test_against_trapezoid(self):
        T = 3.0
        report = integrated_family_moment(2, 2, T)
        ts = np.linspace(-T, T, 6001)
        family = enumerate_family(2, 2)
        trapezoid = getattr(np, "trapezoid", None) or np.trapz
        total = sum(trapezoid(np.abs(l_values_batch(chi, 0.5 + 1j * ts)[0]) ** 2, ts) for chi in family)
        assert abs(report.value - total) < 1e-4 * total

    def test_derivative_moment_positive(self):
        report = integrated_derivative_moment(2, 2, 2.0)
        assert report.mode == "derivative"
        assert report.value > 0

    @pytest.mark.slow
    def test_monotone_in_t(self):
        a = integrated_family_moment(2, 10, 10.0)
        b = integrated_family_moment(2, 10, 20.0)
        assert b.value >= a.value


class TestDiscrete:
    def test_empty_sets(self):
        report = discrete_family_moment(2, 2, {})
        assert report.value == 0
        assert report.delta is None

    def test_singleton_equals_fixed_t(self):
        family = enumerate_family(2, 10)
        sets = {chi.key: WellSpacedSet(delta=1.0, T=1.0, points=(0.0,)) for chi in family}
        discrete = discrete_family_moment(2, 10, sets, family=family)
        fixed = family_moment_fixed_t(2, 10, 0.0, family=family)
        assert discrete.value == fixed.value

    def test_mismatched_parameters(self, chi3, chi4):
        sets = {
            chi3.key: WellSpacedSet(delta=1.0, T=2.0, points=(0.0,)),
            chi4.key: WellSpacedSet(delta=0.5, T=2.0, points=(0.0,)),
        }
        with pytest.raises(DomainError):
            discrete_family_moment(2, 2, sets)

    def test_rejects_character_outside_family(self, chi3, chi7_cubic):
        sets = {
            chi3.key: WellSpacedSet(delta=1.0, T=2.0, points=(0.0,)),
            chi7_cubic.key: WellSpacedSet(delta=1.0, T=2.0, points=(0.0,)),
        }
        with pytest.raises(DomainError) as info:
            discrete_family_moment(2, 2, sets)
        assert info.value.value == chi7_cubic.key

    def test_comparison_scales_integrated_moment(self):
        family = enumerate_family(2, 2)
        sets = family_wellspaced(family, 2.0, 1.0, SpacingStrategy.GREEDY_LOCAL_MAXIMA)
        report = discrete_family_moment(2, 2, sets, family=family, compare=True)
        integrated = integrated_family_moment(2, 2, 2.0, family=family)
        assert report.comparison == pytest.approx(2 * integrated.value, rel=1e-12)
        assert report.value > 0


class TestWellSpaced:
    def test_spacing_violation(self):
        with pytest.raises(SpacingError):
            WellSpacedSet(delta=1.0, T=5.0, points=(0.0, 0.5))

    def test_interval_violation(self):
        with pytest.raises(SpacingError):
            WellSpacedSet(delta=1.0, T=2.0, points=(1.9,))

    def test_grid(self):
        points = grid_points(5.0, 1.0)
        assert len(points) == 10
        assert points[0] == pytest.approx(-4.5)
        assert points[-1] == pytest.approx(4.5)

    def test_greedy_spacing(self, chi5_quartic):
        ws = generate_wellspaced(chi5_quartic, 10.0, 0.5, SpacingStrategy.GREEDY_LOCAL_MAXIMA)
        pts = ws.as_array()
        assert len(pts) > 0
        assert np.all(np.diff(pts) >= 0.5 - 1e-12)

    def test_rejects_delta_above_t(self, chi4):
        with pytest.raises(DomainError):
            generate_wellspaced(chi4, 0.5, 1.0)

    def test_random_is_seeded(self):
        a = random_wellspaced(10.0, 0.5, seed=4)
        b = random_wellspaced(10.0, 0.5, seed=4)
        assert a.points == b.points
        assert np.all(np.diff(a.as_array()) >= 0.5 - 1e-12)


class TestHardyLittlewood:
    def test_unit_length(self):
        report = hardy_littlewood_second_moment(1.0)
        assert report.value > 0
        assert report.main_term_ratio is None

    @pytest.mark.parametrize("T", [0.0, 0.5, 1000.0])
    def test_rejects_t_out_of_range(self, T):
        with pytest.raises(DomainError):
            hardy_littlewood_second_moment(T)

    def test_above_evaluation_cap(self):
        report = hardy_littlewood_second_moment(300.0, T0=295.0)
        assert report.value > 0
        assert report.T == 300.0

    def test_additive(self):
        whole = hardy_littlewood_second_moment(40.0)
        left = hardy_littlewood_second_moment(20.0)
        right = hardy_littlewood_second_moment(40.0, T0=20.0)
        assert abs(whole.value - left.value - right.value) < 1e-6 * whole.value

    @pytest.mark.slow
    def test_main_term(self):
        report = hardy_littlewood_second_moment(200.0)
        assert hardy_littlewood_second_moment(50.0).main_term_ratio < report.main_term_ratio
        assert 0.6 < report.main_term_ratio < 1.0
        assert abs(report.refined_ratio - 1) < 0.05

    @pytest.mark.slow
    def test_full_range_above_evaluation_cap(self):
        report = hardy_littlewood_second_moment(300.0)
        assert report.main_term_ratio is not None
        assert abs(report.refined_ratio - 1) < 0.05


class TestExponentFit:
    def test_exact_power_law(self):
        samples = [(Q, T, 3.0 * Q ** 2 * T ** 3) for Q in (2.0, 4.0, 8.0) for T in (1.0, 3.0)]
        fit = exponent_fit(samples)
        assert fit.alpha == pytest.approx(2.0, abs=1e-10)
        assert fit.beta == pytest.approx(3.0, abs=1e-10)
        assert math.exp(fit.constant) == pytest.approx(3.0, rel=1e-10)

    def test_constant_samples(self):
        fit = exponent_fit([(Q, T, 5.0) for Q in (2.0, 3.0) for T in (1.0, 2.0)])
        assert fit.alpha == pytest.approx(0.0, abs=1e-12)
        assert fit.beta == pytest.approx(0.0, abs=1e-12)

    def test_too_few_samples(self):
        with pytest.raises(DomainError):
            exponent_fit([(2.0, 1.0, 1.0), (3.0, 2.0, 1.0), (4.0, 1.0, 2.0)])

    def test_collinear(self):
        with pytest.raises(DomainError):
            exponent_fit([(x, x, x) for x in (1.0, 2.0, 4.0, 8.0)])

    def test_non_positive_value(self):
        with pytest.raises(DomainError):
            exponent_fit([(Q, T, 0.0) for Q in (2.0, 3.0) for T in (1.0, 2.0)])


class TestSquarePart:
    def test_blocks_partition_dyadic_range(self):
        N = 50
        covered = sorted(int(n) * ell * ell for ell, ns in square_part_blocks(N) for n in ns)
        assert covered == list(range(51, 101))

    def test_degenerate(self):
        report = square_part_comparison(2, 0.5, 0.5, 0.0)
        assert report.degenerate
        assert report.rhs == 0
        assert report.ratio is None

    def test_finite_ratio(self):
        report = square_part_comparison(3, 6, 4.0, 0.0, epsilon=0.1)
        assert report.lhs > 0
        assert report.rhs > 0
        assert report.ratio is not None and math.isfinite(report.ratio)

    def test_t_outside_range(self):
        with pytest.raises(DomainError):
            square_part_comparison(2, 10, 1.0, 2.0)

    def test_critical_length_reduction(self):
        report = critical_length_reduction(2, 10, 10)
        assert report.delta_value == pytest.approx(110.0)
        assert report.ratio == pytest.approx(1.1)
        assert report.t_condition


class TestScaling:
    def test_small_grid(self):
        report = run_scaling_grid([2], [3.0, 4.0], [1.0, 2.0], delta=1.0, workers=1)
        assert len(report.cells) == 4
        fit = report.fits["2"]
        assert fit is not None
        assert (3.0, 1.0) in report.flagged and (4.0, 1.0) in report.flagged
        assert all(c.discrete_ratio is not None for c in report.cells)
        assert discrete_probe_bound(report)

    @pytest.mark.slow
    def test_exponents_near_one(self):
        report = run_scaling_grid([2], [10.0, 20.0, 40.0], [5.0, 10.0, 20.0], probe=False)
        fit = report.fits["2"]
        assert 0.8 < fit.alpha < 1.6
        assert 0.8 < fit.beta < 1.6
