"""
零点计数、临界线零点、检测器与零点密度上界测试
"""

import math

import pytest

from lfamily.characters import character_from_key, conjugate, enumerate_characters, enumerate_family
from lfamily.core.cache import ResultCache
from lfamily.exceptions import (
    ContourNearZeroError,
    DomainError,
    InternalConsistencyError,
    WindingRejectedError,
)
from lfamily.lfunc import mollified_l
from lfamily.sieve import delta_bound
from lfamily.zeros import (
    Contour,
    CriticalZero,
    DetectorClass,
    ZeroCountReport,
    choice_v,
    classify,
    count_zeros_box,
    count_zeros_rectangle,
    critical_line_zeros,
    detector_check,
    detector_parameters,
    family_zero_count,
    large_x_threshold,
    large_y_threshold,
    spaced_zero_subset,
    zero_count_bound,
    zero_density_bounds,
)
from lfamily.zeros import critical as critical_module

FIRST_ZERO_CHI4 = 6.020948904697596


def _first_positive_zero(chi, T=8.0):
    return next(z for z in critical_line_zeros(chi, T) if z.gamma > 0)


class TestDensityBounds:
    def test_reference_values(self):
        table = zero_density_bounds(0.75, 10, 10)
        assert table.get("real_second_moment").value == pytest.approx(100 ** (2 / 3), rel=1e-12)
        assert table.get("real_classical").value == pytest.approx(100 ** (5 / 6), rel=1e-12)
        assert "V" in table.metadata

    @pytest.mark.parametrize("sigma", [0.55, 0.65, 0.75, 0.85, 0.95])
    @pytest.mark.parametrize("Q", [2, 10, 100])
    @pytest.mark.parametrize("T", [2, 10, 100])
    def test_second_moment_beats_classical(self, sigma, Q, T):
        values = zero_density_bounds(sigma, Q, T).values()
        assert values["real_second_moment"] <= values["real_classical"] * (1 + 1e-12)

    def test_limit_at_one(self):
        values = zero_density_bounds(1 - 1e-9, 10, 10).values()
        assert values.pop("real_classical") == pytest.approx(10.0, rel=1e-6)
        for name, value in values.items():
            assert value == pytest.approx(1.0, abs=1e-6), name

    def test_validity_flags(self):
        table = zero_density_bounds(0.75, 100, 4)
        assert not table.get("cubic_fourth_moment").valid
        assert not table.get("quartic_fourth_moment").valid
        assert table.get("cubic_second_moment").valid

    @pytest.mark.parametrize("sigma", [0.5, 1.0, 0.3])
    def test_sigma_range(self, sigma):
        with pytest.raises(DomainError):
            zero_density_bounds(sigma, 10, 10)

    def test_small_q(self):
        with pytest.raises(DomainError):
            zero_density_bounds(0.75, 1, 10)


class TestDetectorParameters:
    def test_choice_counts(self):
        assert len(detector_parameters(2, 0.75, 10, 10).choices) == 1
        assert len(detector_parameters(3, 0.75, 10, 10).choices) == 2
        assert len(detector_parameters(4, 0.75, 10, 10).choices) == 2

    def test_unsupported_order(self):
        with pytest.raises(DomainError):
            detector_parameters(5, 0.75, 10, 10)

    def test_large_x_threshold(self):
        assert large_x_threshold(0.75, 10, 10) == pytest.approx(1000.0, rel=1e-12)

    def test_count_bound_and_large_y(self):
        sigma, Q, T = 0.75, 10.0, 10.0
        V = choice_v(sigma, Q, T)
        assert V == pytest.approx(10 ** 0 * 10 ** 0.125, rel=1e-12)
        assert large_y_threshold(sigma, Q, T) == pytest.approx((V ** 2 * Q * math.sqrt(T)) ** 2, rel=1e-12)
        dx, dy = delta_bound(2, Q, T, 100), delta_bound(2, Q, T, 400)
        expected = math.sqrt(Q * T) * 400 ** -0.25 * math.sqrt(dx) + dx / 10 + dy / 20
        assert zero_count_bound(2, sigma, Q, T, 100, 400) == pytest.approx(expected, rel=1e-12)

    def test_flags(self):
        params = detector_parameters(2, 0.75, 10, 10)
        choice = params.choices[0]
        assert choice.X == pytest.approx(100.0)
        assert choice.x_le_y == (choice.X <= choice.Y)
        assert choice.within_cap == (choice.Y <= 100 ** params.K)
        assert choice.count_bound > 0


class TestCounting:
    def test_no_zeros_off_line(self, chi4):
        report = count_zeros_rectangle(chi4, 0.55, 10.0)
        assert report.count == 0
        assert report.winding_residual < 0.25
        assert report.halving_agrees

    def test_box_symmetry(self, chi4):
        upper = count_zeros_box(chi4, 0.3, 0.0, 10.0)
        lower = count_zeros_box(chi4, 0.3, -10.0, 0.0)
        assert upper.count == 1
        assert lower.count == upper.count

    def test_domain(self, chi4):
        with pytest.raises(DomainError):
            count_zeros_rectangle(chi4, 0.4, 10.0)
        with pytest.raises(DomainError):
            count_zeros_rectangle(chi4, 0.6, 0.0)

    def test_rejects_winding_far_from_integer(self, chi4, mocker):
        mocker.patch("lfamily.zeros.counting._winding", return_value=(0.4, 10))
        with pytest.raises(WindingRejectedError):
            count_zeros_rectangle(chi4, 0.6, 5.0)

    def test_step_halving_disagreement(self, chi4, mocker):
        mocker.patch("lfamily.zeros.counting._winding", side_effect=[(1.0, 10), (2.0, 10)])
        with pytest.raises(InternalConsistencyError) as info:
            count_zeros_rectangle(chi4, 0.6, 5.0)
        assert info.value.check == "step_halving"

    def test_family_perturbs_sigma(self, mocker):
        family = enumerate_family(2, 2)
        report = ZeroCountReport(
            character="x",
            sigma=0.55,
            T=10.0,
            count=0,
            winding=0.0,
            winding_residual=0.0,
            contour=Contour(sigma=0.55, right=1.5, t_lo=-10.0, t_hi=10.0),
            evaluations=0,
        )
        mock = mocker.patch(
            "lfamily.zeros.counting.count_zeros_rectangle",
            side_effect=[ContourNearZeroError(), report, report],
        )
        result = family_zero_count(2, 2, 0.55, 10.0, family=family, workers=1)
        assert result.per_character[0].perturbed
        assert not result.per_character[1].perturbed
        assert mock.call_args_list[1].args[1] == pytest.approx(0.55 + 1e-4)

    def test_empty_family(self):
        result = family_zero_count(3, 2, 0.55, 10.0)
        assert result.count == 0
        assert result.family_size == 0
        assert result.bounds is not None

    @pytest.mark.slow
    def test_cubic_character(self, chi7_cubic):
        assert count_zeros_rectangle(chi7_cubic, 0.6, 15.0).count == 0

    @pytest.mark.slow
    @pytest.mark.parametrize("j", [2, 3])
    def test_families_have_no_zeros_off_line(self, j):
        result = family_zero_count(j, 20, 0.55, 20.0)
        assert result.count == 0
        assert result.family_size > 0
        for report in result.per_character:
            assert report.winding_residual < 0.25
            assert report.halving_agrees

    def test_box_count_grows_with_height(self, chi4):
        counts = [count_zeros_box(chi4, 0.3, 0.0, T).count for T in (5.0, 10.0, 15.0)]
        assert counts == [0, 1, 3]

    def test_box_count_grows_as_sigma_decreases(self, chi4):
        counts = [count_zeros_box(chi4, sigma, 0.0, 10.0).count for sigma in (0.7, 0.45, 0.2)]
        assert counts == [0, 1, 1]

    @pytest.mark.slow
    def test_family_count_is_monotone(self):
        family = enumerate_family(2, 10)
        by_height = [family_zero_count(2, 10, 0.55, T, family=family).count for T in (5.0, 10.0)]
        by_sigma = [family_zero_count(2, 10, sigma, 5.0, family=family).count for sigma in (0.8, 0.65, 0.55)]
        assert by_height == sorted(by_height)
        assert by_sigma == sorted(by_sigma)


class TestCriticalZeros:
    def test_first_zeros(self, chi4):
        zeros = critical_line_zeros(chi4, 15.0)
        gammas = [z.gamma for z in zeros]
        assert len(zeros) == 6
        assert all(z.l_abs <= 1e-6 for z in zeros)
        assert min(g for g in gammas if g > 0) == pytest.approx(FIRST_ZERO_CHI4, abs=1e-7)
        for a, b in zip(gammas, reversed(gammas)):
            assert a == pytest.approx(-b, abs=1e-7)

    def test_grid_offset(self, chi4):
        base = critical_line_zeros(chi4, 15.0)
        shifted = critical_line_zeros(chi4, 15.0, offset=0.5)
        assert len(base) == len(shifted)
        for a, b in zip(base, shifted):
            assert abs(a.gamma - b.gamma) < 1e-7

    def test_conjugate_mirror(self, chi7_cubic):
        zeros = [z.gamma for z in critical_line_zeros(chi7_cubic, 15.0)]
        mirrored = sorted(-z.gamma for z in critical_line_zeros(conjugate(chi7_cubic), 15.0))
        assert len(zeros) == len(mirrored)
        for a, b in zip(zeros, mirrored):
            assert a == pytest.approx(b, abs=1e-7)

    def test_cache_hit(self, chi4, tmp_path, mocker):
        cache = ResultCache(tmp_path)
        first = critical_line_zeros(chi4, 8.0, cache=cache)
        spy = mocker.spy(critical_module, "rotated_values")
        second = critical_line_zeros(chi4, 8.0, cache=cache)
        assert spy.call_count == 0
        assert second == first

    def test_rejects_imprimitive(self):
        with pytest.raises(DomainError):
            critical_line_zeros(character_from_key(9, [3]), 5.0)


class TestDetector:
    def test_identity_at_zero(self, chi4):
        zero = _first_positive_zero(chi4)
        report = detector_check(chi4, zero, X=10, Y=30, C=2)
        assert report.identity_residual <= 1e-6
        assert report.r1_value + report.r2_value >= 0.8
        assert report.classification != DetectorClass.NEITHER

    def test_identity_away_from_zero(self, chi4):
        point = CriticalZero(character=chi4.label, gamma=3.0, width=0.0, l_abs=0.0)
        report = detector_check(chi4, point, X=10, Y=30, C=2)
        expected = abs(mollified_l(complex(0.5, 3.0), chi4, 10))
        assert abs(report.identity_residual - expected) < 1e-6

    def test_rejects_x_above_y_squared(self, chi4):
        zero = CriticalZero(character=chi4.label, gamma=6.0, width=0.0, l_abs=0.0)
        with pytest.raises(DomainError):
            detector_check(chi4, zero, X=100, Y=5)

    def test_classify(self):
        assert classify(0.2, 0.1) == DetectorClass.R1
        assert classify(0.1, 0.2) == DetectorClass.R2
        assert classify(0.2, 0.2) == DetectorClass.BOTH
        assert classify(0.1, 0.1) == DetectorClass.NEITHER

    def test_spaced_subset(self):
        zeros = [CriticalZero(character="x", gamma=g, width=0.0, l_abs=0.0) for g in (1.0, 2.0, 10.0, 11.0, 30.0)]
        chosen = spaced_zero_subset(zeros, 2, 2, C=1.0)
        gap = 3 * math.log(4)
        assert [z.gamma for z in chosen] == [1.0, 10.0, 30.0]
        assert all(b.gamma - a.gamma >= gap for a, b in zip(chosen, chosen[1:]))

    @pytest.mark.slow
    @pytest.mark.parametrize("index", range(10))
    def test_first_zeros_are_detected(self, index):
        characters = [chi for q in range(3, 21) for chi in enumerate_characters(q) if chi.primitive and chi.order > 1]
        chi = characters[index]
        zeros = [z for z in critical_line_zeros(chi, 25.0) if z.gamma > 0][:3]
        assert len(zeros) == 3
        for zero in zeros:
            report = detector_check(chi, zero, X=10, Y=30, C=2)
            assert report.identity_residual <= 1e-6
            assert report.r1_value + report.r2_value >= 0.8
