import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ohlab.criteria import (LineData, all_reports, characteristics_criterion,
                            cubic_criterion_one, cubic_criterion_two, find_t1,
                            hunter_criterion, line_criterion)
from ohlab.errors import (DegenerateData, NonZeroMean, NotApplicable,
                          TailTooLarge)
from ohlab.initial import frequency_scaled, sampled_data, two_mode_quantities

TWO_PI = 2.0 * np.pi


class TestFindT1:
    def test_reference_value(self):
        # frozen against an independent scalar root-find of
        # 2*sqrt(g)*T*sqrt(M + g*l2*T) = log(1 + 2/eps)
        assert find_t1(1.0, 1.0, 1.0, 2.0) == pytest.approx(
            0.3035508647031143, abs=1e-12)

    def test_defining_equation_residual(self):
        t1 = find_t1(0.3, 0.7, 2.0, 0.5)
        lhs = 2.0 * math.sqrt(2.0) * t1 * math.sqrt(0.3 + 2.0 * 0.7 * t1)
        assert abs(lhs - math.log1p(2.0 / 0.5)) < 1e-10

    def test_huge_epsilon_limit(self):
        # log(1 + 2/eps) -> 0, so the bound time collapses
        assert find_t1(1.0, 1.0, 1.0, 1e9) < 1e-8

    def test_monotone_in_gamma(self):
        ts = [find_t1(1.0, 1.0, g, 2.0) for g in (0.5, 1.0, 2.0, 4.0)]
        assert all(a > b for a, b in zip(ts, ts[1:]))

    def test_zero_data_raises(self):
        with pytest.raises(DegenerateData):
            find_t1(0.0, 0.0, 1.0, 2.0)

    def test_bad_epsilon_raises(self):
        with pytest.raises(ValueError):
            find_t1(1.0, 1.0, 1.0, 0.0)


class TestHunter:
    def test_small_cosine_not_satisfied(self):
        r = hunter_criterion(two_mode_quantities(0.05, 0.0))
        assert not r.satisfied
        assert r.time_bound is None

    def test_large_sine_satisfied(self):
        r = hunter_criterion(two_mode_quantities(0.0, 5.0))
        assert r.satisfied
        # breaking before 2/m with m = 4*pi*b = 20*pi
        assert r.time_bound == pytest.approx(1.0 / (10.0 * math.pi), rel=1e-14)

    def test_margin_formula(self):
        d = two_mode_quantities(0.0, 5.0)
        m = -d.min_slope
        assert hunter_criterion(d).margin == pytest.approx(
            m ** 3 - 4.0 * d.sup_abs * (4.0 + m), rel=1e-14)

    def test_other_gamma_not_applicable(self):
        with pytest.raises(NotApplicable):
            hunter_criterion(two_mode_quantities(1.0, 1.0), gamma=2.0)

    def test_zero_data(self):
        r = hunter_criterion(two_mode_quantities(0.0, 0.0))
        assert not r.satisfied and r.margin == 0.0


class TestCubicConditions:
    def test_cond1_two_mode(self):
        # cube = -12 pi^3 < -(3/2)^(3/2): comfortably satisfied at gamma=1
        assert cubic_criterion_one(two_mode_quantities(1.0, 1.0), 1.0).satisfied

    def test_cond1_pure_cosine_never(self):
        # b=0 kills the cubic integral, so the strict inequality fails
        r = cubic_criterion_one(two_mode_quantities(3.0, 0.0), 1.0)
        assert not r.satisfied

    def test_cond1_threshold_by_bisection(self):
        # largest gamma with cond1 satisfied, against the closed form
        # gamma* = (2/(3 l2)) * (-cube)^(2/3)
        d = two_mode_quantities(1.0, 1.0)
        lo, hi = 1e-6, 1e3
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if cubic_criterion_one(d, mid).satisfied:
                lo = mid
            else:
                hi = mid
        closed = (2.0 / (3.0 * d.l2)) * (-d.cube) ** (2.0 / 3.0)
        assert 0.5 * (lo + hi) == pytest.approx(closed, rel=1e-12)

    def test_cond2_needs_large_l2(self):
        # l2 = 1 < 3*gamma/4 at gamma = 2
        r = cubic_criterion_two(two_mode_quantities(1.0, 1.0), 2.0)
        assert not r.satisfied

    def test_cond2_satisfied(self):
        assert cubic_criterion_two(two_mode_quantities(2.0, 2.0), 1.0).satisfied

    def test_cond2_zero_data_margin(self):
        r = cubic_criterion_two(two_mode_quantities(0.0, 0.0), 1.0)
        assert not r.satisfied
        assert r.margin == pytest.approx(-0.75)


class TestCharacteristicsCriterion:
    def test_small_cosine(self):
        r = characteristics_criterion(two_mode_quantities(0.05, 0.0), 1.0)
        assert not r.satisfied
        assert r.margin == pytest.approx(-0.1492613786, abs=1e-8)
        assert r.epsilon == pytest.approx(0.0872999190, rel=1e-6)
        assert r.time_bound is None

    def test_large_cosine(self):
        r = characteristics_criterion(two_mode_quantities(5.0, 0.0), 1.0)
        assert r.satisfied
        assert r.margin == pytest.approx(28.561899, rel=1e-6)
        assert r.time_bound == pytest.approx(0.72869293, rel=1e-6)

    def test_zero_data(self):
        r = characteristics_criterion(two_mode_quantities(0.0, 0.0), 1.0)
        assert not r.satisfied and r.margin == -math.inf

    @settings(max_examples=40)
    @given(st.floats(0.0, 5.0), st.floats(0.0, 5.0),
           st.floats(0.25, 4.0))
    def test_satisfied_iff_positive_margin(self, a, b, gamma):
        for rep in all_reports(two_mode_quantities(a, b), gamma).values():
            assert rep.satisfied == (rep.margin > 0.0)
            assert (rep.time_bound is not None) <= rep.satisfied

    def test_all_reports_hunter_guard(self):
        reps = all_reports(two_mode_quantities(1.0, 1.0), 2.0)
        assert not reps["hunter"].satisfied
        assert reps["hunter"].margin == -math.inf


class TestTranslationInvariance:
    def test_reports_match_closed_forms(self):
        a, b, shift = 0.05, 0.02, 0.3

        def shifted(x):
            return (a * np.cos(TWO_PI * (x + shift))
                    + b * np.sin(2 * TWO_PI * (x + shift)))

        ref = all_reports(two_mode_quantities(a, b), 1.0)
        got = all_reports(sampled_data(shifted), 1.0)
        for name in ref:
            assert got[name].satisfied == ref[name].satisfied
            assert got[name].margin == pytest.approx(ref[name].margin,
                                                     rel=1e-6, abs=1e-8)


class TestFrequencyScaling:
    def test_cosine_breaks_at_low_multiple(self):
        base = lambda x: np.cos(TWO_PI * x)
        hits = [k for k in range(1, 65)
                if characteristics_criterion(
                    frequency_scaled(base, k, n=1024), 1.0).satisfied]
        assert hits and hits[0] <= 64

    def test_margin_grows_with_frequency(self):
        base = lambda x: np.cos(TWO_PI * x)
        margins = [characteristics_criterion(
            frequency_scaled(base, k, n=1024), 1.0).margin
            for k in (1, 4, 16)]
        assert margins[0] < margins[1] < margins[2]


class TestLineCriterion:
    @staticmethod
    def gaussian_slope(lam):
        return LineData.from_function(
            lambda x, l=lam: l * (-2.0 * x) * np.exp(-x * x))

    def test_gaussian_derivative_satisfied(self):
        r = line_criterion(self.gaussian_slope(1.0), 1.0)
        assert r.satisfied
        assert r.margin == pytest.approx(0.3453159457, rel=1e-6)

    def test_margin_grows_with_amplitude(self):
        margins = [line_criterion(self.gaussian_slope(lam), 1.0).margin
                   for lam in (1.0, 10.0, 100.0)]
        assert margins[0] < margins[1] < margins[2]
        assert margins[2] == pytest.approx(185.8259244559, rel=1e-6)

    def test_heavy_tail_rejected(self):
        data = LineData.from_function(lambda x: -2.0 * x / (1.0 + x * x))
        with pytest.raises(TailTooLarge):
            line_criterion(data, 1.0)

    def test_nonzero_mass_rejected(self):
        data = LineData.from_function(lambda x: np.exp(-x * x))
        with pytest.raises(NonZeroMean):
            line_criterion(data, 1.0)

    def test_zero_data(self):
        r = line_criterion(LineData(values=np.zeros(1024), span=40.0), 1.0)
        assert not r.satisfied and r.margin == -math.inf
