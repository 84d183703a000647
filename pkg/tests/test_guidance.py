from fractions import Fraction

import numpy as np
import pytest

from phasefold import (
    EventSeries,
    PeriodOutOfRangeError,
    candidate_factors,
    suggest,
    timed_suggest,
)


def delta_train(period=3600.0, count=240):
    events = np.arange(count) * period
    return EventSeries(
        events=events, t_start=0.0, t_end=float(events[-1]) + period
    )


class TestCandidateFactors:
    def test_minimal_sets(self):
        fs = candidate_factors(2, 2)
        assert [str(f) for f in fs.all()] == ["1/2", "3/2", "2"]

    def test_depth_three(self):
        fs = candidate_factors(3, 3)
        expected = {
            Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(4, 3),
            Fraction(3, 2), Fraction(5, 3), Fraction(2), Fraction(3),
        }
        assert set(fs.all()) == expected

    def test_default_set(self):
        fs = candidate_factors()
        factors = fs.all()
        assert len(factors) == 21
        assert Fraction(1) not in factors
        assert Fraction(9, 5) in factors
        assert Fraction(1, 5) in factors
        assert Fraction(4) in factors
        assert list(factors) == sorted(factors)

    def test_fractions_are_reduced(self):
        for f in candidate_factors(5, 4).fractions:
            assert f.denominator > 1
            assert Fraction(f.numerator, f.denominator) == f

    def test_rejects_small_limits(self):
        with pytest.raises(ValueError):
            candidate_factors(1, 4)
        with pytest.raises(ValueError):
            candidate_factors(5, 1)


class TestSuggest:
    def test_half_ranked_first_at_double_period(self):
        series = delta_train()
        found = suggest(series, 7200.0, measure="vector_strength", lower_bound=60.0)
        assert found[0].factor == Fraction(1, 2)
        assert found[0].tau == 3600.0
        assert found[0].score == pytest.approx(1.0, abs=1e-9)

    def test_tie_prefers_factor_closer_to_one(self):
        # On a pure delta train both 1/2 (back to P) and 1/4 (P/2) score a
        # perfect 1; the smaller move wins.
        series = delta_train()
        found = suggest(series, 7200.0, lower_bound=60.0, max_count=10)
        perfect = [s.factor for s in found if s.score > 1.0 - 1e-9]
        assert perfect[0] == Fraction(1, 2)
        assert Fraction(1, 4) in perfect

    def test_entropy_measure(self):
        series = delta_train()
        found = suggest(series, 7200.0, measure="entropy", lower_bound=60.0)
        assert found[0].factor == Fraction(1, 2)
        assert found[0].measure_used == "entropy"
        assert found[0].score == pytest.approx(1.0, abs=1e-12)

    def test_out_of_range_candidates_dropped(self):
        series = delta_train(count=24)
        found = suggest(series, 120.0, lower_bound=60.0, max_count=100)
        taus = [s.tau for s in found]
        assert all(60.0 <= t <= series.extent for t in taus)
        assert 24.0 not in taus  # 1/5 of 120 s falls below the lower bound

    def test_max_count(self):
        series = delta_train()
        assert len(suggest(series, 7200.0, max_count=3, lower_bound=60.0)) == 3
        assert suggest(series, 7200.0, max_count=0, lower_bound=60.0) == []

    def test_thumbnails_carry_bins(self):
        series = delta_train()
        found = suggest(series, 7200.0, bin_count=10, lower_bound=60.0)
        assert all(s.thumbnail.bin_count == 10 for s in found)

    def test_current_tau_validated(self):
        series = delta_train(count=8)
        with pytest.raises(PeriodOutOfRangeError):
            suggest(series, series.extent * 2)

    def test_scores_descending(self):
        rng = np.random.default_rng(31)
        events = np.sort(rng.uniform(0, 50000.0, 400))
        series = EventSeries(events=events, t_start=0.0, t_end=50000.0)
        found = suggest(series, 9000.0, lower_bound=60.0, max_count=20)
        scores = [s.score for s in found]
        assert scores == sorted(scores, reverse=True)

    def test_timed_variant(self):
        series = delta_train()
        found, elapsed_ms = timed_suggest(series, 7200.0, lower_bound=60.0)
        assert elapsed_ms > 0.0
        assert [s.tau for s in found] == [
            s.tau for s in suggest(series, 7200.0, lower_bound=60.0)
        ]
