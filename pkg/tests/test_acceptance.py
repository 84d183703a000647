"""Acceptance gate: one verdict line per top-level requirement.

Run with ``pytest -s tests/test_acceptance.py`` to watch the verdicts
stream; without ``-s`` they appear in captured output. Two checks assert
targets that the arithmetic of the measures cannot reach on any input;
they fail honestly, and README.md walks through the numbers.
"""

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from phasefold.grid import (
    build_ladder,
    compute_row,
    neighborhood,
    precompute_grid,
    top_ticks,
)
from phasefold.guidance import suggest, timed_suggest
from phasefold.stats import (
    EventSeries,
    build_phase_histogram,
    detail_matrix,
    fold,
    shannon_entropy,
    vector_strength,
)
from phasefold.units import DAY, HOUR, YEAR

TWO_PI = 2.0 * math.pi


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"\n[ACCEPTANCE] {name}: FAIL")
        raise
    print(f"\n[ACCEPTANCE] {name}: PASS")


def naive_measures(events, tau, t0, n_bins):
    """Direct-summation reference: plain Python loops, no numpy."""
    counts = [0] * n_bins
    for t in events:
        frac = ((t - t0) % tau) / tau
        if frac >= 1.0:
            frac = 0.0
        index = int(frac * n_bins)
        if index == n_bins:
            index = n_bins - 1
        counts[index] += 1
    total = sum(counts)
    bits = 0.0
    for c in counts:
        if c:
            p = c / total
            bits -= p * math.log2(p)
    bits = max(0.0, bits)
    interest = min(max(1.0 - bits / math.log2(n_bins), 0.0), 1.0)
    x = 0.0
    y = 0.0
    for t in events:
        angle = TWO_PI * (((t - t0) % tau) / tau)
        x += math.cos(angle)
        y += math.sin(angle)
    x /= len(events)
    y /= len(events)
    strength = min(math.hypot(x, y), 1.0)
    direction = math.atan2(y, x) % TWO_PI
    if direction >= TWO_PI:
        direction = 0.0
    return bits, interest, strength, direction


def assert_matches_naive(series, tau, bin_count=25):
    hist, measures = fold(series, tau, bin_count)
    bits, interest, strength, direction = naive_measures(
        series.events, tau, series.t_start, bin_count
    )
    assert abs(measures.entropy_bits - bits) <= 1e-9
    assert abs(measures.entropy_interest - interest) <= 1e-9
    assert abs(measures.vector_strength - strength) <= 1e-9
    if strength > 1e-12:
        delta = abs(measures.mean_direction - direction) % TWO_PI
        assert min(delta, TWO_PI - delta) <= 1e-9


@pytest.fixture(scope="module")
def noisy_hourly_train():
    # 720 pulses an hour apart over 30 days, each jittered by 5% of the
    # period, plus 10% uniform background. The span is an exact multiple
    # of the period, so wrapping the jitter keeps every phase intact.
    rng = np.random.default_rng(2024)
    period = 3600.0
    span = 30.0 * DAY
    pulses = np.arange(720) * period + rng.normal(0.0, 0.05 * period, 720)
    background = rng.uniform(0.0, span, 72)
    events = np.sort(np.concatenate([pulses % span, background]))
    return EventSeries(events=events, t_start=0.0, t_end=span)


class TestAcceptance:
    def test_oracle_equivalence(self):
        with criterion("oracle equivalence, 200 random series at 1e-9"):
            rng = np.random.default_rng(4242)
            for _ in range(200):
                n = int(rng.integers(1, 201))
                span = float(rng.uniform(100.0, 1.0e4))
                events = np.sort(rng.uniform(0.0, span, n))
                series = EventSeries(
                    events=events, t_start=0.0, t_end=span
                )
                tau = float(rng.uniform(0.5, span))
                assert_matches_naive(series, tau)

    def test_whole_multiple_blindness(self):
        with criterion("whole-multiple blindness on a clean delta train"):
            period = 10.0
            events = np.arange(50, dtype=float) * period
            series = EventSeries(
                events=events, t_start=0.0, t_end=50 * period
            )
            strength_p, _ = vector_strength(series, period)
            strength_2p, _ = vector_strength(series, 2 * period)
            interest_p = fold(series, period, 25)[1].entropy_interest
            interest_2p = fold(series, 2 * period, 25)[1].entropy_interest
            assert abs(strength_p - 1.0) <= 1e-9
            assert strength_2p <= 1e-9
            assert abs(interest_p - 1.0) <= 1e-9
            assert abs(interest_2p - 1.0) <= 1e-9, (
                f"entropy_interest(2P) = {interest_2p:.9f}: the doubled "
                f"period stacks the train into two opposite spikes, which "
                f"carry exactly 1 bit, so 1 - 1/log2(25) = "
                f"{1 - 1 / math.log2(25):.9f} is the arithmetic ceiling "
                f"for any input"
            )

    def test_detection_under_noise(self, noisy_hourly_train):
        with criterion("noisy train detected in top 5 by entropy interest"):
            series = noisy_hourly_train
            period = 3600.0
            ladder = build_ladder(series.extent, 60.0)
            grid = precompute_grid(series, ladder, 25)

            def acceptable(tau):
                if abs(tau - period) <= 0.01 * period:
                    return True
                ratio = Fraction(tau / period).limit_denominator(16)
                if ratio <= 0:
                    return False
                exact = period * ratio.numerator / ratio.denominator
                return abs(tau - exact) <= 1e-9 * period

            best = top_ticks(grid, "entropy", 5)
            assert any(acceptable(row.tau) for row in best), (
                f"top 5 period lengths {[row.tau for row in best]} all "
                f"miss 3600 s and its exact fractions"
            )
            strength_p, _ = vector_strength(series, period)
            strength_2p, _ = vector_strength(series, 2 * period)
            assert strength_p > 0.8
            assert strength_2p < 0.1

    def test_guidance_halving_first(self, noisy_hourly_train):
        with criterion("guidance ranks 1/2 first at the doubled period"):
            found = suggest(noisy_hourly_train, 7200.0)
            assert found, "no suggestions returned"
            assert found[0].factor == Fraction(1, 2), (
                f"expected factor 1/2 first, got {found[0].factor} "
                f"(score {found[0].score:.4f})"
            )

    def test_performance_budget(self):
        with criterion("grid under 2 s and suggestions under 500 ms"):
            rng = np.random.default_rng(11)
            span = 122.0 * YEAR
            events = np.sort(rng.uniform(0.0, span, 5060))
            series = EventSeries(events=events, t_start=0.0, t_end=span)
            ladder = build_ladder(span, 60.0)
            assert len(ladder) >= 1800, f"only {len(ladder)} samples"
            start = time.perf_counter()
            precompute_grid(series, ladder, 25)
            elapsed = time.perf_counter() - start
            assert elapsed < 2.0, f"grid took {elapsed:.3f} s"
            found, elapsed_ms = timed_suggest(series, DAY)
            assert found
            assert elapsed_ms < 500.0, f"suggest took {elapsed_ms:.1f} ms"

    def test_tide_spring_neap_region(self):
        with criterion("spring/neap region in the top 10 entropy ticks"):
            wave = 12.4206 * HOUR
            spring = 13.661 * DAY
            span = 10.0 * YEAR
            t = np.arange(0.0, span, HOUR)
            signal = np.sin(TWO_PI * t / wave) * (
                1.0 + 0.5 * np.cos(TWO_PI * t / spring)
            )
            events = t[signal > 1.25]
            series = EventSeries(events=events, t_start=0.0, t_end=span)
            # Daily lower bound: at 60 s the top of the ranking is all
            # sub-hour divisors of the sampling step, which say nothing
            # about the tide envelope.
            grid = precompute_grid(series, build_ladder(span, DAY), 25)

            def in_region(tau):
                return abs(tau - spring) <= 0.02 * spring

            best = top_ticks(grid, "entropy", 10)
            if not any(in_region(row.tau) for row in best):
                ranked = top_ticks(grid, "entropy", len(grid))
                rank = next(
                    (
                        i
                        for i, row in enumerate(ranked, start=1)
                        if in_region(row.tau)
                    ),
                    None,
                )
                raise AssertionError(
                    f"no period length within 2% of 13.661 d in the top 10; "
                    f"the region's best rank is {rank}. The sampled ladder "
                    f"has no row closer than 0.24% to 13.661 d, and that "
                    f"offset smears the envelope by 0.64 turns across the "
                    f"267 folded periods, while integer-day resonances "
                    f"(41 d = 3 cycles + 0.04%, 82 d, 123 d) fold cleanly "
                    f"and outscore it"
                )

    def test_randomized_invariant_suite(self):
        with criterion("randomized invariant suite, 1000+ cases each"):
            self.phase_range_and_periodicity()
            self.histogram_conservation_and_edge_safety()
            self.entropy_interest_bounds_and_iffs()
            self.vector_strength_bounds_shift_reorder()
            self.delta_train_multiples()
            self.detail_matrix_column_sums()
            self.oracle_equivalence_bulk()
            self.ladder_monotone_dedup()
            self.grid_order_independence()
            self.neighborhood_sorted_contains()
            self.adhoc_idempotence()

    # -- core statistics invariants ------------------------------------

    @staticmethod
    def phase_range_and_periodicity():
        from phasefold.stats import compute_phase

        rng = np.random.default_rng(101)
        for _ in range(1000):
            n = int(rng.integers(1, 60))
            t = rng.uniform(0.0, 1.0e5, n)
            tau = float(rng.uniform(0.5, 1.0e4))
            t0 = float(rng.uniform(0.0, 1.0e4))
            phases = compute_phase(t, tau, t0)
            assert np.all((phases >= 0.0) & (phases < TWO_PI))
            shifted = compute_phase(t + tau, tau, t0)
            raw = np.abs(shifted - phases) % TWO_PI
            assert np.all(np.minimum(raw, TWO_PI - raw) < 1e-9)

    @staticmethod
    def histogram_conservation_and_edge_safety():
        rng = np.random.default_rng(102)
        for _ in range(1000):
            n = int(rng.integers(1, 120))
            span = float(rng.uniform(50.0, 1.0e5))
            tau = float(rng.uniform(0.5, span))
            events = rng.uniform(0.0, span, n)
            # park one event just below a period boundary so its phase
            # lands arbitrarily close to 2*pi
            k = int(rng.integers(1, 8))
            events[0] = np.nextafter(k * tau, 0.0)
            series = EventSeries(
                events=np.sort(events), t_start=0.0, t_end=span + 8 * tau
            )
            bins = int(rng.integers(2, 60))
            hist = build_phase_histogram(series, tau, bins)
            assert hist.counts.sum() == n

    @staticmethod
    def entropy_interest_bounds_and_iffs():
        from phasefold.stats import PhaseHistogram

        rng = np.random.default_rng(103)
        for _ in range(1000):
            size = int(rng.integers(2, 64))
            counts = rng.integers(0, 400, size)
            hist = PhaseHistogram(
                bins=counts.astype(float), counts=counts.astype(np.int64)
            )
            _, interest = shannon_entropy(hist)
            assert 0.0 <= interest <= 1.0
            total = counts.sum()
            uniform = total > 0 and np.all(counts == counts[0])
            single = np.count_nonzero(counts) == 1
            if uniform:
                assert interest <= 1e-12
            elif total > 0 and not single:
                assert interest > 0.0
            if single:
                assert interest == 1.0
            elif total > 0:
                assert interest < 1.0

    @staticmethod
    def vector_strength_bounds_shift_reorder():
        rng = np.random.default_rng(104)
        for _ in range(1000):
            n = int(rng.integers(1, 120))
            events = np.sort(rng.uniform(0.0, 1.0e5, n))
            series = EventSeries(events=events, t_start=0.0, t_end=1.2e5)
            tau = float(rng.uniform(0.5, 1.0e4))
            strength, direction = vector_strength(series, tau)
            assert 0.0 <= strength <= 1.0
            assert 0.0 <= direction < TWO_PI
            shift = float(rng.uniform(0.0, 1.0e4))
            moved = EventSeries(
                events=events + shift,
                t_start=shift,
                t_end=1.2e5 + shift,
            )
            assert abs(vector_strength(moved, tau)[0] - strength) <= 1e-9
            shuffled = events.copy()
            rng.shuffle(shuffled)
            reordered = EventSeries(
                events=shuffled, t_start=0.0, t_end=1.2e5
            )
            assert abs(vector_strength(reordered, tau)[0] - strength) <= 1e-9

    @staticmethod
    def delta_train_multiples():
        rng = np.random.default_rng(105)
        for _ in range(1000):
            period = float(rng.integers(2, 5000))
            count = 2 * int(rng.integers(1, 60))
            bins = int(rng.integers(3, 51))
            events = np.arange(count, dtype=float) * period
            series = EventSeries(
                events=events, t_start=0.0, t_end=count * period
            )
            assert abs(vector_strength(series, period)[0] - 1.0) <= 1e-9
            assert vector_strength(series, 2 * period)[0] <= 1e-9
            interest_p = fold(series, period, bins)[1].entropy_interest
            interest_2p = fold(series, 2 * period, bins)[1].entropy_interest
            assert interest_p == 1.0
            # two opposite spikes: maximal given 1 bit of spread
            ceiling = 1.0 - 1.0 / math.log2(bins)
            assert abs(interest_2p - ceiling) <= 1e-12

    @staticmethod
    def detail_matrix_column_sums():
        rng = np.random.default_rng(106)
        for _ in range(1000):
            n = int(rng.integers(1, 100))
            span = float(rng.uniform(100.0, 1.0e5))
            events = np.sort(rng.uniform(0.0, span, n))
            series = EventSeries(events=events, t_start=0.0, t_end=span)
            tau = float(rng.uniform(span / 400.0, span))
            bins = int(rng.integers(2, 40))
            hist = build_phase_histogram(series, tau, bins)
            matrix = detail_matrix(series, tau, bins)
            assert np.array_equal(matrix.counts.sum(axis=0), hist.counts)

    @staticmethod
    def oracle_equivalence_bulk():
        rng = np.random.default_rng(107)
        for _ in range(1000):
            n = int(rng.integers(1, 201))
            span = float(rng.uniform(100.0, 1.0e4))
            events = np.sort(rng.uniform(0.0, span, n))
            series = EventSeries(events=events, t_start=0.0, t_end=span)
            assert_matches_naive(
                series, float(rng.uniform(0.5, span)), bin_count=int(rng.integers(2, 40))
            )

    # -- period grid invariants ----------------------------------------

    @staticmethod
    def ladder_monotone_dedup():
        rng = np.random.default_rng(108)
        for _ in range(1000):
            extent = float(rng.uniform(100.0, 1.0e7))
            lower = extent / float(rng.uniform(3.0, 1.0e4))
            ladder = build_ladder(extent, lower)
            samples = ladder.samples
            assert np.all(np.diff(samples) > 0)
            assert samples[0] >= lower * (1 - 1e-12)
            assert samples[-1] <= extent * (1 + 1e-12)
            assert np.all(np.diff(samples) > samples[:-1] * 1e-9)

    @staticmethod
    def grid_order_independence():
        rng = np.random.default_rng(109)
        for _ in range(1000):
            n = int(rng.integers(2, 20))
            span = float(rng.uniform(100.0, 5.0e3))
            events = np.sort(rng.uniform(0.0, span, n))
            series = EventSeries(events=events, t_start=0.0, t_end=span)
            ladder = build_ladder(span, span / float(rng.uniform(2.0, 4.0)))
            grid = precompute_grid(series, ladder, 10)
            order = rng.permutation(len(ladder))
            redone = sorted(
                (compute_row(series, ladder.samples[i], 10) for i in order),
                key=lambda row: row.tau,
            )
            assert len(redone) == len(grid)
            for mine, theirs in zip(grid.rows, redone):
                assert mine.tau == theirs.tau
                assert np.array_equal(mine.histogram.counts, theirs.histogram.counts)
                assert np.array_equal(mine.histogram.bins, theirs.histogram.bins)
                assert mine.measures == theirs.measures

    @staticmethod
    def _random_small_grid(rng):
        n = int(rng.integers(2, 20))
        span = float(rng.uniform(100.0, 5.0e3))
        events = np.sort(rng.uniform(0.0, span, n))
        series = EventSeries(events=events, t_start=0.0, t_end=span)
        ladder = build_ladder(span, span / 20.0)
        return precompute_grid(series, ladder, 10), ladder

    def neighborhood_sorted_contains(self):
        rng = np.random.default_rng(110)
        for _ in range(40):
            grid, ladder = self._random_small_grid(rng)
            lo, hi = ladder.samples[0], ladder.samples[-1]
            for _ in range(25):
                tau = float(rng.uniform(lo, hi))
                window = neighborhood(
                    grid, tau, context_rows=int(rng.integers(1, 40))
                )
                taus = [row.tau for row in window.rows]
                assert taus == sorted(taus)
                assert window.rows[window.center_index] is window.center
                assert abs(window.center.tau - tau) <= 1e-9 * tau

    def adhoc_idempotence(self):
        rng = np.random.default_rng(111)
        for _ in range(40):
            grid, ladder = self._random_small_grid(rng)
            lo, hi = ladder.samples[0], ladder.samples[-1]
            for _ in range(25):
                tau = float(rng.uniform(lo, hi))
                first = grid.ensure_row(tau)
                size = len(grid)
                assert grid.ensure_row(tau) == first
                assert len(grid) == size
