"""On-the-fly suggestions of better period lengths.

A repeating pattern looks repeating at whole multiples of its period, at
integer fractions, and at fractions of multiples, so an aggregated fold
alone cannot tell which nearby rational factor is the real one. The
guidance samples those factors around the current period length, scores
each candidate, and returns the best-ranking ones.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .grid import DEFAULT_LOWER_BOUND
from .stats import (
    DEFAULT_BIN_COUNT,
    EventSeries,
    PhaseHistogram,
    _check_tau_for_series,
    build_phase_histogram,
    normalize_measure,
    shannon_entropy,
    vector_strength,
)

DEFAULT_FRACTION_LIMIT = 5
DEFAULT_MULTIPLE_LIMIT = 4
DEFAULT_SUGGESTION_COUNT = 5


@dataclass(frozen=True)
class FactorSet:
    """Rational factors to try relative to the current period length."""

    fractions: tuple[Fraction, ...]
    multiples: tuple[int, ...]

    def all(self) -> tuple[Fraction, ...]:
        """Deduplicated, ascending union of fractions and multiples."""
        return tuple(sorted(set(self.fractions) | {Fraction(m) for m in self.multiples}))


def candidate_factors(
    n_max: int = DEFAULT_FRACTION_LIMIT, m_max: int = DEFAULT_MULTIPLE_LIMIT
) -> FactorSet:
    """Enumerate fractions k/n (n in 2..n_max, k in 1..2n-1, k/n != 1) and
    integer multiples 2..m_max, reduced and deduplicated.

    Examples
    --------
    >>> [str(f) for f in candidate_factors(2, 2).all()]
    ['1/2', '3/2', '2']
    """
    if n_max < 2 or m_max < 2:
        raise ValueError("factor limits must be at least 2")
    fractions = set()
    for n in range(2, n_max + 1):
        for k in range(1, 2 * n):
            f = Fraction(k, n)
            if f != 1 and f.denominator > 1:
                fractions.add(f)
    multiples = tuple(range(2, m_max + 1))
    return FactorSet(fractions=tuple(sorted(fractions)), multiples=multiples)


@dataclass(frozen=True)
class Suggestion:
    """A candidate period length derived from the current one."""

    tau: float
    factor: Fraction
    score: float
    measure_used: str
    thumbnail: PhaseHistogram


def suggest(
    series: EventSeries,
    current_tau: float,
    measure: str = "vector_strength",
    max_count: int = DEFAULT_SUGGESTION_COUNT,
    bin_count: int = DEFAULT_BIN_COUNT,
    lower_bound: float = DEFAULT_LOWER_BOUND,
    factors: FactorSet | None = None,
) -> list[Suggestion]:
    """Evaluate every in-range rational factor of the current period length
    and return the best-ranking candidates.

    Candidates falling outside ``[lower_bound, series extent]`` are silently
    dropped. Ranking is by the selected measure's interest, descending; ties
    prefer the factor closer to 1 (smaller moves disorient less), then the
    smaller period length. At most ``max_count`` suggestions are returned,
    each carrying its thumbnail histogram.
    """
    current_tau = _check_tau_for_series(series, current_tau)
    measure_used = normalize_measure(measure)
    factors = factors or candidate_factors()
    scored = []
    for factor in factors.all():
        tau = current_tau * float(factor)
        if not (lower_bound <= tau <= series.extent):
            continue
        thumbnail = build_phase_histogram(series, tau, bin_count)
        if measure_used == "entropy":
            _, score = shannon_entropy(thumbnail)
        else:
            score, _ = vector_strength(series, tau)
        scored.append(
            Suggestion(
                tau=tau,
                factor=factor,
                score=score,
                measure_used=measure_used,
                thumbnail=thumbnail,
            )
        )
    scored.sort(key=lambda s: (-s.score, abs(s.factor - 1), s.factor))
    return scored[: max(max_count, 0)]


def timed_suggest(*args, **kwargs) -> tuple[list[Suggestion], float]:
    """Run :func:`suggest` and report elapsed wall time in milliseconds."""
    start = time.perf_counter()
    suggestions = suggest(*args, **kwargs)
    return suggestions, (time.perf_counter() - start) * 1000.0
