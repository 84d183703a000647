"""Period-length sampling ladder and the precomputed exploration grid.

The ladder unions multiples of natural time units with a geometric series,
so both round periods (every minute count, hour count, day count, ...) and
a scale-free fill are available. The grid holds one histogram-plus-measures
row per sample and serves sorted neighborhoods around any period length,
inserting ad-hoc rows on demand.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyLadderError, PeriodOutOfRangeError
from .stats import (
    DEFAULT_BIN_COUNT,
    BinAggregation,
    EventSeries,
    PhaseHistogram,
    QualityMeasures,
    fold,
    normalize_measure,
)
from .units import DAY, HOUR, MINUTE, SECOND, YEAR

DEFAULT_LOWER_BOUND = 60.0

GEOMETRIC_RATIO = 1.01

DEFAULT_CONTEXT_ROWS = 30

# (unit length, smallest multiple, largest multiple)
UNIT_MULTIPLE_RANGES = (
    (SECOND, 1, 59),
    (MINUTE, 1, 59),
    (HOUR, 1, 23),
    (DAY, 1, 364),
    (YEAR, 1, 200),
)

_REL_TOL = 1e-9

LADDER = "ladder"
ADHOC = "adhoc"


@dataclass(frozen=True)
class SampleLadder:
    """Strictly increasing, deduplicated period-length samples."""

    lower_bound: float
    upper_bound: float
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        if samples.size == 0:
            raise EmptyLadderError("ladder contains no samples")
        if np.any(np.diff(samples) <= 0):
            raise ValueError("ladder samples must be strictly ascending")
        if samples[0] < self.lower_bound or samples[-1] > self.upper_bound:
            raise ValueError("ladder samples outside the declared bounds")

    def __len__(self) -> int:
        return int(self.samples.size)


def build_ladder(extent: float, lower_bound: float = DEFAULT_LOWER_BOUND) -> SampleLadder:
    """Sample candidate period lengths between a lower bound and the extent.

    The result is the union of (a) whole multiples of seconds, minutes,
    hours, days, and years that fall inside the range, and (b) a geometric
    series ``lower_bound * 1.01**k``. Merged, sorted, and deduplicated at
    1e-9 relative tolerance.
    """
    if lower_bound <= 0:
        raise ValueError(f"lower bound must be positive, got {lower_bound}")
    if extent <= lower_bound:
        raise EmptyLadderError(
            f"extent {extent} leaves no period lengths above the lower bound {lower_bound}"
        )
    parts = []
    for unit, k_min, k_max in UNIT_MULTIPLE_RANGES:
        lo = max(k_min, math.ceil(lower_bound / unit))
        hi = min(k_max, math.floor(extent / unit))
        if lo <= hi:
            parts.append(np.arange(lo, hi + 1, dtype=float) * unit)
    n_geo = int(math.log(extent / lower_bound) / math.log(GEOMETRIC_RATIO)) + 2
    geometric = lower_bound * GEOMETRIC_RATIO ** np.arange(n_geo, dtype=float)
    parts.append(geometric[geometric <= extent])

    merged = np.concatenate(parts)
    merged = merged[(merged >= lower_bound) & (merged <= extent)]
    merged = np.sort(merged)
    keep = np.concatenate(([True], np.diff(merged) > _REL_TOL * merged[1:]))
    return SampleLadder(lower_bound=lower_bound, upper_bound=extent, samples=merged[keep])


@dataclass(frozen=True)
class GridRow:
    """One precomputed period length: its histogram and quality measures."""

    tau: float
    histogram: PhaseHistogram
    measures: QualityMeasures
    provenance: str = LADDER


@dataclass
class PeriodGrid:
    """Rows sorted ascending by period length, plus the source series.

    Immutable after construction except for ad-hoc insertion, which is
    serialized through an internal lock (single writer, many readers).
    """

    series: EventSeries
    bin_count: int
    aggregation: BinAggregation
    lower_bound: float
    upper_bound: float
    rows: list[GridRow] = field(default_factory=list)
    _taus: list[float] = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        self._taus = [row.tau for row in self.rows]
        if any(t2 <= t1 for t1, t2 in zip(self._taus, self._taus[1:])):
            raise ValueError("grid rows must be strictly ascending by tau")

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def taus(self) -> np.ndarray:
        return np.asarray(self._taus)

    def find(self, tau: float) -> int | None:
        """Index of the row matching tau at 1e-9 relative tolerance, if any."""
        i = bisect_left(self._taus, tau)
        for j in (i - 1, i):
            if 0 <= j < len(self._taus) and math.isclose(
                self._taus[j], tau, rel_tol=_REL_TOL
            ):
                return j
        return None

    def ensure_row(self, tau: float) -> int:
        """Index of the row for tau, computing and inserting it if absent."""
        tau = float(tau)
        if not (self.lower_bound <= tau <= self.upper_bound):
            raise PeriodOutOfRangeError(
                f"period length {tau} outside [{self.lower_bound}, {self.upper_bound}]"
            )
        idx = self.find(tau)
        if idx is not None:
            return idx
        with self._lock:
            idx = self.find(tau)  # lost the race: a writer beat us to it
            if idx is not None:
                return idx
            row = compute_row(
                self.series, tau, self.bin_count, self.aggregation, provenance=ADHOC
            )
            idx = bisect_left(self._taus, tau)
            self.rows.insert(idx, row)
            self._taus.insert(idx, tau)
            return idx


def compute_row(
    series: EventSeries,
    tau: float,
    bin_count: int = DEFAULT_BIN_COUNT,
    aggregation: BinAggregation | None = None,
    provenance: str = LADDER,
) -> GridRow:
    """Histogram and measures for a single period length."""
    hist, measures = fold(series, tau, bin_count, aggregation)
    return GridRow(
        tau=float(tau), histogram=hist, measures=measures, provenance=provenance
    )


def precompute_grid(
    series: EventSeries,
    ladder: SampleLadder,
    bin_count: int = DEFAULT_BIN_COUNT,
    aggregation: BinAggregation | None = None,
    progress=None,
) -> PeriodGrid:
    """Compute one grid row per ladder sample.

    Rows are independent of each other, so the result does not depend on
    evaluation order. ``progress(done, total)`` is called after each row
    when given.
    """
    aggregation = aggregation or BinAggregation.count()
    rows = []
    total = len(ladder)
    for i, tau in enumerate(ladder.samples):
        rows.append(compute_row(series, tau, bin_count, aggregation))
        if progress is not None:
            progress(i + 1, total)
    return PeriodGrid(
        series=series,
        bin_count=bin_count,
        aggregation=aggregation,
        lower_bound=ladder.lower_bound,
        upper_bound=ladder.upper_bound,
        rows=rows,
    )


@dataclass(frozen=True)
class GridWindow:
    """A sorted slice of grid rows with the current row's position marked."""

    rows: list[GridRow]
    center_index: int

    @property
    def center(self) -> GridRow:
        return self.rows[self.center_index]


def neighborhood(
    grid: PeriodGrid, tau: float, context_rows: int = DEFAULT_CONTEXT_ROWS
) -> GridWindow:
    """Rows around tau: up to ``context_rows`` on each side, tau centered.

    A period length absent from the grid is computed ad hoc and inserted
    with ad-hoc provenance. The window truncates at grid edges, so the
    center index may be off-middle there.
    """
    if context_rows < 1:
        raise ValueError(f"context_rows must be >= 1, got {context_rows}")
    idx = grid.ensure_row(tau)
    lo = max(0, idx - context_rows)
    hi = min(len(grid.rows), idx + context_rows + 1)
    return GridWindow(rows=list(grid.rows[lo:hi]), center_index=idx - lo)


def top_ticks(grid: PeriodGrid, measure: str, k: int) -> list[GridRow]:
    """The k rows with the highest interest under the selected measure.

    Ranked descending; ties go to the smaller period length, which keeps
    the ranking deterministic.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    name = normalize_measure(measure)
    ranked = sorted(grid.rows, key=lambda row: (-row.measures.by_name(name), row.tau))
    return ranked[:k]


GRID_CACHE_VERSION = 1


def grid_cache_name(dataset_id: str, bin_count: int, aggregation: BinAggregation) -> str:
    """File name for a cached grid, keyed by dataset, bin count, aggregation."""
    agg = aggregation.key().replace(":", "-")
    return f"grid-{dataset_id}-n{bin_count}-{agg}.npz"


def save_grid(grid: PeriodGrid, path, dataset_id: str = "") -> None:
    """Persist a grid; measure values round-trip bit-exact (raw float64)."""
    rows = grid.rows
    np.savez(
        path,
        version=np.int64(GRID_CACHE_VERSION),
        dataset_id=np.str_(dataset_id),
        bin_count=np.int64(grid.bin_count),
        aggregation=np.str_(grid.aggregation.key()),
        lower_bound=np.float64(grid.lower_bound),
        upper_bound=np.float64(grid.upper_bound),
        taus=np.array([r.tau for r in rows]),
        bins=np.array([r.histogram.bins for r in rows]),
        counts=np.array([r.histogram.counts for r in rows]),
        entropy_bits=np.array([r.measures.entropy_bits for r in rows]),
        entropy_interest=np.array([r.measures.entropy_interest for r in rows]),
        vector_strength=np.array([r.measures.vector_strength for r in rows]),
        mean_direction=np.array([r.measures.mean_direction for r in rows]),
        adhoc=np.array([r.provenance == ADHOC for r in rows]),
    )


def load_grid(path, series: EventSeries) -> PeriodGrid:
    """Rebuild a grid from :func:`save_grid` output for the given series."""
    with np.load(path) as data:
        version = int(data["version"])
        if version != GRID_CACHE_VERSION:
            raise ValueError(f"unsupported grid cache version {version}")
        aggregation = BinAggregation.parse(str(data["aggregation"]))
        rows = [
            GridRow(
                tau=float(tau),
                histogram=PhaseHistogram(bins=bins, counts=counts, aggregation=aggregation),
                measures=QualityMeasures(
                    entropy_bits=float(eb),
                    entropy_interest=float(ei),
                    vector_strength=float(vs),
                    mean_direction=float(md),
                ),
                provenance=ADHOC if adhoc else LADDER,
            )
            for tau, bins, counts, eb, ei, vs, md, adhoc in zip(
                data["taus"],
                data["bins"],
                data["counts"],
                data["entropy_bits"],
                data["entropy_interest"],
                data["vector_strength"],
                data["mean_direction"],
                data["adhoc"],
            )
        ]
        return PeriodGrid(
            series=series,
            bin_count=int(data["bin_count"]),
            aggregation=aggregation,
            lower_bound=float(data["lower_bound"]),
            upper_bound=float(data["upper_bound"]),
            rows=rows,
        )
