"""Phase folding, phase histograms, and circular quality measures.

Everything in this module is a pure function over immutable inputs and is
safe to call concurrently. Timestamps are real-valued seconds since an
arbitrary epoch; all math is unit-agnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidPeriodError,
    MissingAttributeError,
    PeriodOutOfRangeError,
    TooManyRowsError,
)

TWO_PI = 2.0 * math.pi

DEFAULT_BIN_COUNT = 25

DETAIL_ROW_CAP = 2000

MAPPING_KINDS = ("cyclic-color", "cut-color", "moon", "rotated-rectangle", "star-morph")

# Mappings whose rendering at u=0 equals the rendering as u -> 1.
_CYCLIC_KINDS = frozenset({"cyclic-color", "moon", "rotated-rectangle"})


@dataclass(frozen=True)
class EventSeries:
    """A sorted sequence of event timestamps with optional per-event attributes.

    Parameters
    ----------
    events : np.ndarray
        Event timestamps in seconds, non-decreasing.
    t_start, t_end : float
        Temporal extent of the series. Every event lies inside
        ``[t_start, t_end]``; the extent may be wider than the events span
        (e.g. when events were derived from a longer raw series).
    attributes : dict
        Named columns with one value per event. Numeric columns can drive
        mean/variance bin aggregation; non-numeric columns ride along.
    """

    events: np.ndarray
    t_start: float
    t_end: float
    attributes: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        events = np.asarray(self.events, dtype=float)
        object.__setattr__(self, "t_start", float(self.t_start))
        object.__setattr__(self, "t_end", float(self.t_end))
        if events.ndim != 1 or events.size < 1:
            raise ValueError("an event series needs at least one event")
        order = None
        if np.any(np.diff(events) < 0):
            # Normalize to time order; attributes follow their events.
            order = np.argsort(events, kind="stable")
            events = events[order]
        object.__setattr__(self, "events", events)
        if not (self.t_start < self.t_end):
            raise ValueError(f"invalid extent [{self.t_start}, {self.t_end}]")
        if events[0] < self.t_start or events[-1] > self.t_end:
            raise ValueError("events fall outside the declared extent")
        attrs = {}
        for name, column in self.attributes.items():
            column = np.asarray(column)
            if column.shape != events.shape:
                raise ValueError(
                    f"attribute {name!r} has {column.shape[0] if column.ndim else 0} "
                    f"entries for {events.size} events"
                )
            attrs[name] = column if order is None else column[order]
        object.__setattr__(self, "attributes", attrs)

    @property
    def n(self) -> int:
        return int(self.events.size)

    @property
    def extent(self) -> float:
        return self.t_end - self.t_start

    def numeric_attribute(self, name: str) -> np.ndarray:
        if name not in self.attributes:
            raise MissingAttributeError(name)
        column = self.attributes[name]
        if not np.issubdtype(column.dtype, np.number):
            raise ValueError(f"attribute {name!r} is not numeric")
        return column.astype(float)


@dataclass(frozen=True)
class BinAggregation:
    """How events inside one phase bin collapse to a single value.

    ``count`` sums events; ``mean`` and ``variance`` aggregate a named
    numeric attribute (population variance, so single-event bins give 0).
    """

    mode: str = "count"
    attribute: str | None = None

    def __post_init__(self):
        if self.mode not in ("count", "mean", "variance"):
            raise ValueError(f"unknown aggregation mode {self.mode!r}")
        if self.mode != "count" and not self.attribute:
            raise ValueError(f"{self.mode} aggregation needs an attribute name")
        if self.mode == "count" and self.attribute is not None:
            raise ValueError("count aggregation takes no attribute")

    @classmethod
    def count(cls) -> "BinAggregation":
        return cls("count")

    @classmethod
    def mean(cls, attribute: str) -> "BinAggregation":
        return cls("mean", attribute)

    @classmethod
    def variance(cls, attribute: str) -> "BinAggregation":
        return cls("variance", attribute)

    @classmethod
    def parse(cls, text: str) -> "BinAggregation":
        """Parse ``"count"``, ``"mean:<attr>"`` or ``"variance:<attr>"``."""
        mode, sep, attribute = text.partition(":")
        mode = mode.strip().lower()
        if mode == "count" and not sep:
            return cls.count()
        if mode in ("mean", "variance") and sep:
            return cls(mode, attribute.strip())
        raise ValueError(
            f"cannot parse aggregation {text!r}; expected 'count', "
            f"'mean:<attribute>' or 'variance:<attribute>'"
        )

    def key(self) -> str:
        return self.mode if self.mode == "count" else f"{self.mode}:{self.attribute}"

    def __str__(self) -> str:
        return self.key()


@dataclass(frozen=True)
class PhaseHistogram:
    """Aggregated bin values for one period length.

    ``counts`` (raw event counts per bin) are always kept alongside the
    aggregated ``bins``; in count mode ``bins == counts``. For mean/variance
    aggregation, bins with zero events hold NaN, which keeps them distinct
    from a true value of 0.
    """

    bins: np.ndarray
    counts: np.ndarray
    aggregation: BinAggregation = field(default_factory=BinAggregation.count)

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=float)
        counts = np.asarray(self.counts, dtype=np.int64)
        if bins.shape != counts.shape or bins.ndim != 1:
            raise ValueError("bins and counts must be 1-D and the same length")
        if bins.size < 2:
            raise ValueError("a phase histogram needs at least 2 bins")
        if np.any(counts < 0):
            raise ValueError("bin counts must be non-negative")
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "counts", counts)

    @property
    def bin_count(self) -> int:
        return int(self.bins.size)

    @property
    def empty_mask(self) -> np.ndarray:
        """Bins that aggregated zero events (only meaningful off count mode)."""
        return self.counts == 0


@dataclass(frozen=True)
class QualityMeasures:
    """Interest measures for one period length.

    ``entropy_interest`` is ``1 - entropy_bits / log2(N)``: an empty-bar /
    full-bar normalization where a uniform histogram scores 0 and a single
    spike scores 1. ``vector_strength`` is the mean resultant length of the
    event phases on the unit circle, with ``mean_direction`` the angle of
    their barycenter in ``[0, 2*pi)``.
    """

    entropy_bits: float
    entropy_interest: float
    vector_strength: float
    mean_direction: float

    def by_name(self, measure: str) -> float:
        """Interest value for a measure selector (used by rankings)."""
        name = normalize_measure(measure)
        if name == "entropy":
            return self.entropy_interest
        return self.vector_strength


def normalize_measure(measure: str) -> str:
    """Map selector spellings to ``"entropy"`` or ``"vector_strength"``."""
    name = measure.strip().lower().replace("-", "_")
    if name in ("entropy", "entropy_interest"):
        return "entropy"
    if name in ("vector_strength", "vectorstrength"):
        return "vector_strength"
    raise ValueError(f"unknown measure {measure!r}")


@dataclass(frozen=True)
class DetailMatrix:
    """Per-period breakdown of a phase histogram.

    Row ``r`` holds the events of the r-th period after ``t_start``; column
    ``c`` is the phase bin. Summing count-mode rows column-wise reproduces
    the phase histogram for the same period length.
    """

    values: np.ndarray
    counts: np.ndarray
    tau: float
    aggregation: BinAggregation

    @property
    def row_count(self) -> int:
        return int(self.values.shape[0])

    @property
    def bin_count(self) -> int:
        return int(self.values.shape[1])


@dataclass(frozen=True)
class PhaseMapping:
    """A phase-to-visual mapping choice plus its rotation offset.

    The mapping kind is carried for the rendering side; the engine only uses
    the offset when assigning per-event parameters. Cyclic kinds render u=0
    and u->1 identically; cut-color and star-morph have a visible seam.
    """

    kind: str = "cyclic-color"
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in MAPPING_KINDS:
            raise ValueError(f"unknown mapping kind {self.kind!r}; expected one of {MAPPING_KINDS}")
        if not (0.0 <= self.offset < TWO_PI):
            raise ValueError(f"offset {self.offset} outside [0, 2*pi)")

    @property
    def cyclic(self) -> bool:
        return self.kind in _CYCLIC_KINDS


def _check_tau(tau: float) -> float:
    tau = float(tau)
    if not (tau > 0.0) or not math.isfinite(tau):
        raise InvalidPeriodError(f"period length must be positive, got {tau}")
    return tau


def _check_tau_for_series(series: EventSeries, tau: float) -> float:
    tau = _check_tau(tau)
    if tau > series.extent:
        raise PeriodOutOfRangeError(
            f"period length {tau} exceeds the series extent {series.extent}"
        )
    return tau


def compute_phase(t, tau: float, t_start: float = 0.0):
    """Phase of timestamps within a candidate period.

    The phase is the offset from the start of the enclosing period, scaled
    to angle: ``2*pi * ((t - t_start) mod tau) / tau``. Periods are anchored
    at ``t_start``.

    Parameters
    ----------
    t : float or array_like
        Timestamp(s) in seconds, at or after ``t_start``.
    tau : float
        Candidate period length in seconds, > 0.
    t_start : float
        Start of the first period.

    Returns
    -------
    float or np.ndarray
        Phase(s) in ``[0, 2*pi)``.

    Examples
    --------
    >>> compute_phase(25.0, 10.0)  # doctest: +ELLIPSIS
    3.14159...
    """
    tau = _check_tau(tau)
    t_arr = np.asarray(t, dtype=float)
    frac = np.mod(t_arr - t_start, tau) / tau
    # Rounding can push the remainder onto tau itself; that is phase 0.
    frac = np.where(frac >= 1.0, 0.0, frac)
    phases = TWO_PI * frac
    if np.isscalar(t) or t_arr.ndim == 0:
        return float(phases)
    return phases


def phase_bin_index(phases: np.ndarray, bin_count: int) -> np.ndarray:
    """Half-open equal-width phase bins; spill at the 2*pi edge clamps to N-1."""
    idx = (np.asarray(phases) * (bin_count / TWO_PI)).astype(np.int64)
    return np.minimum(idx, bin_count - 1)


def _aggregate_bins(series, idx, counts, n_bins, aggregation):
    if aggregation.mode == "count":
        return counts.astype(float)
    values = series.numeric_attribute(aggregation.attribute)
    # Shift by the column mean before the moment sums for numerical stability.
    center = float(values.mean())
    shifted = values - center
    sums = np.bincount(idx, weights=shifted, minlength=n_bins)
    with np.errstate(invalid="ignore", divide="ignore"):
        means = sums / counts
    if aggregation.mode == "mean":
        bins = means + center
    else:
        squares = np.bincount(idx, weights=shifted * shifted, minlength=n_bins)
        with np.errstate(invalid="ignore", divide="ignore"):
            bins = np.maximum(squares / counts - means * means, 0.0)
    return np.where(counts > 0, bins, np.nan)


def build_phase_histogram(
    series: EventSeries,
    tau: float,
    bin_count: int = DEFAULT_BIN_COUNT,
    aggregation: BinAggregation | None = None,
) -> PhaseHistogram:
    """Fold all events of a series into N phase bins for one period length.

    An event with phase ``phi`` lands in bin ``floor(phi / (2*pi) * N)``,
    clamped to ``N - 1`` against floating-point spill. Count mode sums
    events per bin; mean/variance aggregate the named attribute within each
    bin (population variance).

    Parameters
    ----------
    series : EventSeries
    tau : float
        Period length, ``0 < tau <= series.extent``.
    bin_count : int
        Number of bins N, >= 2.
    aggregation : BinAggregation, optional
        Defaults to count mode.

    Returns
    -------
    PhaseHistogram
    """
    if bin_count < 2:
        raise ValueError(f"need at least 2 bins, got {bin_count}")
    aggregation = aggregation or BinAggregation.count()
    tau = _check_tau_for_series(series, tau)
    phases = compute_phase(series.events, tau, series.t_start)
    return _histogram_from_phases(series, phases, bin_count, aggregation)


def _histogram_from_phases(
    series: EventSeries,
    phases: np.ndarray,
    bin_count: int,
    aggregation: BinAggregation,
) -> PhaseHistogram:
    idx = phase_bin_index(phases, bin_count)
    counts = np.bincount(idx, minlength=bin_count)
    bins = _aggregate_bins(series, idx, counts, bin_count, aggregation)
    return PhaseHistogram(bins=bins, counts=counts, aggregation=aggregation)


def _strength_from_phases(phases: np.ndarray) -> tuple[float, float]:
    x = float(np.cos(phases).mean())
    y = float(np.sin(phases).mean())
    strength = min(math.hypot(x, y), 1.0)
    direction = math.atan2(y, x) % TWO_PI
    if direction >= TWO_PI:  # atan2 ~ -1e-17 wraps onto 2*pi itself
        direction = 0.0
    return strength, direction


def fold(
    series: EventSeries,
    tau: float,
    bin_count: int = DEFAULT_BIN_COUNT,
    aggregation: BinAggregation | None = None,
) -> tuple[PhaseHistogram, QualityMeasures]:
    """Histogram plus both quality measures in a single pass over the events.

    Equivalent to :func:`build_phase_histogram` followed by
    :func:`quality_measures`, but folds the series only once; grid
    precomputation calls this per ladder sample.
    """
    if bin_count < 2:
        raise ValueError(f"need at least 2 bins, got {bin_count}")
    aggregation = aggregation or BinAggregation.count()
    tau = _check_tau_for_series(series, tau)
    phases = compute_phase(series.events, tau, series.t_start)
    hist = _histogram_from_phases(series, phases, bin_count, aggregation)
    entropy_bits, interest = shannon_entropy(hist)
    strength, direction = _strength_from_phases(phases)
    return hist, QualityMeasures(
        entropy_bits=entropy_bits,
        entropy_interest=interest,
        vector_strength=strength,
        mean_direction=direction,
    )


def shannon_entropy(hist: PhaseHistogram) -> tuple[float, float]:
    """Entropy of the event-count distribution of a phase histogram.

    Entropy is high for uniformly filled histograms and low for spiky ones,
    so the returned interest flips and normalizes it: a uniform histogram
    scores 0, a single fully loaded bin scores 1.

    Parameters
    ----------
    hist : PhaseHistogram
        Entropy always runs on ``hist.counts``, which every aggregation
        mode carries.

    Returns
    -------
    (entropy_bits, entropy_interest) : tuple of float
        ``entropy_bits = -sum(p_i * log2(p_i))`` with ``p_i = counts_i / n``
        and ``0 * log2(0) := 0``; ``entropy_interest = 1 - entropy_bits /
        log2(N)`` clamped to [0, 1]. An all-zero histogram is treated as
        uniform: entropy ``log2(N)``, interest 0.

    Examples
    --------
    >>> h = PhaseHistogram(bins=[5, 5, 5, 5], counts=[5, 5, 5, 5])
    >>> shannon_entropy(h)
    (2.0, 0.0)
    """
    counts = hist.counts
    n = int(counts.sum())
    h_max = math.log2(hist.bin_count)
    if n == 0:
        return h_max, 0.0
    p = counts[counts > 0] / n
    entropy_bits = float(-(p * np.log2(p)).sum())
    entropy_bits = max(0.0, entropy_bits)  # a lone spike gives -0.0
    interest = 1.0 - entropy_bits / h_max
    return entropy_bits, float(min(max(interest, 0.0), 1.0))


def vector_strength(series: EventSeries, tau: float) -> tuple[float, float]:
    """Mean resultant length and direction of the event phases.

    Each event is projected onto the unit circle at its phase angle; the
    distance from the circle's center to the barycenter of the projections
    is the vector strength. It is 1 when all phases coincide and 0 when
    they balance out. Computed from raw event phases, not histogram bins.

    Parameters
    ----------
    series : EventSeries
    tau : float
        Period length, ``0 < tau <= series.extent``.

    Returns
    -------
    (vector_strength, mean_direction) : tuple of float
        Strength in [0, 1] and barycenter angle in ``[0, 2*pi)``.
    """
    tau = _check_tau_for_series(series, tau)
    phases = compute_phase(series.events, tau, series.t_start)
    return _strength_from_phases(phases)


def quality_measures(
    series: EventSeries, tau: float, hist: PhaseHistogram
) -> QualityMeasures:
    """Bundle both quality measures for one period length."""
    entropy_bits, interest = shannon_entropy(hist)
    strength, direction = vector_strength(series, tau)
    return QualityMeasures(
        entropy_bits=entropy_bits,
        entropy_interest=interest,
        vector_strength=strength,
        mean_direction=direction,
    )


def detail_matrix(
    series: EventSeries,
    tau: float,
    bin_count: int = DEFAULT_BIN_COUNT,
    aggregation: BinAggregation | None = None,
    row_cap: int = DETAIL_ROW_CAP,
) -> DetailMatrix:
    """Per-period rows x phase-bin columns breakdown of a fold.

    Row ``r`` aggregates events with ``floor((t - t_start) / tau) == r``;
    columns use the same phase bins as :func:`build_phase_histogram`, so
    count-mode column sums reproduce the phase histogram. Underlies the
    rectangular and spiral detail renderings.

    Parameters
    ----------
    series : EventSeries
    tau : float
        Period length; the row count ``ceil(extent / tau)`` must stay
        within ``row_cap``.
    bin_count : int
    aggregation : BinAggregation, optional
    row_cap : int
        Upper bound on rows to keep detail views tractable.

    Raises
    ------
    TooManyRowsError
        If the fold would produce more than ``row_cap`` rows.
    """
    if bin_count < 2:
        raise ValueError(f"need at least 2 bins, got {bin_count}")
    aggregation = aggregation or BinAggregation.count()
    tau = _check_tau_for_series(series, tau)
    n_rows = math.ceil(series.extent / tau)
    if n_rows > row_cap:
        raise TooManyRowsError(
            f"{n_rows} periods exceed the {row_cap}-row cap; pick a larger "
            f"period length or a coarser view"
        )
    offsets = series.events - series.t_start
    rows = np.minimum((offsets / tau).astype(np.int64), n_rows - 1)
    phases = compute_phase(series.events, tau, series.t_start)
    cols = phase_bin_index(phases, bin_count)
    flat = rows * bin_count + cols
    n_cells = n_rows * bin_count
    counts = np.bincount(flat, minlength=n_cells)
    values = _aggregate_bins(series, flat, counts, n_cells, aggregation)
    return DetailMatrix(
        values=values.reshape(n_rows, bin_count),
        counts=counts.reshape(n_rows, bin_count),
        tau=tau,
        aggregation=aggregation,
    )


def assign_phases(
    series: EventSeries, tau: float, mapping: PhaseMapping | None = None
) -> np.ndarray:
    """Per-event mapped parameter ``u`` in [0, 1) for visual encoding.

    ``u = ((phase + offset) mod 2*pi) / (2*pi)``. How u turns into a color
    or glyph is the renderer's job; a rotated-rectangle renderer multiplies
    u by pi (angular rotation within [0, pi)).
    """
    mapping = mapping or PhaseMapping()
    tau = _check_tau_for_series(series, tau)
    phases = compute_phase(series.events, tau, series.t_start)
    u = np.mod(phases + mapping.offset, TWO_PI) / TWO_PI
    return np.where(u >= 1.0, 0.0, u)
