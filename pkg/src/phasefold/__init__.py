"""Interactive periodicity exploration for event time series.

Fold event timestamps into phase histograms over candidate period lengths,
score each fold by Shannon entropy and vector strength, precompute a
sampling ladder of candidate periods, and ask for rational-factor
alternatives to the current period. Ships a CLI (``phasefold``) and an
HTTP JSON API for interactive frontends.
"""

__version__ = "0.1.0"

from .errors import (
    DatasetNotFoundError,
    EmptyDatasetError,
    EmptyLadderError,
    InvalidPeriodError,
    MissingAttributeError,
    PeriodOutOfRangeError,
    PhasefoldError,
    RowParseError,
    SchemaError,
    TooManyRowsError,
)
from .grid import (
    DEFAULT_CONTEXT_ROWS,
    DEFAULT_LOWER_BOUND,
    GridRow,
    GridWindow,
    PeriodGrid,
    SampleLadder,
    build_ladder,
    compute_row,
    load_grid,
    neighborhood,
    precompute_grid,
    save_grid,
    top_ticks,
)
from .guidance import (
    FactorSet,
    Suggestion,
    candidate_factors,
    suggest,
    timed_suggest,
)
from .ingest import (
    DatasetCatalog,
    DatasetRecord,
    RawTimeSeries,
    load_events_csv,
    load_events_json,
    load_raw_csv,
    save_events_csv,
    threshold_events,
)
from .report import (
    RankReport,
    build_rank_report,
    render_report_figures,
    write_report_csv,
    write_report_json,
)
from .service import create_app
from .stats import (
    DEFAULT_BIN_COUNT,
    DETAIL_ROW_CAP,
    MAPPING_KINDS,
    TWO_PI,
    BinAggregation,
    DetailMatrix,
    EventSeries,
    PhaseHistogram,
    PhaseMapping,
    QualityMeasures,
    assign_phases,
    build_phase_histogram,
    compute_phase,
    detail_matrix,
    fold,
    normalize_measure,
    phase_bin_index,
    quality_measures,
    shannon_entropy,
    vector_strength,
)
from .units import DAY, HOUR, MINUTE, SECOND, YEAR, format_duration, parse_duration

__all__ = [
    "__version__",
    "BinAggregation",
    "DatasetCatalog",
    "DatasetNotFoundError",
    "DatasetRecord",
    "DetailMatrix",
    "EventSeries",
    "FactorSet",
    "GridRow",
    "GridWindow",
    "PeriodGrid",
    "PhaseHistogram",
    "PhaseMapping",
    "PhasefoldError",
    "QualityMeasures",
    "RankReport",
    "RawTimeSeries",
    "SampleLadder",
    "Suggestion",
    "EmptyDatasetError",
    "EmptyLadderError",
    "InvalidPeriodError",
    "MissingAttributeError",
    "PeriodOutOfRangeError",
    "RowParseError",
    "SchemaError",
    "TooManyRowsError",
    "DEFAULT_BIN_COUNT",
    "DEFAULT_CONTEXT_ROWS",
    "DEFAULT_LOWER_BOUND",
    "DETAIL_ROW_CAP",
    "MAPPING_KINDS",
    "TWO_PI",
    "SECOND",
    "MINUTE",
    "HOUR",
    "DAY",
    "YEAR",
    "assign_phases",
    "build_ladder",
    "build_phase_histogram",
    "build_rank_report",
    "candidate_factors",
    "compute_phase",
    "compute_row",
    "create_app",
    "detail_matrix",
    "fold",
    "format_duration",
    "load_events_csv",
    "load_events_json",
    "load_grid",
    "load_raw_csv",
    "neighborhood",
    "normalize_measure",
    "parse_duration",
    "phase_bin_index",
    "precompute_grid",
    "quality_measures",
    "render_report_figures",
    "save_events_csv",
    "save_grid",
    "shannon_entropy",
    "suggest",
    "threshold_events",
    "timed_suggest",
    "top_ticks",
    "vector_strength",
    "write_report_csv",
    "write_report_json",
]
