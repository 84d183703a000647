"""HTTP JSON API for interactive period exploration.

The service owns a dataset catalog and one precomputed period grid per
(dataset, bin count, aggregation) combination. The default grid starts
building in a background thread the moment a dataset is registered, so
uploads return immediately; window requests against a grid that is still
building get 409 plus a progress figure. Other bin/aggregation
combinations build synchronously on first use and are then cached.

All responses are plain JSON. NaN (an empty mean/variance bin) serializes
as null.
"""

from __future__ import annotations

import math
import tempfile
import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, File, Form, HTTPException, Query, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .errors import DatasetNotFoundError, EmptyLadderError, PhasefoldError
from .grid import (
    DEFAULT_CONTEXT_ROWS,
    DEFAULT_LOWER_BOUND,
    PeriodGrid,
    build_ladder,
    grid_cache_name,
    load_grid,
    neighborhood,
    precompute_grid,
    save_grid,
    top_ticks,
)
from .guidance import timed_suggest
from .ingest import (
    DatasetCatalog,
    load_events_csv,
    load_raw_csv,
    save_events_csv,
    threshold_events,
)
from .stats import (
    DEFAULT_BIN_COUNT,
    MAPPING_KINDS,
    BinAggregation,
    EventSeries,
    PhaseMapping,
    assign_phases,
    detail_matrix,
    normalize_measure,
)


class GridNotReadyError(PhasefoldError):
    """The requested grid is still precomputing."""

    def __init__(self, message: str, progress: float):
        super().__init__(message)
        self.progress = progress


def _clean_floats(arr) -> list:
    """Python floats with NaN replaced by None, ready for JSON."""
    out = []
    for v in np.asarray(arr, dtype=float).ravel():
        v = float(v)
        out.append(None if math.isnan(v) else v)
    return out


def _clean_matrix(arr) -> list[list]:
    arr = np.asarray(arr, dtype=float)
    return [_clean_floats(row) for row in arr]


class GridManager:
    """Builds, caches, and persists period grids per dataset and settings."""

    def __init__(
        self,
        catalog: DatasetCatalog,
        data_dir: Path | None,
        bin_count: int,
        lower_bound: float,
    ):
        self.catalog = catalog
        self.data_dir = data_dir
        self.bin_count = bin_count
        self.lower_bound = lower_bound
        self._grids: dict[tuple, PeriodGrid] = {}
        self._status: dict[str, dict] = {}
        self._lock = threading.Lock()

    def _key(self, dataset_id: str, bin_count: int, aggregation: BinAggregation):
        return (dataset_id, bin_count, aggregation.key())

    def _cache_path(
        self, dataset_id: str, bin_count: int, aggregation: BinAggregation
    ) -> Path | None:
        if not self.data_dir:
            return None
        return self.data_dir / grid_cache_name(dataset_id, bin_count, aggregation)

    def status(self, dataset_id: str) -> dict:
        with self._lock:
            return dict(
                self._status.get(dataset_id, {"state": "missing", "progress": 0.0})
            )

    def _set_status(self, dataset_id: str, **fields):
        with self._lock:
            entry = self._status.setdefault(
                dataset_id, {"state": "missing", "progress": 0.0}
            )
            entry.update(fields)

    def _build(
        self,
        dataset_id: str,
        series: EventSeries,
        bin_count: int,
        aggregation: BinAggregation,
        track: bool,
    ) -> PeriodGrid:
        cache = self._cache_path(dataset_id, bin_count, aggregation)
        if cache and cache.exists():
            grid = load_grid(cache, series)
            if track:
                self._set_status(dataset_id, state="ready", progress=1.0)
            return grid

        def progress(done, total):
            if track:
                self._set_status(dataset_id, progress=done / total)

        ladder = build_ladder(series.extent, self.lower_bound)
        grid = precompute_grid(
            series, ladder, bin_count, aggregation, progress=progress
        )
        if cache:
            save_grid(grid, cache, dataset_id=dataset_id)
        if track:
            self._set_status(dataset_id, state="ready", progress=1.0)
        return grid

    def start_background(self, dataset_id: str):
        """Kick off the default grid build; returns immediately."""
        aggregation = BinAggregation.count()
        key = self._key(dataset_id, self.bin_count, aggregation)
        with self._lock:
            if key in self._grids or self._status.get(dataset_id, {}).get(
                "state"
            ) in ("building", "ready"):
                return
            self._status[dataset_id] = {"state": "building", "progress": 0.0}

        def run():
            try:
                series = self.catalog.get(dataset_id)
                grid = self._build(
                    dataset_id, series, self.bin_count, aggregation, track=True
                )
                with self._lock:
                    self._grids[key] = grid
            except Exception as exc:
                self._set_status(dataset_id, state="failed", error=str(exc))

        threading.Thread(target=run, daemon=True).start()

    def get(
        self,
        dataset_id: str,
        bin_count: int | None = None,
        aggregation: BinAggregation | None = None,
    ) -> PeriodGrid:
        """The grid for the given settings.

        The default combination must already be precomputed (409 while
        building); any other combination builds synchronously on first
        request and is cached afterwards.
        """
        bin_count = bin_count or self.bin_count
        aggregation = aggregation or BinAggregation.count()
        key = self._key(dataset_id, bin_count, aggregation)
        with self._lock:
            grid = self._grids.get(key)
        if grid is not None:
            return grid
        self.catalog.record(dataset_id)  # 404 before 409 for unknown ids
        is_default = bin_count == self.bin_count and aggregation.mode == "count"
        if is_default:
            status = self.status(dataset_id)
            if status["state"] == "building":
                raise GridNotReadyError(
                    f"grid for dataset {dataset_id} is still precomputing",
                    progress=status["progress"],
                )
            if status["state"] == "failed":
                raise PhasefoldError(
                    f"grid build failed: {status.get('error', 'unknown error')}"
                )
            # Not started yet (e.g. service restart): build in the open.
        series = self.catalog.get(dataset_id)
        grid = self._build(
            dataset_id, series, bin_count, aggregation, track=is_default
        )
        with self._lock:
            self._grids[key] = grid
        return grid

    def persist(self, dataset_id: str, grid: PeriodGrid):
        """Re-save a grid after ad-hoc rows joined it."""
        cache = self._cache_path(dataset_id, grid.bin_count, grid.aggregation)
        if cache:
            save_grid(grid, cache, dataset_id=dataset_id)


def _measures_dict(measures) -> dict:
    return {
        "entropy_bits": measures.entropy_bits,
        "entropy_interest": measures.entropy_interest,
        "vector_strength": measures.vector_strength,
        "mean_direction": measures.mean_direction,
    }


def _parse_aggregation(text: str) -> BinAggregation:
    try:
        return BinAggregation.parse(text)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _parse_measure(text: str) -> str:
    try:
        return normalize_measure(text)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def create_app(
    data_dir=None,
    bin_count: int = DEFAULT_BIN_COUNT,
    lower_bound: float = DEFAULT_LOWER_BOUND,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    """Build the service application.

    With ``data_dir`` set, uploads, the dataset catalog, and grid caches
    persist there and are picked up again on restart.
    """
    data_dir = Path(data_dir) if data_dir else None
    catalog = DatasetCatalog(root=data_dir)
    grids = GridManager(catalog, data_dir, bin_count, lower_bound)

    app = FastAPI(title="phasefold", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.catalog = catalog
    app.state.grids = grids

    @app.exception_handler(DatasetNotFoundError)
    async def _not_found(request, exc):
        return JSONResponse(status_code=404, content={"detail": str(exc.args[0])})

    @app.exception_handler(GridNotReadyError)
    async def _not_ready(request, exc):
        return JSONResponse(
            status_code=409,
            content={"detail": str(exc), "progress": exc.progress},
        )

    @app.exception_handler(PhasefoldError)
    async def _domain_error(request, exc):
        message = exc.args[0] if exc.args else str(exc)
        return JSONResponse(status_code=400, content={"detail": str(message)})

    def record_payload(record) -> dict:
        payload = record.to_dict()
        payload["grid"] = grids.status(record.id)
        return payload

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.get("/datasets")
    def list_datasets():
        return {"datasets": [record_payload(r) for r in catalog.list()]}

    @app.post("/datasets", status_code=201)
    def upload_dataset(
        file: UploadFile = File(...),
        name: str = Form(""),
        timestamp_column: str = Form("timestamp"),
        delimiter: str = Form(","),
        column: str = Form(""),
        op: str = Form(""),
        threshold: float | None = Form(None),
    ):
        """Register an uploaded CSV.

        Plain event lists load directly. To derive events from a raw value
        series instead, pass ``column``, ``op`` (gt or lt), and
        ``threshold``; the surviving samples become events and the raw
        extent is kept.
        """
        uploads = (data_dir / "uploads") if data_dir else Path(tempfile.mkdtemp())
        uploads.mkdir(parents=True, exist_ok=True)
        stem = Path(file.filename or "upload.csv").name
        raw_path = uploads / stem
        raw_path.write_bytes(file.file.read())

        derive = bool(column or op or threshold is not None)
        if derive:
            if not (column and op and threshold is not None):
                raise HTTPException(
                    status_code=400,
                    detail="deriving events needs column, op, and threshold together",
                )
            raw = load_raw_csv(
                raw_path, timestamp_column=timestamp_column, delimiter=delimiter
            )
            series = threshold_events(raw, column, op, threshold)
            events_path = uploads / f"{raw_path.stem}-events.csv"
            save_events_csv(series, events_path)
            registered_path, ts_col = events_path, "timestamp"
        else:
            series = load_events_csv(
                raw_path, timestamp_column=timestamp_column, delimiter=delimiter
            )
            registered_path, ts_col = raw_path, timestamp_column

        dataset_id = catalog.register(
            series,
            name=name or raw_path.stem,
            path=str(registered_path),
            timestamp_column=ts_col,
            delimiter=delimiter,
        )
        grids.start_background(dataset_id)
        return record_payload(catalog.record(dataset_id))

    @app.get("/datasets/{dataset_id}")
    def dataset_detail(dataset_id: str):
        record = catalog.record(dataset_id)
        payload = record_payload(record)
        series = catalog.get(dataset_id)
        payload["extent"] = series.extent
        payload["attributes"] = {
            name: str(col.dtype.kind) for name, col in series.attributes.items()
        }
        try:
            ladder = build_ladder(series.extent, lower_bound)
            payload["ladder"] = {
                "lower_bound": ladder.lower_bound,
                "upper_bound": ladder.upper_bound,
                "sample_count": len(ladder),
            }
        except EmptyLadderError:
            payload["ladder"] = None
        return payload

    @app.get("/datasets/{dataset_id}/window")
    def window(
        dataset_id: str,
        tau: float = Query(..., gt=0.0),
        rows: int = Query(DEFAULT_CONTEXT_ROWS, ge=1, le=500),
        bins: int | None = Query(None, ge=2, le=500),
        aggregation: str = Query("count"),
    ):
        """Grid rows around tau, inserting an ad-hoc row when tau is new."""
        agg = _parse_aggregation(aggregation)
        grid = grids.get(dataset_id, bins, agg)
        size_before = len(grid)
        win = neighborhood(grid, tau, context_rows=rows)
        if len(grid) != size_before:
            grids.persist(dataset_id, grid)
        finite = [
            v
            for row in win.rows
            for v in row.histogram.bins[~np.isnan(row.histogram.bins)]
        ]
        return {
            "dataset_id": dataset_id,
            "tau": win.center.tau,
            "bin_count": grid.bin_count,
            "aggregation": grid.aggregation.key(),
            "center_index": win.center_index,
            "value_min": float(min(finite)) if finite else None,
            "value_max": float(max(finite)) if finite else None,
            "rows": [
                {
                    "tau": row.tau,
                    "provenance": row.provenance,
                    "bins": _clean_floats(row.histogram.bins),
                    "counts": [int(c) for c in row.histogram.counts],
                    "measures": _measures_dict(row.measures),
                }
                for row in win.rows
            ],
        }

    @app.get("/datasets/{dataset_id}/suggestions")
    def suggestions(
        dataset_id: str,
        tau: float = Query(..., gt=0.0),
        measure: str = Query("vector_strength"),
        count: int = Query(5, ge=1, le=50),
        bins: int | None = Query(None, ge=2, le=500),
    ):
        """Ranked rational-factor alternatives to the current period length."""
        measure = _parse_measure(measure)
        series = catalog.get(dataset_id)
        found, elapsed_ms = timed_suggest(
            series,
            tau,
            measure=measure,
            max_count=count,
            bin_count=bins or grids.bin_count,
            lower_bound=lower_bound,
        )
        return {
            "dataset_id": dataset_id,
            "tau": tau,
            "measure_used": found[0].measure_used if found else measure,
            "elapsed_ms": elapsed_ms,
            "suggestions": [
                {
                    "tau": s.tau,
                    "factor": str(s.factor),
                    "numerator": s.factor.numerator,
                    "denominator": s.factor.denominator,
                    "score": s.score,
                    "thumbnail": {
                        "bins": _clean_floats(s.thumbnail.bins),
                        "counts": [int(c) for c in s.thumbnail.counts],
                    },
                }
                for s in found
            ],
        }

    @app.get("/datasets/{dataset_id}/ticks")
    def ticks(
        dataset_id: str,
        measure: str = Query("entropy"),
        count: int = Query(10, ge=1, le=100),
    ):
        """The best period lengths on the default grid for slider ticks."""
        measure = _parse_measure(measure)
        grid = grids.get(dataset_id)
        return {
            "dataset_id": dataset_id,
            "measure": measure,
            "ticks": [
                {
                    "tau": row.tau,
                    "score": row.measures.by_name(measure),
                    "provenance": row.provenance,
                }
                for row in top_ticks(grid, measure, count)
            ],
        }

    @app.get("/datasets/{dataset_id}/detail")
    def detail(
        dataset_id: str,
        tau: float = Query(..., gt=0.0),
        bins: int | None = Query(None, ge=2, le=500),
        aggregation: str = Query("count"),
    ):
        """Period-by-period matrix for the rectangular and spiral views."""
        series = catalog.get(dataset_id)
        agg = _parse_aggregation(aggregation)
        matrix = detail_matrix(series, tau, bins or grids.bin_count, agg)
        return {
            "dataset_id": dataset_id,
            "tau": matrix.tau,
            "bin_count": matrix.bin_count,
            "row_count": matrix.row_count,
            "aggregation": matrix.aggregation.key(),
            "values": _clean_matrix(matrix.values),
            "counts": [[int(c) for c in row] for row in matrix.counts],
        }

    @app.get("/datasets/{dataset_id}/phases")
    def phases(
        dataset_id: str,
        tau: float = Query(..., gt=0.0),
        offset: float = Query(0.0, ge=0.0),
        mapping: str = Query("cyclic-color"),
        fields: str = Query(""),
    ):
        """Per-event mapped parameter u plus any requested attribute columns."""
        series = catalog.get(dataset_id)
        if mapping not in MAPPING_KINDS:
            raise HTTPException(
                status_code=400,
                detail=f"unknown mapping {mapping!r}; expected one of {list(MAPPING_KINDS)}",
            )
        pm = PhaseMapping(kind=mapping, offset=offset % (2.0 * math.pi))
        u = assign_phases(series, tau, pm)
        attributes = {}
        for name in [f for f in fields.split(",") if f.strip()]:
            name = name.strip()
            if name not in series.attributes:
                raise HTTPException(
                    status_code=400, detail=f"unknown attribute {name!r}"
                )
            col = series.attributes[name]
            if np.issubdtype(col.dtype, np.number):
                attributes[name] = _clean_floats(col)
            else:
                attributes[name] = [str(v) for v in col]
        return {
            "dataset_id": dataset_id,
            "tau": tau,
            "offset": pm.offset,
            "mapping": pm.kind,
            "cyclic": pm.cyclic,
            "t": _clean_floats(series.events),
            "u": _clean_floats(u),
            "attributes": attributes,
        }

    def launch_catalog_builds():
        for record in catalog.list():
            grids.start_background(record.id)

    app.state.launch_catalog_builds = launch_catalog_builds
    launch_catalog_builds()

    return app
