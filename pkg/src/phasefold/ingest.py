"""Loading event and raw time series files, thresholding, and the catalog.

Timestamps in input files are either numeric epoch seconds or ISO-8601
datetimes (naive values are taken as UTC); anything else is rejected with
the offending row number rather than guessed. Event CSVs may carry an
optional first line ``# phasefold-extent: <t_start> <t_end>`` so a series
whose extent is wider than its events (e.g. threshold-derived events)
round-trips exactly.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import pandas as pd

from .errors import (
    DatasetNotFoundError,
    EmptyDatasetError,
    MissingAttributeError,
    RowParseError,
    SchemaError,
)
from .stats import EventSeries

EXTENT_PREFIX = "# phasefold-extent:"


@dataclass(frozen=True)
class RawTimeSeries:
    """Regularly or irregularly sampled values over time."""

    timestamps: np.ndarray
    values: dict[str, np.ndarray]
    name: str = ""
    source: str = ""

    def __post_init__(self):
        timestamps = np.asarray(self.timestamps, dtype=float)
        object.__setattr__(self, "timestamps", timestamps)
        if timestamps.ndim != 1 or timestamps.size < 1:
            raise ValueError("a raw series needs at least one sample")
        if np.any(np.diff(timestamps) < 0):
            raise ValueError("raw series timestamps must be sorted")
        for name, column in self.values.items():
            if len(column) != timestamps.size:
                raise ValueError(f"column {name!r} length does not match timestamps")

    @property
    def t_start(self) -> float:
        return float(self.timestamps[0])

    @property
    def t_end(self) -> float:
        return float(self.timestamps[-1])


def _parse_timestamps(raw: pd.Series) -> np.ndarray:
    """Numeric epoch seconds or ISO-8601 strings to float seconds."""
    numeric = pd.to_numeric(raw, errors="coerce")
    if not numeric.isna().any():
        return numeric.to_numpy(dtype=float)
    parsed = pd.to_datetime(raw, errors="coerce", utc=True, format="ISO8601")
    bad = parsed.isna()
    if bad.any():
        position = int(np.flatnonzero(bad.to_numpy())[0])
        # Report the file line: header is line 1, first data row line 2.
        raise RowParseError(
            f"row {position + 2}: cannot parse timestamp {raw.iloc[position]!r} "
            f"(expected epoch seconds or ISO-8601)",
            row=position + 2,
        )
    ns = parsed.to_numpy(dtype="datetime64[ns]").astype(np.int64)
    # Split whole seconds from the sub-second part; dividing the raw int64
    # nanosecond count in one go loses precision for modern epochs.
    return (ns // 1_000_000_000).astype(float) + (ns % 1_000_000_000) / 1e9


def format_timestamp(seconds: float) -> str:
    """Epoch seconds back to an ISO-8601 UTC string (inverse of parsing)."""
    return (
        datetime.fromtimestamp(0, tz=timezone.utc) + pd.Timedelta(seconds=seconds)
    ).isoformat().replace("+00:00", "Z")


def _attribute_array(raw: pd.Series) -> np.ndarray:
    numeric = pd.to_numeric(raw, errors="coerce")
    if numeric.isna().equals(raw.isna()):
        return numeric.to_numpy(dtype=float)
    return raw.astype(str).to_numpy()


def _read_extent_header(path: Path) -> tuple[float, float] | None:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    if not first.startswith(EXTENT_PREFIX):
        return None
    try:
        t_start, t_end = (float(tok) for tok in first[len(EXTENT_PREFIX):].split())
    except ValueError as exc:
        raise SchemaError(f"malformed extent header {first.strip()!r}") from exc
    return t_start, t_end


def load_events_csv(
    path,
    timestamp_column: str = "timestamp",
    attribute_columns: list[str] | None = None,
    delimiter: str = ",",
) -> EventSeries:
    """Load an event series from a CSV file (header row required).

    Rows need not be sorted; events are sorted ascending and the extent is
    the [min, max] timestamp unless an extent header widens it. With
    ``attribute_columns=None`` every non-timestamp column is attached.
    """
    path = Path(path)
    extent = _read_extent_header(path)
    try:
        frame = pd.read_csv(
            path,
            sep=delimiter,
            skiprows=1 if extent else 0,
            encoding="utf-8",
            float_precision="round_trip",
        )
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError(f"{path} is empty") from None
    if timestamp_column not in frame.columns:
        raise SchemaError(
            f"missing timestamp column {timestamp_column!r}; file has {list(frame.columns)}"
        )
    if attribute_columns is None:
        attribute_columns = [c for c in frame.columns if c != timestamp_column]
    missing = [c for c in attribute_columns if c not in frame.columns]
    if missing:
        raise SchemaError(f"missing attribute columns {missing}; file has {list(frame.columns)}")
    if len(frame) == 0:
        raise EmptyDatasetError(f"{path} contains no events")

    timestamps = _parse_timestamps(frame[timestamp_column])
    order = np.argsort(timestamps, kind="stable")
    timestamps = timestamps[order]
    attributes = {c: _attribute_array(frame[c])[order] for c in attribute_columns}

    t_start, t_end = extent if extent else (float(timestamps[0]), float(timestamps[-1]))
    if t_end <= t_start:
        # Degenerate single-instant series still needs a nonzero extent.
        t_end = t_start + 1.0
    return EventSeries(
        events=timestamps, t_start=t_start, t_end=t_end, attributes=attributes
    )


def load_events_json(path, timestamp_field: str = "timestamp") -> EventSeries:
    """Load events from a JSON array or JSON-lines file of flat objects."""
    path = Path(path)
    text = path.read_text(encoding="utf-8").strip()
    if not text:
        raise EmptyDatasetError(f"{path} is empty")
    if text.startswith("["):
        records = json.loads(text)
    else:
        records = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not records:
        raise EmptyDatasetError(f"{path} contains no events")
    frame = pd.json_normalize(records)
    if timestamp_field not in frame.columns:
        raise SchemaError(f"missing timestamp field {timestamp_field!r}")
    timestamps = _parse_timestamps(frame[timestamp_field])
    order = np.argsort(timestamps, kind="stable")
    timestamps = timestamps[order]
    attributes = {
        c: _attribute_array(frame[c])[order]
        for c in frame.columns
        if c != timestamp_field
    }
    t_end = float(timestamps[-1]) if timestamps[-1] > timestamps[0] else float(timestamps[0]) + 1.0
    return EventSeries(
        events=timestamps, t_start=float(timestamps[0]), t_end=t_end, attributes=attributes
    )


def save_events_csv(series: EventSeries, path, delimiter: str = ",") -> None:
    """Write events with full float precision plus the extent header."""
    path = Path(path)
    columns = {"timestamp": [repr(float(t)) for t in series.events]}
    for name, values in series.attributes.items():
        if np.issubdtype(values.dtype, np.number):
            columns[name] = [repr(float(v)) for v in values]
        else:
            columns[name] = [str(v) for v in values]
    frame = pd.DataFrame(columns)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"{EXTENT_PREFIX} {series.t_start!r} {series.t_end!r}\n")
        frame.to_csv(fh, sep=delimiter, index=False)


def load_raw_csv(
    path,
    timestamp_column: str = "timestamp",
    value_columns: list[str] | None = None,
    delimiter: str = ",",
) -> RawTimeSeries:
    """Load a raw (value) time series from CSV; values must be numeric."""
    path = Path(path)
    try:
        frame = pd.read_csv(
            path, sep=delimiter, encoding="utf-8", float_precision="round_trip"
        )
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError(f"{path} is empty") from None
    if timestamp_column not in frame.columns:
        raise SchemaError(
            f"missing timestamp column {timestamp_column!r}; file has {list(frame.columns)}"
        )
    if value_columns is None:
        value_columns = [c for c in frame.columns if c != timestamp_column]
    missing = [c for c in value_columns if c not in frame.columns]
    if missing:
        raise SchemaError(f"missing value columns {missing}; file has {list(frame.columns)}")
    if len(frame) == 0:
        raise EmptyDatasetError(f"{path} contains no samples")
    timestamps = _parse_timestamps(frame[timestamp_column])
    order = np.argsort(timestamps, kind="stable")
    values = {
        c: pd.to_numeric(frame[c], errors="coerce").to_numpy(dtype=float)[order]
        for c in value_columns
    }
    return RawTimeSeries(
        timestamps=timestamps[order], values=values, name=path.stem, source=str(path)
    )


def threshold_events(
    raw: RawTimeSeries, column: str, op: str, threshold: float
) -> EventSeries:
    """Derive events from the samples where a value crosses a threshold.

    ``op`` is ``"gt"`` or ``"lt"``. The extent is inherited from the raw
    series rather than shrunk to the surviving events, so downstream phases
    stay anchored at the original series start. All value columns of the
    surviving samples ride along as event attributes.
    """
    if column not in raw.values:
        raise MissingAttributeError(column)
    if op not in ("gt", "lt"):
        raise ValueError(f"op must be 'gt' or 'lt', got {op!r}")
    values = np.asarray(raw.values[column], dtype=float)
    mask = values > threshold if op == "gt" else values < threshold
    if not mask.any():
        raise EmptyDatasetError(
            f"no events: no sample has {column} {'>' if op == 'gt' else '<'} {threshold}"
        )
    attributes = {name: np.asarray(col)[mask] for name, col in raw.values.items()}
    return EventSeries(
        events=raw.timestamps[mask],
        t_start=raw.t_start,
        t_end=raw.t_end if raw.t_end > raw.t_start else raw.t_start + 1.0,
        attributes=attributes,
    )


@dataclass
class DatasetRecord:
    """Catalog entry describing one loaded dataset."""

    id: str
    name: str
    kind: str  # "events" or "raw"
    path: str
    loaded_at: str
    timestamp_column: str = "timestamp"
    attribute_columns: list[str] = field(default_factory=list)
    delimiter: str = ","
    n_events: int = 0
    t_start: float = 0.0
    t_end: float = 0.0

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, data: dict) -> "DatasetRecord":
        return cls(**data)


class DatasetCatalog:
    """Single-writer, many-reader store of loaded datasets.

    With a root directory, the index persists to ``<root>/catalog.json``
    and series reload lazily from their recorded paths between runs.
    """

    def __init__(self, root=None):
        self.root = Path(root) if root else None
        self._records: dict[str, DatasetRecord] = {}
        self._series: dict[str, EventSeries] = {}
        self._lock = threading.RLock()
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)
            self._load_index()

    @property
    def _index_path(self) -> Path:
        return self.root / "catalog.json"

    def _load_index(self):
        if not self._index_path.exists():
            return
        data = json.loads(self._index_path.read_text(encoding="utf-8"))
        for entry in data.get("datasets", []):
            record = DatasetRecord.from_dict(entry)
            self._records[record.id] = record

    def _save_index(self):
        if not self.root:
            return
        payload = {"datasets": [r.to_dict() for r in self._records.values()]}
        self._index_path.write_text(json.dumps(payload, indent=2), encoding="utf-8")

    def register(
        self,
        series: EventSeries,
        name: str,
        path: str = "",
        timestamp_column: str = "timestamp",
        attribute_columns: list[str] | None = None,
        delimiter: str = ",",
    ) -> str:
        with self._lock:
            dataset_id = uuid.uuid4().hex[:12]
            record = DatasetRecord(
                id=dataset_id,
                name=name,
                kind="events",
                path=str(path),
                loaded_at=datetime.now(timezone.utc).isoformat(),
                timestamp_column=timestamp_column,
                attribute_columns=attribute_columns or sorted(series.attributes),
                delimiter=delimiter,
                n_events=series.n,
                t_start=series.t_start,
                t_end=series.t_end,
            )
            self._records[dataset_id] = record
            self._series[dataset_id] = series
            self._save_index()
            return dataset_id

    def list(self) -> list[DatasetRecord]:
        with self._lock:
            return list(self._records.values())

    def record(self, dataset_id: str) -> DatasetRecord:
        try:
            return self._records[dataset_id]
        except KeyError:
            raise DatasetNotFoundError(dataset_id) from None

    def get(self, dataset_id: str) -> EventSeries:
        record = self.record(dataset_id)
        series = self._series.get(dataset_id)
        if series is None:
            if not record.path:
                raise DatasetNotFoundError(dataset_id)
            series = load_events_csv(
                record.path,
                timestamp_column=record.timestamp_column,
                attribute_columns=record.attribute_columns or None,
                delimiter=record.delimiter,
            )
            with self._lock:
                self._series[dataset_id] = series
        return series
