"""Command line entry points.

``analyze`` ranks candidate period lengths in an event file and writes a
report (plus figures next to it), ``derive-events`` turns a raw value
series into an event list by thresholding, ``export-grid`` dumps the full
sampled grid as CSV, and ``serve`` runs the HTTP API.
"""

from __future__ import annotations

import json
import socket
import sys
from pathlib import Path

import click

from .errors import PhasefoldError
from .grid import build_ladder, precompute_grid
from .ingest import load_events_csv, load_raw_csv, save_events_csv, threshold_events
from .report import (
    REPORT_MEASURES,
    build_rank_report,
    render_report_figures,
    write_report_csv,
    write_report_json,
)
from .stats import DEFAULT_BIN_COUNT
from .units import format_duration, parse_duration


class DurationType(click.ParamType):
    """Accepts '90s', '15min', '1.5h', '13.66d', '2y', or bare seconds."""

    name = "duration"

    def convert(self, value, param, ctx):
        try:
            return parse_duration(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


DURATION = DurationType()


def _progress_to_stderr(label: str):
    state = {"last": 0}

    def progress(done, total):
        # Ten coarse steps keep logs readable when not attached to a tty.
        step = max(total // 10, 1)
        if done - state["last"] >= step or done == total:
            state["last"] = done
            click.echo(f"{label}: {done}/{total} period samples", err=True)

    return progress


@click.group()
@click.version_option(package_name="phasefold")
def main():
    """Explore periodicity in event time series by phase folding."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--timestamp-column", default="timestamp", show_default=True)
@click.option("--bins", default=DEFAULT_BIN_COUNT, show_default=True, type=click.IntRange(min=2))
@click.option("--lower", default="60s", show_default=True, type=DURATION,
              help="Smallest period length to sample.")
@click.option("--top", "top_k", default=10, show_default=True, type=click.IntRange(min=1),
              help="Ranked periods to keep per measure.")
@click.option("--measure", default="both", show_default=True,
              type=click.Choice(["entropy", "vector-strength", "both"]))
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Report file (.json or .csv); stdout JSON when omitted.")
@click.option("--no-plot", is_flag=True, help="Skip rendering figures next to --out.")
def analyze(file, timestamp_column, bins, lower, top_k, measure, out, no_plot):
    """Rank candidate period lengths in an event CSV."""
    try:
        series = load_events_csv(file, timestamp_column=timestamp_column)
        ladder = build_ladder(series.extent, lower)
        click.echo(
            f"{series.n} events over {format_duration(series.extent)}; "
            f"sampling {len(ladder)} period lengths",
            err=True,
        )
        grid = precompute_grid(
            series, ladder, bins, progress=_progress_to_stderr(Path(file).name)
        )
        measures = REPORT_MEASURES if measure == "both" else (measure,)
        report = build_rank_report(
            grid, measures=measures, top_k=top_k, dataset_name=Path(file).stem
        )
    except PhasefoldError as exc:
        raise click.ClickException(str(exc)) from None

    if out is None:
        click.echo(json.dumps(report.to_dict(), indent=2))
        return
    out = Path(out)
    if out.suffix == ".json":
        write_report_json(report, out)
    elif out.suffix == ".csv":
        write_report_csv(report, out)
    else:
        raise click.ClickException(f"--out must end in .json or .csv, got {out.name}")
    written = [out]
    if not no_plot:
        stem = out.parent / out.stem
        written.extend(render_report_figures(grid, report, stem))
    for path in written:
        click.echo(f"wrote {path}", err=True)


@main.command("derive-events")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--timestamp-column", default="timestamp", show_default=True)
@click.option("--column", required=True, help="Value column to threshold.")
@click.option("--gt", type=float, default=None, help="Keep samples with value > GT.")
@click.option("--lt", type=float, default=None, help="Keep samples with value < LT.")
@click.option("--out", required=True, type=click.Path(dir_okay=False))
def derive_events(file, timestamp_column, column, gt, lt, out):
    """Threshold a raw value series into an event list."""
    if (gt is None) == (lt is None):
        raise click.ClickException("pass exactly one of --gt or --lt")
    op, value = ("gt", gt) if gt is not None else ("lt", lt)
    try:
        raw = load_raw_csv(file, timestamp_column=timestamp_column)
        series = threshold_events(raw, column, op, value)
    except PhasefoldError as exc:
        raise click.ClickException(str(exc)) from None
    save_events_csv(series, out)
    click.echo(
        f"{series.n} of {raw.timestamps.size} samples became events -> {out}",
        err=True,
    )


@main.command("export-grid")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--timestamp-column", default="timestamp", show_default=True)
@click.option("--bins", default=DEFAULT_BIN_COUNT, show_default=True, type=click.IntRange(min=2))
@click.option("--lower", default="60s", show_default=True, type=DURATION)
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Grid CSV; measures go to <stem>_measures.csv beside it.")
def export_grid(file, timestamp_column, bins, lower, out):
    """Dump every sampled period length's bins and measures as CSV."""
    try:
        series = load_events_csv(file, timestamp_column=timestamp_column)
        ladder = build_ladder(series.extent, lower)
        grid = precompute_grid(
            series, ladder, bins, progress=_progress_to_stderr(Path(file).name)
        )
    except PhasefoldError as exc:
        raise click.ClickException(str(exc)) from None
    out = Path(out)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("tau,bin_index,value,count\n")
        for row in grid.rows:
            for i, (value, count) in enumerate(zip(row.histogram.bins, row.histogram.counts)):
                fh.write(f"{row.tau!r},{i},{float(value)!r},{int(count)}\n")
    measures_path = out.parent / f"{out.stem}_measures.csv"
    with open(measures_path, "w", encoding="utf-8") as fh:
        fh.write("tau,entropy_bits,entropy_interest,vector_strength,mean_direction\n")
        for row in grid.rows:
            m = row.measures
            fh.write(
                f"{row.tau!r},{m.entropy_bits!r},{m.entropy_interest!r},"
                f"{m.vector_strength!r},{m.mean_direction!r}\n"
            )
    click.echo(f"wrote {out} and {measures_path}", err=True)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8787, show_default=True, type=int)
@click.option("--data-dir", type=click.Path(file_okay=False), default=None,
              help="Directory for uploads, the catalog, and grid caches.")
@click.option("--bins", default=DEFAULT_BIN_COUNT, show_default=True, type=click.IntRange(min=2))
@click.option("--lower", default="60s", show_default=True, type=DURATION)
def serve(host, port, data_dir, bins, lower):
    """Run the HTTP JSON API."""
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((host, port))
    except OSError as exc:
        raise click.ClickException(f"cannot bind {host}:{port}: {exc}") from None
    finally:
        probe.close()

    import uvicorn

    from .service import create_app

    app = create_app(data_dir=data_dir, bin_count=bins, lower_bound=lower)
    click.echo(f"serving on http://{host}:{port}", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
