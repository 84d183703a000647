"""Ranked-period reports and the figures rendered next to them.

A report takes a precomputed period grid, ranks its rows by one or both
quality measures, and serializes the result as JSON or CSV. The figure
renderer writes a phase-bin heat map over the sampled periods plus the
measure curves with the ranked periods marked, as PNG files sharing the
report's output stem.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .grid import PeriodGrid, top_ticks
from .stats import normalize_measure
from .units import format_duration

REPORT_MEASURES = ("entropy", "vector_strength")


@dataclass(frozen=True)
class RankedPeriod:
    rank: int
    tau: float
    score: float
    entropy_bits: float
    entropy_interest: float
    vector_strength: float
    mean_direction: float


@dataclass(frozen=True)
class RankReport:
    """Top periods per quality measure for one dataset and grid."""

    dataset_name: str
    n_events: int
    t_start: float
    t_end: float
    bin_count: int
    aggregation: str
    lower_bound: float
    sample_count: int
    top: dict[str, list[RankedPeriod]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset_name,
            "n_events": self.n_events,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "bin_count": self.bin_count,
            "aggregation": self.aggregation,
            "lower_bound": self.lower_bound,
            "sample_count": self.sample_count,
            "top": {
                measure: [
                    {
                        "rank": entry.rank,
                        "tau": entry.tau,
                        "tau_label": format_duration(entry.tau),
                        "score": entry.score,
                        "entropy_bits": entry.entropy_bits,
                        "entropy_interest": entry.entropy_interest,
                        "vector_strength": entry.vector_strength,
                        "mean_direction": entry.mean_direction,
                    }
                    for entry in entries
                ]
                for measure, entries in self.top.items()
            },
        }


def build_rank_report(
    grid: PeriodGrid,
    measures=REPORT_MEASURES,
    top_k: int = 10,
    dataset_name: str = "",
) -> RankReport:
    """Rank the grid rows and keep the ``top_k`` periods per measure."""
    top: dict[str, list[RankedPeriod]] = {}
    for measure in measures:
        name = normalize_measure(measure)
        entries = []
        for rank, row in enumerate(top_ticks(grid, name, top_k), start=1):
            m = row.measures
            entries.append(
                RankedPeriod(
                    rank=rank,
                    tau=row.tau,
                    score=m.by_name(name),
                    entropy_bits=m.entropy_bits,
                    entropy_interest=m.entropy_interest,
                    vector_strength=m.vector_strength,
                    mean_direction=m.mean_direction,
                )
            )
        top[name] = entries
    return RankReport(
        dataset_name=dataset_name,
        n_events=grid.series.n,
        t_start=grid.series.t_start,
        t_end=grid.series.t_end,
        bin_count=grid.bin_count,
        aggregation=grid.aggregation.key(),
        lower_bound=grid.lower_bound,
        sample_count=len(grid.rows),
        top=top,
    )


def write_report_json(report: RankReport, path) -> None:
    Path(path).write_text(
        json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8"
    )


def write_report_csv(report: RankReport, path) -> None:
    """One row per ranked period, full float precision."""
    lines = [
        "measure,rank,tau,tau_label,score,entropy_bits,entropy_interest,"
        "vector_strength,mean_direction"
    ]
    for measure, entries in report.top.items():
        for e in entries:
            lines.append(
                f"{measure},{e.rank},{e.tau!r},{format_duration(e.tau)},{e.score!r},"
                f"{e.entropy_bits!r},{e.entropy_interest!r},{e.vector_strength!r},"
                f"{e.mean_direction!r}"
            )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_report_figures(
    grid: PeriodGrid, report: RankReport, out_stem
) -> list[Path]:
    """Render the grid heat map and measure curves beside the report.

    Returns the written paths: ``<out_stem>_grid.png`` and
    ``<out_stem>_measures.png``.
    """
    out_stem = Path(out_stem)
    taus = np.array([row.tau for row in grid.rows])
    counts = np.array([row.histogram.counts for row in grid.rows], dtype=float)
    written = []

    fig, ax = plt.subplots(figsize=(7.0, 9.0))
    shown = counts / np.maximum(counts.max(axis=1, keepdims=True), 1)
    mesh_y = np.concatenate([taus, [taus[-1] * 1.01]])
    mesh_x = np.arange(grid.bin_count + 1) / grid.bin_count
    ax.pcolormesh(mesh_x, mesh_y, shown, cmap="viridis", shading="flat")
    ax.set_yscale("log")
    ax.set_xlabel("phase (cycles)")
    ax.set_ylabel("period (s)")
    ax.set_title(f"{report.dataset_name or 'events'}: folded phase grid")
    grid_path = out_stem.parent / f"{out_stem.name}_grid.png"
    fig.savefig(grid_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(grid_path)

    fig, axes = plt.subplots(
        len(REPORT_MEASURES), 1, figsize=(8.0, 6.0), sharex=True
    )
    for ax, measure in zip(np.atleast_1d(axes), REPORT_MEASURES):
        values = np.array(
            [row.measures.by_name(measure) for row in grid.rows]
        )
        ax.plot(taus, values, lw=0.8, color="#33557f")
        for entry in report.top.get(measure, []):
            ax.axvline(entry.tau, color="#c23b22", lw=0.6, alpha=0.6)
            ax.annotate(
                str(entry.rank),
                (entry.tau, entry.score),
                textcoords="offset points",
                xytext=(2, 4),
                fontsize=7,
                color="#c23b22",
            )
        ax.set_xscale("log")
        ax.set_ylabel(
            "1 - H/log2(N)" if measure == "entropy" else "vector strength"
        )
        ax.set_ylim(-0.05, 1.05)
    np.atleast_1d(axes)[-1].set_xlabel("period (s)")
    fig.suptitle(f"{report.dataset_name or 'events'}: quality measures")
    measures_path = out_stem.parent / f"{out_stem.name}_measures.png"
    fig.savefig(measures_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(measures_path)
    return written
