"""Command line behavior via the click test runner."""

import csv
import json
import socket

import pytest
from click.testing import CliRunner

from phasefold.cli import main
from phasefold.ingest import load_events_csv


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def events_file(tmp_path):
    # 60 events on a 120 s beat; extent pinned to 7200 s by the header.
    lines = ["# phasefold-extent: 0.0 7200.0", "timestamp"]
    lines += [str(i * 120.0) for i in range(60)]
    path = tmp_path / "beats.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture()
def raw_file(tmp_path):
    lines = ["timestamp,level"]
    lines += [f"{i * 50.0},{float(i % 7)}" for i in range(40)]
    path = tmp_path / "raw.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


class TestAnalyze:
    def test_stdout_json(self, runner, events_file):
        result = runner.invoke(main, ["analyze", str(events_file)])
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["dataset"] == "beats"
        assert report["n_events"] == 60
        assert set(report["top"]) == {"entropy", "vector_strength"}
        for entries in report["top"].values():
            assert len(entries) == 10
        assert "period samples" in result.stderr

    def test_json_report_with_figures(self, runner, events_file, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(
            main, ["analyze", str(events_file), "--out", str(out), "--top", "3"]
        )
        assert result.exit_code == 0, result.stderr
        report = json.loads(out.read_text())
        assert len(report["top"]["entropy"]) == 3
        assert (tmp_path / "report_grid.png").exists()
        assert (tmp_path / "report_measures.png").exists()

    def test_csv_report_no_plot(self, runner, events_file, tmp_path):
        out = tmp_path / "report.csv"
        result = runner.invoke(
            main, ["analyze", str(events_file), "--out", str(out), "--no-plot"]
        )
        assert result.exit_code == 0, result.stderr
        with out.open(newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert rows and {"measure", "rank", "tau"} <= set(rows[0])
        assert not list(tmp_path.glob("*.png"))

    def test_single_measure(self, runner, events_file):
        result = runner.invoke(
            main, ["analyze", str(events_file), "--measure", "entropy"]
        )
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert list(report["top"]) == ["entropy"]

    def test_best_period_folds_clean(self, runner, events_file):
        result = runner.invoke(
            main, ["analyze", str(events_file), "--measure", "entropy"]
        )
        best = json.loads(result.stdout)["top"]["entropy"][0]
        assert best["score"] == pytest.approx(1.0, abs=1e-9)
        assert best["tau"] == pytest.approx(120.0 * best["tau"] / 120.0)

    def test_bad_out_suffix(self, runner, events_file, tmp_path):
        result = runner.invoke(
            main,
            ["analyze", str(events_file), "--out", str(tmp_path / "report.txt")],
        )
        assert result.exit_code == 1
        assert "must end in .json or .csv" in result.stderr

    def test_bad_lower_duration_is_usage_error(self, runner, events_file):
        result = runner.invoke(
            main, ["analyze", str(events_file), "--lower", "sideways"]
        )
        assert result.exit_code == 2
        assert "sideways" in result.stderr

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(main, ["analyze", str(tmp_path / "nope.csv")])
        assert result.exit_code == 2


class TestDeriveEvents:
    def test_round_trip(self, runner, raw_file, tmp_path):
        out = tmp_path / "events.csv"
        result = runner.invoke(
            main,
            [
                "derive-events",
                str(raw_file),
                "--column",
                "level",
                "--gt",
                "4.5",
                "--out",
                str(out),
            ],
        )
        assert result.exit_code == 0, result.stderr
        series = load_events_csv(out)
        # levels cycle 0..6 over 40 samples; 5 and 6 each appear five times
        assert series.n == 10
        assert series.t_start == 0.0
        assert series.t_end == 39 * 50.0
        assert "10 of 40 samples became events" in result.stderr

    def test_both_bounds_rejected(self, runner, raw_file, tmp_path):
        result = runner.invoke(
            main,
            [
                "derive-events",
                str(raw_file),
                "--column",
                "level",
                "--gt",
                "1",
                "--lt",
                "5",
                "--out",
                str(tmp_path / "x.csv"),
            ],
        )
        assert result.exit_code == 1
        assert "exactly one" in result.stderr

    def test_neither_bound_rejected(self, runner, raw_file, tmp_path):
        result = runner.invoke(
            main,
            [
                "derive-events",
                str(raw_file),
                "--column",
                "level",
                "--out",
                str(tmp_path / "x.csv"),
            ],
        )
        assert result.exit_code == 1
        assert "exactly one" in result.stderr

    def test_no_survivors_is_an_error(self, runner, raw_file, tmp_path):
        result = runner.invoke(
            main,
            [
                "derive-events",
                str(raw_file),
                "--column",
                "level",
                "--gt",
                "99",
                "--out",
                str(tmp_path / "x.csv"),
            ],
        )
        assert result.exit_code == 1
        assert "no events" in result.stderr


class TestExportGrid:
    def test_writes_grid_and_measures(self, runner, events_file, tmp_path):
        out = tmp_path / "grid.csv"
        result = runner.invoke(
            main,
            ["export-grid", str(events_file), "--out", str(out), "--bins", "10"],
        )
        assert result.exit_code == 0, result.stderr
        with out.open(newline="") as fh:
            rows = list(csv.DictReader(fh))
        taus = sorted({float(r["tau"]) for r in rows})
        assert len(rows) == len(taus) * 10
        first = [r for r in rows if float(r["tau"]) == taus[0]]
        assert sum(int(r["count"]) for r in first) == 60

        measures_path = tmp_path / "grid_measures.csv"
        with measures_path.open(newline="") as fh:
            measure_rows = list(csv.DictReader(fh))
        assert len(measure_rows) == len(taus)
        for row in measure_rows:
            assert 0.0 <= float(row["entropy_interest"]) <= 1.0
            assert 0.0 <= float(row["vector_strength"]) <= 1.0


class TestServe:
    def test_busy_port_fails_fast(self, runner, tmp_path):
        blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        try:
            blocker.bind(("127.0.0.1", 0))
            blocker.listen(1)
            port = blocker.getsockname()[1]
            result = runner.invoke(main, ["serve", "--port", str(port)])
            assert result.exit_code == 1
            assert "cannot bind" in result.stderr
        finally:
            blocker.close()


class TestVersion:
    def test_version_flag(self, runner):
        import phasefold

        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert phasefold.__version__ in result.output
