import numpy as np
import pytest

from phasefold import EventSeries


@pytest.fixture
def small_series():
    """Five events, extent 8 s; folding at 4 s gives counts [2, 1, 1, 1]."""
    return EventSeries(
        events=np.array([0.5, 1.5, 2.5, 3.5, 4.5]), t_start=0.0, t_end=8.0
    )


@pytest.fixture
def jittered_hourly():
    """Roughly hourly events over two weeks, strong at 3600 s."""
    rng = np.random.default_rng(7)
    n = 14 * 24
    t = np.arange(n) * 3600.0 + rng.normal(0.0, 120.0, n)
    t = np.sort(t - t.min())
    return EventSeries(events=t, t_start=0.0, t_end=float(t[-1]) + 3600.0)


def write_events_csv(path, timestamps, header="timestamp", extra=None):
    lines = [header if extra is None else f"{header},{','.join(extra)}"]
    for i, t in enumerate(timestamps):
        row = [str(t)]
        if extra is not None:
            row += [str(100 + i)] * len(extra)
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
