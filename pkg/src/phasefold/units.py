"""Duration parsing and formatting.

All period arithmetic runs on plain seconds; these helpers translate the
unit suffixes used on CLI flags and in human-readable output. A year is
fixed at 365.25 days so that durations stay calendar-free.
"""

from __future__ import annotations

import re

SECOND = 1.0
MINUTE = 60.0
HOUR = 3600.0
DAY = 86400.0
YEAR = 365.25 * DAY

UNIT_SECONDS = {
    "s": SECOND,
    "min": MINUTE,
    "h": HOUR,
    "d": DAY,
    "y": YEAR,
}

_DURATION_RE = re.compile(r"^\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*(s|min|h|d|y)?\s*$")


def parse_duration(text: str | float | int) -> float:
    """Parse ``"90s"``, ``"15min"``, ``"1.5h"``, ``"13.66d"``, ``"2y"`` or a bare
    number into seconds."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _DURATION_RE.match(text)
    if not m:
        raise ValueError(
            f"cannot parse duration {text!r}; expected a number with an "
            f"optional unit suffix (s, min, h, d, y)"
        )
    value = float(m.group(1))
    unit = m.group(2) or "s"
    return value * UNIT_SECONDS[unit]


def format_duration(seconds: float) -> str:
    """Render seconds with the largest unit that keeps the value >= 1."""
    for unit in ("y", "d", "h", "min"):
        scale = UNIT_SECONDS[unit]
        if abs(seconds) >= scale:
            return f"{seconds / scale:.4g} {unit}"
    return f"{seconds:.4g} s"
