"""Cell and tick-label parsers.

The table profiler and the linter use the same grammar so that an axis the
generator treats as temporal is also read as temporal from its labels alone.
"""

from __future__ import annotations

import datetime as _dt
import math
import re

_MONTHS = {
    "jan": 1, "january": 1, "feb": 2, "february": 2, "mar": 3, "march": 3,
    "apr": 4, "april": 4, "may": 5, "jun": 6, "june": 6, "jul": 7, "july": 7,
    "aug": 8, "august": 8, "sep": 9, "sept": 9, "september": 9, "oct": 10,
    "october": 10, "nov": 11, "november": 11, "dec": 12, "december": 12,
}
_MONTH_RE = "|".join(sorted(_MONTHS, key=len, reverse=True))

YEAR_MIN, YEAR_MAX = 1700, 2100

_YEAR = re.compile(r"^(\d{4})$")
_ISO_DATE = re.compile(r"^(\d{4})-(\d{1,2})-(\d{1,2})$")
_YEAR_MONTH = re.compile(r"^(\d{4})[-/](\d{1,2})$")
_MONTH_YEAR = re.compile(rf"^({_MONTH_RE})\.?\s+(\d{{4}})$", re.IGNORECASE)
_MONTH_ONLY = re.compile(rf"^({_MONTH_RE})\.?$", re.IGNORECASE)

_CURRENCY = "$€£¥₹"
_PLAIN_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_GROUPED_NUMBER = re.compile(r"^[+-]?\d{1,3}(,\d{3})+(\.\d+)?$")

_RANGE = re.compile(r"^\s*(.+?)\s*(?:[-‐-―]|\bto\b)\s*(.+?)\s*$", re.IGNORECASE)


def is_percent_text(text: str) -> bool:
    return text.strip().endswith("%")


def parse_number(text: str) -> float | None:
    """Parse a numeric cell or tick label; units like %, currency and grouping commas are stripped."""
    s = text.strip().replace("−", "-").replace(" ", "").replace(" ", "")
    if not s:
        return None
    s = s.rstrip("%").strip(_CURRENCY)
    if s[:1] in "+-" and s[1:2] in _CURRENCY:
        s = s[0] + s[2:]
    if _GROUPED_NUMBER.match(s):
        s = s.replace(",", "")
    elif not _PLAIN_NUMBER.match(s):
        return None
    value = float(s)
    return value if math.isfinite(value) else None


def parse_temporal(text: str) -> tuple[str, tuple[int, ...]] | None:
    """Return (kind, fields) for a temporal cell, or None.

    kinds: "year", "year-month", "date", "month".
    """
    s = text.strip()
    if m := _YEAR.match(s):
        y = int(m.group(1))
        return ("year", (y,)) if YEAR_MIN <= y <= YEAR_MAX else None
    if m := _ISO_DATE.match(s):
        y, mo, d = (int(g) for g in m.groups())
        try:
            _dt.date(y, mo, d)
        except ValueError:
            return None
        return ("date", (y, mo, d)) if YEAR_MIN <= y <= YEAR_MAX else None
    if m := _YEAR_MONTH.match(s):
        y, mo = int(m.group(1)), int(m.group(2))
        return ("year-month", (y, mo)) if 1 <= mo <= 12 and YEAR_MIN <= y <= YEAR_MAX else None
    if m := _MONTH_YEAR.match(s):
        y = int(m.group(2))
        return ("year-month", (y, _MONTHS[m.group(1).lower()])) if YEAR_MIN <= y <= YEAR_MAX else None
    if m := _MONTH_ONLY.match(s):
        return ("month", (_MONTHS[m.group(1).lower()],))
    return None


def temporal_ordinals(texts) -> tuple[str, list[int]] | None:
    """Map a sequence of temporal texts onto integer ordinals in a common unit.

    All entries must share one kind. Dates that all fall on the first of a
    month are counted in months so that monthly series are evenly spaced.
    """
    parsed = [parse_temporal(t) for t in texts]
    if not parsed or any(p is None for p in parsed):
        return None
    kinds = {p[0] for p in parsed}
    if len(kinds) != 1:
        return None
    kind = kinds.pop()
    fields = [p[1] for p in parsed]
    if kind == "year":
        return kind, [f[0] for f in fields]
    if kind == "month":
        return kind, [f[0] for f in fields]
    if kind == "year-month":
        return kind, [f[0] * 12 + f[1] - 1 for f in fields]
    if all(f[2] == 1 for f in fields):
        return "month-start", [f[0] * 12 + f[1] - 1 for f in fields]
    return kind, [_dt.date(*f).toordinal() for f in fields]


def numeric_or_temporal_values(labels) -> list[float] | None:
    """Numeric reading of a label sequence, trying temporal first like the profiler."""
    temporal = temporal_ordinals(labels)
    if temporal is not None:
        return [float(v) for v in temporal[1]]
    values = [parse_number(t) for t in labels]
    if not values or any(v is None for v in values):
        return None
    return values


def is_temporal_sequence(labels) -> bool:
    return temporal_ordinals(labels) is not None


def parse_range(text: str) -> tuple[float, float, float] | None:
    """Parse a bin label like "1990-1999" or "20 to 29" into (low, high, width)."""
    m = _RANGE.match(text)
    if not m:
        return None
    lo = _bin_endpoint(m.group(1))
    hi = _bin_endpoint(m.group(2))
    if lo is None or hi is None or hi < lo:
        return None
    width = hi - lo + 1 if lo.is_integer() and hi.is_integer() else hi - lo
    return lo, hi, width


def _bin_endpoint(text: str) -> float | None:
    s = text.strip()
    if (t := parse_temporal(s)) is not None and t[0] == "year":
        return float(t[1][0])
    return parse_number(s)
