"""Raw table ingestion, column typing and prepared-table enumeration."""

from __future__ import annotations

import csv
import itertools
import re
from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path

from .parsing import is_percent_text, parse_number, temporal_ordinals

TEMPORAL = "temporal"
CATEGORICAL = "categorical"
NUMERICAL = "numerical"

DATETIME = "datetime"
EVEN_TEMPORAL = "evenly-spaced-unique-temporal"
COUNTRY = "country"
UNIQUE_OBJECT = "unique-object"
PART_OF_WHOLE = "is-part-of-whole"
NUMERICAL_PERCENTAGE = "numerical-percentage"
POTENTIAL_PERCENTAGE = "potential-percentage"

SECONDARY_BY_PRIMARY = {
    TEMPORAL: {DATETIME, EVEN_TEMPORAL, UNIQUE_OBJECT},
    CATEGORICAL: {COUNTRY, UNIQUE_OBJECT},
    NUMERICAL: {PART_OF_WHOLE, NUMERICAL_PERCENTAGE, POTENTIAL_PERCENTAGE},
}

PART_OF_WHOLE_TOLERANCE = 0.005
COUNTRY_MATCH_SHARE = 0.9
MIN_ROWS = 3
DEFAULT_MAX_PER_TABLE = 8
DEFAULT_MAX_ROWS = 20
MAX_KEY_WIDTH = 3


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class DataTable:
    name: str
    columns: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        if not self.columns:
            raise TableError(f"{self.name}: table has no columns")
        headers = [h for h, _ in self.columns]
        if any(not h.strip() for h in headers):
            raise TableError(f"{self.name}: empty header")
        if len(set(headers)) != len(headers):
            raise TableError(f"{self.name}: duplicate headers")
        lengths = {len(cells) for _, cells in self.columns}
        if len(lengths) != 1 or lengths.pop() < 2:
            raise TableError(f"{self.name}: columns need equal length >= 2")

    @property
    def headers(self) -> list[str]:
        return [h for h, _ in self.columns]

    @property
    def n_rows(self) -> int:
        return len(self.columns[0][1])

    def column(self, header: str) -> tuple[str, ...]:
        return dict(self.columns)[header]

    @classmethod
    def from_rows(cls, name: str, headers, rows) -> "DataTable":
        rows = [list(r) + [""] * (len(headers) - len(r)) for r in rows]
        if any(len(r) > len(headers) for r in rows):
            raise TableError(f"{name}: row wider than header")
        cols = tuple((h.strip(), tuple(r[i].strip() for r in rows)) for i, h in enumerate(headers))
        return cls(name, cols)


def read_table(path) -> DataTable:
    path = Path(path)
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            headers = next(reader)
        except StopIteration:
            raise TableError(f"{path.name}: empty file") from None
        rows = [r for r in reader if any(c.strip() for c in r)]
    return DataTable.from_rows(path.stem, headers, rows)


def read_tables(directory) -> list[DataTable]:
    directory = Path(directory)
    return [read_table(p) for p in sorted(directory.glob("*.csv"))]


@dataclass(frozen=True)
class ColumnProfile:
    primary: str
    secondary: frozenset[str]
    parsed_values: tuple
    temporal_kind: str | None = None

    @property
    def is_key_type(self) -> bool:
        return self.primary in (TEMPORAL, CATEGORICAL)


@lru_cache(maxsize=1)
def country_names() -> frozenset[str]:
    import pycountry

    names = set()
    for c in pycountry.countries:
        for attr in ("name", "common_name", "official_name"):
            value = getattr(c, attr, None)
            if value:
                names.add(value.casefold())
    names.update(n.casefold() for n in _COUNTRY_ALIASES)
    return frozenset(names)


_COUNTRY_ALIASES = (
    "United States", "USA", "US", "United Kingdom", "UK", "Russia", "South Korea",
    "North Korea", "Iran", "Syria", "Vietnam", "Laos", "Bolivia", "Venezuela",
    "Tanzania", "Moldova", "Czech Republic", "Ivory Coast", "Taiwan", "Brunei",
    "Cape Verde", "Democratic Republic of the Congo", "Republic of the Congo",
    "East Timor", "Macedonia", "Palestine", "Turkey", "Micronesia", "Vatican City",
)


def profile_column(header: str, cells) -> ColumnProfile:
    """Assign one primary type and any secondary types to a column."""
    values = [c.strip() for c in cells if c is not None and c.strip()]
    if not values:
        return ColumnProfile(CATEGORICAL, frozenset(), ())

    temporal = temporal_ordinals(values)
    if temporal is not None:
        kind, ordinals = temporal
        secondary = set()
        if kind in ("date", "year-month", "month-start"):
            secondary.add(DATETIME)
        if len(set(ordinals)) == len(ordinals):
            secondary.add(UNIQUE_OBJECT)
            ordered = sorted(ordinals)
            gaps = {b - a for a, b in zip(ordered, ordered[1:])}
            if len(gaps) == 1:
                secondary.add(EVEN_TEMPORAL)
        return ColumnProfile(TEMPORAL, frozenset(secondary), tuple(ordinals), kind)

    numbers = [parse_number(v) for v in values]
    if all(n is not None for n in numbers):
        secondary = set()
        total = sum(numbers)
        if min(numbers) >= 0 and (
            abs(total - 1) <= PART_OF_WHOLE_TOLERANCE * 1
            or abs(total - 100) <= PART_OF_WHOLE_TOLERANCE * 100
        ):
            secondary.add(PART_OF_WHOLE)
        if all(is_percent_text(v) for v in values):
            secondary.add(NUMERICAL_PERCENTAGE)
        lo, hi = min(numbers), max(numbers)
        if lo >= 0 and (hi <= 1 or hi <= 100):
            secondary.add(POTENTIAL_PERCENTAGE)
        return ColumnProfile(NUMERICAL, frozenset(secondary), tuple(numbers))

    secondary = set()
    if len(set(values)) == len(values):
        secondary.add(UNIQUE_OBJECT)
    distinct = set(values)
    known = country_names()
    if sum(v.casefold() in known for v in distinct) >= COUNTRY_MATCH_SHARE * len(distinct):
        secondary.add(COUNTRY)
    return ColumnProfile(CATEGORICAL, frozenset(secondary), tuple(values))


@dataclass(frozen=True)
class PreparedTable:
    source: str
    key_column: tuple[str, ColumnProfile]
    fixed_columns: tuple[tuple[str, str], ...]
    value_columns: tuple[tuple[str, ColumnProfile], ...]
    rows: tuple[tuple, ...]
    title: str = ""

    def __post_init__(self):
        if not self.value_columns:
            raise TableError("prepared table needs a value column")
        keys = [r[0] for r in self.rows]
        if len(set(keys)) != len(keys):
            raise TableError(f"{self.source}: duplicate key values")
        width = 1 + len(self.value_columns)
        for r in self.rows:
            if len(r) != width or not all(isinstance(v, float) and v == v and abs(v) != float("inf") for v in r[1:]):
                raise TableError(f"{self.source}: malformed prepared row {r!r}")
        if any(p.primary != NUMERICAL for _, p in self.value_columns):
            raise TableError(f"{self.source}: value columns must be numerical")

    @property
    def key_header(self) -> str:
        return self.key_column[0]

    @property
    def key_profile(self) -> ColumnProfile:
        return self.key_column[1]

    @property
    def keys(self) -> list[str]:
        return [r[0] for r in self.rows]

    def values(self, i: int = 0) -> list[float]:
        return [r[1 + i] for r in self.rows]

    @property
    def value_headers(self) -> list[str]:
        return [h for h, _ in self.value_columns]

    def to_csv_rows(self) -> list[list[str]]:
        header = [h for h, _ in self.fixed_columns] + [self.key_header] + self.value_headers
        fixed = [v for _, v in self.fixed_columns]
        out = [header]
        for r in self.rows:
            out.append(fixed + [r[0]] + [_fmt_cell(v) for v in r[1:]])
        return out


def _fmt_cell(v: float) -> str:
    return str(int(v)) if v.is_integer() else repr(v)


@dataclass
class _Candidate:
    vary: str
    fixed: tuple[tuple[str, str], ...]
    row_idx: list[int]
    values: tuple[str, ...]


def enumerate_prepared_tables(
    table: DataTable,
    max_per_table: int = DEFAULT_MAX_PER_TABLE,
    max_rows: int = DEFAULT_MAX_ROWS,
) -> list[PreparedTable]:
    """Enumerate chartable column combinations of a table.

    Each result has one varying key column (the rest of a multi-column key is
    fixed to a constant) and one or two numerical value columns.
    """
    profiles = {h: profile_column(h, cells) for h, cells in table.columns}
    key_cols = [h for h in table.headers if profiles[h].is_key_type]
    num_cols = [h for h in table.headers if profiles[h].primary == NUMERICAL]
    if not key_cols or not num_cols:
        return []
    selections = [(c,) for c in num_cols] + [pair for pair in zip(num_cols, num_cols[1:])]

    configs = _key_configs(table, key_cols)
    groups: dict[tuple, list[_Candidate]] = {}
    for vary, fixed, idx in configs:
        for sel in selections:
            groups.setdefault((vary, sel), []).append(_Candidate(vary, fixed, idx, sel))

    ordered = [groups[g] for g in groups]
    results: list[PreparedTable] = []
    for cand in _round_robin(ordered):
        if len(results) >= max_per_table:
            break
        prepared = _build_prepared(table, cand, max_rows)
        if prepared is not None:
            results.append(prepared)
    return results


def _round_robin(lists):
    iters = [iter(lst) for lst in lists]
    while iters:
        alive = []
        for it in iters:
            try:
                yield next(it)
            except StopIteration:
                continue
            alive.append(it)
        iters = alive


def _key_configs(table: DataTable, key_cols: list[str]):
    """Yield (varying column, fixed pairs, row indices) for minimal natural keys."""
    cols = {h: table.column(h) for h in key_cols}
    found: list[tuple[str, ...]] = []
    out = []
    for width in range(1, min(MAX_KEY_WIDTH, len(key_cols)) + 1):
        for combo in itertools.combinations(key_cols, width):
            if any(set(f) <= set(combo) for f in found):
                continue
            idx = [i for i in range(table.n_rows) if all(cols[h][i] for h in combo)]
            tuples = [tuple(cols[h][i] for h in combo) for i in idx]
            if len(idx) < MIN_ROWS or len(set(tuples)) != len(tuples):
                continue
            found.append(combo)
            if width == 1:
                out.append((combo[0], (), idx))
                continue
            for vary in combo:
                others = [h for h in combo if h != vary]
                constants: dict[tuple, list[int]] = {}
                for i in idx:
                    constants.setdefault(tuple(cols[h][i] for h in others), []).append(i)
                for const, rows in constants.items():
                    if len(rows) >= MIN_ROWS:
                        out.append((vary, tuple(zip(others, const)), rows))
    return out


def _build_prepared(table: DataTable, cand: _Candidate, max_rows: int) -> PreparedTable | None:
    key_cells = table.column(cand.vary)
    value_cells = [table.column(v) for v in cand.values]
    rows = []
    for i in cand.row_idx:
        cells = [vc[i] for vc in value_cells]
        if not all(cells):
            continue
        nums = [parse_number(c) for c in cells]
        if any(n is None for n in nums):
            continue
        rows.append((i, key_cells[i], nums, cells))
    if len(rows) < MIN_ROWS:
        return None
    key_profile = profile_column(cand.vary, [r[1] for r in rows])
    if len(rows) > max_rows:
        if key_profile.primary == TEMPORAL:
            order = sorted(range(len(rows)), key=lambda j: key_profile.parsed_values[j])
            keep = sorted(order[-max_rows:])
            rows = [rows[j] for j in keep]
        else:
            rows = rows[:max_rows]
        key_profile = profile_column(cand.vary, [r[1] for r in rows])
    value_profiles = tuple(
        (h, profile_column(h, [r[3][j] for r in rows])) for j, h in enumerate(cand.values)
    )
    try:
        prepared = PreparedTable(
            source=table.name,
            key_column=(cand.vary, key_profile),
            fixed_columns=cand.fixed,
            value_columns=value_profiles,
            rows=tuple((r[1], *[float(n) for n in r[2]]) for r in rows),
        )
    except TableError:
        return None
    return replace(prepared, title=render_title(prepared))


TITLE_TEMPLATES = (
    "{values} by {key}{fixed}",
    "{values} per {key}{fixed}",
    "{values} across {key}{fixed}",
    "{key} overview: {values}{fixed}",
)


def humanize(header: str, lower: bool = True) -> str:
    words = re.sub(r"(?<=[a-z0-9])(?=[A-Z])", " ", header.replace("_", " ")).split()
    out = []
    for w in words:
        out.append(w if w.isupper() or not lower else w.lower())
    return " ".join(out)


def render_title(prepared: PreparedTable, seed: int = 0) -> str:
    """Fill a title template with the value, key and fixed column names."""
    template = TITLE_TEMPLATES[seed % len(TITLE_TEMPLATES)]
    values = " and ".join(humanize(h) for h in prepared.value_headers)
    fixed = ""
    if prepared.fixed_columns:
        fixed = " (" + ", ".join(f"{h}: {v}" for h, v in prepared.fixed_columns) + ")"
    text = template.format(values=values, key=humanize(prepared.key_header), fixed=fixed)
    return text[:1].upper() + text[1:]
