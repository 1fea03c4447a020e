"""Chart specifications, misleader applicability and injection recipes.

A ChartSpec is everything the renderer needs: item order and coordinates,
the encoded (possibly distorted) values, the printed labels, every axis with
its tick labels and data coordinates, and the cosmetic style.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, replace
from decimal import Decimal

from . import vocab
from .axismeta import AxisMetadata, AxisRow, normalized_positions
from .style import StyleVariation, sample_style
from .tables import (
    EVEN_TEMPORAL,
    NUMERICAL_PERCENTAGE,
    PART_OF_WHOLE,
    PART_OF_WHOLE_TOLERANCE,
    TEMPORAL,
    PreparedTable,
    render_title,
)
from .ticks import format_ticks, nice_step, nice_ticks, step_multiples

BAR, LINE, PIE = "bar", "line", "pie"
CHART_TYPES = (BAR, LINE, PIE)

TRUNCATION_MIN_RATIO = 0.25
TRUNCATION_SPAN_SHARE = 0.3
BIN_WIDTHS = (1, 2, 3, 5, 10)
BINNING_MIN_ROWS = 6
RANGE_FACTOR = (5.0, 10.0)
MISREP_FACTOR = (0.25, 0.6)
MISREP_MIN_GAP = 0.25
PIE_SUM_SLACK = 1.0


class SpecError(ValueError):
    pass


class InapplicableMisleader(SpecError):
    pass


@dataclass(frozen=True)
class Tick:
    label: str
    coord: float


@dataclass(frozen=True)
class AxisSpec:
    name: str
    kind: str
    ticks: tuple[Tick, ...]
    direction: str = "normal"
    limits: tuple[float, float] | None = None
    hidden: bool = False

    @property
    def labels(self) -> list[str]:
        return [t.label for t in self.ticks]

    @property
    def offsets(self) -> list[float]:
        sign = -1.0 if self.direction == "inverted" else 1.0
        return [sign * t.coord for t in self.ticks]

    @property
    def relative_positions(self) -> list[float]:
        return normalized_positions(self.offsets)


@dataclass(frozen=True)
class Series:
    name: str
    values: tuple[float, ...]
    displayed: tuple[float, ...]
    labels: tuple[str, ...]
    axis: str = "y1"


@dataclass(frozen=True)
class ChartSpec:
    chart_type: str
    title: str
    key_header: str
    key_kind: str
    items: tuple[str, ...]
    item_coords: tuple[float, ...]
    series: tuple[Series, ...]
    axes: tuple[AxisSpec, ...]
    style: StyleVariation
    seed: int
    injected: str | None = None
    percent: bool = False

    @property
    def displayed_values(self) -> tuple[float, ...]:
        return self.series[0].displayed

    @property
    def value_labels(self) -> tuple[str, ...]:
        return self.series[0].labels

    @property
    def three_d(self) -> bool:
        return self.injected == vocab.THREE_D

    def axis(self, name: str) -> AxisSpec | None:
        for a in self.axes:
            if a.name == name:
                return a
        return None

    def with_axis(self, new: AxisSpec) -> "ChartSpec":
        return replace(self, axes=tuple(new if a.name == new.name else a for a in self.axes))

    def to_json_obj(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def _rng(seed: int, purpose: str) -> random.Random:
    return random.Random(f"{purpose}:{seed}")


def format_value(v: float, percent: bool = False) -> str:
    """Value label with at least four significant digits, so labels stay faithful to bar heights."""
    if float(v).is_integer():
        text = f"{int(v):,}"
    else:
        magnitude = math.floor(math.log10(abs(v))) + 1
        decimals = min(6, max(2, 4 - magnitude))
        text = f"{v:,.{decimals}f}".rstrip("0").rstrip(".")
    return text + "%" if percent else text


# -- compatibility and applicability ---------------------------------------------


def _is_percent(prepared: PreparedTable, i: int = 0) -> bool:
    return NUMERICAL_PERCENTAGE in prepared.value_columns[i][1].secondary


def _is_part_of_whole(prepared: PreparedTable) -> bool:
    return PART_OF_WHOLE in prepared.value_columns[0][1].secondary


def _pie_misuse_candidate(prepared: PreparedTable) -> bool:
    if len(prepared.value_columns) != 1 or not _is_percent(prepared):
        return False
    if _is_part_of_whole(prepared):
        return False
    values = prepared.values(0)
    return min(values) >= 0 and abs(sum(values) - 100) > PIE_SUM_SLACK


def compatible_chart_types(prepared: PreparedTable) -> frozenset[str]:
    types = {BAR}
    if prepared.key_profile.primary == TEMPORAL:
        types.add(LINE)
    if len(prepared.value_columns) == 1 and (_is_part_of_whole(prepared) or _pie_misuse_candidate(prepared)):
        types.add(PIE)
    return frozenset(types)


def base_allowed(prepared: PreparedTable, chart_type: str) -> bool:
    """Whether a non-misleading chart of this type exists for the data."""
    if chart_type not in compatible_chart_types(prepared):
        return False
    return chart_type != PIE or _is_part_of_whole(prepared)


def _binnable(prepared: PreparedTable) -> bool:
    p = prepared.key_profile
    return (
        p.primary == TEMPORAL
        and p.temporal_kind == "year"
        and EVEN_TEMPORAL in p.secondary
        and len(prepared.rows) >= BINNING_MIN_ROWS
    )


def _all_values(prepared: PreparedTable) -> list[float]:
    return [v for i in range(len(prepared.value_columns)) for v in prepared.values(i)]


def applicable_misleaders(prepared: PreparedTable, chart_type: str) -> frozenset[str]:
    """Misleaders that can be injected into a chart of this type without side effects."""
    key_temporal = prepared.key_profile.primary == TEMPORAL
    values = _all_values(prepared)
    out: set[str] = set()
    if chart_type == PIE:
        if _is_part_of_whole(prepared):
            out.add(vocab.THREE_D)
            if min(values) > 0:
                out.add(vocab.MISREPRESENTATION)
        elif _pie_misuse_candidate(prepared):
            out.add(vocab.INAPPROPRIATE_PIE)
        return frozenset(out)
    if chart_type == LINE and not key_temporal:
        return frozenset({vocab.INAPPROPRIATE_LINE})
    if chart_type not in (BAR, LINE):
        return frozenset()
    out.update({vocab.INCONSISTENT_TICKS, vocab.INVERTED_AXIS})
    if max(values) > 0:
        out.add(vocab.AXIS_RANGE)
    if _truncation_ticks(values, (5,)) is not None:
        out.add(vocab.TRUNCATED_AXIS)
    if key_temporal:
        out.add(vocab.ITEM_ORDER)
    if _binnable(prepared):
        out.add(vocab.INCONSISTENT_BINNING)
    if chart_type == BAR:
        out.add(vocab.THREE_D)
        if min(values) > 0:
            out.add(vocab.MISREPRESENTATION)
    if chart_type == LINE and len(prepared.value_columns) >= 2:
        out.add(vocab.DUAL_AXIS)
    return frozenset(out)


# -- base specs -------------------------------------------------------------------


def _value_axis(name: str, values, max_intervals: int, percent: bool, hidden: bool = False) -> AxisSpec:
    lo = min(0.0, min(values))
    hi = max(0.0, max(values))
    return _axis_from_decimals(name, nice_ticks(lo, hi, max_intervals), percent, hidden)


def _axis_from_decimals(name, decimals: list[Decimal], percent: bool, hidden: bool = False,
                        labels: list[str] | None = None) -> AxisSpec:
    coords = [float(d) for d in decimals]
    labels = labels if labels is not None else format_ticks(decimals, percent)
    ticks = tuple(Tick(lab, c) for lab, c in zip(labels, coords))
    return AxisSpec(name, "numerical", ticks, limits=(coords[0], coords[-1]), hidden=hidden)


def _x_axis(kind: str, items, coords) -> AxisSpec:
    ticks = tuple(Tick(str(lab), float(c)) for lab, c in zip(items, coords))
    gap = min((b - a for a, b in zip(coords, coords[1:])), default=1.0)
    pad = 0.6 * gap
    return AxisSpec("x", kind, ticks, limits=(coords[0] - pad, coords[-1] + pad))


def _ordered_rows(prepared: PreparedTable, chart_type: str, style: StyleVariation):
    rows = list(prepared.rows)
    if prepared.key_profile.primary == TEMPORAL:
        ords = dict(zip(prepared.keys, prepared.key_profile.parsed_values))
        rows.sort(key=lambda r: ords[r[0]])
    elif chart_type == BAR and style.bar_sort == "name":
        rows.sort(key=lambda r: r[0].casefold())
    elif chart_type == BAR and style.bar_sort == "value":
        rows.sort(key=lambda r: -r[1])
    return rows


def build_base_spec(prepared: PreparedTable, chart_type: str, seed: int,
                    style: StyleVariation | None = None) -> ChartSpec:
    """A non-misleading chart: zero-based value axis on a nice ladder, natural item order."""
    if chart_type not in compatible_chart_types(prepared):
        raise SpecError(f"chart type {chart_type!r} is incompatible with {prepared.source}")
    return _build(prepared, chart_type, seed, style)


def _build(prepared: PreparedTable, chart_type: str, seed: int, style: StyleVariation | None) -> ChartSpec:
    style = style or sample_style(seed, chart_type)
    title = render_title(prepared, style.title_template)
    rows = _ordered_rows(prepared, chart_type, style)
    items = tuple(r[0] for r in rows)
    temporal = prepared.key_profile.primary == TEMPORAL
    key_kind = TEMPORAL if temporal else "categorical"
    n_series = 1 if chart_type == PIE else len(prepared.value_columns)
    series = []
    for i in range(n_series):
        vals = tuple(float(r[1 + i]) for r in rows)
        pct = _is_percent(prepared, i)
        series.append(Series(prepared.value_headers[i], vals, vals, tuple(format_value(v, pct) for v in vals)))
    percent = _is_percent(prepared, 0)

    if chart_type == PIE:
        return ChartSpec(PIE, title, prepared.key_header, key_kind, items, tuple(range(len(items))),
                         tuple(series), (), style, seed, percent=percent)

    if temporal:
        ords = dict(zip(prepared.keys, prepared.key_profile.parsed_values))
        coords = tuple(float(ords[k]) for k in items)
    else:
        coords = tuple(float(i) for i in range(len(items)))
    all_vals = [v for s in series for v in s.values]
    hidden = chart_type == BAR and style.hide_value_axis and style.value_labels is not None
    axes = (
        _x_axis(key_kind, items, coords),
        _value_axis("y1", all_vals, style.max_intervals, percent, hidden),
    )
    return ChartSpec(chart_type, title, prepared.key_header, key_kind, items, coords,
                     tuple(series), axes, style, seed, percent=percent)


# -- injection ----------------------------------------------------------------------


def _truncation_ticks(values, targets) -> list[Decimal] | None:
    lo, hi = min(values), max(values)
    if lo <= 0 or hi <= lo or lo <= TRUNCATION_MIN_RATIO * hi:
        return None
    floor_allowed = max(0.0, lo - TRUNCATION_SPAN_SHARE * (hi - lo))
    tried = []
    for target in list(targets) + [5, 6, 7, 8, 10, 12]:
        step = nice_step(hi - lo, target)
        if step in tried:
            continue
        tried.append(step)
        start = Decimal(math.floor(lo / float(step) + 1e-9)) * step
        if start > 0 and float(start) >= floor_allowed - 1e-12 and float(start) <= lo:
            ticks = step_multiples(float(start), hi, step)
            if len(ticks) >= 3:
                return ticks
    return None


def _unhide(spec: ChartSpec) -> ChartSpec:
    y1 = spec.axis("y1")
    return spec.with_axis(replace(y1, hidden=False)) if y1 is not None and y1.hidden else spec


def _value_decimals(axis: AxisSpec) -> list[Decimal]:
    return [Decimal(str(t.coord)) for t in axis.ticks]


def _inject_truncated(spec, rng):
    values = [v for s in spec.series for v in s.displayed]
    ticks = _truncation_ticks(values, (spec.style.max_intervals,))
    if ticks is None:
        raise InapplicableMisleader("truncation needs positive data with min > 0.25 * max")
    return _unhide(spec).with_axis(_axis_from_decimals("y1", ticks, spec.percent))


def _inject_inverted(spec, rng):
    choices = ["y1"]
    if spec.key_kind == TEMPORAL:
        choices.append("x")
    target = rng.choice(choices)
    spec = _unhide(spec)
    axis = spec.axis(target)
    return spec.with_axis(replace(axis, ticks=tuple(reversed(axis.ticks)), direction="inverted"))


def _inject_dual(spec, rng):
    if spec.chart_type != LINE or len(spec.series) < 2:
        raise InapplicableMisleader("dual axis needs a line chart with two series")
    s1, s2 = spec.series[0], spec.series[1]
    intervals = spec.style.max_intervals
    pct2 = s2.labels[0].endswith("%")
    fallback = None
    for f1 in (1.0, 1.3, 1.7):
        for f2 in (1.0, 1.3, 1.7, 2.5, 4.0):
            y1 = _value_axis("y1", [v * f1 for v in s1.values] + list(s1.values), intervals, spec.percent)
            y2 = _value_axis("y2", [v * f2 for v in s2.values] + list(s2.values), intervals, pct2)
            if y1.labels == y2.labels:
                continue
            if _crosses(s1.values, y1.limits, s2.values, y2.limits):
                return _dual_spec(spec, y1, y2)
            fallback = fallback or (y1, y2)
    if fallback is None:
        raise InapplicableMisleader("could not give the two axes different ticks")
    return _dual_spec(spec, *fallback)


def _dual_spec(spec, y1, y2):
    s1, s2 = spec.series[0], spec.series[1]
    return replace(spec, series=(s1, replace(s2, axis="y2")), axes=(spec.axis("x"), y1, y2))


def _crosses(a, lim_a, b, lim_b) -> bool:
    na = [(v - lim_a[0]) / (lim_a[1] - lim_a[0]) for v in a]
    nb = [(v - lim_b[0]) / (lim_b[1] - lim_b[0]) for v in b]
    diffs = [x - y for x, y in zip(na, nb)]
    return any(d1 * d2 < 0 for d1, d2 in zip(diffs, diffs[1:]))


def _inject_ticks(spec, rng):
    spec = _unhide(spec)
    y1 = spec.axis("y1")
    decimals = _value_decimals(y1)
    k = len(decimals)
    if k < 3:
        raise InapplicableMisleader("inconsistent tick intervals needs at least three ticks")
    step = decimals[1] - decimals[0]
    drop = rng.randint(1, min(3, k - 2))
    grid = [decimals[0] + step * i for i in range(k + drop)]
    interior = list(range(1, len(grid) - 1))
    removed = set(rng.sample(interior, drop))
    kept = [g for i, g in enumerate(grid) if i not in removed]
    labels = format_ticks(grid, spec.percent)
    kept_labels = [lab for i, lab in enumerate(labels) if i not in removed]
    assert len(kept) == k
    ticks = tuple(Tick(lab, t.coord) for lab, t in zip(kept_labels, y1.ticks))
    return spec.with_axis(replace(y1, ticks=ticks))


def _bin_partition(n: int, rng: random.Random) -> list[int]:
    for _ in range(1000):
        widths = []
        left = n
        while left:
            w = rng.choice([w for w in BIN_WIDTHS if w <= left])
            widths.append(w)
            left -= w
        if len(set(widths)) >= 2 and len(widths) >= 3:
            return widths
    raise InapplicableMisleader(f"cannot bin {n} items unevenly")


def _inject_binning(spec, rng):
    if spec.key_kind != TEMPORAL or len(spec.items) < BINNING_MIN_ROWS:
        raise InapplicableMisleader("binning needs an evenly spaced yearly key with >= 6 rows")
    widths = _bin_partition(len(spec.items), rng)
    bins, start = [], 0
    for w in widths:
        bins.append((start, start + w))
        start += w
    labels = tuple(
        spec.items[a] if b - a == 1 else f"{spec.items[a]}–{spec.items[b - 1]}" for a, b in bins
    )
    series = []
    for s in spec.series:
        means = tuple(sum(s.values[a:b]) / (b - a) for a, b in bins)
        pct = s.labels[0].endswith("%")
        series.append(replace(s, values=means, displayed=means, labels=tuple(format_value(v, pct) for v in means)))
    coords = tuple(float(i) for i in range(len(bins)))
    y1 = spec.axis("y1")
    all_vals = [v for s in series for v in s.values]
    new_y = _value_axis("y1", all_vals, spec.style.max_intervals, spec.percent, y1.hidden)
    return replace(spec, items=labels, item_coords=coords, series=tuple(series), key_kind="categorical",
                   axes=(_x_axis("categorical", labels, coords), new_y))


def _derangement(n: int, rng: random.Random) -> list[int]:
    for _ in range(10000):
        perm = list(range(n))
        rng.shuffle(perm)
        if all(i != p for i, p in enumerate(perm)) and perm != list(range(n))[::-1]:
            return perm
    raise InapplicableMisleader("no usable derangement")  # pragma: no cover


def _inject_item_order(spec, rng):
    if spec.key_kind != TEMPORAL or len(spec.items) < 3:
        raise InapplicableMisleader("item order needs a temporal key with >= 3 items")
    perm = _derangement(len(spec.items), rng)
    items = tuple(spec.items[p] for p in perm)
    series = tuple(
        replace(s, values=tuple(s.values[p] for p in perm), displayed=tuple(s.displayed[p] for p in perm),
                labels=tuple(s.labels[p] for p in perm))
        for s in spec.series
    )
    coords = tuple(float(i) for i in range(len(items)))
    return replace(spec, items=items, item_coords=coords, series=series).with_axis(_x_axis(TEMPORAL, items, coords))


def _inject_axis_range(spec, rng):
    values = [v for s in spec.series for v in s.displayed]
    hi = max(values)
    if hi <= 0:
        raise InapplicableMisleader("axis range needs a positive maximum")
    factor = rng.uniform(*RANGE_FACTOR)
    lo = min(0.0, min(values))
    ticks = nice_ticks(lo, hi * factor, spec.style.max_intervals)
    return _unhide(spec).with_axis(_axis_from_decimals("y1", ticks, spec.percent))


def _inject_misrepresentation(spec, rng):
    s = spec.series[0]
    if min(s.values) <= 0:
        raise InapplicableMisleader("misrepresentation needs positive values")
    n = len(s.values)
    count = rng.randint(1, max(1, n // 3))
    chosen = set(rng.sample(range(n), count))
    displayed = list(s.values)
    for i in sorted(chosen):
        u = rng.uniform(*MISREP_FACTOR)
        sign = rng.choice((-1, 1))
        displayed[i] = s.values[i] * (1 + sign * u)
    series = (replace(s, displayed=tuple(displayed)), *spec.series[1:])
    spec = replace(spec, series=series)
    if spec.chart_type == BAR:
        style = spec.style if spec.style.value_labels else replace(spec.style, value_labels="top")
        y1 = spec.axis("y1")
        vals = [v for ser in series for v in ser.displayed]
        spec = replace(spec, style=style).with_axis(
            _value_axis("y1", vals, style.max_intervals, spec.percent, y1.hidden))
    return spec


def _inject_noop(spec, rng):
    return spec


_RECIPES = {
    vocab.TRUNCATED_AXIS: _inject_truncated,
    vocab.INVERTED_AXIS: _inject_inverted,
    vocab.DUAL_AXIS: _inject_dual,
    vocab.INCONSISTENT_TICKS: _inject_ticks,
    vocab.INCONSISTENT_BINNING: _inject_binning,
    vocab.ITEM_ORDER: _inject_item_order,
    vocab.AXIS_RANGE: _inject_axis_range,
    vocab.MISREPRESENTATION: _inject_misrepresentation,
    vocab.THREE_D: _inject_noop,
    vocab.INAPPROPRIATE_PIE: _inject_noop,
    vocab.INAPPROPRIATE_LINE: _inject_noop,
}

_CHART_RULES = {
    vocab.TRUNCATED_AXIS: (BAR, LINE),
    vocab.INVERTED_AXIS: (BAR, LINE),
    vocab.DUAL_AXIS: (LINE,),
    vocab.INCONSISTENT_TICKS: (BAR, LINE),
    vocab.INCONSISTENT_BINNING: (BAR, LINE),
    vocab.ITEM_ORDER: (BAR, LINE),
    vocab.AXIS_RANGE: (BAR, LINE),
    vocab.MISREPRESENTATION: (BAR, PIE),
    vocab.THREE_D: (BAR, PIE),
    vocab.INAPPROPRIATE_PIE: (PIE,),
    vocab.INAPPROPRIATE_LINE: (LINE,),
}


def inject_misleader(spec: ChartSpec, misleader: str, seed: int) -> ChartSpec:
    """Apply exactly one misleader recipe to a clean spec."""
    if spec.injected is not None:
        raise SpecError(f"spec already carries {spec.injected!r}")
    if misleader not in _RECIPES:
        raise InapplicableMisleader(f"{misleader!r} has no generation recipe")
    if spec.chart_type not in _CHART_RULES[misleader]:
        raise InapplicableMisleader(f"{misleader!r} applies only to {'/'.join(_CHART_RULES[misleader])} charts")
    if misleader == vocab.INAPPROPRIATE_LINE and spec.key_kind == TEMPORAL:
        raise InapplicableMisleader("inappropriate use of line chart needs a categorical key")
    if misleader == vocab.INAPPROPRIATE_PIE and _pie_is_whole(spec):
        raise InapplicableMisleader("inappropriate use of pie chart needs data that is not part-to-whole")
    if misleader in (vocab.MISREPRESENTATION, vocab.THREE_D) and spec.chart_type == PIE and not _pie_is_whole(spec):
        raise InapplicableMisleader("pie misleaders other than misuse need part-to-whole data")
    new = _RECIPES[misleader](spec, _rng(seed, f"inject:{misleader}"))
    return replace(new, injected=misleader)


def make_spec(prepared: PreparedTable, chart_type: str, misleader: str | None, seed: int) -> ChartSpec:
    """Base spec plus optional injection; the single entry point used by the pipeline."""
    if misleader is None:
        return build_base_spec(prepared, chart_type, seed)
    if misleader not in applicable_misleaders(prepared, chart_type):
        raise InapplicableMisleader(f"{misleader!r} is not applicable to {chart_type} over {prepared.source}")
    if misleader == vocab.INAPPROPRIATE_LINE:
        base = _build(prepared, LINE, seed, None)
    else:
        base = build_base_spec(prepared, chart_type, seed)
    return inject_misleader(base, misleader, seed)


def _pie_is_whole(spec: ChartSpec) -> bool:
    total = sum(spec.series[0].values)
    return min(spec.series[0].values) >= 0 and (
        abs(total - 1) <= PART_OF_WHOLE_TOLERANCE or abs(total - 100) <= PART_OF_WHOLE_TOLERANCE * 100
    )


# -- metadata and validation ---------------------------------------------------------


def derive_axis_metadata(spec: ChartSpec) -> AxisMetadata | None:
    """Ground-truth tick table; None for pies."""
    if spec.chart_type == PIE:
        return None
    rows = []
    seq = 1
    for name in ("x", "y1", "y2"):
        axis = spec.axis(name)
        if axis is None or axis.hidden:
            continue
        for tick, pos in zip(axis.ticks, axis.relative_positions):
            rows.append(AxisRow(seq, name, tick.label, pos))
            seq += 1
    return AxisMetadata(tuple(rows))


def misrepresentation_gap(spec: ChartSpec) -> float:
    s = spec.series[0]
    return max((abs(d / v - 1) for d, v in zip(s.displayed, s.values) if v), default=0.0)


def validate_spec(spec: ChartSpec) -> list[str]:
    """Return violated invariant identifiers; an empty list means the chart spec is valid."""
    from .axismeta import structural_problems
    from .linter import lint

    problems = []
    n = len(spec.items)
    if spec.chart_type not in CHART_TYPES:
        problems.append("unknown-chart-type")
    if spec.injected is not None and spec.injected not in _RECIPES:
        problems.append("unknown-misleader")
    if len(spec.item_coords) != n or any(len(s.values) != n or len(s.displayed) != n or len(s.labels) != n
                                         for s in spec.series):
        problems.append("length-mismatch")
    if not 1 <= len(spec.series) <= 2:
        problems.append("series-count")
    names = [a.name for a in spec.axes]
    if spec.chart_type == PIE:
        if spec.axes or len(spec.series) != 1:
            problems.append("pie-shape")
    elif names[:2] != ["x", "y1"] or len(names) != len(set(names)):
        problems.append("axis-set")
    dual_shape = "y2" in names
    if (spec.injected == vocab.DUAL_AXIS) != dual_shape:
        problems.append("dual-axis-shape")
    if dual_shape and (spec.chart_type != LINE or len(spec.series) != 2):
        problems.append("dual-axis-shape")
    for a in spec.axes:
        if not a.ticks:
            problems.append(f"{a.name}:no-ticks")
            continue
        if len(a.ticks) < 2 and spec.chart_type != PIE:
            problems.append(f"{a.name}:too-few-ticks")
            continue
        pos = a.relative_positions
        if any(not b < c for b, c in zip(pos, pos[1:])):
            problems.append(f"{a.name}:positions-not-increasing")
    if spec.chart_type != PIE and all(a.hidden for a in spec.axes):
        problems.append("no-visible-axis")
    if problems:
        return problems

    am = derive_axis_metadata(spec)
    if am is not None:
        problems.extend(structural_problems(am))
    fired = lint(am).fired
    m = spec.injected
    if m is None:
        if fired:
            problems.append("lint-fired-on-clean:" + ",".join(sorted(fired)))
    elif m in vocab.LINTER_COVERED:
        if m not in fired:
            problems.append(_NOT_REALIZED.get(m, vocab.slug(m) + "-not-realized"))
        if fired - {m}:
            problems.append("cross-contamination")
    elif fired:
        problems.append("cross-contamination")

    gap = misrepresentation_gap(spec)
    if m == vocab.MISREPRESENTATION and gap < MISREP_MIN_GAP - 1e-12:
        problems.append("misrepresentation-not-realized")
    if m != vocab.MISREPRESENTATION and any(s.displayed != s.values for s in spec.series):
        problems.append("undeclared-misrepresentation")
    if spec.chart_type == PIE:
        whole = _pie_is_whole(spec)
        if m == vocab.INAPPROPRIATE_PIE and whole:
            problems.append("pie-misuse-not-realized")
        if m != vocab.INAPPROPRIATE_PIE and not whole:
            problems.append("undeclared-pie-misuse")
    if spec.chart_type == LINE:
        categorical = spec.key_kind != TEMPORAL
        if m == vocab.INAPPROPRIATE_LINE and not categorical:
            problems.append("line-misuse-not-realized")
        if m != vocab.INAPPROPRIATE_LINE and categorical and m != vocab.INCONSISTENT_BINNING:
            problems.append("undeclared-line-misuse")
    if m == vocab.AXIS_RANGE:
        y1 = spec.axis("y1")
        top = max(v for s in spec.series for v in s.displayed)
        if y1.limits[1] < RANGE_FACTOR[0] * top - 1e-9:
            problems.append("axis-range-not-realized")
    return problems


_NOT_REALIZED = {
    vocab.TRUNCATED_AXIS: "truncation-not-realized",
    vocab.INVERTED_AXIS: "inversion-not-realized",
    vocab.DUAL_AXIS: "dual-axis-not-realized",
    vocab.ITEM_ORDER: "item-order-not-realized",
    vocab.INCONSISTENT_TICKS: "tick-intervals-not-realized",
    vocab.INCONSISTENT_BINNING: "binning-not-realized",
}
