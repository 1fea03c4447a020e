"""Rule checks over axis metadata.

Each check reads only tick labels and relative positions. Checks are tuned
for precision: anything that does not parse cleanly is left unflagged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import vocab
from .axismeta import AxisMetadata
from .parsing import numeric_or_temporal_values, parse_number, parse_range, temporal_ordinals

EPSILON = 0.02
VERTICAL_AXES = ("y1", "y2")


@dataclass(frozen=True)
class CheckResult:
    fired: bool
    evidence: str = ""


@dataclass(frozen=True)
class LintReport:
    fired: frozenset[str]
    per_check: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return ", ".join(sorted(self.fired)) if self.fired else vocab.NO_MISLEADER

    def to_json_obj(self) -> dict:
        return {
            "fired": sorted(self.fired),
            "checks": {k: {"fired": v.fired, "evidence": v.evidence} for k, v in self.per_check.items()},
        }


def _axes(am: AxisMetadata):
    return am.axes().items()


def _strictly_descending(values) -> bool:
    return len(values) >= 2 and all(b < a for a, b in zip(values, values[1:]))


def _strictly_monotone(values) -> bool:
    inc = all(b > a for a, b in zip(values, values[1:]))
    return inc or _strictly_descending(values)


def _ratio_exceeds(gaps, eps=EPSILON) -> bool:
    lo, hi = min(gaps), max(gaps)
    if lo <= 0:
        return hi > 0
    return hi / lo > 1 + eps


def check_truncated_axis(am: AxisMetadata) -> CheckResult:
    for axis, rows in _axes(am):
        if axis not in VERTICAL_AXES:
            continue
        values = [parse_number(r.label) for r in rows]
        if not values or any(v is None for v in values):
            continue
        start = min(values)
        if start > 0:
            return CheckResult(True, f"{axis} starts at {start:g}")
    return CheckResult(False)


def check_inverted_axis(am: AxisMetadata) -> CheckResult:
    for axis, rows in _axes(am):
        values = numeric_or_temporal_values([r.label for r in rows])
        if values is not None and _strictly_descending(values):
            return CheckResult(True, f"{axis} labels decrease along the reading direction")
    return CheckResult(False)


def check_dual_axis(am: AxisMetadata) -> CheckResult:
    y1, y2 = am.labels("y1"), am.labels("y2")
    if y1 and y2 and y1 != y2:
        return CheckResult(True, "y1 and y2 carry different tick labels")
    return CheckResult(False)


def check_item_order(am: AxisMetadata) -> CheckResult:
    for axis, rows in _axes(am):
        temporal = temporal_ordinals([r.label for r in rows])
        if temporal is None or len(rows) < 3:
            continue
        seq = temporal[1]
        ascending = all(b >= a for a, b in zip(seq, seq[1:]))
        descending = all(b <= a for a, b in zip(seq, seq[1:]))
        if not ascending and not descending:
            return CheckResult(True, f"{axis} dates are out of chronological order")
    return CheckResult(False)


def check_tick_intervals(am: AxisMetadata) -> CheckResult:
    for axis, rows in _axes(am):
        if len(rows) < 3:
            continue
        values = numeric_or_temporal_values([r.label for r in rows])
        if values is None or not _strictly_monotone(values):
            continue
        gaps = [abs(b - a) for a, b in zip(values, values[1:])]
        pos = [r.position for r in rows]
        pos_gaps = [b - a for a, b in zip(pos, pos[1:])]
        if _ratio_exceeds(gaps) and not _ratio_exceeds(pos_gaps):
            return CheckResult(True, f"{axis} value gaps vary ({min(gaps):g} to {max(gaps):g}) at even spacing")
    return CheckResult(False)


def check_binning(am: AxisMetadata) -> CheckResult:
    for axis, rows in _axes(am):
        if len(rows) < 2:
            continue
        widths = []
        ranged = False
        for r in rows:
            rng = parse_range(r.label)
            if rng is not None:
                ranged = True
                widths.append(rng[2])
            elif parse_number(r.label) is not None:
                widths.append(1.0)
            else:
                widths = None
                break
        if widths and ranged and _ratio_exceeds(widths, eps=1e-9):
            return CheckResult(True, f"{axis} bins have widths {sorted(set(widths))}")
    return CheckResult(False)


CHECKS = {
    vocab.TRUNCATED_AXIS: check_truncated_axis,
    vocab.INVERTED_AXIS: check_inverted_axis,
    vocab.DUAL_AXIS: check_dual_axis,
    vocab.ITEM_ORDER: check_item_order,
    vocab.INCONSISTENT_TICKS: check_tick_intervals,
    vocab.INCONSISTENT_BINNING: check_binning,
}


def lint(am: AxisMetadata | None) -> LintReport:
    """Run all six checks. Charts without axes (pies) pass every check."""
    if am is None:
        return LintReport(frozenset(), {name: CheckResult(False, "no axes") for name in CHECKS})
    results = {name: check(am) for name, check in CHECKS.items()}
    return LintReport(frozenset(n for n, r in results.items() if r.fired), results)
