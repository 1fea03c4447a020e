"""The four-column tick table attached to every bar and line chart.

Serialized as one JSON object whose keys are the column names, each mapping
to a parallel array.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

COLUMNS = ("Seq", "Axis", "Label", "Relative position")
AXIS_ORDER = ("x", "y1", "y2")


class MetadataError(ValueError):
    pass


@dataclass(frozen=True)
class AxisRow:
    seq: int
    axis: str
    label: str
    position: float


@dataclass(frozen=True)
class AxisMetadata:
    rows: tuple[AxisRow, ...]

    def axes(self) -> dict[str, list[AxisRow]]:
        out: dict[str, list[AxisRow]] = {}
        for row in self.rows:
            out.setdefault(row.axis, []).append(row)
        return out

    def labels(self, axis: str) -> list[str]:
        return [r.label for r in self.rows if r.axis == axis]

    def positions(self, axis: str) -> list[float]:
        return [r.position for r in self.rows if r.axis == axis]

    def to_json_obj(self) -> dict:
        return {
            "Seq": [r.seq for r in self.rows],
            "Axis": [r.axis for r in self.rows],
            "Label": [r.label for r in self.rows],
            "Relative position": [r.position for r in self.rows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False, indent=1)

    @classmethod
    def from_json_obj(cls, obj) -> "AxisMetadata":
        if not isinstance(obj, dict):
            raise MetadataError("axis metadata must be an object")
        missing = [c for c in COLUMNS if c not in obj]
        if missing:
            raise MetadataError(f"missing column(s): {', '.join(missing)}")
        cols = [obj[c] for c in COLUMNS]
        if not all(isinstance(c, list) for c in cols):
            raise MetadataError("every column must be an array")
        if len({len(c) for c in cols}) != 1:
            raise MetadataError("columns have different lengths")
        rows = []
        for i, (seq, axis, label, pos) in enumerate(zip(*cols)):
            where = f"row {i + 1}"
            if isinstance(seq, bool) or not isinstance(seq, int):
                raise MetadataError(f"{where}: Seq must be an integer")
            if not isinstance(axis, str) or not axis:
                raise MetadataError(f"{where}: Axis must be a non-empty string")
            if not isinstance(label, (str, int, float)) or isinstance(label, bool):
                raise MetadataError(f"{where}: Label must be text")
            if isinstance(pos, bool) or not isinstance(pos, (int, float)) or not math.isfinite(pos):
                raise MetadataError(f"{where}: Relative position must be a finite number")
            rows.append(AxisRow(seq, axis, str(label), float(pos)))
        return cls(tuple(rows))

    @classmethod
    def loads(cls, text: str) -> "AxisMetadata":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MetadataError(f"not valid JSON: {exc}") from exc
        return cls.from_json_obj(obj)

    @classmethod
    def read(cls, path) -> "AxisMetadata":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def normalized_positions(offsets) -> list[float]:
    """Offsets relative to the first tick, in units of the first gap."""
    offsets = list(offsets)
    if len(offsets) < 2:
        return [0.0] * len(offsets)
    unit = offsets[1] - offsets[0]
    if unit == 0:
        raise MetadataError("first two ticks coincide")
    out = [round((o - offsets[0]) / unit, 6) for o in offsets]
    out[0], out[1] = 0.0, 1.0
    return out


def structural_problems(am: AxisMetadata) -> list[str]:
    """Invariant violations: contiguous Seq, axis order, increasing positions."""
    problems = []
    if [r.seq for r in am.rows] != list(range(1, len(am.rows) + 1)):
        problems.append("seq-not-contiguous")
    names = []
    for r in am.rows:
        if not names or names[-1] != r.axis:
            names.append(r.axis)
    if len(names) != len(set(names)):
        problems.append("axis-rows-interleaved")
    known = [n for n in names if n in AXIS_ORDER]
    if known != sorted(known, key=AXIS_ORDER.index):
        problems.append("axis-order")
    for axis, rows in am.axes().items():
        pos = [r.position for r in rows]
        if any(b <= a for a, b in zip(pos, pos[1:])):
            problems.append(f"{axis}:positions-not-increasing")
        if len(pos) >= 2 and (pos[0] != 0.0 or pos[1] != 1.0):
            problems.append(f"{axis}:not-normalized")
        elif len(pos) == 1 and pos[0] != 0.0:
            problems.append(f"{axis}:not-normalized")
    return problems
