"""Manifest records, prediction scoring and stratified splits."""

from __future__ import annotations

import json
import logging
import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import vocab

log = logging.getLogger(__name__)

SPLITS = ("train", "val", "test")
DEFAULT_RATIOS = (0.93, 0.02, 0.05)


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    image_path: str
    chart_type: str
    misleaders: frozenset[str]
    split: str
    table_path: str
    axis_metadata_path: str | None
    title: str
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "misleaders", vocab.validate_names(self.misleaders))
        if len(self.misleaders) > 3:
            raise ValueError(f"{self.id}: more than three misleaders")
        if self.chart_type == "pie" and self.axis_metadata_path is not None:
            raise ValueError(f"{self.id}: pie charts carry no axis metadata")

    @property
    def misleading(self) -> bool:
        return bool(self.misleaders)

    def to_json_obj(self) -> dict:
        obj = asdict(self)
        obj["misleaders"] = sorted(self.misleaders)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "DatasetRecord":
        return cls(
            id=str(obj["id"]),
            image_path=obj["image_path"],
            chart_type=obj["chart_type"],
            misleaders=frozenset(obj.get("misleaders") or ()),
            split=obj.get("split", "train"),
            table_path=obj.get("table_path", ""),
            axis_metadata_path=obj.get("axis_metadata_path"),
            title=obj.get("title", ""),
            seed=int(obj.get("seed", 0)),
        )


@dataclass(frozen=True)
class PredictionRecord:
    id: str
    misleaders: frozenset[str]
    note: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "misleaders", vocab.validate_names(self.misleaders))

    def to_json_obj(self) -> dict:
        obj = {"id": self.id, "misleaders": sorted(self.misleaders)}
        if self.note:
            obj["note"] = self.note
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PredictionRecord":
        return cls(str(obj["id"]), frozenset(obj.get("misleaders") or ()), obj.get("note"))


@dataclass(frozen=True)
class MetricsReport:
    acc: float
    pre: float
    rec: float
    f1_macro: float
    em: float
    pm: float
    tp: int
    fp: int
    fn: int
    tn: int
    n_misleading: int = 0
    extra: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        obj = asdict(self)
        obj.pop("extra")
        obj["counts"] = {"TP": self.tp, "FP": self.fp, "FN": self.fn, "TN": self.tn}
        for k in ("tp", "fp", "fn", "tn"):
            obj.pop(k)
        return obj


def exact_match(pred, gt) -> int:
    if not gt:
        raise ValueError("ground truth must be non-empty")
    return int(frozenset(pred) == frozenset(gt))


def partial_match(pred, gt) -> int:
    """1 when a non-empty prediction is a subset of the ground truth."""
    if not gt:
        raise ValueError("ground truth must be non-empty")
    pred = frozenset(pred)
    return int(bool(pred) and pred <= frozenset(gt))


def _div(a: float, b: float) -> float:
    return a / b if b else 0.0


def evaluate(records, preds) -> MetricsReport:
    """Binary metrics over every record; EM and PM over the misleading ones."""
    records = list(records)
    by_id: dict[str, PredictionRecord] = {}
    dupes = []
    for p in preds:
        if p.id in by_id:
            dupes.append(p.id)
        by_id[p.id] = p
    record_ids = [r.id for r in records]
    missing = [i for i in record_ids if i not in by_id]
    unknown = sorted(set(by_id) - set(record_ids))
    dup_records = [i for i, c in Counter(record_ids).items() if c > 1]
    problems = []
    if missing:
        problems.append("missing predictions for: " + ", ".join(missing))
    if dupes:
        problems.append("duplicate predictions for: " + ", ".join(sorted(set(dupes))))
    if unknown:
        problems.append("predictions for unknown ids: " + ", ".join(unknown))
    if dup_records:
        problems.append("duplicate record ids: " + ", ".join(sorted(dup_records)))
    if problems:
        raise EvaluationError("; ".join(problems))

    tp = fp = fn = tn = 0
    em = pm = 0
    for r in records:
        pred = by_id[r.id].misleaders
        if r.misleading:
            em += exact_match(pred, r.misleaders)
            pm += partial_match(pred, r.misleaders)
            if pred:
                tp += 1
            else:
                fn += 1
        elif pred:
            fp += 1
        else:
            tn += 1
    n = len(records)
    n_mis = tp + fn
    pre, rec = _div(tp, tp + fp), _div(tp, tp + fn)
    f1_pos = _div(2 * tp, 2 * tp + fp + fn)
    f1_neg = _div(2 * tn, 2 * tn + fn + fp)
    return MetricsReport(
        acc=_div(tp + tn, n), pre=pre, rec=rec, f1_macro=(f1_pos + f1_neg) / 2,
        em=_div(em, n_mis), pm=_div(pm, n_mis), tp=tp, fp=fp, fn=fn, tn=tn, n_misleading=n_mis,
    )


def stratum_of(record: DatasetRecord) -> tuple:
    return (tuple(sorted(record.misleaders)), record.chart_type)


def stratified_split(records, ratios=DEFAULT_RATIOS, seed: int = 0, names=SPLITS) -> dict[str, str]:
    """Assign every record id to a split, stratified by (misleader set, chart type).

    Each stratum gets floor(n * ratio) per bucket; the leftover records go to
    the buckets that are furthest behind their global target so far, which
    keeps every stratum within one record of its ideal and the global ratios
    within a record or two.
    """
    ratios = tuple(float(r) for r in ratios)
    if len(ratios) != len(names):
        raise ValueError(f"expected {len(names)} ratios")
    if any(r <= 0 for r in ratios) or abs(sum(ratios) - 1) > 1e-9:
        raise ValueError("ratios must be positive and sum to 1")
    strata: dict[tuple, list[DatasetRecord]] = {}
    for r in records:
        strata.setdefault(stratum_of(r), []).append(r)

    assignment: dict[str, str] = {}
    ideal_total = [0.0] * len(names)
    assigned_total = [0] * len(names)
    for key in sorted(strata):
        members = sorted(strata[key], key=lambda r: r.id)
        random.Random(f"split:{seed}:{key}").shuffle(members)
        n = len(members)
        ideal = [n * r for r in ratios]
        ideal_total = [a + b for a, b in zip(ideal_total, ideal)]
        if n < len(names):
            log.warning("stratum %s has %d record(s); assigned whole to %s", key, n, names[0])
            counts = [n] + [0] * (len(names) - 1)
        else:
            counts = [math.floor(x + 1e-9) for x in ideal]
            for _ in range(n - sum(counts)):
                deficit = [ideal_total[b] - assigned_total[b] - counts[b] for b in range(len(names))]
                open_ = [b for b in range(len(names)) if counts[b] < math.floor(ideal[b] + 1e-9) + 1]
                best = max(open_, key=lambda b: (deficit[b], -b))
                counts[best] += 1
        assigned_total = [a + c for a, c in zip(assigned_total, counts)]
        start = 0
        for name, c in zip(names, counts):
            for r in members[start:start + c]:
                assignment[r.id] = name
            start += c
    return assignment


# -- jsonl io ---------------------------------------------------------------------------


def _read_jsonl(path):
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise EvaluationError(f"{path}:{lineno}: {exc}") from exc
    return out


def _write_jsonl(path, objs) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for obj in objs:
            fh.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def read_manifest(path) -> list[DatasetRecord]:
    return [DatasetRecord.from_json_obj(o) for o in _read_jsonl(path)]


def write_manifest(path, records) -> None:
    _write_jsonl(path, (r.to_json_obj() for r in sorted(records, key=lambda r: r.id)))


def read_predictions(path) -> list[PredictionRecord]:
    return [PredictionRecord.from_json_obj(o) for o in _read_jsonl(path)]


def write_predictions(path, preds) -> None:
    _write_jsonl(path, (p.to_json_obj() for p in sorted(preds, key=lambda p: p.id)))
