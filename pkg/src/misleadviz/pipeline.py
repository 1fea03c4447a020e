"""End-to-end corpus generation: tables, prepared tables, specs, images, manifest."""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import vocab
from .chartspec import (
    BAR,
    CHART_TYPES,
    LINE,
    PIE,
    ChartSpec,
    SpecError,
    applicable_misleaders,
    base_allowed,
    compatible_chart_types,
    derive_axis_metadata,
    make_spec,
    validate_spec,
)
from .evalkit import DEFAULT_RATIOS, SPLITS, DatasetRecord, stratified_split, write_manifest
from .tables import DEFAULT_MAX_PER_TABLE, DEFAULT_MAX_ROWS, enumerate_prepared_tables, read_tables

log = logging.getLogger(__name__)

DEFAULT_CHART_MIX = {BAR: 0.46, LINE: 0.47, PIE: 0.07}


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenerationConfig:
    tables_dir: str
    out_dir: str
    seed: int = 0
    count: int = 1000
    misleading_frac: float = 0.78
    split_ratios: tuple[float, ...] = DEFAULT_RATIOS
    weights: dict[str, float] = field(default_factory=dict)
    max_per_table: int = DEFAULT_MAX_PER_TABLE
    max_rows: int = DEFAULT_MAX_ROWS
    chart_mix: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_CHART_MIX))
    jobs: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.misleading_frac <= 1.0:
            raise ValueError("misleading fraction must lie in [0, 1]")
        if len(self.split_ratios) != len(SPLITS) or abs(sum(self.split_ratios) - 1) > 1e-9:
            raise ValueError("split ratios must be three numbers summing to 1")
        if self.count < 0:
            raise ValueError("count must be non-negative")
        vocab.validate_names(self.weights)
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("misleader weights must be non-negative")
        if set(self.chart_mix) - set(CHART_TYPES) or any(w < 0 for w in self.chart_mix.values()):
            raise ValueError("chart mix must map bar/line/pie to non-negative shares")


@dataclass(frozen=True)
class Candidate:
    source: str
    prep_index: int
    chart_type: str
    misleader: str | None
    weight: float

    @property
    def key(self) -> str:
        return f"{self.source}|{self.prep_index}|{self.chart_type}|{vocab.slug(self.misleader)}"


@dataclass
class GenerationResult:
    records: list[DatasetRecord]
    requested: int
    shortfall: int
    rejected: Counter
    report: str
    sources: Counter = field(default_factory=Counter)

    @property
    def complete(self) -> bool:
        return self.shortfall == 0


def _digest(*parts) -> bytes:
    return hashlib.sha256("|".join(str(p) for p in parts).encode("utf-8")).digest()


def instance_seed(seed: int, source: str, prep_index: int, chart_type: str, misleader: str | None) -> int:
    """Seed of one instance, a pure function of its identity so scheduling cannot change it."""
    return int.from_bytes(_digest(seed, source, prep_index, chart_type, vocab.slug(misleader))[:4], "big") >> 1


def _rank_key(seed: int, cand: Candidate) -> float:
    # Efraimidis-Spirakis key: sorting by u ** (1 / w) descending samples proportional to weight
    u = (int.from_bytes(_digest("rank", seed, cand.key)[:8], "big") + 1) / (2 ** 64 + 1)
    return math.log(u) / cand.weight


def enumerate_candidates(prepared_by_source, weights=None):
    """All (prepared table, chart type, misleader) triples that could become an instance."""
    weights = weights or {}
    misleading, clean = [], []
    for source, prepared_list in prepared_by_source:
        for i, prepared in enumerate(prepared_list):
            for chart in sorted(compatible_chart_types(prepared)):
                if base_allowed(prepared, chart):
                    clean.append(Candidate(source, i, chart, None, 1.0))
                applicable = sorted(applicable_misleaders(prepared, chart))
                for m in applicable:
                    w = weights.get(m, 1.0) / len(applicable)
                    if w > 0:
                        misleading.append(Candidate(source, i, chart, m, w))
    return misleading, clean


def allocate(total: int, shares: dict[str, float], capacity: dict[str, int] | None = None) -> dict[str, int]:
    """Largest-remainder apportionment of total over shares, never exceeding capacity."""
    out = {k: 0 for k in shares}
    open_ = {k for k, s in shares.items() if s > 0 and (capacity is None or capacity.get(k, 0) > 0)}
    remaining = total
    while remaining > 0 and open_:
        weight = sum(shares[k] for k in open_)
        ideal = {k: remaining * shares[k] / weight for k in open_}
        step = {k: math.floor(ideal[k]) for k in open_}
        left = remaining - sum(step.values())
        for k in sorted(open_, key=lambda k: (-(ideal[k] - step[k]), k))[:left]:
            step[k] += 1
        for k in sorted(open_):
            room = math.inf if capacity is None else capacity[k] - out[k]
            take = min(step[k], room)
            out[k] += take
            remaining -= take
            if take == room:
                open_.discard(k)
        if capacity is None:
            break
    return out


class _Selector:
    """Walk candidates per chart type in weighted random order, keeping those whose spec validates."""

    def __init__(self, candidates, prepared, seed):
        self.prepared = prepared
        self.pools = {t: sorted((c for c in candidates if c.chart_type == t),
                                key=lambda c: (-_rank_key(seed, c), c.key)) for t in CHART_TYPES}
        self.cursor = {t: 0 for t in CHART_TYPES}
        self.seed = seed
        self.rejected: Counter = Counter()

    def take(self, chart_type: str, n: int) -> list[tuple[Candidate, ChartSpec]]:
        out = []
        pool = self.pools[chart_type]
        while len(out) < n and self.cursor[chart_type] < len(pool):
            cand = pool[self.cursor[chart_type]]
            self.cursor[chart_type] += 1
            spec = self.build(cand)
            if spec is not None:
                out.append((cand, spec))
        return out

    def build(self, cand: Candidate) -> ChartSpec | None:
        ps = instance_seed(self.seed, cand.source, cand.prep_index, cand.chart_type, cand.misleader)
        try:
            spec = make_spec(self.prepared[cand.source][cand.prep_index], cand.chart_type, cand.misleader, ps)
        except SpecError as exc:
            self.rejected[f"{vocab.slug(cand.misleader)}: {type(exc).__name__}"] += 1
            return None
        problems = validate_spec(spec)
        if problems:
            for p in problems:
                self.rejected[f"{vocab.slug(cand.misleader)}: {p}"] += 1
            return None
        return spec

    def remaining(self, chart_type: str) -> int:
        return len(self.pools[chart_type]) - self.cursor[chart_type]

    def fill(self, total: int, mix: dict[str, float]) -> list[tuple[Candidate, ChartSpec]]:
        """Fill total slots at the chart mix; quota a chart type cannot meet moves to the others."""
        chosen: list[tuple[Candidate, ChartSpec]] = []
        while len(chosen) < total:
            cap = {t: self.remaining(t) for t in CHART_TYPES if mix.get(t, 0) > 0 and self.remaining(t)}
            if not cap:
                break
            quota = allocate(total - len(chosen), {t: mix[t] for t in cap}, cap)
            for t in sorted(quota):
                chosen.extend(self.take(t, quota[t]))
        return chosen


def _write_instance(job) -> tuple[str, bool]:
    from .renderer import render

    out_dir, instance_id, spec, table_rows = job
    out = Path(out_dir)
    artifact = render(spec)
    (out / "images" / f"{instance_id}.png").write_bytes(artifact.png)
    (out / "images" / f"{instance_id}.ticks.json").write_text(artifact.sidecar() + "\n", encoding="utf-8")
    (out / "specs" / f"{instance_id}.json").write_text(spec.dumps() + "\n", encoding="utf-8")
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(table_rows)
    (out / "tables" / f"{instance_id}.csv").write_text(buf.getvalue(), encoding="utf-8")
    am = derive_axis_metadata(spec)
    if am is not None:
        (out / "axis" / f"{instance_id}.json").write_text(am.dumps() + "\n", encoding="utf-8")
    return instance_id, am is not None


def generate_dataset(config: GenerationConfig) -> GenerationResult:
    """Generate a corpus on disk and return its manifest records."""
    tables_dir = Path(config.tables_dir)
    if not tables_dir.is_dir():
        raise GenerationError(f"table directory {tables_dir} does not exist")
    tables = read_tables(tables_dir)
    if not tables:
        raise GenerationError(f"no tables found in {tables_dir}")
    prepared = {t.name: enumerate_prepared_tables(t, config.max_per_table, config.max_rows) for t in tables}
    misleading, clean = enumerate_candidates(sorted(prepared.items()), config.weights)

    n_mis = round(config.count * config.misleading_frac)
    n_clean = config.count - n_mis
    mis_selector = _Selector(misleading, prepared, config.seed)
    clean_selector = _Selector(clean, prepared, config.seed)
    chosen_mis = mis_selector.fill(n_mis, config.chart_mix)
    chosen_clean = clean_selector.fill(n_clean, config.chart_mix)
    rejected = mis_selector.rejected + clean_selector.rejected
    if len(chosen_mis) < n_mis or len(chosen_clean) < n_clean:
        # shortfall: largest total both pools can serve at the requested fraction
        total = len(chosen_mis) + len(chosen_clean)
        while total and (round(total * config.misleading_frac) > len(chosen_mis)
                         or total - round(total * config.misleading_frac) > len(chosen_clean)):
            total -= 1
        keep_mis = round(total * config.misleading_frac)
        chosen_mis, chosen_clean = chosen_mis[:keep_mis], chosen_clean[:total - keep_mis]
    chosen = sorted(chosen_mis + chosen_clean, key=lambda cs: cs[0].key)

    out = Path(config.out_dir)
    for sub in ("images", "tables", "axis", "specs"):
        (out / sub).mkdir(parents=True, exist_ok=True)
    width = max(6, len(str(len(chosen))))
    jobs, records = [], []
    for k, (cand, spec) in enumerate(chosen):
        iid = f"{k:0{width}d}"
        prep = prepared[cand.source][cand.prep_index]
        jobs.append((str(out), iid, spec, prep.to_csv_rows()))
        records.append(DatasetRecord(
            id=iid,
            image_path=f"images/{iid}.png",
            chart_type=cand.chart_type,
            misleaders=frozenset({cand.misleader} if cand.misleader else ()),
            split=SPLITS[0],
            table_path=f"tables/{iid}.csv",
            axis_metadata_path=None if cand.chart_type == PIE else f"axis/{iid}.json",
            title=spec.title,
            seed=spec.seed,
        ))

    n_jobs = config.jobs or os.cpu_count() or 1
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            list(pool.map(_write_instance, jobs, chunksize=8))
    else:
        for job in jobs:
            _write_instance(job)

    splits = stratified_split(records, config.split_ratios, config.seed)
    records = [replace(r, split=splits[r.id]) for r in records]
    write_manifest(out / "manifest.jsonl", records)
    shortfall = config.count - len(records)
    sources = Counter(cand.source for cand, _ in chosen)
    report = run_report(config, records, shortfall, rejected, sources)
    (out / "run_report.txt").write_text(report, encoding="utf-8")
    if shortfall:
        log.warning("shortfall: generated %d of %d requested instances", len(records), config.count)
    return GenerationResult(records, config.count, shortfall, rejected, report, sources)


def run_report(config: GenerationConfig, records, shortfall: int, rejected: Counter,
               sources: Counter | None = None) -> str:
    lines = [f"requested: {config.count}", f"generated: {len(records)}"]
    if sources is not None:
        lines.append(f"source tables used: {len(sources)}")
    if shortfall:
        lines.append(f"SHORTFALL: {shortfall} instance(s) could not be generated from the available tables")
    n_mis = sum(r.misleading for r in records)
    share = n_mis / len(records) if records else 0.0
    lines.append(f"misleading: {n_mis} ({share:.1%}, target {config.misleading_frac:.1%})")
    sections = [
        ("chart type", Counter(r.chart_type for r in records)),
        ("misleader", Counter(next(iter(r.misleaders), vocab.NO_MISLEADER) for r in records)),
        ("split", Counter(r.split for r in records)),
    ]
    for title, counts in sections:
        lines.append(f"\n[{title}]")
        lines.extend(f"{k}: {v}" for k, v in sorted(counts.items()))
    if rejected:
        lines.append("\n[rejected candidates]")
        lines.extend(f"{k}: {v}" for k, v in sorted(rejected.items()))
    return "\n".join(lines) + "\n"
