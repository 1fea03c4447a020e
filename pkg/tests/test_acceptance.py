"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import json
import math
import random
import shutil
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from misleadviz import vocab
from misleadviz.adapters import PredictorConfig, build_prompt, parse_response, predict
from misleadviz.axismeta import AxisMetadata
from misleadviz.evalkit import DatasetRecord, PredictionRecord, evaluate, stratified_split, stratum_of
from misleadviz.linter import lint
from misleadviz.parsing import parse_number
from misleadviz.pipeline import GenerationConfig, generate_dataset


@pytest.fixture
def verdict(request):
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    def emit(criterion: int, ok: bool, detail: str) -> None:
        line = f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}"
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(line)
        else:
            print(line)
        assert ok, line

    return emit


def _axis(corpus, record):
    return AxisMetadata.read(corpus.out / record.axis_metadata_path) if record.axis_metadata_path else None


def test_criterion_1_linter_loop(corpus, verdict):
    records = corpus.records
    preds = {p.id: p for p in predict(PredictorConfig(), records, corpus.out)}
    m = evaluate(records, preds.values())
    covered = [r for r in records if r.misleaders & vocab.LINTER_COVERED]
    recall_cov = sum(bool(preds[r.id].misleaders) for r in covered) / len(covered)
    n_tables = len(corpus.sources)
    share = sum(r.misleading for r in records) / len(records)
    ok = (len(records) >= 2000 and n_tables >= 50 and abs(share - 0.78) < 0.005
          and m.pre >= 0.98 and recall_cov == 1.0 and corpus.seconds < 600)
    verdict(1, ok, f"n={len(records)} tables={n_tables} misleading={share:.3f} pre={m.pre:.4f} "
                   f"recall(covered)={recall_cov:.4f} runtime={corpus.seconds:.0f}s")


def test_criterion_2_round_trip_purity(corpus, verdict):
    clean_bad = covered_bad = n_clean = n_cov = 0
    for r in corpus.records:
        fired = lint(_axis(corpus, r)).fired
        if not r.misleading:
            n_clean += 1
            clean_bad += bool(fired)
        elif r.misleaders <= vocab.LINTER_COVERED:
            n_cov += 1
            covered_bad += fired != r.misleaders
    verdict(2, clean_bad == 0 and covered_bad == 0 and n_clean and n_cov,
            f"clean with fires {clean_bad}/{n_clean}, covered with wrong fires {covered_bad}/{n_cov}")


def _oracle(records, preds):
    """Independent recomputation with direct set comparisons."""
    p = {x.id: set(x.misleaders) for x in preds}
    tp = sum(1 for r in records if r.misleaders and p[r.id])
    fn = sum(1 for r in records if r.misleaders and not p[r.id])
    fp = sum(1 for r in records if not r.misleaders and p[r.id])
    tn = sum(1 for r in records if not r.misleaders and not p[r.id])
    mis = [r for r in records if r.misleaders]
    em = sum(p[r.id] == set(r.misleaders) for r in mis)
    pm = sum(bool(p[r.id]) and p[r.id].issubset(r.misleaders) for r in mis)

    def q(a, b):
        return float(Fraction(a, b)) if b else 0.0

    f1 = (q(2 * tp, 2 * tp + fp + fn) + q(2 * tn, 2 * tn + fp + fn)) / 2
    return dict(tp=tp, fp=fp, fn=fn, tn=tn, acc=q(tp + tn, len(records)), pre=q(tp, tp + fp),
                rec=q(tp, tp + fn), f1_macro=f1, em=q(em, len(mis)), pm=q(pm, len(mis)))


def _random_corpus(rnd, max_size=3):
    names = sorted(vocab.MISLEADERS)
    n = rnd.randint(1, 12)

    def labels():
        return frozenset(rnd.sample(names, rnd.choice([0, 0, 1, 1, 2, 3][: max_size + 3])))

    records = [DatasetRecord(str(i), f"{i}.png", "bar", labels(), "test", "", f"{i}.json", "", 0) for i in range(n)]
    preds = [PredictionRecord(str(i), labels()) for i in range(n)]
    return records, preds


def test_criterion_3_metric_oracle(verdict):
    rnd = random.Random(303)
    mismatches = 0
    for _ in range(200):
        records, preds = _random_corpus(rnd)
        m = evaluate(records, preds)
        got = dict(tp=m.tp, fp=m.fp, fn=m.fn, tn=m.tn, acc=m.acc, pre=m.pre, rec=m.rec,
                   f1_macro=m.f1_macro, em=m.em, pm=m.pm)
        mismatches += got != _oracle(records, preds)
    verdict(3, mismatches == 0, f"{mismatches}/200 corpora differ from the brute-force oracle")


_em_pm_gaps = []


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.lists(st.tuples(st.sampled_from(sorted(vocab.MISLEADERS)),
                          st.frozensets(st.sampled_from(sorted(vocab.MISLEADERS)), max_size=3)),
                min_size=1, max_size=30))
def _em_equals_pm(pairs):
    records = [DatasetRecord(str(i), "", "bar", frozenset({g}), "test", "", "a", "", 0) for i, (g, _) in enumerate(pairs)]
    preds = [PredictionRecord(str(i), p) for i, (_, p) in enumerate(pairs)]
    m = evaluate(records, preds)
    _em_pm_gaps.append(abs(m.em - m.pm))


def test_criterion_4_em_pm_identity(verdict):
    _em_pm_gaps.clear()
    _em_equals_pm()
    worst = max(_em_pm_gaps)
    verdict(4, worst <= 1e-12 and len(_em_pm_gaps) >= 100,
            f"max |EM-PM| = {worst:.2e} over {len(_em_pm_gaps)} prediction sets")


def test_criterion_5_axis_normalization(corpus, verdict):
    bad_first, worst = 0, 0.0
    for r in corpus.records:
        am = _axis(corpus, r)
        if am is None:
            continue
        side = json.loads((corpus.out / "images" / f"{r.id}.ticks.json").read_text())
        for axis in am.axes():
            pos = am.positions(axis)
            if len(pos) >= 2 and pos[:2] != [0.0, 1.0]:
                bad_first += 1
            offs = side["tick_pixel_offsets"][axis]
            assert side["tick_labels"][axis] == am.labels(axis)
            if len(offs) >= 2:
                unit = offs[1] - offs[0]
                worst = max([worst] + [abs((o - offs[0]) / unit - p) for o, p in zip(offs, pos)])
    verdict(5, bad_first == 0 and worst <= 0.01,
            f"axes not starting 0,1: {bad_first}; worst pixel/declared gap {worst:.2e} relative units")


def test_criterion_6_determinism(tables_dir, tmp_path, verdict):
    src = tmp_path / "tables"
    src.mkdir()
    for path in sorted(tables_dir.glob("*.csv"))[::6]:
        shutil.copy(path, src)
    runs = []
    for k, jobs in enumerate((1, 2)):
        out = tmp_path / f"run{k}"
        generate_dataset(GenerationConfig(str(src), str(out), seed=11, count=60, jobs=jobs))
        runs.append({p.relative_to(out).as_posix(): p.read_bytes() for p in out.rglob("*") if p.is_file()})
    a, b = runs
    differing = sorted(k for k in a.keys() | b.keys() if a.get(k) != b.get(k))
    images = sum(k.endswith(".png") for k in a)
    verdict(6, not differing and images == 60,
            f"{len(a)} files compared ({images} images), {len(differing)} differ {differing[:3]}")


def test_criterion_7_split_fidelity(corpus, verdict):
    records = corpus.records
    ratios = (0.93, 0.02, 0.05)
    splits = stratified_split(records, ratios, seed=7)
    names = ("train", "val", "test")
    strata = Counter(stratum_of(r) for r in records)
    worst_stratum = 0.0
    for key, n in strata.items():
        got = Counter(splits[r.id] for r in records if stratum_of(r) == key)
        if n >= len(names):
            worst_stratum = max([worst_stratum] + [abs(got[s] - n * q) for s, q in zip(names, ratios)])
    total = Counter(splits.values())
    worst_global = max(abs(total[s] / len(records) - q) for s, q in zip(names, ratios))
    verdict(7, worst_stratum <= 1 and worst_global <= 0.005,
            f"{len(strata)} strata, worst per-stratum gap {worst_stratum:.2f} records, "
            f"worst global gap {worst_global:.2%}")


def test_criterion_8_prompt_fidelity(verdict):
    full, synth = build_prompt("full"), build_prompt("synthetic")
    order = [full.index(f"- {n}: ") for n in vocab.alphabetical(vocab.MISLEADERS)]
    names = sorted(vocab.MISLEADERS)
    subsets = [c for k in (1, 2, 3) for c in itertools.combinations(names, k)]
    failures = [s for s in subsets if frozenset(parse_response(", ".join(s))) != frozenset(s)]
    fallback = 'respond with "no misleader".'
    ok = (len(order) == 12 and order == sorted(order) and fallback in full
          and vocab.DISCRETIZED not in synth and synth.count("\n- ") == 11
          and len(subsets) == 298 and not failures)
    verdict(8, ok, f"12 definitions ordered={order == sorted(order)}, fallback literal={fallback in full}, "
                   f"synthetic omits discretized={vocab.DISCRETIZED not in synth}, "
                   f"round-trip failures {len(failures)}/{len(subsets)}")


def _pair_deviation(heights, values):
    return max(abs((hi / hj) / (vi / vj) - 1)
               for hi, vi in zip(heights, values) for hj, vj in zip(heights, values)
               if vi and vj and hj)


def test_criterion_9_misrepresentation(corpus, verdict):
    weakest, worst_clean, n_mis, n_other = math.inf, 0.0, 0, 0
    for r in corpus.records:
        if r.chart_type != "bar":
            continue
        spec = json.loads((corpus.out / "specs" / f"{r.id}.json").read_text())
        side = json.loads((corpus.out / "images" / f"{r.id}.ticks.json").read_text())
        devs = [_pair_deviation([abs(h) for h in heights], [parse_number(lab) for lab in series["labels"]])
                for series, heights in zip(spec["series"], side["bar_pixel_heights"])]
        if vocab.MISREPRESENTATION in r.misleaders:
            n_mis += 1
            weakest = min(weakest, max(devs))
        else:
            n_other += 1
            worst_clean = max([worst_clean] + devs)
    verdict(9, n_mis > 0 and weakest >= 0.2 and worst_clean <= 0.01,
            f"{n_mis} misrepresentation bar charts, min deviation {weakest:.3f}; "
            f"{n_other} other bar charts, max deviation {worst_clean:.4f}")
