"""Command-line entry point: misleadviz generate|lint|evaluate|split|prompt|predict."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from .adapters import EndpointUnreachable, PredictorConfig, build_prompt, predict
from .axismeta import AxisMetadata, MetadataError
from .evalkit import (
    DEFAULT_RATIOS,
    EvaluationError,
    evaluate,
    read_manifest,
    read_predictions,
    stratified_split,
    write_manifest,
    write_predictions,
)
from .linter import lint
from .pipeline import GenerationConfig, GenerationError, generate_dataset
from .tables import TableError

OK, INVALID, PARTIAL = 0, 1, 2


def _ratios(text: str) -> tuple[float, ...]:
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three ratios, e.g. 0.93,0.02,0.05")
    return parts


def _weights(text: str) -> dict[str, float]:
    try:
        obj = json.loads(Path(text).read_text(encoding="utf-8")) if os.path.exists(text) else json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"weights must be a JSON object or file: {exc}")
    if not isinstance(obj, dict):
        raise argparse.ArgumentTypeError("weights must be a JSON object")
    return {str(k): float(v) for k, v in obj.items()}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="misleadviz", description="Synthetic misleading-chart toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a labelled chart corpus from CSV tables")
    g.add_argument("--tables", required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1000)
    g.add_argument("--misleading-frac", type=float, default=0.78)
    g.add_argument("--splits", type=_ratios, default=DEFAULT_RATIOS)
    g.add_argument("--weights", type=_weights, default=None, help="JSON object or file of misleader weights")
    g.add_argument("--max-per-table", type=int, default=8)
    g.add_argument("--jobs", type=int, default=None)

    li = sub.add_parser("lint", help="run the rule checks on axis metadata")
    src = li.add_mutually_exclusive_group(required=True)
    src.add_argument("--axis")
    src.add_argument("--manifest")
    li.add_argument("--split")
    li.add_argument("--json", action="store_true", help="print per-check evidence as JSON")

    e = sub.add_parser("evaluate", help="score predictions against a manifest")
    e.add_argument("--manifest", required=True)
    e.add_argument("--predictions", required=True)
    e.add_argument("--split")
    e.add_argument("--out")

    s = sub.add_parser("split", help="reassign stratified splits in a manifest")
    s.add_argument("--manifest", required=True)
    s.add_argument("--ratios", type=_ratios, default=DEFAULT_RATIOS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")

    pr = sub.add_parser("prompt", help="print the zero-shot detection prompt")
    pr.add_argument("--vocabulary", choices=("full", "synthetic"), default="full")
    pr.add_argument("--out")

    p = sub.add_parser("predict", help="predict misleaders for every manifest record")
    p.add_argument("--manifest", required=True)
    p.add_argument("--predictor", choices=("linter", "external"), default="linter")
    p.add_argument("--endpoint")
    p.add_argument("--model")
    p.add_argument("--api-key-env", default="OPENAI_API_KEY")
    p.add_argument("--temperature", type=float, default=0.0)
    p.add_argument("--vocabulary", choices=("full", "synthetic"), default="synthetic")
    p.add_argument("--retries", type=int, default=3)
    p.add_argument("--timeout", type=float, default=120.0)
    p.add_argument("--audit")
    p.add_argument("--split")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=None)
    return parser


def _select(records, split):
    return [r for r in records if split is None or r.split == split]


def cmd_generate(args) -> int:
    config = GenerationConfig(
        tables_dir=args.tables, out_dir=args.out, seed=args.seed, count=args.count,
        misleading_frac=args.misleading_frac, split_ratios=args.splits, weights=args.weights or {},
        max_per_table=args.max_per_table, jobs=args.jobs,
    )
    result = generate_dataset(config)
    print(result.report, end="")
    return OK if result.complete else PARTIAL


def cmd_lint(args) -> int:
    if args.axis:
        targets = [(args.axis, AxisMetadata.read(args.axis))]
    else:
        base = Path(args.manifest).parent
        targets = []
        for r in _select(read_manifest(args.manifest), args.split):
            am = AxisMetadata.read(base / r.axis_metadata_path) if r.axis_metadata_path else None
            targets.append((r.id, am))
    for name, am in targets:
        report = lint(am)
        if args.json:
            print(json.dumps({"id": name, **report.to_json_obj()}, ensure_ascii=False))
        elif args.axis:
            print(report.verdict)
        else:
            print(f"{name}\t{report.verdict}")
    return OK


def cmd_evaluate(args) -> int:
    records = _select(read_manifest(args.manifest), args.split)
    ids = {r.id for r in records}
    preds = [p for p in read_predictions(args.predictions) if args.split is None or p.id in ids]
    text = json.dumps(evaluate(records, preds).to_json_obj(), indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return OK


def cmd_split(args) -> int:
    records = read_manifest(args.manifest)
    splits = stratified_split(records, args.ratios, args.seed)
    write_manifest(args.out or args.manifest, [replace(r, split=splits[r.id]) for r in records])
    return OK


def cmd_prompt(args) -> int:
    text = build_prompt(args.vocabulary)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return OK


def cmd_predict(args) -> int:
    config = PredictorConfig(
        kind=args.predictor, endpoint=args.endpoint, model=args.model, api_key_env=args.api_key_env,
        temperature=args.temperature, vocabulary=args.vocabulary, retries=args.retries,
        timeout=args.timeout, jobs=args.jobs or 4, audit_path=args.audit,
    )
    records = _select(read_manifest(args.manifest), args.split)
    preds = predict(config, records, Path(args.manifest).parent)
    write_predictions(args.out, preds)
    failed = [p for p in preds if p.note]
    if failed:
        print(f"{len(failed)} record(s) failed: " + ", ".join(p.id for p in failed), file=sys.stderr)
        return PARTIAL
    return OK


COMMANDS = {
    "generate": cmd_generate, "lint": cmd_lint, "evaluate": cmd_evaluate,
    "split": cmd_split, "prompt": cmd_prompt, "predict": cmd_predict,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except EndpointUnreachable as exc:
        print(f"error: endpoint unreachable: {exc}", file=sys.stderr)
        return PARTIAL
    except (EvaluationError, GenerationError, MetadataError, TableError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
