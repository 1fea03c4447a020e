import json
import shutil
import subprocess
import sys

import pytest

from misleadviz.cli import main
from misleadviz.evalkit import read_manifest, read_predictions

TRUNC = {"Seq": [1, 2, 3, 4, 5], "Axis": ["x", "x", "y1", "y1", "y1"], "Label": ["A", "B", "36", "38", "40"],
         "Relative position": [0, 1, 0, 1, 2]}


@pytest.fixture
def trunc_file(tmp_path):
    path = tmp_path / "axis.json"
    path.write_text(json.dumps(TRUNC))
    return path


def test_lint_axis(trunc_file, capsys):
    assert main(["lint", "--axis", str(trunc_file)]) == 0
    assert capsys.readouterr().out.strip() == "truncated axis"
    assert main(["lint", "--axis", str(trunc_file), "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["fired"] == ["truncated axis"]


def test_lint_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert main(["lint", "--axis", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert main(["generate", "--bogus"]) == 1
    assert main([]) == 1
    assert main(["generate", "--tables", "x", "--out", "y", "--splits", "0.5,0.5"]) == 1


def test_generate_empty_dir(tmp_path, capsys):
    (tmp_path / "t").mkdir()
    assert main(["generate", "--tables", str(tmp_path / "t"), "--out", str(tmp_path / "o")]) == 1
    assert "no tables" in capsys.readouterr().err


def test_prompt(tmp_path, capsys):
    assert main(["prompt", "--vocabulary", "synthetic"]) == 0
    out = capsys.readouterr().out
    assert "truncated axis" in out and "discretized continuous variable" not in out
    assert main(["prompt", "--out", str(tmp_path / "p.txt")]) == 0
    assert "discretized continuous variable" in (tmp_path / "p.txt").read_text()


def test_generate_predict_evaluate(tables_dir, tmp_path, capsys):
    tables = tmp_path / "tables"
    tables.mkdir()
    for name in ("league_01", "survey_01", "monthly_01"):
        shutil.copy(tables_dir / f"{name}.csv", tables)
    out = tmp_path / "corpus"
    assert main(["generate", "--tables", str(tables), "--out", str(out), "--count", "12", "--seed", "2",
                 "--jobs", "1", "--weights", '{"3d": 0}']) == 0
    assert "generated: 12" in capsys.readouterr().out
    manifest = out / "manifest.jsonl"
    records = read_manifest(manifest)
    assert "3d" not in {m for r in records for m in r.misleaders}

    preds = tmp_path / "preds.jsonl"
    assert main(["predict", "--manifest", str(manifest), "--out", str(preds)]) == 0
    assert len(read_predictions(preds)) == 12
    assert main(["evaluate", "--manifest", str(manifest), "--predictions", str(preds),
                 "--out", str(tmp_path / "m.json")]) == 0
    metrics = json.loads(capsys.readouterr().out)
    assert metrics["pre"] == 1.0 and sum(metrics["counts"].values()) == 12

    assert main(["lint", "--manifest", str(manifest)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 12 and all("\t" in line for line in lines)

    missing = tmp_path / "short.jsonl"
    missing.write_text("".join(line + "\n" for line in preds.read_text().splitlines()[1:]))
    assert main(["evaluate", "--manifest", str(manifest), "--predictions", str(missing)]) == 1
    assert records[0].id in capsys.readouterr().err

    assert main(["split", "--manifest", str(manifest), "--ratios", "0.5,0.25,0.25", "--seed", "1",
                 "--out", str(tmp_path / "resplit.jsonl")]) == 0
    assert {r.split for r in read_manifest(tmp_path / "resplit.jsonl")} <= {"train", "val", "test"}


def test_predict_unreachable_exits_2(tmp_path, trunc_file):
    (tmp_path / "images").mkdir()
    (tmp_path / "images" / "1.png").write_bytes(b"x")
    manifest = tmp_path / "manifest.jsonl"
    manifest.write_text(json.dumps({"id": "1", "image_path": "images/1.png", "chart_type": "pie",
                                    "misleaders": []}) + "\n")
    code = main(["predict", "--manifest", str(manifest), "--predictor", "external", "--endpoint",
                 "http://127.0.0.1:9/v1", "--model", "m", "--retries", "0", "--out", str(tmp_path / "p.jsonl")])
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "misleadviz", "prompt"], capture_output=True, text=True)
    assert proc.returncode == 0 and "no misleader" in proc.stdout
