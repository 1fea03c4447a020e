"""Predictors behind one interface: the built-in linter and external chat-completion models."""

from __future__ import annotations

import base64
import json
import logging
import os
import re
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import httpx

from . import vocab
from .axismeta import AxisMetadata
from .evalkit import DatasetRecord, PredictionRecord
from .linter import lint

log = logging.getLogger(__name__)

DEFINITIONS = {
    vocab.DISCRETIZED: "a map displays a continuous variable transformed into a categorical variable by "
                       "cutting it into discrete categories, thus exaggerating the difference between "
                       "boundary cases.",
    vocab.DUAL_AXIS: "there are two independent y-axis, one on the left and one on the right, with "
                     "different scales.",
    vocab.AXIS_RANGE: "the axis range is too broad or too narrow.",
    vocab.ITEM_ORDER: "instances of a variable along an axis are in an unconventional, non-linear or "
                      "non-chronological order.",
    vocab.INAPPROPRIATE_LINE: "a line chart is used in inappropriate or unconventional ways, e.g., using a "
                              "line chart with categorical variables, or encoding the time dimension on the y-axis.",
    vocab.INAPPROPRIATE_PIE: "a pie chart does not display data in a part-to-whole relationship, e.g., its "
                             "shares do not sum to 100%.",
    vocab.INCONSISTENT_BINNING: "a variable, such as years or ages, is grouped in unevenly sized bins.",
    vocab.INCONSISTENT_TICKS: "the ticks values in one axis are evenly spaced but their values are not, e.g., "
                              "the tick value sequence is 10, 20, 40, 45.",
    vocab.INVERTED_AXIS: "an axis is displayed in a direction opposite to conventions, e.g., the y-axis "
                         "displays values increasing from top to bottom or the x-axis displays values "
                         "increasing from right to left.",
    vocab.MISREPRESENTATION: "the value labels displayed do not match the size of their visual encodings, "
                             "e.g., bars may be drawn disproportionate to the corresponding numerical value.",
    vocab.TRUNCATED_AXIS: "an axis does not start from zero, resulting in a visual exaggeration of changes in "
                          "the dependent variable with respect to the independent variable.",
    vocab.THREE_D: "the visualization includes three-dimensional effects.",
}

_HEADER = (
    "You are an expert in data visualization analysis. Your task is to identify misleaders present in "
    "the given visualization.\n\n"
    "Please carefully examine the visualization and detect its misleaders. Provide all relevant "
    "misleaders, up to three, as a comma separated list.\n"
    "In most cases only one misleader is relevant.\n"
    'If you detect none of the above types of misleaders in the visualization, respond with "no misleader".\n\n'
    "The available misleaders to select are, by alphabetical order:\n"
)
_FOOTER = "\nProvide only the final answer, without additional explanation."

VOCABULARIES = {"full": vocab.MISLEADERS, "synthetic": vocab.SYNTHETIC_MISLEADERS}
MAX_ANSWERS = 3


class EndpointUnreachable(RuntimeError):
    pass


@dataclass(frozen=True)
class PredictorConfig:
    kind: str = "linter"
    endpoint: str | None = None
    model: str | None = None
    api_key_env: str | None = "OPENAI_API_KEY"
    temperature: float = 0.0
    vocabulary: str = "synthetic"
    retries: int = 3
    backoff: float = 0.5
    timeout: float = 120.0
    jobs: int = 4
    audit_path: str | None = None

    def __post_init__(self):
        if self.kind not in ("linter", "external"):
            raise ValueError(f"unknown predictor kind {self.kind!r}")
        if self.vocabulary not in VOCABULARIES:
            raise ValueError(f"unknown vocabulary {self.vocabulary!r}")


def build_prompt(vocabulary) -> str:
    """Zero-shot task prompt listing one definition per misleader, alphabetically."""
    if isinstance(vocabulary, str):
        vocabulary = VOCABULARIES[vocabulary]
    names = vocab.alphabetical(vocabulary)
    if not names:
        raise ValueError("vocabulary is empty")
    vocab.validate_names(names)
    body = "".join(f"- {n}: {DEFINITIONS[n]}\n" for n in names)
    return _HEADER + body + _FOOTER


def _name_pattern(name: str) -> re.Pattern:
    return re.compile(r"(?<![a-z0-9])" + re.escape(name) + r"(?![a-z0-9])", re.IGNORECASE)


_PATTERNS = {n: _name_pattern(n) for n in vocab.MISLEADERS}


def parse_response(text: str | None, vocabulary=vocab.MISLEADERS) -> tuple[str, ...]:
    """Canonical names found in a model answer, in order of first appearance, at most three."""
    if not text:
        return ()
    hits = []
    for name in vocabulary:
        m = _PATTERNS[name].search(text)
        if m:
            hits.append((m.start(), name))
    return tuple(name for _, name in sorted(hits)[:MAX_ANSWERS])


# -- predictors ----------------------------------------------------------------------------


def predict(config: PredictorConfig, records, base_dir=".") -> list[PredictionRecord]:
    base_dir = Path(base_dir)
    records = list(records)
    if config.kind == "linter":
        return [_lint_record(r, base_dir) for r in records]
    return ExternalPredictor(config).predict(records, base_dir)


def _lint_record(record: DatasetRecord, base_dir: Path) -> PredictionRecord:
    if record.axis_metadata_path is None:
        if record.chart_type != "pie":
            raise ValueError(f"{record.id}: linter needs axis metadata for {record.chart_type} charts")
        return PredictionRecord(record.id, frozenset())
    am = AxisMetadata.read(base_dir / record.axis_metadata_path)
    return PredictionRecord(record.id, lint(am).fired)


class ExternalPredictor:
    """Send each chart image with the prompt to a chat-completion endpoint."""

    def __init__(self, config: PredictorConfig, client: httpx.Client | None = None):
        if not config.endpoint or not config.model:
            raise ValueError("external predictor needs an endpoint and a model")
        self.config = config
        self.prompt = build_prompt(config.vocabulary)
        self.vocabulary = VOCABULARIES[config.vocabulary]
        self._client = client
        self._abort = threading.Event()

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        env = self.config.api_key_env
        if env and os.environ.get(env):
            headers["Authorization"] = f"Bearer {os.environ[env]}"
        return headers

    def request_body(self, image_bytes: bytes) -> dict:
        url = "data:image/png;base64," + base64.b64encode(image_bytes).decode("ascii")
        return {
            "model": self.config.model,
            "temperature": self.config.temperature,
            "messages": [{
                "role": "user",
                "content": [
                    {"type": "text", "text": self.prompt},
                    {"type": "image_url", "image_url": {"url": url}},
                ],
            }],
        }

    def _post(self, client: httpx.Client, body: dict):
        """Returns (answer text, None) or (None, error note); raises EndpointUnreachable."""
        last_error = None
        unreachable = False
        for attempt in range(self.config.retries + 1):
            if self._abort.is_set():
                raise EndpointUnreachable("aborted after another request could not reach the endpoint")
            try:
                resp = client.post(self.config.endpoint, json=body, headers=self._headers())
            except httpx.TransportError as exc:
                last_error, unreachable = f"{type(exc).__name__}: {exc}", True
            else:
                unreachable = False
                if resp.status_code < 400:
                    try:
                        return resp.json()["choices"][0]["message"]["content"], None
                    except (ValueError, KeyError, IndexError, TypeError) as exc:
                        return None, f"malformed response: {exc!r}"
                last_error = f"HTTP {resp.status_code}"
                if resp.status_code < 500 and resp.status_code != 429:
                    break
            if attempt < self.config.retries:
                time.sleep(self.config.backoff * 2 ** attempt)
        if unreachable:
            self._abort.set()
            raise EndpointUnreachable(f"{self.config.endpoint}: {last_error}")
        return None, last_error

    def _one(self, client, record: DatasetRecord, base_dir: Path):
        path = base_dir / record.image_path
        try:
            image = path.read_bytes()
        except OSError as exc:
            return PredictionRecord(record.id, frozenset(), f"cannot read image: {exc}"), None
        text, error = self._post(client, self.request_body(image))
        if error is not None:
            return PredictionRecord(record.id, frozenset(), error), {"id": record.id, "error": error}
        names = parse_response(text, self.vocabulary)
        return PredictionRecord(record.id, frozenset(names)), {"id": record.id, "response": text}

    def predict(self, records, base_dir: Path) -> list[PredictionRecord]:
        client = self._client or httpx.Client(timeout=self.config.timeout)
        try:
            with ThreadPoolExecutor(max_workers=max(1, self.config.jobs)) as pool:
                futures = [pool.submit(self._one, client, r, base_dir) for r in records]
                results = [f.result() for f in futures]
        finally:
            if self._client is None:
                client.close()
        if self.config.audit_path:
            Path(self.config.audit_path).parent.mkdir(parents=True, exist_ok=True)
            with open(self.config.audit_path, "w", encoding="utf-8") as fh:
                for _, audit in sorted(results, key=lambda x: x[0].id):
                    if audit is not None:
                        fh.write(json.dumps(audit, ensure_ascii=False) + "\n")
        return [pred for pred, _ in results]
