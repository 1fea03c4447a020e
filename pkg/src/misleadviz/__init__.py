"""Synthetic misleading-chart generation, rule-based linting and evaluation."""

from .axismeta import AxisMetadata
from .chartspec import ChartSpec, applicable_misleaders, make_spec, validate_spec
from .evalkit import DatasetRecord, MetricsReport, PredictionRecord, evaluate, stratified_split
from .linter import LintReport, lint
from .vocab import MISLEADERS, NO_MISLEADER, SYNTHETIC_MISLEADERS

__version__ = "0.1.0"

__all__ = [
    "AxisMetadata", "ChartSpec", "DatasetRecord", "LintReport", "MISLEADERS", "MetricsReport",
    "NO_MISLEADER", "PredictionRecord", "SYNTHETIC_MISLEADERS", "applicable_misleaders", "evaluate",
    "lint", "make_spec", "stratified_split", "validate_spec",
]
