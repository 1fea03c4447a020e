"""Canonical misleader vocabulary shared by generation, linting and scoring."""

from __future__ import annotations

MISREPRESENTATION = "misrepresentation"
THREE_D = "3d"
TRUNCATED_AXIS = "truncated axis"
INAPPROPRIATE_PIE = "inappropriate use of pie chart"
INCONSISTENT_TICKS = "inconsistent tick intervals"
DUAL_AXIS = "dual axis"
INCONSISTENT_BINNING = "inconsistent binning size"
DISCRETIZED = "discretized continuous variable"
INAPPROPRIATE_LINE = "inappropriate use of line chart"
ITEM_ORDER = "inappropriate item order"
INVERTED_AXIS = "inverted axis"
AXIS_RANGE = "inappropriate axis range"

MISLEADERS: tuple[str, ...] = (
    MISREPRESENTATION,
    THREE_D,
    TRUNCATED_AXIS,
    INAPPROPRIATE_PIE,
    INCONSISTENT_TICKS,
    DUAL_AXIS,
    INCONSISTENT_BINNING,
    DISCRETIZED,
    INAPPROPRIATE_LINE,
    ITEM_ORDER,
    INVERTED_AXIS,
    AXIS_RANGE,
)

# Maps are never generated, so the synthetic vocabulary drops the map-only label.
SYNTHETIC_MISLEADERS: tuple[str, ...] = tuple(m for m in MISLEADERS if m != DISCRETIZED)

LINTER_COVERED: frozenset[str] = frozenset(
    {TRUNCATED_AXIS, INVERTED_AXIS, DUAL_AXIS, ITEM_ORDER, INCONSISTENT_TICKS, INCONSISTENT_BINNING}
)

NO_MISLEADER = "no misleader"


def alphabetical(names) -> list[str]:
    """Prompt ordering: letters first (case-insensitive), digit-led names such as "3d" last."""
    return sorted(set(names), key=lambda n: (n[:1].isdigit(), n.lower()))


def validate_names(names) -> frozenset[str]:
    unknown = sorted(set(names) - set(MISLEADERS))
    if unknown:
        raise ValueError(f"unknown misleader name(s): {', '.join(unknown)}")
    return frozenset(names)


def slug(name: str | None) -> str:
    if not name:
        return "none"
    return name.replace(" ", "-")
