"""Seeded cosmetic variations for rendered charts."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

BACKGROUNDS = ("#ffffff", "#f7f7f7", "#fdf6e3", "#eef3f8", "#f4f1ea", "#f0f5ef")
FONT_NAMES = ("DejaVu Sans", "DejaVu Serif", "DejaVu Sans Mono")
FONT_SIZES = (9, 10, 11, 12)
SIZES = ((800, 600), (640, 480), (960, 720), (1000, 600), (720, 540))
TICK_SHAPES = ("out", "in", "inout")
BAR_COLORS = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#2a9d8f")
LINE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf")
LINE_STYLES = ("-", "--", "-.", ":")
MARKERS = ("", "o", "s", "^")
PIE_PALETTES = ("tab10", "Set2", "Pastel1", "Dark2", "Set3")
MAX_INTERVALS = (4, 5, 6, 7, 8)


@dataclass(frozen=True)
class StyleVariation:
    chart_type: str
    background: str
    font_index: int
    font_size: int
    width_px: int
    height_px: int
    title_template: int
    tick_shape: str | None = None
    minor_ticks: bool = False
    value_axis_side: str | None = None
    max_intervals: int = 5
    value_labels: str | None = None
    value_label_rotation: str = "horizontal"
    border: bool = True
    grid_horizontal: bool = False
    grid_vertical: bool = False
    bar_sort: str | None = None
    bar_color: str | None = None
    hide_value_axis: bool = False
    line_style: str | None = None
    line_color: str | None = None
    line_marker: str | None = None
    area_fill: bool = False
    pie_labels: str | None = None
    pie_palette: str | None = None

    @property
    def font_name(self) -> str:
        return FONT_NAMES[self.font_index]

    def to_dict(self) -> dict:
        return asdict(self)


def sample_style(seed: int, chart_type: str) -> StyleVariation:
    """Draw a style for one chart; fully determined by (seed, chart_type)."""
    rng = random.Random(f"style:{seed}:{chart_type}")
    width, height = rng.choice(SIZES)
    common = dict(
        chart_type=chart_type,
        background=rng.choice(BACKGROUNDS),
        font_index=rng.randrange(len(FONT_NAMES)),
        font_size=rng.choice(FONT_SIZES),
        width_px=width,
        height_px=height,
        title_template=rng.randrange(4),
    )
    if chart_type == "pie":
        return StyleVariation(
            **common,
            pie_labels=rng.choice(("adjacent", "legend")),
            pie_palette=rng.choice(PIE_PALETTES),
        )
    axes = dict(
        tick_shape=rng.choice(TICK_SHAPES),
        minor_ticks=rng.random() < 0.3,
        value_axis_side=rng.choice(("left", "left", "right")),
        max_intervals=rng.choice(MAX_INTERVALS),
        border=rng.random() < 0.6,
        grid_horizontal=rng.random() < 0.4,
    )
    if chart_type == "bar":
        value_labels = rng.choice((None, "top", "inside"))
        return StyleVariation(
            **common,
            **axes,
            value_labels=value_labels,
            value_label_rotation=rng.choice(("horizontal", "vertical")),
            bar_sort=rng.choice(("source", "name", "value")),
            bar_color=rng.choice(BAR_COLORS),
            hide_value_axis=value_labels is not None and rng.random() < 0.15,
        )
    return StyleVariation(
        **common,
        **axes,
        value_labels=rng.choice((None, None, "top")),
        grid_vertical=rng.random() < 0.3,
        line_style=rng.choice(LINE_STYLES),
        line_color=rng.choice(LINE_COLORS),
        line_marker=rng.choice(MARKERS),
        area_fill=rng.random() < 0.3,
    )
