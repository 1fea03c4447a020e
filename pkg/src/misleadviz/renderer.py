"""Matplotlib rendering of chart specs into PNG bytes.

Everything is drawn with explicit layout (no tight_layout) and the DejaVu
font files that ship inside matplotlib's data directory, so a given spec
produces the same bytes on every run with the same matplotlib build.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from matplotlib.backends.backend_agg import FigureCanvasAgg  # noqa: E402
from matplotlib.colors import to_rgb  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
from matplotlib.font_manager import FontProperties  # noqa: E402
from matplotlib.patches import Patch, Polygon  # noqa: E402
from matplotlib.ticker import AutoMinorLocator  # noqa: E402

from .chartspec import BAR, LINE, PIE, ChartSpec, SpecError, validate_spec  # noqa: E402
from .style import sample_style  # noqa: E402

_FONT_FILES = ("DejaVuSans.ttf", "DejaVuSerif.ttf", "DejaVuSansMono.ttf")
DPI = 100
DEPTH_ANGLE = math.radians(30)
DEPTH_SHARE = 0.15
PIE_TILT = 0.55
PIE_RIM = 0.12
MIN_SIZE_PX = 320
SECOND_SERIES_COLOR = "#ff7f0e"

__all__ = ["ImageArtifact", "RenderError", "render", "sample_style"]


class RenderError(SpecError):
    pass


@dataclass(frozen=True)
class ImageArtifact:
    png: bytes
    width: int
    height: int
    tick_offsets: dict[str, list[float]] = field(default_factory=dict)
    tick_labels: dict[str, list[str]] = field(default_factory=dict)
    bar_heights: tuple[tuple[float, ...], ...] = ()

    def normalized_offsets(self, axis: str) -> list[float]:
        offs = self.tick_offsets[axis]
        if len(offs) < 2:
            return [0.0] * len(offs)
        unit = offs[1] - offs[0]
        return [(o - offs[0]) / unit for o in offs]

    def sidecar(self) -> str:
        return json.dumps(
            {"width": self.width, "height": self.height,
             "tick_pixel_offsets": self.tick_offsets, "tick_labels": self.tick_labels,
             "bar_pixel_heights": [list(h) for h in self.bar_heights]},
            ensure_ascii=False, indent=1,
        )


@lru_cache(maxsize=None)
def _font_path(index: int) -> str:
    path = Path(matplotlib.get_data_path()) / "fonts" / "ttf" / _FONT_FILES[index]
    return str(path)


def _font(spec: ChartSpec, scale: float = 1.0) -> FontProperties:
    return FontProperties(fname=_font_path(spec.style.font_index), size=spec.style.font_size * scale)


def _shade(color: str, factor: float):
    r, g, b = to_rgb(color)
    return (r * factor, g * factor, b * factor)


def render(spec: ChartSpec) -> ImageArtifact:
    """Draw a validated spec and report where its ticks and bars landed in pixels."""
    problems = validate_spec(spec)
    if problems:
        raise RenderError(f"invalid spec: {', '.join(problems)}")
    st = spec.style
    if st.width_px < MIN_SIZE_PX or st.height_px < MIN_SIZE_PX:
        raise RenderError("image smaller than the minimum size")
    fig = Figure(figsize=(st.width_px / DPI, st.height_px / DPI), dpi=DPI, facecolor=st.background)
    canvas = FigureCanvasAgg(fig)
    if spec.chart_type == PIE:
        fig.subplots_adjust(left=0.05, right=0.95 if st.pie_labels == "adjacent" else 0.68, bottom=0.08, top=0.86)
        ax = fig.add_subplot()
        _draw_pie(fig, ax, spec)
        canvas.draw()
        return _finish(fig, canvas, spec, {}, {}, ())

    right = 0.86 if (spec.axis("y2") is not None or st.value_axis_side == "right") else 0.94
    fig.subplots_adjust(left=0.12, right=right, bottom=0.22, top=0.88)
    ax = fig.add_subplot()
    ax.set_facecolor(st.background)
    bbox = ax.get_window_extent()
    if bbox.width <= 0 or bbox.height <= 0:
        raise RenderError("zero-area plot region")
    ax2 = ax.twinx() if spec.axis("y2") is not None else None

    _configure_axes(spec, ax, ax2)
    if spec.chart_type == BAR:
        bars = _draw_bars(spec, ax)
    else:
        bars = ()
        _draw_lines(spec, ax, ax2)
    ax.set_title(spec.title, fontproperties=_font(spec, 1.25))
    canvas.draw()

    offsets, labels = _measure_ticks(spec, ax, ax2)
    # full patch extents, measured from the zero baseline even when the view is truncated
    heights = tuple(tuple(float(p.get_window_extent().height) for p in container) for container in bars)
    return _finish(fig, canvas, spec, offsets, labels, heights)


def _finish(fig, canvas, spec, offsets, labels, heights) -> ImageArtifact:
    buf = io.BytesIO()
    fig.savefig(buf, format="png", dpi=DPI, facecolor=spec.style.background, metadata={"Software": None})
    return ImageArtifact(buf.getvalue(), spec.style.width_px, spec.style.height_px, offsets, labels, heights)


def _configure_axes(spec: ChartSpec, ax, ax2) -> None:
    st = spec.style
    font = _font(spec)
    x = spec.axis("x")
    y1 = spec.axis("y1")
    y2 = spec.axis("y2")

    lo, hi = x.limits
    ax.set_xlim((hi, lo) if x.direction == "inverted" else (lo, hi))
    ax.set_xticks([t.coord for t in x.ticks], x.labels)
    crowded = len(x.ticks) > 6 or max(len(lab) for lab in x.labels) > 6
    for t in ax.get_xticklabels():
        t.set_fontproperties(font)
        if crowded:
            t.set_rotation(45)
            t.set_horizontalalignment("right")
    ax.set_xlabel(spec.key_header, fontproperties=font)

    for axis_spec, target in ((y1, ax), (y2, ax2)):
        if axis_spec is None:
            continue
        lo, hi = axis_spec.limits
        pad = (hi - lo) * 1e-9
        lims = (lo - pad, hi + pad)
        target.set_ylim(lims[::-1] if axis_spec.direction == "inverted" else lims)
        target.set_yticks([t.coord for t in axis_spec.ticks], axis_spec.labels)
        for t in target.get_yticklabels():
            t.set_fontproperties(font)
        if st.minor_ticks:
            target.yaxis.set_minor_locator(AutoMinorLocator())
        target.tick_params(axis="both", direction=st.tick_shape, which="both")
    ax.set_ylabel(spec.series[0].name, fontproperties=font)
    if ax2 is not None:
        ax2.set_ylabel(spec.series[1].name, fontproperties=font)
        ax.yaxis.tick_left()
        ax.yaxis.set_label_position("left")
    elif st.value_axis_side == "right":
        ax.yaxis.tick_right()
        ax.yaxis.set_label_position("right")
    if y1.hidden:
        ax.yaxis.set_visible(False)
        ax.spines["left"].set_visible(False)
        ax.spines["right"].set_visible(False)
    if not st.border:
        ax.spines["top"].set_visible(False)
        if ax2 is None and st.value_axis_side != "right":
            ax.spines["right"].set_visible(False)
        if ax2 is not None:
            ax2.spines["top"].set_visible(False)
    if st.grid_horizontal:
        ax.yaxis.grid(True, color="#d0d0d0", linewidth=0.8)
    if st.grid_vertical:
        ax.xaxis.grid(True, color="#e0e0e0", linewidth=0.8)
    ax.set_axisbelow(True)


def _draw_bars(spec: ChartSpec, ax):
    st = spec.style
    coords = spec.item_coords
    gap = min((abs(b - a) for a, b in zip(coords, coords[1:])), default=1.0)
    n = len(spec.series)
    total = 0.8 * gap
    width = total / n
    colors = [st.bar_color, SECOND_SERIES_COLOR]
    heights = []
    font = _font(spec, 0.9)
    for si, s in enumerate(spec.series):
        xs = [c - total / 2 + width * (si + 0.5) for c in coords]
        container = ax.bar(xs, s.displayed, width, color=colors[si % 2], label=s.name, zorder=2)
        heights.append(container)
        if spec.three_d:
            _extrude(ax, xs, s.displayed, width, colors[si % 2])
        if st.value_labels:
            _bar_labels(ax, xs, s, st, font)
    if n > 1:
        ax.legend(prop=font, loc="upper left", framealpha=0.8)
    return tuple(heights)


def _extrude(ax, xs, heights, width, color) -> None:
    """Oblique depth faces: depth vector at 30 degrees, 15 % of the bar width long."""
    px_per_x, px_per_y = _pixel_scale(ax)
    depth_px = DEPTH_SHARE * width * px_per_x
    dx = depth_px * math.cos(DEPTH_ANGLE) / px_per_x
    dy = depth_px * math.sin(DEPTH_ANGLE) / px_per_y
    for x, h in zip(xs, heights):
        x0, x1 = x - width / 2, x + width / 2
        top = [(x0, h), (x1, h), (x1 + dx, h + dy), (x0 + dx, h + dy)]
        side = [(x1, 0), (x1, h), (x1 + dx, h + dy), (x1 + dx, dy)]
        ax.add_patch(Polygon(side, closed=True, facecolor=_shade(color, 0.6), edgecolor="none", zorder=1.9))
        ax.add_patch(Polygon(top, closed=True, facecolor=_shade(color, 0.8), edgecolor="none", zorder=1.9))


def _pixel_scale(ax):
    bbox = ax.get_window_extent()
    x0, x1 = ax.get_xlim()
    y0, y1 = ax.get_ylim()
    return bbox.width / abs(x1 - x0), bbox.height / abs(y1 - y0)


def _bar_labels(ax, xs, series, st, font) -> None:
    rotation = 90 if st.value_label_rotation == "vertical" else 0
    for x, h, text in zip(xs, series.displayed, series.labels):
        if st.value_labels == "inside":
            ax.text(x, h / 2, text, ha="center", va="center", rotation=rotation, color="white",
                    fontproperties=font, zorder=3, clip_on=True)
        else:
            ax.annotate(text, (x, h), xytext=(0, 3), textcoords="offset points", ha="center",
                        va="bottom", rotation=rotation, fontproperties=font, zorder=3, annotation_clip=True)


def _draw_lines(spec: ChartSpec, ax, ax2) -> None:
    st = spec.style
    font = _font(spec, 0.9)
    colors = [st.line_color, SECOND_SERIES_COLOR if st.line_color != SECOND_SERIES_COLOR else "#7f7f7f"]
    handles = []
    for si, s in enumerate(spec.series):
        target = ax2 if s.axis == "y2" else ax
        (h,) = target.plot(spec.item_coords, s.displayed, linestyle=st.line_style if si == 0 else "-",
                           color=colors[si % 2], marker=st.line_marker or None, linewidth=2, label=s.name, zorder=2)
        handles.append(h)
        if st.area_fill and si == 0:
            base = target.get_ylim()[0] if spec.axis("y1").direction == "normal" else target.get_ylim()[1]
            target.fill_between(spec.item_coords, s.displayed, base, color=colors[0], alpha=0.2, zorder=1)
        if st.value_labels:
            for x, y, text in zip(spec.item_coords, s.displayed, s.labels):
                target.annotate(text, (x, y), xytext=(0, 5), textcoords="offset points", ha="center",
                                fontproperties=font, annotation_clip=True)
    if len(spec.series) > 1:
        ax.legend(handles=handles, prop=font, loc="upper left", framealpha=0.8)


def _draw_pie(fig, ax, spec: ChartSpec) -> None:
    st = spec.style
    font = _font(spec)
    s = spec.series[0]
    cmap = matplotlib.colormaps[st.pie_palette]
    colors = [cmap(i % cmap.N) for i in range(len(s.displayed))]
    texts = [f"{item}: {label}" for item, label in zip(spec.items, s.labels)]
    total = sum(s.displayed)
    fractions = [v / total for v in s.displayed]
    ax.set_title(spec.title, fontproperties=_font(spec, 1.25))
    if spec.three_d:
        _draw_pie_3d(ax, fractions, colors, texts if st.pie_labels == "adjacent" else None, font)
    else:
        wedges, _ = ax.pie(fractions, colors=colors, startangle=90, counterclock=False,
                           labels=texts if st.pie_labels == "adjacent" else None,
                           textprops={"fontproperties": font}, normalize=True)
        if st.pie_labels == "legend":
            ax.legend(wedges, texts, prop=font, loc="center left", bbox_to_anchor=(1.0, 0.5))
    if st.pie_labels == "legend" and spec.three_d:
        ax.legend([Patch(color=c) for c in colors], texts, prop=font, loc="center left", bbox_to_anchor=(1.0, 0.5))
    ax.set_aspect("equal")
    ax.set_axis_off()


def _draw_pie_3d(ax, fractions, colors, texts, font) -> None:
    """Elliptical projection of the pie with a visible rim below the front edge."""
    start = math.pi / 2
    steps = 90
    for frac, color, text in zip(fractions, colors, texts or [None] * len(fractions)):
        end = start - 2 * math.pi * frac
        angles = [start + (end - start) * i / steps for i in range(steps + 1)]
        arc = [(math.cos(a), PIE_TILT * math.sin(a)) for a in angles]
        front = [(x, y) for (x, y), a in zip(arc, angles) if math.sin(a) <= 0]
        if len(front) >= 2:
            rim = front + [(x, y - PIE_RIM) for x, y in reversed(front)]
            ax.add_patch(Polygon(rim, closed=True, facecolor=_shade(color, 0.65), edgecolor="white",
                                 linewidth=0.5, zorder=1))
        ax.add_patch(Polygon([(0, 0)] + arc, closed=True, facecolor=color, edgecolor="white",
                             linewidth=0.8, zorder=2))
        if text:
            mid = (start + end) / 2
            ax.text(1.2 * math.cos(mid), 1.2 * PIE_TILT * math.sin(mid) - (PIE_RIM if math.sin(mid) < 0 else 0), text,
                    ha="left" if math.cos(mid) >= 0 else "right", va="center", fontproperties=font)
        start = end
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.1, 1.1)


def _measure_ticks(spec: ChartSpec, ax, ax2):
    offsets, labels = {}, {}
    targets = {"x": (ax, ax.xaxis, 0), "y1": (ax, ax.yaxis, 1), "y2": (ax2, ax2.yaxis if ax2 else None, 1)}
    for axis_spec in spec.axes:
        if axis_spec.hidden:
            continue
        owner, mpl_axis, dim = targets[axis_spec.name]
        locs = list(mpl_axis.get_majorticklocs())
        texts = [t.get_text() for t in mpl_axis.get_majorticklabels()]
        lo, hi = sorted(mpl_axis.get_view_interval())
        span = hi - lo
        pix = []
        for loc in locs:
            if not lo - 1e-6 * span <= loc <= hi + 1e-6 * span:
                raise RenderError(f"{axis_spec.name} tick at {loc} falls outside the plot")
            point = (loc, 0) if dim == 0 else (0, loc)
            pix.append(float(owner.transData.transform(point)[dim]))
        order = sorted(range(len(pix)), key=lambda i: pix[i])
        offsets[axis_spec.name] = [round(pix[i], 4) for i in order]
        labels[axis_spec.name] = [texts[i] for i in order]
    return offsets, labels
