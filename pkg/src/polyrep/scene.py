"""Chart layout: bind a spec to data and produce device-space geometry.

The Scene separates data marks (points, rects, lines that encode values;
these get stable ids and are recolored by the deficiency grid) from
decorations (axes, tick labels, titles, legend). Coordinates are SVG
pixels, y down; the summary carried on the scene feeds the verbalizer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .chartspec import ChartSpec, bind
from .color import Rgb
from .dataset import Dataset
from .errors import DataError, SpecError
from .stats import (
    TickSet,
    bar_counts,
    box_stats,
    histogram,
    linear_fit,
    nice_ticks,
)
from .verbalize import ChartSummary

WIDTH = 640.0
HEIGHT = 480.0
MARGIN = 48.0
LEGEND_WIDTH = 110.0
POINT_RADIUS = 4.0
INK = Rgb.from_hex("#595959")
BLACK = Rgb.from_hex("#000000")
WHITE = Rgb.from_hex("#FFFFFF")

# line-chart dash cycle (solid first), mirroring the marker-shape cycle
DASH_CYCLE: tuple[tuple[float, ...] | None, ...] = (
    None,
    (6.0, 4.0),
    (2.0, 3.0),
    (8.0, 3.0, 2.0, 3.0),
    (12.0, 4.0),
    (4.0, 2.0, 8.0, 2.0),
)


class ShapeKind(enum.Enum):
    CIRCLE = "circle"
    TRIANGLE = "triangle"
    SQUARE = "square"
    DIAMOND = "diamond"
    PLUS = "plus"
    CROSS = "cross"


SHAPE_CYCLE = tuple(ShapeKind)


@dataclass(frozen=True)
class PointMark:
    x: float
    y: float
    shape: ShapeKind
    color: Rgb
    size: float = POINT_RADIUS
    group: int = 0


@dataclass(frozen=True)
class RectMark:
    x: float
    y: float
    w: float
    h: float
    fill: Rgb | None
    stroke: Rgb | None = None
    group: int = 0


@dataclass(frozen=True)
class SegmentMark:
    x1: float
    y1: float
    x2: float
    y2: float
    color: Rgb = BLACK
    width: float = 1.5
    dash: tuple[float, ...] | None = None
    group: int = 0


@dataclass(frozen=True)
class PolylineMark:
    points: tuple[tuple[float, float], ...]
    color: Rgb
    width: float = 2.0
    dash: tuple[float, ...] | None = None
    group: int = 0


@dataclass(frozen=True)
class TextMark:
    x: float
    y: float
    text: str
    anchor: str = "start"  # start | middle | end
    size: float = 11.0
    rotate: float = 0.0
    color: Rgb = BLACK


Mark = PointMark | RectMark | SegmentMark | PolylineMark | TextMark


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float

    @property
    def x1(self) -> float:
        return self.x + self.w

    @property
    def y1(self) -> float:
        return self.y + self.h


@dataclass(frozen=True)
class AxisInfo:
    title: str
    ticks: tuple[float, ...]  # device positions
    labels: tuple[str, ...]


@dataclass(frozen=True)
class LegendEntry:
    label: str
    color: Rgb
    shape: ShapeKind | None = None
    dash: tuple[float, ...] | None = None


@dataclass(frozen=True)
class Scene:
    width: float
    height: float
    plot: Rect
    marks: tuple[Mark, ...]
    decorations: tuple[Mark, ...]
    x_axis: AxisInfo
    y_axis: AxisInfo
    legend: tuple[LegendEntry, ...]
    summary: ChartSummary
    title: str | None = None
    subtitle: str | None = None
    caption: str | None = None


class LinearScale:
    """Affine data -> device map."""

    def __init__(self, d0: float, d1: float, r0: float, r1: float):
        if d0 == d1:
            raise DataError("degenerate scale domain")
        self.d0, self.d1, self.r0, self.r1 = d0, d1, r0, r1

    def __call__(self, v: float) -> float:
        t = (v - self.d0) / (self.d1 - self.d0)
        return self.r0 + t * (self.r1 - self.r0)


def padded_domain(lo: float, hi: float, anchor_zero: bool = False) -> tuple[float, float]:
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    if anchor_zero:
        return 0.0, hi + 0.05 * (hi - 0.0)
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def _group_levels(data: Dataset, name: str, sort_order: str) -> list[str]:
    seen: dict[str, None] = {}
    for v in data.categorical(name).values:
        if v is not None and v not in seen:
            seen[v] = None
    levels = list(seen)
    return sorted(levels) if sort_order == "alpha" else levels


def _shape_for(i: int) -> ShapeKind:
    return SHAPE_CYCLE[i % len(SHAPE_CYCLE)]


def _dash_for(i: int) -> tuple[float, ...] | None:
    return DASH_CYCLE[i % len(DASH_CYCLE)]


def layout(spec: ChartSpec, data: Dataset) -> Scene:
    """Lay a chart out on the default canvas.

    Raises SpecError when the spec does not bind to the data, DataError
    when nothing remains to draw after dropping missing values.
    """
    bind(spec, data)
    builder = {
        "bar": _layout_bar,
        "histogram": _layout_histogram,
        "boxplot": _layout_boxplot,
        "scatter": _layout_points,
        "line": _layout_points,
    }[spec.chart_type]
    return builder(spec, data)


# -- shared assembly -------------------------------------------------------


def _plot_rect(with_legend: bool) -> Rect:
    w = WIDTH - 2 * MARGIN - (LEGEND_WIDTH if with_legend else 0.0)
    return Rect(MARGIN, MARGIN, w, HEIGHT - 2 * MARGIN)


def _axis_decorations(
    plot: Rect, x_axis: AxisInfo, y_axis: AxisInfo
) -> list[Mark]:
    decos: list[Mark] = [
        SegmentMark(plot.x, plot.y1, plot.x1, plot.y1, width=1.0),
        SegmentMark(plot.x, plot.y, plot.x, plot.y1, width=1.0),
    ]
    for tx, label in zip(x_axis.ticks, x_axis.labels):
        decos.append(SegmentMark(tx, plot.y1, tx, plot.y1 + 5, width=1.0))
        decos.append(TextMark(tx, plot.y1 + 18, label, anchor="middle"))
    for ty, label in zip(y_axis.ticks, y_axis.labels):
        decos.append(SegmentMark(plot.x - 5, ty, plot.x, ty, width=1.0))
        decos.append(TextMark(plot.x - 8, ty + 4, label, anchor="end"))
    if x_axis.title:
        decos.append(
            TextMark(plot.x + plot.w / 2, plot.y1 + 36, x_axis.title,
                     anchor="middle", size=12.0)
        )
    if y_axis.title:
        decos.append(
            TextMark(plot.x - 34, plot.y + plot.h / 2, y_axis.title,
                     anchor="middle", size=12.0, rotate=-90.0)
        )
    return decos


def _chrome_decorations(spec: ChartSpec) -> list[Mark]:
    decos: list[Mark] = []
    if spec.title:
        decos.append(TextMark(MARGIN, 22, spec.title, size=15.0))
    if spec.subtitle:
        decos.append(TextMark(MARGIN, 40, spec.subtitle, size=12.0, color=INK))
    if spec.caption:
        decos.append(
            TextMark(WIDTH - MARGIN, HEIGHT - 10, spec.caption,
                     anchor="end", size=10.0, color=INK)
        )
    return decos


def _legend_decorations(
    plot: Rect, name: str, entries: tuple[LegendEntry, ...]
) -> list[Mark]:
    x0 = plot.x1 + 18
    decos: list[Mark] = [TextMark(x0, plot.y + 10, name, size=12.0)]
    for i, entry in enumerate(entries):
        y = plot.y + 32 + i * 22
        if entry.shape is not None:
            decos.extend(_glyph_marks(entry.shape, x0 + 7, y, POINT_RADIUS, entry.color))
        else:
            decos.append(
                SegmentMark(x0, y, x0 + 15, y, color=entry.color, width=2.0,
                            dash=entry.dash)
            )
        decos.append(TextMark(x0 + 22, y + 4, entry.label))
    return decos


def _glyph_marks(
    shape: ShapeKind, x: float, y: float, r: float, color: Rgb
) -> list[Mark]:
    # legend swatches reuse the point mark so glyph geometry stays in one place
    return [PointMark(x, y, shape, color, size=r)]


def _palette_color(spec: ChartSpec, i: int, n_levels: int) -> Rgb:
    if n_levels > len(spec.palette):
        raise SpecError(
            f"{n_levels} group levels exceed the palette's {len(spec.palette)} colors"
        )
    return spec.palette[i] if spec.encodings.color else INK


def _assemble(
    spec: ChartSpec,
    plot: Rect,
    marks: list[Mark],
    x_axis: AxisInfo,
    y_axis: AxisInfo,
    legend: tuple[LegendEntry, ...],
    legend_name: str | None,
    summary: ChartSummary,
    extra_decorations: list[Mark] | None = None,
) -> Scene:
    decos = _axis_decorations(plot, x_axis, y_axis)
    decos.extend(_chrome_decorations(spec))
    if legend and legend_name:
        decos.extend(_legend_decorations(plot, legend_name, legend))
    if extra_decorations:
        decos.extend(extra_decorations)
    return Scene(
        width=WIDTH,
        height=HEIGHT,
        plot=plot,
        marks=tuple(marks),
        decorations=tuple(decos),
        x_axis=x_axis,
        y_axis=y_axis,
        legend=legend,
        summary=summary,
        title=spec.title,
        subtitle=spec.subtitle,
        caption=spec.caption,
    )


# -- bar / histogram -------------------------------------------------------


def _count_axis(plot: Rect, max_count: int) -> tuple[LinearScale, TickSet, AxisInfo]:
    d0, d1 = padded_domain(0.0, float(max_count), anchor_zero=True)
    scale = LinearScale(d0, d1, plot.y1, plot.y)
    ticks = nice_ticks(0.0, float(max_count)) if max_count > 0 else TickSet((0.0,), ("0",))
    axis = AxisInfo("count", tuple(scale(p) for p in ticks.positions), ticks.labels)
    return scale, ticks, axis


def _layout_bar(spec: ChartSpec, data: Dataset) -> Scene:
    counts = bar_counts(data, spec.x, spec.sort_order)
    if not counts:
        raise DataError("nothing to draw: no non-missing values")
    plot = _plot_rect(with_legend=False)
    max_count = max(c for _, c in counts)
    sy, ticks, y_axis = _count_axis(plot, max_count)

    slot = plot.w / len(counts)
    marks: list[Mark] = []
    centers = []
    for i, (_, count) in enumerate(counts):
        cx = plot.x + (i + 0.5) * slot
        centers.append(cx)
        top = sy(float(count))
        marks.append(
            RectMark(cx - 0.4 * slot, top, 0.8 * slot, sy(0.0) - top, fill=INK)
        )
    x_axis = AxisInfo(spec.x, tuple(centers), tuple(label for label, _ in counts))

    col = data.column(spec.x)
    summary = ChartSummary(
        chart_type="bar",
        x_name=spec.x,
        y_name="count",
        x_labels=x_axis.labels,
        y_labels=ticks.labels,
        title=spec.title,
        subtitle=spec.subtitle,
        caption=spec.caption,
        bars=tuple(counts),
        dropped_rows=col.n_missing(),
    )
    return _assemble(spec, plot, marks, x_axis, y_axis, (), None, summary)


def _layout_histogram(spec: ChartSpec, data: Dataset) -> Scene:
    bins = histogram(data, spec.x, spec.bins)
    plot = _plot_rect(with_legend=False)
    max_count = max(c for _, _, c in bins)
    sy, yticks, y_axis = _count_axis(plot, max_count)

    lo, hi = bins[0][0], bins[-1][1]
    dx0, dx1 = padded_domain(lo, hi)
    sx = LinearScale(dx0, dx1, plot.x, plot.x1)
    xticks = nice_ticks(lo, hi)
    x_axis = AxisInfo(
        spec.x, tuple(sx(p) for p in xticks.positions), xticks.labels
    )

    marks: list[Mark] = []
    for blo, bhi, count in bins:
        left, right = sx(blo), sx(bhi)
        top = sy(float(count))
        marks.append(
            RectMark(left, top, right - left, sy(0.0) - top, fill=INK, stroke=WHITE)
        )

    summary = ChartSummary(
        chart_type="histogram",
        x_name=spec.x,
        y_name="count",
        x_labels=xticks.labels,
        y_labels=yticks.labels,
        title=spec.title,
        subtitle=spec.subtitle,
        caption=spec.caption,
        bins=tuple(bins),
        dropped_rows=data.column(spec.x).n_missing(),
    )
    return _assemble(spec, plot, marks, x_axis, y_axis, (), None, summary)


# -- boxplot ---------------------------------------------------------------


def _layout_boxplot(spec: ChartSpec, data: Dataset) -> Scene:
    grouped = spec.y is not None
    value_col = spec.y if grouped else spec.x
    boxes = box_stats(data, value_col, spec.x if grouped else None)
    if spec.sort_order == "alpha" and grouped:
        boxes = sorted(boxes, key=lambda b: b.group_label)
    plot = _plot_rect(with_legend=False)

    values: list[float] = []
    for b in boxes:
        values.extend((b.min_whisker, b.max_whisker, *b.outliers))
    v_lo, v_hi = min(values), max(values)
    if v_lo == v_hi:
        v_lo, v_hi = v_lo - 0.5, v_hi + 0.5
    d0, d1 = padded_domain(v_lo, v_hi)
    sy = LinearScale(d0, d1, plot.y1, plot.y)
    yticks = nice_ticks(v_lo, v_hi)
    y_axis = AxisInfo(
        value_col, tuple(sy(p) for p in yticks.positions), yticks.labels
    )

    slot = plot.w / len(boxes)
    marks: list[Mark] = []
    centers = []
    for i, b in enumerate(boxes):
        cx = plot.x + (i + 0.5) * slot
        centers.append(cx)
        half = 0.25 * slot
        cap = 0.125 * slot
        y_q1, y_q3 = sy(b.q1), sy(b.q3)
        marks.append(
            RectMark(cx - half, y_q3, 2 * half, y_q1 - y_q3,
                     fill=WHITE, stroke=BLACK, group=i)
        )
        marks.append(
            SegmentMark(cx - half, sy(b.median), cx + half, sy(b.median), width=2.5,
                        group=i)
        )
        for v, hinge in ((b.max_whisker, b.q3), (b.min_whisker, b.q1)):
            marks.append(SegmentMark(cx, sy(hinge), cx, sy(v), group=i))
            marks.append(SegmentMark(cx - cap, sy(v), cx + cap, sy(v), group=i))
        for v in b.outliers:
            marks.append(PointMark(cx, sy(v), ShapeKind.CIRCLE, BLACK, size=2.5,
                                   group=i))

    if grouped:
        x_axis = AxisInfo(spec.x, tuple(centers),
                          tuple(b.group_label for b in boxes))
        dropped = sum(
            1
            for g, v in zip(data.column(spec.x).values, data.column(spec.y).values)
            if g is None or v is None
        )
    else:
        x_axis = AxisInfo("", (), ())
        dropped = data.column(spec.x).n_missing()

    summary = ChartSummary(
        chart_type="boxplot",
        x_name=spec.x if grouped else "",
        y_name=value_col,
        x_labels=x_axis.labels,
        y_labels=yticks.labels,
        title=spec.title,
        subtitle=spec.subtitle,
        caption=spec.caption,
        boxes=tuple(boxes),
        dropped_rows=dropped,
    )
    return _assemble(spec, plot, marks, x_axis, y_axis, (), None, summary)


# -- scatter / line --------------------------------------------------------


def _points_by_level(
    spec: ChartSpec, data: Dataset
) -> tuple[dict[str | None, list[tuple[float, float]]], list[str], int]:
    xs = data.numeric(spec.x).values
    ys = data.numeric(spec.y).values
    if spec.group is not None:
        gs = data.categorical(spec.group).values
        levels = _group_levels(data, spec.group, spec.sort_order)
    else:
        gs = (None,) * len(xs)
        levels = []
    by_level: dict[str | None, list[tuple[float, float]]] = {}
    used = 0
    for x, y, g in zip(xs, ys, gs):
        if x is None or y is None or (spec.group is not None and g is None):
            continue
        by_level.setdefault(g, []).append((x, y))
        used += 1
    dropped = data.n_rows - used
    if not used:
        raise DataError("nothing to draw: no complete rows")
    return by_level, levels, dropped


def _layout_points(spec: ChartSpec, data: Dataset) -> Scene:
    by_level, levels, dropped = _points_by_level(spec, data)
    facet = spec.encodings.facet and bool(levels)
    with_legend = bool(levels) and not facet
    plot = _plot_rect(with_legend)

    all_pts = [p for pts in by_level.values() for p in pts]
    x_lo, x_hi = min(p[0] for p in all_pts), max(p[0] for p in all_pts)
    y_lo, y_hi = min(p[1] for p in all_pts), max(p[1] for p in all_pts)
    dy0, dy1 = padded_domain(y_lo, y_hi)
    sy = LinearScale(dy0, dy1, plot.y1, plot.y)
    yticks = nice_ticks(y_lo, y_hi) if y_lo < y_hi else nice_ticks(y_lo - 0.5, y_hi + 0.5)
    y_axis = AxisInfo(spec.y or "", tuple(sy(p) for p in yticks.positions), yticks.labels)
    xticks = nice_ticks(x_lo, x_hi) if x_lo < x_hi else nice_ticks(x_lo - 0.5, x_hi + 0.5)

    marks: list[Mark] = []
    extra_decos: list[Mark] = []
    grouped = bool(levels)
    if facet:
        gap = 12.0
        panel_w = (plot.w - gap * (len(levels) - 1)) / len(levels)
        panel0_ticks: tuple[float, ...] = ()
        for i, level in enumerate(levels):
            panel = Rect(plot.x + i * (panel_w + gap), plot.y, panel_w, plot.h)
            dx0, dx1 = padded_domain(x_lo, x_hi)
            sx = LinearScale(dx0, dx1, panel.x, panel.x1)
            marks.extend(
                _series_marks(spec, by_level.get(level, []), i, len(levels),
                              grouped, sx, sy)
            )
            tick_px = tuple(sx(p) for p in xticks.positions)
            if i == 0:
                panel0_ticks = tick_px
            extra_decos.append(
                TextMark(panel.x + panel.w / 2, panel.y - 8, level, anchor="middle")
            )
            extra_decos.append(
                SegmentMark(panel.x, panel.y1, panel.x1, panel.y1, width=1.0)
            )
            for tx, label in zip(tick_px, xticks.labels):
                extra_decos.append(SegmentMark(tx, plot.y1, tx, plot.y1 + 5, width=1.0))
                extra_decos.append(TextMark(tx, plot.y1 + 18, label, anchor="middle"))
        x_axis = AxisInfo(spec.x, panel0_ticks, xticks.labels)
    else:
        dx0, dx1 = padded_domain(x_lo, x_hi)
        sx = LinearScale(dx0, dx1, plot.x, plot.x1)
        order = levels if levels else [None]
        for i, level in enumerate(order):
            marks.extend(
                _series_marks(spec, by_level.get(level, []), i,
                              max(len(levels), 1), grouped, sx, sy)
            )
        x_axis = AxisInfo(
            spec.x, tuple(sx(p) for p in xticks.positions), xticks.labels
        )

    legend: tuple[LegendEntry, ...] = ()
    if with_legend:
        entries = []
        for i, level in enumerate(levels):
            color = _palette_color(spec, i, len(levels))
            if spec.chart_type == "scatter":
                shape = _shape_for(i) if spec.encodings.shape else ShapeKind.CIRCLE
                entries.append(LegendEntry(level, color, shape=shape))
            else:
                dash = _dash_for(i) if spec.encodings.linetype else None
                entries.append(LegendEntry(level, color, dash=dash))
        legend = tuple(entries)

    pairs = [p for level in (levels or [None]) for p in by_level.get(level, [])]
    try:
        fit = linear_fit([p[0] for p in pairs], [p[1] for p in pairs])
        slope_sign = 0 if fit.slope == 0 else (1 if fit.slope > 0 else -1)
    except DataError:
        slope_sign = None

    summary = ChartSummary(
        chart_type=spec.chart_type,
        x_name=spec.x,
        y_name=spec.y or "",
        x_labels=xticks.labels,
        y_labels=yticks.labels,
        title=spec.title,
        subtitle=spec.subtitle,
        caption=spec.caption,
        n_points=len(pairs),
        x_range=(x_lo, x_hi),
        y_range=(y_lo, y_hi),
        slope_sign=slope_sign,
        group_name=spec.group,
        group_levels=tuple(levels),
        dropped_rows=dropped,
    )
    return _assemble(
        spec, plot, marks, x_axis, y_axis, legend, spec.group, summary, extra_decos
    )


def _series_marks(
    spec: ChartSpec,
    pts: list[tuple[float, float]],
    level_index: int,
    n_levels: int,
    grouped: bool,
    sx: LinearScale,
    sy: LinearScale,
) -> list[Mark]:
    if not pts:
        return []
    color = _palette_color(spec, level_index, n_levels) if grouped else INK
    marks: list[Mark] = []
    if spec.chart_type == "line":
        ordered = sorted(pts)
        dash = _dash_for(level_index) if spec.encodings.linetype and grouped else None
        marks.append(
            PolylineMark(
                tuple((sx(x), sy(y)) for x, y in ordered),
                color=color,
                dash=dash,
                group=level_index,
            )
        )
    else:
        shape = (
            _shape_for(level_index)
            if spec.encodings.shape and grouped
            else ShapeKind.CIRCLE
        )
        for x, y in pts:
            marks.append(PointMark(sx(x), sy(y), shape, color, group=level_index))
    return marks
