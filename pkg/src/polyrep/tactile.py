"""Emboss-ready tactile pages: chart strokes plus braille-dot labels.

Geometry is millimeter-space. Chart strokes come from the laid-out scene
(fills become outlines with per-group hatch textures, the tactile analog
of marker shapes); every text label is re-set in braille. Axis ticks are
thinned to at most five per axis and label runs are displaced outward
until no braille dot touches a stroke. Underscores in labels become
spaces so column names stay within the braille alphabet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .braille import BrailleCell, to_braille
from .errors import TactileError
from .pdfwrite import MM_TO_PT, ContentStream, build_pdf, fmt_pt
from .scene import (
    PointMark,
    PolylineMark,
    Rect,
    RectMark,
    Scene,
    SegmentMark,
    ShapeKind,
    WHITE,
)
from .verbalize import AltText

PAPER_SIZES_MM: dict[str, tuple[float, float]] = {
    "letter": (215.9, 279.4),
    "a4": (210.0, 297.0),
    "braille11x11": (279.4, 279.4),
}


@dataclass(frozen=True)
class TactileLayout:
    page_w: float = 215.9
    page_h: float = 279.4
    margin: float = 25.0
    dot_diameter: float = 1.5
    dot_pitch: float = 2.5  # between dot centers inside a cell
    cell_pitch: float = 6.2  # between cell origins
    line_pitch: float = 10.0  # between braille lines
    min_stroke: float = 1.0

    def __post_init__(self):
        fields = (
            self.page_w, self.page_h, self.margin, self.dot_diameter,
            self.dot_pitch, self.cell_pitch, self.line_pitch, self.min_stroke,
        )
        if any(v <= 0 for v in fields):
            raise TactileError("tactile layout dimensions must be positive")
        if self.cell_pitch <= self.dot_pitch:
            raise TactileError("cell pitch must exceed the intra-cell dot pitch")

    @classmethod
    def for_paper(cls, paper: str) -> "TactileLayout":
        try:
            w, h = PAPER_SIZES_MM[paper]
        except KeyError:
            raise TactileError(
                f"unknown paper {paper!r}; expected one of {', '.join(PAPER_SIZES_MM)}"
            ) from None
        return cls(page_w=w, page_h=h)


@dataclass(frozen=True)
class Stroke:
    points: tuple[tuple[float, float], ...]
    width: float
    dash: tuple[float, ...] | None = None
    close: bool = False


@dataclass(frozen=True)
class Dot:
    x: float
    y: float
    diameter: float
    kind: str = "braille"  # "braille" | "hatch"


@dataclass(frozen=True)
class TactilePage:
    layout: TactileLayout
    strokes: tuple[Stroke, ...]
    dots: tuple[Dot, ...]
    source_alt: AltText


# dot offsets within one cell, standard numbering, units of dot_pitch
_DOT_GRID = {1: (0, 0), 2: (0, 1), 3: (0, 2), 4: (1, 0), 5: (1, 1), 6: (1, 2)}


@dataclass(frozen=True)
class BrailleRun:
    """A placed row of braille cells; origin is the center of dot 1 of the
    first cell."""

    cells: tuple[BrailleCell, ...]
    x: float
    y: float
    layout: TactileLayout

    @property
    def width(self) -> float:
        if not self.cells:
            return 0.0
        return (len(self.cells) - 1) * self.layout.cell_pitch + self.layout.dot_pitch

    @property
    def height(self) -> float:
        return 2 * self.layout.dot_pitch

    def bbox(self) -> tuple[float, float, float, float]:
        r = self.layout.dot_diameter / 2
        return (self.x - r, self.y - r, self.x + self.width + r, self.y + self.height + r)

    def dots(self) -> list[Dot]:
        out = []
        for i, cell in enumerate(self.cells):
            cx = self.x + i * self.layout.cell_pitch
            for d in sorted(cell.dots):
                col, row = _DOT_GRID[d]
                out.append(
                    Dot(
                        cx + col * self.layout.dot_pitch,
                        self.y + row * self.layout.dot_pitch,
                        self.layout.dot_diameter,
                    )
                )
        return out


def _seg_point_distance(
    px: float, py: float, x1: float, y1: float, x2: float, y2: float
) -> float:
    dx, dy = x2 - x1, y2 - y1
    norm2 = dx * dx + dy * dy
    if norm2 == 0:
        return math.hypot(px - x1, py - y1)
    t = max(0.0, min(1.0, ((px - x1) * dx + (py - y1) * dy) / norm2))
    return math.hypot(px - (x1 + t * dx), py - (y1 + t * dy))


def dot_touches_stroke(dot: Dot, stroke: Stroke, clearance: float = 0.25) -> bool:
    """True when the dot's ink comes within `clearance` of the stroke's ink."""
    limit = dot.diameter / 2 + stroke.width / 2 + clearance
    pts = stroke.points + (stroke.points[0],) if stroke.close else stroke.points
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        if _seg_point_distance(dot.x, dot.y, x1, y1, x2, y2) < limit:
            return True
    return False


def _bbox_overlap(
    a: tuple[float, float, float, float],
    b: tuple[float, float, float, float],
    gap: float,
) -> bool:
    return not (
        a[2] + gap <= b[0] or b[2] + gap <= a[0]
        or a[3] + gap <= b[1] or b[3] + gap <= a[1]
    )


_HATCH_STEP = 6.0
_HATCH_INSET = 2.5
_HATCH_DOT = 1.2


def _hatch_rect(x0: float, y0: float, x1: float, y1: float, pattern: int,
                width: float) -> tuple[list[Stroke], list[Dot]]:
    """Texture inside a rect: horizontal, diagonal, dots, vertical,
    back-diagonal, crosshatch (cycling by group)."""
    ix0, iy0 = x0 + _HATCH_INSET, y0 + _HATCH_INSET
    ix1, iy1 = x1 - _HATCH_INSET, y1 - _HATCH_INSET
    strokes: list[Stroke] = []
    dots: list[Dot] = []
    if ix1 <= ix0 or iy1 <= iy0:
        return strokes, dots
    kind = pattern % 6

    def hlines():
        y = iy0
        while y <= iy1 + 1e-9:
            strokes.append(Stroke(((ix0, y), (ix1, y)), width))
            y += _HATCH_STEP

    def vlines():
        x = ix0
        while x <= ix1 + 1e-9:
            strokes.append(Stroke(((x, iy0), (x, iy1)), width))
            x += _HATCH_STEP

    def diagonals(slope: int):
        # clip lines of the form y = slope*(x - c) to the inset rect
        span = (ix1 - ix0) + (iy1 - iy0)
        c = -span
        while c <= span + 1e-9:
            pts = []
            for x_edge in (ix0, ix1):
                y = iy0 + (x_edge - ix0 - c) * slope
                if iy0 - 1e-9 <= y <= iy1 + 1e-9:
                    pts.append((x_edge, min(max(y, iy0), iy1)))
            for y_edge in (iy0, iy1):
                x = ix0 + c + (y_edge - iy0) / slope
                if ix0 - 1e-9 <= x <= ix1 + 1e-9:
                    pts.append((min(max(x, ix0), ix1), y_edge))
            uniq = sorted(set((round(px, 6), round(py, 6)) for px, py in pts))
            if len(uniq) >= 2 and math.dist(uniq[0], uniq[-1]) > 1.0:
                strokes.append(Stroke((uniq[0], uniq[-1]), width))
            c += _HATCH_STEP * math.sqrt(2.0)

    if kind == 0:
        hlines()
    elif kind == 1:
        diagonals(1)
    elif kind == 2:
        y = iy0
        while y <= iy1 + 1e-9:
            x = ix0
            while x <= ix1 + 1e-9:
                dots.append(Dot(x, y, _HATCH_DOT, kind="hatch"))
                x += 5.0
            y += 5.0
    elif kind == 3:
        vlines()
    elif kind == 4:
        diagonals(-1)
    else:
        hlines()
        vlines()
    return strokes, dots


def _limit_ticks(
    ticks: tuple[float, ...], labels: tuple[str, ...], limit: int = 5
) -> list[tuple[float, str]]:
    pairs = list(zip(ticks, labels))
    if len(pairs) <= limit:
        return pairs
    idx = sorted({round(i * (len(pairs) - 1) / (limit - 1)) for i in range(limit)})
    return [pairs[i] for i in idx]


def _shape_outline(
    shape: ShapeKind, cx: float, cy: float, r: float, width: float
) -> list[Stroke]:
    if shape is ShapeKind.TRIANGLE:
        dx = r * math.sqrt(3.0) / 2.0
        return [Stroke(((cx, cy - r), (cx + dx, cy + r / 2), (cx - dx, cy + r / 2)),
                       width, close=True)]
    if shape is ShapeKind.SQUARE:
        a = 0.85 * r
        return [Stroke(((cx - a, cy - a), (cx + a, cy - a), (cx + a, cy + a),
                        (cx - a, cy + a)), width, close=True)]
    if shape is ShapeKind.DIAMOND:
        return [Stroke(((cx, cy - r), (cx + r, cy), (cx, cy + r), (cx - r, cy)),
                       width, close=True)]
    if shape is ShapeKind.PLUS:
        return [
            Stroke(((cx, cy - r), (cx, cy + r)), width),
            Stroke(((cx - r, cy), (cx + r, cy)), width),
        ]
    if shape is ShapeKind.CROSS:
        b = r * math.sqrt(2.0) / 2.0
        return [
            Stroke(((cx - b, cy - b), (cx + b, cy + b)), width),
            Stroke(((cx - b, cy + b), (cx + b, cy - b)), width),
        ]
    # circle: 16-gon approximation keeps Stroke polyline-only
    pts = tuple(
        (cx + r * math.cos(a), cy + r * math.sin(a))
        for a in (i * math.pi / 8 for i in range(16))
    )
    return [Stroke(pts, width, close=True)]


class _PageBuilder:
    def __init__(self, scene: Scene, layout: TactileLayout, alt: AltText):
        self.scene = scene
        self.layout = layout
        self.alt = alt
        self.strokes: list[Stroke] = []
        self.dots: list[Dot] = []
        self.runs: list[BrailleRun] = []

    # -- braille helpers ---------------------------------------------------

    def _cells(self, text: str) -> tuple[BrailleCell, ...]:
        return tuple(to_braille(text.replace("_", " ")))

    def _run_width(self, cells: tuple[BrailleCell, ...]) -> float:
        if not cells:
            return 0.0
        return (len(cells) - 1) * self.layout.cell_pitch + self.layout.dot_pitch

    def _printable(self) -> Rect:
        m = self.layout.margin
        return Rect(m, m, self.layout.page_w - 2 * m, self.layout.page_h - 2 * m)

    def _check_width(self, cells, what: str):
        ink = self._run_width(cells) + self.layout.dot_diameter
        if ink > self._printable().w:
            raise TactileError(
                f"{what} is too long for the page at braille size; "
                "abbreviate it to fewer characters"
            )

    def _place_run(
        self, cells: tuple[BrailleCell, ...], x: float, y: float, push: str
    ) -> BrailleRun | None:
        """Place a run, staggering rows / pushing outward until it clears
        strokes and other runs."""
        if not cells:
            return None
        run = BrailleRun(cells, x, y, self.layout)
        for attempt in range(4):
            conflict = self._run_conflicts(run)
            if not conflict:
                self.runs.append(run)
                self.dots.extend(run.dots())
                return run
            if push == "down":
                run = replace(run, y=run.y + self.layout.line_pitch)
            elif push == "left":
                run = replace(run, x=run.x - self.layout.line_pitch)
            else:
                run = replace(run, y=run.y - self.layout.line_pitch)
        raise TactileError(
            "braille labels overlap even after displacement; "
            "abbreviate the labels or enlarge the page"
        )

    def _run_conflicts(self, run: BrailleRun) -> bool:
        box = run.bbox()
        for other in self.runs:
            if _bbox_overlap(box, other.bbox(), self.layout.dot_pitch):
                return True
        for dot in run.dots():
            for stroke in self.strokes:
                if dot_touches_stroke(dot, stroke, clearance=0.5):
                    return True
        return False

    # -- chart geometry ------------------------------------------------------

    def build(self) -> TactilePage:
        scene, layout = self.scene, self.layout
        printable = self._printable()

        x_pairs = _limit_ticks(scene.x_axis.ticks, scene.x_axis.labels)
        y_pairs = _limit_ticks(scene.y_axis.ticks, scene.y_axis.labels)

        # gutters reserve room for braille before the chart is scaled
        y_label_w = max(
            [self._run_width(self._cells(lbl)) + layout.dot_diameter
             for _, lbl in y_pairs],
            default=0.0,
        )
        x_label_w = max(
            [self._run_width(self._cells(lbl)) + layout.dot_diameter
             for _, lbl in x_pairs],
            default=0.0,
        )
        # centered x labels can poke past either plot edge
        left_gutter = max(y_label_w + 9.0, x_label_w / 2 + 2.0)
        right_gutter = max(4.0, x_label_w / 2 + 2.0)
        bottom_gutter = 7.0 + 2 * layout.line_pitch + (
            layout.line_pitch if scene.x_axis.title else 0.0
        ) + 2.0
        top_lines = (1 if scene.title else 0) + (1 if scene.y_axis.title else 0)
        top_gutter = top_lines * layout.line_pitch + 4.0

        avail = Rect(
            printable.x + left_gutter,
            printable.y + top_gutter,
            printable.w - left_gutter - right_gutter,
            printable.h - top_gutter - bottom_gutter,
        )
        if avail.w <= 10 or avail.h <= 10:
            raise TactileError("page too small for the chart at braille size")

        scale = min(avail.w / scene.plot.w, avail.h / scene.plot.h)
        ox = avail.x + (avail.w - scene.plot.w * scale) / 2

        def mx(px: float) -> float:
            return ox + (px - self.scene.plot.x) * scale

        def my(px: float) -> float:
            return avail.y + (px - self.scene.plot.y) * scale

        def mw(w_px: float) -> float:
            return max(layout.min_stroke, w_px * scale)

        plot_mm = Rect(
            mx(scene.plot.x), my(scene.plot.y),
            scene.plot.w * scale, scene.plot.h * scale,
        )

        # axes and ticks
        tick_len = 4.0
        self.strokes.append(
            Stroke(((plot_mm.x, plot_mm.y1), (plot_mm.x1, plot_mm.y1)),
                   layout.min_stroke)
        )
        self.strokes.append(
            Stroke(((plot_mm.x, plot_mm.y), (plot_mm.x, plot_mm.y1)),
                   layout.min_stroke)
        )
        for tx, _ in x_pairs:
            self.strokes.append(
                Stroke(((mx(tx), plot_mm.y1), (mx(tx), plot_mm.y1 + tick_len)),
                       layout.min_stroke)
            )
        for ty, _ in y_pairs:
            self.strokes.append(
                Stroke(((plot_mm.x - tick_len, my(ty)), (plot_mm.x, my(ty))),
                       layout.min_stroke)
            )

        # data marks
        for mark in scene.marks:
            if isinstance(mark, RectMark):
                x0, y0 = mx(mark.x), my(mark.y)
                x1, y1 = mx(mark.x + mark.w), my(mark.y + mark.h)
                self.strokes.append(
                    Stroke(((x0, y0), (x1, y0), (x1, y1), (x0, y1)),
                           layout.min_stroke, close=True)
                )
                if mark.fill is not None and mark.fill != WHITE:
                    hs, hd = _hatch_rect(x0, y0, x1, y1, mark.group,
                                         layout.min_stroke)
                    self.strokes.extend(hs)
                    self.dots.extend(hd)
            elif isinstance(mark, SegmentMark):
                self.strokes.append(
                    Stroke(((mx(mark.x1), my(mark.y1)), (mx(mark.x2), my(mark.y2))),
                           mw(mark.width), dash=mark.dash)
                )
            elif isinstance(mark, PolylineMark):
                self.strokes.append(
                    Stroke(tuple((mx(x), my(y)) for x, y in mark.points),
                           mw(mark.width),
                           dash=tuple(d * 1.5 for d in mark.dash) if mark.dash else None)
                )
            elif isinstance(mark, PointMark):
                r = max(2.5, mark.size * scale)
                self.strokes.extend(
                    _shape_outline(mark.shape, mx(mark.x), my(mark.y), r,
                                   layout.min_stroke)
                )
            # TextMarks inside marks would be re-set in braille; none today

        # braille labels: x ticks below, y ticks left, titles around
        for tx, label in x_pairs:
            cells = self._cells(label)
            self._check_width(cells, f"x label {label!r}")
            w = self._run_width(cells)
            self._place_run(
                cells, mx(tx) - w / 2, plot_mm.y1 + tick_len + 3.0, push="down"
            )
        dot_r = layout.dot_diameter / 2
        for ty, label in y_pairs:
            cells = self._cells(label)
            w = self._run_width(cells)
            x0 = plot_mm.x - tick_len - 3.0 - w
            if x0 - dot_r < printable.x - 1e-6:
                raise TactileError(
                    f"y label {label!r} does not fit in the margin; abbreviate it"
                )
            self._place_run(cells, x0, my(ty) - layout.dot_pitch, push="left")

        y_base = printable.y + dot_r
        if scene.title:
            cells = self._cells(scene.title)
            self._check_width(cells, "title")
            self._place_run(cells, printable.x + dot_r, y_base, push="down")
            y_base += layout.line_pitch
        if scene.y_axis.title:
            cells = self._cells(scene.y_axis.title)
            self._check_width(cells, f"y-axis title {scene.y_axis.title!r}")
            self._place_run(cells, printable.x + dot_r, y_base, push="down")
        if scene.x_axis.title:
            cells = self._cells(scene.x_axis.title)
            self._check_width(cells, f"x-axis title {scene.x_axis.title!r}")
            w = self._run_width(cells)
            self._place_run(
                cells,
                plot_mm.x + plot_mm.w / 2 - w / 2,
                plot_mm.y1 + tick_len + 3.0 + 2 * layout.line_pitch,
                push="down",
            )

        page = TactilePage(layout, tuple(self.strokes), tuple(self.dots), self.alt)
        _check_bounds(page)
        return page


def tactualize(scene: Scene, layout: TactileLayout | None = None,
               alt: AltText | None = None) -> TactilePage:
    """Rescale a scene into emboss-ready millimeter geometry."""
    if alt is None:
        alt = AltText(("Tactile chart.",))
    return _PageBuilder(scene, layout or TactileLayout(), alt).build()


def _check_bounds(page: TactilePage) -> None:
    lay = page.layout
    x0, y0 = lay.margin, lay.margin
    x1, y1 = lay.page_w - lay.margin, lay.page_h - lay.margin
    for dot in page.dots:
        r = dot.diameter / 2
        if not (x0 <= dot.x - r and dot.x + r <= x1 and y0 <= dot.y - r and dot.y + r <= y1):
            raise TactileError(
                f"braille dot at ({dot.x:.1f}, {dot.y:.1f}) mm leaves the printable area"
            )
    for stroke in page.strokes:
        hw = stroke.width / 2
        for px, py in stroke.points:
            if not (x0 <= px - hw and px + hw <= x1 and y0 <= py - hw and py + hw <= y1):
                raise TactileError(
                    f"stroke point at ({px:.1f}, {py:.1f}) mm leaves the printable area"
                )


def emit_pdf(page: TactilePage) -> bytes:
    """Single-page PDF 1.4, black-only: strokes as paths, braille dots as
    filled circles built from four Bezier arcs."""
    lay = page.layout
    h_pt = lay.page_h * MM_TO_PT

    def pt(x_mm: float, y_mm: float) -> tuple[float, float]:
        return x_mm * MM_TO_PT, h_pt - y_mm * MM_TO_PT

    cs = ContentStream()
    for stroke in page.strokes:
        cs.stroke_polyline(
            [pt(x, y) for x, y in stroke.points],
            stroke.width * MM_TO_PT,
            dash_pt=tuple(d * MM_TO_PT for d in stroke.dash) if stroke.dash else None,
            close=stroke.close,
        )
    for dot in page.dots:
        cx, cy = pt(dot.x, dot.y)
        cs.fill_circle(cx, cy, dot.diameter / 2 * MM_TO_PT)
    return build_pdf(cs.to_bytes(), lay.page_w * MM_TO_PT, h_pt)


def emit_preview_svg(page: TactilePage) -> bytes:
    """Sighted-verification twin of the PDF (mm coordinate space)."""
    lay = page.layout
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt_pt(lay.page_w)}mm" height="{fmt_pt(lay.page_h)}mm" '
        f'viewBox="0 0 {fmt_pt(lay.page_w)} {fmt_pt(lay.page_h)}" role="img" '
        f'aria-labelledby="title desc">',
        "<title id=\"title\">Tactile page preview</title>",
        f"<desc id=\"desc\">{_esc(page.source_alt.flattened)}</desc>",
        f'<rect x="0" y="0" width="{fmt_pt(lay.page_w)}" '
        f'height="{fmt_pt(lay.page_h)}" fill="#FFFFFF"/>',
    ]
    for s in page.strokes:
        d = "M " + " L ".join(f"{fmt_pt(x)},{fmt_pt(y)}" for x, y in s.points)
        if s.close:
            d += " Z"
        dash = (
            f' stroke-dasharray="{",".join(fmt_pt(v) for v in s.dash)}"' if s.dash else ""
        )
        lines.append(
            f'<path d="{d}" fill="none" stroke="#000000" '
            f'stroke-width="{fmt_pt(s.width)}" stroke-linecap="round" '
            f'stroke-linejoin="round"{dash}/>'
        )
    for dot in page.dots:
        r = dot.diameter / 2
        lines.append(
            f'<path d="M {fmt_pt(dot.x - r)},{fmt_pt(dot.y)} '
            f"A {fmt_pt(r)},{fmt_pt(r)} 0 1 0 {fmt_pt(dot.x + r)},{fmt_pt(dot.y)} "
            f'A {fmt_pt(r)},{fmt_pt(r)} 0 1 0 {fmt_pt(dot.x - r)},{fmt_pt(dot.y)} Z" '
            f'fill="#000000"/>'
        )
    return ("\n".join(lines) + "\n</svg>\n").encode("utf-8")


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
