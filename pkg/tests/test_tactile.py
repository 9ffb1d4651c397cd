from __future__ import annotations

import math
import xml.etree.ElementTree as ET

import pytest

from conftest import load_fixture_spec
from oracles import (
    extract_braille_runs,
    pdf_filled_circles,
    pdf_stroked_polylines,
    validate_pdf,
)
from polyrep.chartspec import inline_dataset, parse_spec
from polyrep.errors import TactileError
from polyrep.pdfwrite import MM_TO_PT
from polyrep.scene import layout
from polyrep.tactile import (
    TactileLayout,
    dot_touches_stroke,
    emit_pdf,
    emit_preview_svg,
    tactualize,
)
from polyrep.verbalize import auto_alt


@pytest.fixture(scope="module")
def box_page(penguins):
    spec = load_fixture_spec("penguins_box.json")
    scene = layout(spec, penguins)
    return tactualize(scene, alt=auto_alt(scene.summary))


@pytest.fixture(scope="module")
def box_pdf(box_page):
    return emit_pdf(box_page)


def pdf_dots_mm(raw: bytes, layout: TactileLayout):
    """Braille dot centers recovered from the PDF, converted back to mm."""
    info = validate_pdf(raw)
    circles = pdf_filled_circles(info["content"])
    page_h = layout.page_h
    out = []
    for cx, cy, r in circles:
        d_mm = 2 * r / MM_TO_PT
        if abs(d_mm - layout.dot_diameter) < 0.1:  # skip hatch dots
            out.append((cx / MM_TO_PT, page_h - cy / MM_TO_PT))
    return out


# -- layout validation -------------------------------------------------------


def test_layout_defaults_and_validation():
    lay = TactileLayout()
    assert (lay.page_w, lay.page_h) == (215.9, 279.4)
    assert lay.dot_pitch == 2.5 and lay.cell_pitch == 6.2
    with pytest.raises(TactileError):
        TactileLayout(dot_pitch=7.0)  # cell pitch must exceed dot pitch
    with pytest.raises(TactileError):
        TactileLayout(margin=-1)


def test_paper_sizes():
    assert TactileLayout.for_paper("a4").page_w == 210.0
    assert TactileLayout.for_paper("braille11x11").page_h == 279.4
    with pytest.raises(TactileError):
        TactileLayout.for_paper("tabloid")


# -- page construction -------------------------------------------------------


def test_boxplot_page_has_boxes_and_braille(box_page):
    # 3 boxes, each a closed 4-point outline
    closed = [s for s in box_page.strokes if s.close and len(s.points) == 4]
    assert len(closed) >= 3
    braille = [d for d in box_page.dots if d.kind == "braille"]
    assert len(braille) > 50


def test_braille_labels_decode(box_page):
    dots = [(d.x, d.y) for d in box_page.dots if d.kind == "braille"]
    texts = extract_braille_runs(dots)
    assert "Adelie" in texts
    assert "Chinstrap" in texts
    assert "Gentoo" in texts
    # the y-axis title "body_mass_g" is set with underscores as spaces; the
    # extractor splits runs at space cells, so it comes back word by word
    assert "body" in texts and "mass" in texts and "g" in texts
    assert "species" in texts


def test_no_dot_stroke_overlaps(box_page):
    for dot in box_page.dots:
        if dot.kind != "braille":
            continue
        for stroke in box_page.strokes:
            assert not dot_touches_stroke(dot, stroke, clearance=0.0)


def test_braille_dot_spacing_at_least_dot_pitch(box_page):
    braille = [(d.x, d.y) for d in box_page.dots if d.kind == "braille"]
    pitch = box_page.layout.dot_pitch
    for i, (x1, y1) in enumerate(braille):
        for x2, y2 in braille[i + 1 :]:
            if abs(x1 - x2) < pitch and abs(y1 - y2) < pitch:
                assert math.hypot(x1 - x2, y1 - y2) >= pitch - 0.01


def test_all_ink_within_margins(box_page):
    lay = box_page.layout
    for dot in box_page.dots:
        r = dot.diameter / 2
        assert lay.margin <= dot.x - r and dot.x + r <= lay.page_w - lay.margin
        assert lay.margin <= dot.y - r and dot.y + r <= lay.page_h - lay.margin
    for stroke in box_page.strokes:
        for x, y in stroke.points:
            assert lay.margin - 0.51 <= x <= lay.page_w - lay.margin + 0.51
            assert lay.margin - 0.51 <= y <= lay.page_h - lay.margin + 0.51


def test_ticks_limited_to_five_per_axis(penguins):
    spec = load_fixture_spec("penguins_hist.json")
    scene = layout(spec, penguins)
    assert len(scene.x_axis.ticks) > 5  # the scene itself has more
    page = tactualize(scene, alt=auto_alt(scene.summary))
    # tactile x ticks: strokes that drop below the x baseline
    base_y = max(y for s in page.strokes[:1] for _, y in s.points)
    ticks = [
        s for s in page.strokes
        if len(s.points) == 2
        and s.points[0][0] == s.points[1][0]
        and min(p[1] for p in s.points) >= base_y - 1e-6
        and abs(s.points[0][1] - s.points[1][1]) == pytest.approx(4.0, abs=1e-6)
    ]
    assert 2 <= len(ticks) <= 5


def test_hatch_patterns_differ_between_groups():
    data = inline_dataset({"x": ["a"] * 3 + ["b"] * 4})
    spec = parse_spec(b'{"chart":{"type":"bar","x":"x"}}')
    scene = layout(spec, data)
    page = tactualize(scene, alt=auto_alt(scene.summary))
    # bars share one series, so both use the same hatch; just confirm hatch ink
    assert any(s for s in page.strokes if not s.close and len(s.points) == 2)


def test_label_too_long_suggests_abbreviation():
    data = inline_dataset({"verylong" * 12: [1.0, 2.0, 3.0]})
    name = "verylong" * 12
    spec = parse_spec(
        (
            '{"chart":{"type":"boxplot","x":"%s"}}' % name
        ).encode()
    )
    scene = layout(spec, data)
    with pytest.raises(TactileError, match="abbreviate"):
        tactualize(scene, alt=auto_alt(scene.summary))


# -- pdf ----------------------------------------------------------------------


def test_pdf_validates_structurally(box_pdf):
    info = validate_pdf(box_pdf)
    assert info["n_objects"] == 4


def test_pdf_letter_mediabox(box_pdf):
    mb = validate_pdf(box_pdf)["media_box"]
    assert mb[0] == 0 and mb[1] == 0
    assert abs(mb[2] - 612.0) <= 0.5
    assert abs(mb[3] - 792.0) <= 0.5


def test_pdf_dot_unit_conversion():
    # a dot at page center must land at (306, 396) pt on US Letter
    lay = TactileLayout()
    cx_mm, cy_mm = lay.page_w / 2, lay.page_h / 2
    cx_pt, cy_pt = cx_mm * MM_TO_PT, lay.page_h * MM_TO_PT - cy_mm * MM_TO_PT
    assert abs(cx_pt - 306.0) <= 0.5
    assert abs(cy_pt - 396.0) <= 0.5


def test_pdf_braille_metrics_roundtrip(box_pdf, box_page):
    """Intra-cell spacing 2.5 mm and cell pitch 6.2 mm must survive the
    mm -> pt -> parse -> mm round trip within 0.05 mm."""
    dots = pdf_dots_mm(box_pdf, box_page.layout)
    assert dots
    xs_by_row: dict[float, list[float]] = {}
    for x, y in dots:
        xs_by_row.setdefault(round(y, 2), []).append(x)
    gaps = []
    for xs in xs_by_row.values():
        xs.sort()
        gaps.extend(b - a for a, b in zip(xs, xs[1:]) if b - a < 4.0)
    assert gaps, "expected same-row dot pairs"
    intra = [g for g in gaps if g < 3.0]
    cross = [g for g in gaps if g >= 3.0]
    assert intra, "expected intra-cell dot pairs"
    for gap in intra:
        assert abs(gap - 2.5) <= 0.05  # intra-cell pitch
    for gap in cross:
        # right column to the next cell's left column: 6.2 - 2.5
        assert abs(gap - 3.7) <= 0.05
    # cell pitch: decoded runs must fit the 6.2 mm grid (the extractor
    # rejects runs that deviate by more than its 0.05 mm tolerance)
    texts = extract_braille_runs(dots)
    assert "Adelie" in texts and "Gentoo" in texts


def test_pdf_geometry_matches_page(box_pdf, box_page):
    info = validate_pdf(box_pdf)
    circles = pdf_filled_circles(info["content"])
    braille = [d for d in box_page.dots if d.kind == "braille"]
    assert len(circles) == len(box_page.dots)
    polylines = pdf_stroked_polylines(info["content"])
    assert len(polylines) == len(box_page.strokes)
    # dot count sanity: every braille dot appears with the right radius
    r_pt = box_page.layout.dot_diameter / 2 * MM_TO_PT
    matching = [c for c in circles if abs(c[2] - r_pt) < 0.01]
    assert len(matching) == len(braille)


def test_pdf_deterministic(box_page):
    assert emit_pdf(box_page) == emit_pdf(box_page)


def test_preview_svg_well_formed(box_page):
    raw = emit_preview_svg(box_page)
    root = ET.fromstring(raw)
    assert root.get("width").endswith("mm")
    tags = {e.tag.split("}")[1] for e in root.iter()}
    assert tags <= {"svg", "rect", "path", "text", "g", "title", "desc", "line"}


def test_single_box_page(penguins):
    # a boxplot of one column still produces axes plus a single box
    spec = parse_spec(
        b'{"data":{"csv":"penguins.csv"},'
        b'"chart":{"type":"boxplot","x":"body_mass_g"}}'
    )
    scene = layout(spec, penguins)
    page = tactualize(scene, alt=auto_alt(scene.summary))
    assert len(page.strokes) >= 2  # the two axis lines at minimum


def test_random_scenes_keep_ink_inside_and_clear_of_braille():
    """Every buildable random page keeps ink inside the margins, braille
    dots clear of strokes, and cross-cell dots at least a dot pitch apart."""
    import random

    rng = random.Random(99)
    specs = {
        "bar": b'{"chart":{"type":"bar","x":"c"}}',
        "histogram": b'{"chart":{"type":"histogram","x":"v"}}',
        "boxplot": b'{"chart":{"type":"boxplot","x":"c","y":"v"}}',
        "scatter": b'{"chart":{"type":"scatter","x":"v","y":"w","group":"c"}}',
        "line": b'{"chart":{"type":"line","x":"v","y":"w","group":"c"}}',
    }
    built = 0
    for trial in range(30):
        kind = rng.choice(list(specs))
        n = rng.randint(2, 40)
        levels = [f"grp{i}" for i in range(rng.randint(1, 4))]
        data = inline_dataset(
            {
                "c": [rng.choice(levels) for _ in range(n)],
                "v": [round(rng.uniform(-50, 500), 1) for _ in range(n)],
                "w": [round(rng.uniform(0, 9), 2) for _ in range(n)],
            }
        )
        scene = layout(parse_spec(specs[kind]), data)
        try:
            page = tactualize(scene, alt=auto_alt(scene.summary))
        except TactileError:
            continue  # labels genuinely did not fit; a legitimate outcome
        built += 1
        lay = page.layout
        for dot in page.dots:
            r = dot.diameter / 2
            assert lay.margin <= dot.x - r and dot.x + r <= lay.page_w - lay.margin
            assert lay.margin <= dot.y - r and dot.y + r <= lay.page_h - lay.margin
        braille = [d for d in page.dots if d.kind == "braille"]
        for dot in braille:
            for stroke in page.strokes:
                assert not dot_touches_stroke(dot, stroke, clearance=0.0), (
                    trial, kind, dot,
                )
        pts = [(d.x, d.y) for d in braille]
        for i, (x1, y1) in enumerate(pts):
            for x2, y2 in pts[i + 1 :]:
                if abs(x1 - x2) < lay.dot_pitch and abs(y1 - y2) < lay.dot_pitch:
                    assert math.hypot(x1 - x2, y1 - y2) >= lay.dot_pitch - 0.01
    assert built >= 20  # most random pages should build


def test_markless_scene_page_has_axes_only(penguins):
    from dataclasses import replace

    spec = load_fixture_spec("penguins_box.json")
    scene = replace(layout(spec, penguins), marks=())
    page = tactualize(scene)
    # axes plus ticks, no data strokes, labels still present
    vertical_axis = [s for s in page.strokes if len(s.points) == 2 and s.width == 1.0]
    assert len(vertical_axis) >= 2
    assert all(not s.close for s in page.strokes)
    assert any(d.kind == "braille" for d in page.dots)
