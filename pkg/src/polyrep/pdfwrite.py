"""Minimal PDF 1.4 writer: one page, one uncompressed content stream.

Offsets in the cross-reference table are byte-accurate and the output is
fully deterministic, which keeps emboss artifacts diffable.
"""

from __future__ import annotations

MM_TO_PT = 72.0 / 25.4

# circle-from-Beziers constant: 4*(sqrt(2)-1)/3
KAPPA = 0.5522847498307936


def fmt_pt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class ContentStream:
    """PDF path operators in point coordinates (origin bottom-left)."""

    def __init__(self):
        self._ops: list[str] = ["1 J", "1 j"]  # round caps and joins

    def stroke_polyline(
        self,
        points: list[tuple[float, float]],
        width_pt: float,
        dash_pt: tuple[float, ...] | None = None,
        close: bool = False,
    ) -> None:
        if len(points) < 2:
            return
        self._ops.append(f"{fmt_pt(width_pt)} w")
        self._ops.append("0 G")
        if dash_pt:
            self._ops.append(f"[{' '.join(fmt_pt(d) for d in dash_pt)}] 0 d")
        (x0, y0), rest = points[0], points[1:]
        self._ops.append(f"{fmt_pt(x0)} {fmt_pt(y0)} m")
        for x, y in rest:
            self._ops.append(f"{fmt_pt(x)} {fmt_pt(y)} l")
        self._ops.append("s" if close else "S")
        if dash_pt:
            self._ops.append("[] 0 d")

    def fill_circle(self, cx: float, cy: float, r: float) -> None:
        k = KAPPA * r
        p = fmt_pt
        self._ops.append("0 g")
        self._ops.append(f"{p(cx + r)} {p(cy)} m")
        self._ops.append(
            f"{p(cx + r)} {p(cy + k)} {p(cx + k)} {p(cy + r)} {p(cx)} {p(cy + r)} c"
        )
        self._ops.append(
            f"{p(cx - k)} {p(cy + r)} {p(cx - r)} {p(cy + k)} {p(cx - r)} {p(cy)} c"
        )
        self._ops.append(
            f"{p(cx - r)} {p(cy - k)} {p(cx - k)} {p(cy - r)} {p(cx)} {p(cy - r)} c"
        )
        self._ops.append(
            f"{p(cx + k)} {p(cy - r)} {p(cx + r)} {p(cy - k)} {p(cx + r)} {p(cy)} c"
        )
        self._ops.append("f")

    def stroke_circle(self, cx: float, cy: float, r: float, width_pt: float) -> None:
        k = KAPPA * r
        p = fmt_pt
        self._ops.append(f"{fmt_pt(width_pt)} w")
        self._ops.append("0 G")
        self._ops.append(f"{p(cx + r)} {p(cy)} m")
        self._ops.append(
            f"{p(cx + r)} {p(cy + k)} {p(cx + k)} {p(cy + r)} {p(cx)} {p(cy + r)} c"
        )
        self._ops.append(
            f"{p(cx - k)} {p(cy + r)} {p(cx - r)} {p(cy + k)} {p(cx - r)} {p(cy)} c"
        )
        self._ops.append(
            f"{p(cx - r)} {p(cy - k)} {p(cx - k)} {p(cy - r)} {p(cx)} {p(cy - r)} c"
        )
        self._ops.append(
            f"{p(cx + k)} {p(cy - r)} {p(cx + r)} {p(cy - k)} {p(cx + r)} {p(cy)} c"
        )
        self._ops.append("s")

    def to_bytes(self) -> bytes:
        return ("\n".join(self._ops) + "\n").encode("ascii")


def build_pdf(content: bytes, width_pt: float, height_pt: float) -> bytes:
    """Assemble catalog, page tree, page, and content stream with exact xref."""
    objects = [
        b"<< /Type /Catalog /Pages 2 0 R >>",
        b"<< /Type /Pages /Kids [3 0 R] /Count 1 >>",
        (
            f"<< /Type /Page /Parent 2 0 R "
            f"/MediaBox [0 0 {fmt_pt(width_pt)} {fmt_pt(height_pt)}] "
            f"/Resources << >> /Contents 4 0 R >>"
        ).encode("ascii"),
        b"<< /Length %d >>\nstream\n%s\nendstream" % (len(content), content),
    ]
    header = b"%PDF-1.4\n%\xc2\xb5\xc2\xb6\n"
    out = bytearray(header)
    offsets = []
    for i, body in enumerate(objects, start=1):
        offsets.append(len(out))
        out += b"%d 0 obj\n" % i
        out += body
        out += b"\nendobj\n"
    xref_at = len(out)
    out += b"xref\n0 %d\n" % (len(objects) + 1)
    out += b"0000000000 65535 f \n"
    for off in offsets:
        out += b"%010d 00000 n \n" % off
    out += b"trailer\n<< /Size %d /Root 1 0 R >>\nstartxref\n%d\n%%%%EOF\n" % (
        len(objects) + 1,
        xref_at,
    )
    return bytes(out)
