"""Command-line surface: one chart spec in, any representation out.

    polyrep render      spec.json [-o chart.svg]     SVG + .alt.txt sidecar
    polyrep cvd-grid    spec.json [-o grid.svg]      4-panel simulation grid
    polyrep alt         spec.json [--json]           alt text to stdout
    polyrep sonify      spec.json [-o chart.wav]     stereo WAV
    polyrep tactile     spec.json [-o chart.pdf]     emboss-ready PDF
    polyrep audit-palette <colors> [--threshold N]   distinguishability audit

Exit codes: 0 success, 1 validation error (including a failing audit),
2 I/O error. Errors print to stderr as ``polyrep: error[<code>]: ...``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .chartspec import ChartSpec, load_dataset, parse_spec
from .color import Palette, Rgb, audit_palette, okabe_ito
from .dataset import Dataset
from .errors import DataError, PolyrepError, SpecError
from .scene import layout
from .sonify import SonifyConfig, sonify_points, sonify_sweep, write_wav
from .stats import bar_counts, histogram, linear_fit
from .svgout import cvd_grid, emit_svg, grid_alt
from .tactile import (
    PAPER_SIZES_MM,
    TactileLayout,
    emit_pdf,
    emit_preview_svg,
    tactualize,
)
from .verbalize import auto_alt


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2; our contract says 1
        raise SpecError(message)


def _formatter(prog):
    return argparse.HelpFormatter(prog, width=80)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="polyrep",
        description="Render one chart spec into coordinated accessible "
        "representations: SVG, alt text, audio, tactile PDF.",
        formatter_class=_formatter,
    )
    parser.add_argument("--version", action="version", version=f"polyrep {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, formatter_class=_formatter)
        return p

    p = add("render", "write an SVG chart plus its .alt.txt sidecar")
    p.add_argument("spec", help="chart spec JSON file")
    p.add_argument("-o", "--output", help="output SVG path (default: <spec>.svg)")

    p = add("cvd-grid", "write a four-panel color-deficiency simulation SVG")
    p.add_argument("spec", help="chart spec JSON file")
    p.add_argument("-o", "--output", help="output SVG path (default: <spec>.cvd.svg)")

    p = add("alt", "print generated alt text")
    p.add_argument("spec", help="chart spec JSON file")
    p.add_argument("--json", action="store_true", help="emit the sentence list as JSON")

    p = add("sonify", "write a stereo sonification WAV")
    p.add_argument("spec", help="chart spec JSON file")
    p.add_argument("-o", "--output", help="output WAV path (default: <spec>.wav)")
    p.add_argument(
        "--mode",
        choices=("discrete", "sweep", "regression"),
        help="tone mode (default: sweep for line charts, else discrete)",
    )
    p.add_argument("--duration", type=float, default=5.0, help="seconds (default 5)")
    p.add_argument("--fmin", type=float, default=440.0, help="low pitch Hz (default 440)")
    p.add_argument("--fmax", type=float, default=880.0, help="high pitch Hz (default 880)")
    p.add_argument("--rate", type=int, default=44100, help="sample rate Hz (default 44100)")
    p.add_argument("--log-pitch", action="store_true", help="logarithmic pitch mapping")
    p.add_argument(
        "--categorical",
        action="store_true",
        help="allow bar/histogram input (bar index maps to pan, count to pitch)",
    )

    p = add("tactile", "write an emboss-ready tactile PDF")
    p.add_argument("spec", help="chart spec JSON file")
    p.add_argument("-o", "--output", help="output PDF path (default: <spec>.pdf)")
    p.add_argument(
        "--paper",
        choices=tuple(PAPER_SIZES_MM),
        default="letter",
        help="page size (default letter)",
    )
    p.add_argument(
        "--preview",
        action="store_true",
        help="also write a sighted-verification SVG next to the PDF",
    )

    p = add("audit-palette", "check palette distinguishability under CVD simulation")
    p.add_argument(
        "colors",
        help="comma-separated #RRGGBB list, or the palette name 'okabe-ito'",
    )
    p.add_argument(
        "--threshold", type=float, default=10.0, help="minimum deltaE (default 10)"
    )
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    return parser


def _load(spec_path: str) -> tuple[ChartSpec, Dataset]:
    path = Path(spec_path)
    spec = parse_spec(path.read_bytes())
    data = load_dataset(spec, base_dir=path.parent)
    return spec, data


def _default_output(spec_path: str, suffix: str) -> Path:
    return Path(Path(spec_path).stem + suffix)


def _write(path: Path, payload: bytes) -> None:
    path.write_bytes(payload)
    print(f"wrote {path}")


def _cmd_render(args) -> int:
    spec, data = _load(args.spec)
    scene = layout(spec, data)
    alt = auto_alt(scene.summary)
    out = Path(args.output) if args.output else _default_output(args.spec, ".svg")
    _write(out, emit_svg(scene, alt, short_alt=spec.manual_alt))
    sidecar = Path(str(out) + ".alt.txt")
    sidecar.write_text(alt.flattened + "\n", encoding="utf-8")
    print(f"wrote {sidecar}")
    return 0


def _cmd_cvd_grid(args) -> int:
    spec, data = _load(args.spec)
    scene = layout(spec, data)
    alt = auto_alt(scene.summary)
    out = Path(args.output) if args.output else _default_output(args.spec, ".cvd.svg")
    _write(out, cvd_grid(scene, alt))
    sidecar = Path(str(out) + ".alt.txt")
    sidecar.write_text(grid_alt(alt).flattened + "\n", encoding="utf-8")
    print(f"wrote {sidecar}")
    return 0


def _cmd_alt(args) -> int:
    spec, data = _load(args.spec)
    alt = auto_alt(layout(spec, data).summary)
    if args.json:
        print(json.dumps(list(alt.sentences), indent=2))
    else:
        print(alt.flattened)
    return 0


def _series_for_sonify(spec: ChartSpec, data: Dataset, categorical: bool):
    if spec.chart_type in ("scatter", "line"):
        return data.numeric(spec.x).values, data.numeric(spec.y).values
    if spec.chart_type in ("bar", "histogram") and categorical:
        if spec.chart_type == "bar":
            counts = bar_counts(data, spec.x, spec.sort_order)
            return [float(i) for i in range(len(counts))], [float(c) for _, c in counts]
        bins = histogram(data, spec.x, spec.bins)
        return (
            [(lo + hi) / 2 for lo, hi, _ in bins],
            [float(c) for _, _, c in bins],
        )
    raise DataError(
        f"cannot sonify a {spec.chart_type} chart"
        + ("" if categorical else "; pass --categorical for bar/histogram")
    )


def _cmd_sonify(args) -> int:
    spec, data = _load(args.spec)
    xs, ys = _series_for_sonify(spec, data, args.categorical)
    cfg = SonifyConfig(
        duration_s=args.duration,
        sample_rate=args.rate,
        f_min=args.fmin,
        f_max=args.fmax,
        mode=args.mode or ("sweep" if spec.chart_type == "line" else "discrete"),
        log_pitch=args.log_pitch,
    )
    if cfg.mode == "regression":
        fit = linear_fit(list(xs), list(ys))
        pairs = [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]
        xs = [p[0] for p in pairs]
        ys = [fit.predict(x) for x in xs]
        buf = sonify_sweep(xs, ys, cfg)
    elif cfg.mode == "sweep":
        buf = sonify_sweep(list(xs), list(ys), cfg)
    else:
        buf = sonify_points(list(xs), list(ys), cfg)
    out = Path(args.output) if args.output else _default_output(args.spec, ".wav")
    _write(out, write_wav(buf))
    return 0


def _cmd_tactile(args) -> int:
    spec, data = _load(args.spec)
    scene = layout(spec, data)
    alt = auto_alt(scene.summary)
    page = tactualize(scene, TactileLayout.for_paper(args.paper), alt)
    out = Path(args.output) if args.output else _default_output(args.spec, ".pdf")
    _write(out, emit_pdf(page))
    if args.preview:
        preview = out.with_suffix(".preview.svg")
        _write(preview, emit_preview_svg(page))
    return 0


def _cmd_audit_palette(args) -> int:
    if args.colors.strip().lower() == "okabe-ito":
        palette = okabe_ito()
    else:
        hexes = [h.strip() for h in args.colors.split(",") if h.strip()]
        palette = Palette(tuple(Rgb.from_hex(h) for h in hexes))
    report = audit_palette(palette, threshold=args.threshold)
    if args.json:
        print(report.to_json())
    else:
        use_color = sys.stdout.isatty() and not os.environ.get("POLYREP_NO_COLOR")
        print(report.to_text(color=use_color))
    return 0 if report.passed else 1


_COMMANDS = {
    "render": _cmd_render,
    "cvd-grid": _cmd_cvd_grid,
    "alt": _cmd_alt,
    "sonify": _cmd_sonify,
    "tactile": _cmd_tactile,
    "audit-palette": _cmd_audit_palette,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_help()
            return 1
        return _COMMANDS[args.command](args)
    except PolyrepError as exc:
        print(f"polyrep: error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"polyrep: error[io]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
