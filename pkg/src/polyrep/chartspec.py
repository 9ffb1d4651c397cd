"""Declarative chart descriptions: JSON parsing, defaults, and data binding.

Spec document schema::

    {
      "title": str?, "subtitle": str?, "caption": str?,
      "data": {"csv": "<path>"} | {"inline": {"<col>": [...]}},
      "chart": {"type": "scatter|bar|histogram|boxplot|line",
                "x": str, "y": str?, "group": str?, "bins": int?,
                "sort_order": "appearance|alpha"?},
      "encodings": {"color": bool?, "shape": bool?, "linetype": bool?,
                    "facet": bool?}?,
      "palette": "okabe-ito" | ["#RRGGBB", ...]?,
      "alt": str?
    }
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .color import Palette, Rgb, okabe_ito
from .dataset import Column, Dataset, parse_csv
from .errors import SpecError

CHART_TYPES = ("scatter", "bar", "histogram", "boxplot", "line")
POINT_CHARTS = ("scatter",)
LINE_CHARTS = ("line",)


@dataclass(frozen=True)
class Encodings:
    color: bool = True
    shape: bool = True
    linetype: bool = True
    facet: bool = False


@dataclass(frozen=True)
class DataSource:
    csv_path: str | None = None
    inline: dict[str, list] | None = None


@dataclass(frozen=True)
class ChartSpec:
    chart_type: str
    x: str
    y: str | None = None
    group: str | None = None
    title: str | None = None
    subtitle: str | None = None
    caption: str | None = None
    encodings: Encodings = field(default_factory=Encodings)
    palette: Palette = field(default_factory=okabe_ito)
    bins: int | None = None
    manual_alt: str | None = None
    sort_order: str = "appearance"
    data: DataSource | None = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SpecError(message)


def _opt_str(obj: dict, key: str) -> str | None:
    v = obj.get(key)
    if v is None:
        return None
    _require(isinstance(v, str), f"{key!r} must be a string")
    return v


def parse_spec(data: bytes) -> ChartSpec:
    """Parse and validate a chart spec document, applying defaults."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SpecError(f"spec is not valid JSON: {exc}") from None
    _require(isinstance(doc, dict), "spec root must be a JSON object")
    chart = doc.get("chart")
    _require(isinstance(chart, dict), "spec needs a 'chart' object")

    ctype = chart.get("type")
    _require(
        ctype in CHART_TYPES,
        f"unknown chart type {ctype!r}; expected one of {', '.join(CHART_TYPES)}",
    )
    x = chart.get("x")
    y = chart.get("y")
    if ctype in ("scatter", "line"):
        _require(
            isinstance(x, str) and x != "" and isinstance(y, str) and y != "",
            f"{ctype} requires x and y columns",
        )
    else:
        _require(isinstance(x, str) and x != "", f"{ctype} requires an x column")
    if ctype in ("bar", "histogram"):
        _require(y is None, f"{ctype} takes only x")
    group = _opt_str(chart, "group")
    if group is not None:
        _require(
            ctype in ("scatter", "line"),
            f"group is only supported for scatter and line charts, not {ctype}",
        )
    bins = chart.get("bins")
    if bins is not None:
        _require(
            isinstance(bins, int) and not isinstance(bins, bool) and bins >= 1,
            "bins must be a positive integer",
        )
        _require(ctype == "histogram", "bins only applies to histograms")
    sort_order = chart.get("sort_order", "appearance")
    _require(
        sort_order in ("appearance", "alpha"),
        f"sort_order must be 'appearance' or 'alpha', got {sort_order!r}",
    )

    enc_doc = doc.get("encodings", {})
    _require(isinstance(enc_doc, dict), "'encodings' must be an object")
    enc_kwargs = {}
    for key in ("color", "shape", "linetype", "facet"):
        if key in enc_doc:
            _require(isinstance(enc_doc[key], bool), f"encodings.{key} must be a bool")
            enc_kwargs[key] = enc_doc[key]
    # shape applies to point marks, linetype to line marks; never both
    encodings = Encodings(**enc_kwargs)
    if ctype not in POINT_CHARTS:
        encodings = replace(encodings, shape=False)
    if ctype not in LINE_CHARTS:
        encodings = replace(encodings, linetype=False)

    palette = _parse_palette(doc.get("palette", "okabe-ito"))

    data_doc = doc.get("data")
    source = None
    if data_doc is not None:
        _require(isinstance(data_doc, dict), "'data' must be an object")
        if "csv" in data_doc:
            _require(isinstance(data_doc["csv"], str), "data.csv must be a path string")
            source = DataSource(csv_path=data_doc["csv"])
        elif "inline" in data_doc:
            _require(isinstance(data_doc["inline"], dict), "data.inline must be an object")
            source = DataSource(inline=data_doc["inline"])
        else:
            raise SpecError("'data' needs either 'csv' or 'inline'")

    return ChartSpec(
        chart_type=ctype,
        x=x,
        y=y,
        group=group,
        title=_opt_str(doc, "title"),
        subtitle=_opt_str(doc, "subtitle"),
        caption=_opt_str(doc, "caption"),
        encodings=encodings,
        palette=palette,
        bins=bins,
        manual_alt=_opt_str(doc, "alt"),
        sort_order=sort_order,
        data=source,
    )


def _parse_palette(value) -> Palette:
    if value == "okabe-ito":
        return Palette(okabe_ito().colors, name="okabe-ito")
    if isinstance(value, list) and value:
        try:
            return Palette(tuple(Rgb.from_hex(h) for h in value))
        except Exception as exc:
            raise SpecError(f"bad palette entry: {exc}") from None
    raise SpecError("palette must be \"okabe-ito\" or a list of #RRGGBB strings")


def load_dataset(spec: ChartSpec, base_dir: Path | str = ".") -> Dataset:
    """Materialize the spec's data source (csv paths resolve against base_dir)."""
    if spec.data is None:
        raise SpecError("spec has no 'data' section")
    if spec.data.csv_path is not None:
        path = Path(base_dir) / spec.data.csv_path
        return parse_csv(path.read_bytes())
    return inline_dataset(spec.data.inline or {})


def inline_dataset(columns: dict[str, list]) -> Dataset:
    """Build a Dataset from inline JSON columns (null marks a missing cell)."""
    if not columns:
        raise SpecError("inline data has no columns")
    out: dict[str, Column] = {}
    n_rows = None
    for name, values in columns.items():
        if not isinstance(values, list):
            raise SpecError(f"inline column {name!r} must be an array")
        if n_rows is None:
            n_rows = len(values)
        elif len(values) != n_rows:
            raise SpecError(
                f"inline column {name!r} has {len(values)} values, expected {n_rows}"
            )
        present = [v for v in values if v is not None]
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in present):
            vals = tuple(None if v is None else float(v) for v in values)
            for v in vals:
                if v is not None and not math.isfinite(v):
                    raise SpecError(f"inline column {name!r} holds non-finite {v!r}")
            out[name] = Column("numeric", vals)
        elif all(isinstance(v, str) for v in present):
            out[name] = Column("categorical", tuple(values))
        else:
            raise SpecError(f"inline column {name!r} mixes numbers and strings")
    return Dataset(out, n_rows or 0)


def bind(spec: ChartSpec, data: Dataset) -> None:
    """Check that the spec's column roles exist in the data with usable kinds."""
    for role, name in (("x", spec.x), ("y", spec.y), ("group", spec.group)):
        if name is not None and name not in data:
            raise SpecError(f"{role} column {name!r} is not in the dataset")
    ctype = spec.chart_type
    if ctype in ("scatter", "line"):
        _require(data.column(spec.x).kind == "numeric", f"{ctype} needs numeric x")
        _require(data.column(spec.y).kind == "numeric", f"{ctype} needs numeric y")
        if spec.group is not None:
            _require(
                data.column(spec.group).kind == "categorical",
                "group column must be categorical",
            )
    elif ctype == "bar":
        _require(
            data.column(spec.x).kind == "categorical",
            f"bar needs a categorical x; use a histogram for numeric {spec.x!r}",
        )
    elif ctype == "histogram":
        _require(data.column(spec.x).kind == "numeric", "histogram needs numeric x")
    elif ctype == "boxplot":
        if spec.y is None:
            _require(
                data.column(spec.x).kind == "numeric",
                "boxplot without y needs a numeric x",
            )
        else:
            _require(
                data.column(spec.x).kind == "categorical"
                and data.column(spec.y).kind == "numeric",
                "boxplot needs numeric y grouped by categorical x (or numeric x alone)",
            )
