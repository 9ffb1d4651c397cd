"""Typed columnar tables parsed from CSV.

A column is either numeric (finite floats) or categorical (non-empty
strings); empty cells and the literal ``NA`` are missing values. Type
inference is per column: numeric iff every non-missing cell parses as a
decimal number.
"""

from __future__ import annotations

import csv
import decimal
import io
import math
from dataclasses import dataclass, field

from .errors import CsvParseError, DataError

MISSING_TOKENS = ("", "NA")


@dataclass(frozen=True)
class Column:
    kind: str  # "numeric" | "categorical"
    values: tuple  # numeric: float | None; categorical: str | None

    def __post_init__(self):
        if self.kind not in ("numeric", "categorical"):
            raise DataError(f"unknown column kind {self.kind!r}")
        for v in self.values:
            if v is None:
                continue
            if self.kind == "numeric":
                if not isinstance(v, float) or not math.isfinite(v):
                    raise DataError(f"numeric column holds non-finite value {v!r}")
            elif not isinstance(v, str) or v in MISSING_TOKENS:
                # "" and the literal NA are reserved as missing-value tokens
                raise DataError(f"categorical column holds invalid value {v!r}")

    def non_missing(self) -> list:
        return [v for v in self.values if v is not None]

    def n_missing(self) -> int:
        return sum(1 for v in self.values if v is None)


@dataclass(frozen=True)
class Dataset:
    columns: dict[str, Column] = field(default_factory=dict)
    n_rows: int = 0

    def __post_init__(self):
        for name, col in self.columns.items():
            if not name:
                raise DataError("column names must be non-empty")
            if len(col.values) != self.n_rows:
                raise DataError(
                    f"column {name!r} has {len(col.values)} values, expected {self.n_rows}"
                )

    def __contains__(self, name: str) -> bool:
        return name in self.columns

    def column(self, name: str) -> Column:
        try:
            return self.columns[name]
        except KeyError:
            raise DataError(f"no column named {name!r}") from None

    def numeric(self, name: str) -> Column:
        col = self.column(name)
        if col.kind != "numeric":
            raise DataError(f"column {name!r} is categorical, expected numeric")
        return col

    def categorical(self, name: str) -> Column:
        col = self.column(name)
        if col.kind != "categorical":
            raise DataError(f"column {name!r} is numeric, expected categorical")
        return col


def _parse_cell(cell: str) -> float | None:
    """Float value if the cell is a decimal number, else None."""
    s = cell.strip()
    if not s or "_" in s:
        return None
    try:
        v = float(s)
    except ValueError:
        return None
    # inf / nan spellings are data, not numbers, for our purposes
    return v if math.isfinite(v) else None


def parse_csv(data: bytes) -> Dataset:
    """Parse RFC-4180-style CSV bytes (UTF-8, header row) into a Dataset.

    Raises CsvParseError for undecodable bytes, duplicate or empty header
    names, and ragged rows (with the offending 1-based row number).
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CsvParseError(f"input is not valid UTF-8: {exc}") from None

    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvParseError("empty input, expected a header row") from None

    names = [h.strip() for h in header]
    if any(not n for n in names):
        raise CsvParseError("header contains an empty column name", row=1)
    seen = set()
    for n in names:
        if n in seen:
            raise CsvParseError(f"duplicate header {n!r}", row=1)
        seen.add(n)

    cells: list[list[str]] = [[] for _ in names]
    n_rows = 0
    for i, row in enumerate(reader, start=2):
        if not row:
            continue  # ignore trailing blank line
        if len(row) != len(names):
            raise CsvParseError(
                f"expected {len(names)} fields, found {len(row)}", row=i
            )
        for j, cell in enumerate(row):
            cells[j].append(cell)
        n_rows += 1

    columns: dict[str, Column] = {}
    for name, raw in zip(names, cells):
        missing = [c.strip() in MISSING_TOKENS for c in raw]
        parsed = [None if m else _parse_cell(c) for c, m in zip(raw, missing)]
        if all(p is not None for p, m in zip(parsed, missing) if not m):
            columns[name] = Column("numeric", tuple(parsed))
        else:
            columns[name] = Column(
                "categorical",
                tuple(None if m else c.strip() for c, m in zip(raw, missing)),
            )
    return Dataset(columns, n_rows)


def serialize_csv(data: Dataset) -> bytes:
    """Inverse of parse_csv on well-formed datasets (LF line endings)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(data.columns))
    cols = list(data.columns.values())
    for i in range(data.n_rows):
        row = []
        for col in cols:
            v = col.values[i]
            if v is None:
                row.append("NA")
            elif col.kind == "numeric":
                row.append(format_number(v))
            else:
                row.append(v)
        writer.writerow(row)
    return buf.getvalue().encode("utf-8")


def format_number(v: float) -> str:
    """Shortest round-trip decimal, no trailing zeros ("50", not "50.0")."""
    if v == 0:
        return "0"
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    s = repr(float(v))
    if "e" in s or "E" in s:
        # repr carries the shortest digits; re-render without the exponent
        s = format(decimal.Decimal(s), "f")
    return s
