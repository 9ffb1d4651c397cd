"""Exception hierarchy shared by all polyrep modules.

Every error carries a short stable ``code`` used by the CLI as an
``error[<code>]:`` prefix on stderr, so scripts can match on it.
"""

from __future__ import annotations


class PolyrepError(Exception):
    """Base class for all validation and processing errors."""

    code = "error"


class CsvParseError(PolyrepError):
    """Malformed CSV input. ``row`` is the 1-based row number when known."""

    code = "csv"

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


class SpecError(PolyrepError):
    """Invalid chart spec document, or a spec that does not bind to the data."""

    code = "spec"


class DataError(PolyrepError):
    """Data does not satisfy an operation's preconditions."""

    code = "data"


class BrailleError(PolyrepError):
    """Text contains a character outside the supported braille alphabet."""

    code = "braille"


class TactileError(PolyrepError):
    """Tactile page cannot be laid out (label overflow, etc.)."""

    code = "tactile"
