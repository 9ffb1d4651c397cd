"""Grade-1 (uncontracted) literary braille translation.

Cells use the standard 2x3 dot numbering: 1-2-3 down the left column,
4-5-6 down the right. Letters follow the a-z table; each capital takes a
dot-6 prefix; a maximal run of digits takes one numeric indicator
(dots 3-4-5-6) with digits mapped onto a-j, and a dot-5-6 letter sign
restores letter meaning when a-j letters immediately follow a digit.
Punctuation uses the UEB-style signs so every supported character decodes
unambiguously.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BrailleError


@dataclass(frozen=True)
class BrailleCell:
    dots: frozenset[int]

    def __post_init__(self):
        if not self.dots <= {1, 2, 3, 4, 5, 6}:
            raise BrailleError(f"dots must be within 1..6, got {sorted(self.dots)}")

    def to_unicode(self) -> str:
        mask = 0
        for d in self.dots:
            mask |= 1 << (d - 1)
        return chr(0x2800 + mask)


def _cell(*dots: int) -> BrailleCell:
    return BrailleCell(frozenset(dots))


EMPTY = _cell()
CAPITAL = _cell(6)
NUMERIC = _cell(3, 4, 5, 6)
LETTER_SIGN = _cell(5, 6)

LETTERS: dict[str, BrailleCell] = {
    "a": _cell(1),
    "b": _cell(1, 2),
    "c": _cell(1, 4),
    "d": _cell(1, 4, 5),
    "e": _cell(1, 5),
    "f": _cell(1, 2, 4),
    "g": _cell(1, 2, 4, 5),
    "h": _cell(1, 2, 5),
    "i": _cell(2, 4),
    "j": _cell(2, 4, 5),
    "k": _cell(1, 3),
    "l": _cell(1, 2, 3),
    "m": _cell(1, 3, 4),
    "n": _cell(1, 3, 4, 5),
    "o": _cell(1, 3, 5),
    "p": _cell(1, 2, 3, 4),
    "q": _cell(1, 2, 3, 4, 5),
    "r": _cell(1, 2, 3, 5),
    "s": _cell(2, 3, 4),
    "t": _cell(2, 3, 4, 5),
    "u": _cell(1, 3, 6),
    "v": _cell(1, 2, 3, 6),
    "w": _cell(2, 4, 5, 6),
    "x": _cell(1, 3, 4, 6),
    "y": _cell(1, 3, 4, 5, 6),
    "z": _cell(1, 3, 5, 6),
}

# digits 1..9,0 reuse the a..j patterns after the numeric indicator
DIGITS: dict[str, BrailleCell] = {
    d: LETTERS[l] for d, l in zip("1234567890", "abcdefghij")
}

PUNCTUATION: dict[str, tuple[BrailleCell, ...]] = {
    ".": (_cell(2, 5, 6),),
    ",": (_cell(2),),
    ";": (_cell(2, 3),),
    ":": (_cell(2, 5),),
    "-": (_cell(3, 6),),
    "(": (_cell(5), _cell(1, 2, 6)),
    ")": (_cell(5), _cell(3, 4, 5)),
    "%": (_cell(4, 6), _cell(3, 5, 6)),
    "/": (_cell(4, 5, 6), _cell(3, 4)),
    "+": (_cell(5), _cell(2, 3, 5)),
}

def to_braille(text: str) -> list[BrailleCell]:
    """Translate text (letters, digits, space, and . , : ; ( ) % / + -)
    into braille cells. Unsupported characters raise BrailleError naming
    the character and its position."""
    cells: list[BrailleCell] = []
    in_number = False
    for i, ch in enumerate(text):
        if ch.isascii() and ch.isdigit():
            if not in_number:
                cells.append(NUMERIC)
                in_number = True
            cells.append(DIGITS[ch])
            continue
        if ch == " ":
            cells.append(EMPTY)
        elif "a" <= ch <= "z":
            if in_number and ch <= "j":
                cells.append(LETTER_SIGN)
            cells.append(LETTERS[ch])
        elif "A" <= ch <= "Z":
            cells.append(CAPITAL)
            cells.append(LETTERS[ch.lower()])
        elif ch in PUNCTUATION:
            cells.extend(PUNCTUATION[ch])
        else:
            raise BrailleError(
                f"unsupported character {ch!r} at position {i}; "
                "supported: letters, digits, space, and . , : ; ( ) % / + -"
            )
        in_number = False
    return cells


def to_unicode(text: str) -> str:
    """Unicode braille-pattern rendering, handy for previews and tests."""
    return "".join(c.to_unicode() for c in to_braille(text))
