from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyrep.dataset import Column, Dataset, format_number, parse_csv, serialize_csv
from polyrep.errors import CsvParseError, DataError


def test_numeric_inference():
    data = parse_csv(b"x\n1\n2\n")
    assert data.columns["x"].kind == "numeric"
    assert data.columns["x"].values == (1.0, 2.0)


def test_mixed_forces_categorical():
    data = parse_csv(b"x\n1\nfoo\n")
    col = data.columns["x"]
    assert col.kind == "categorical"
    assert col.values == ("1", "foo")


def test_missing_cells_and_na():
    data = parse_csv(b"a,b\n1,x\n,NA\n3,y\n")
    assert data.columns["a"].values == (1.0, None, 3.0)
    assert data.columns["b"].values == ("x", None, "y")
    assert data.n_rows == 3


def test_penguins_species_counts(penguins):
    assert penguins.n_rows == 344
    species = penguins.columns["species"]
    assert species.kind == "categorical"
    assert species.non_missing().count("Adelie") == 152
    assert species.non_missing().count("Chinstrap") == 68
    assert species.non_missing().count("Gentoo") == 124


def test_ragged_row_reports_row_number():
    with pytest.raises(CsvParseError) as err:
        parse_csv(b"a,b\n1,2\n3\n")
    assert err.value.row == 3
    assert "row 3" in str(err.value)


def test_duplicate_header_rejected():
    with pytest.raises(CsvParseError, match="duplicate"):
        parse_csv(b"a,a\n1,2\n")


def test_empty_header_name_rejected():
    with pytest.raises(CsvParseError):
        parse_csv(b"a,\n1,2\n")


def test_quoted_fields_and_crlf():
    data = parse_csv(b'name,note\r\n"Smith, J","say ""hi"""\r\n')
    assert data.columns["name"].values == ("Smith, J",)
    assert data.columns["note"].values == ('say "hi"',)


def test_quoted_field_with_embedded_newline():
    data = parse_csv(b'a,b\n"line one\nline two",2\n')
    assert data.n_rows == 1
    assert data.columns["a"].values == ("line one\nline two",)
    assert data.columns["b"].values == (2.0,)


def test_not_utf8_rejected():
    with pytest.raises(CsvParseError, match="UTF-8"):
        parse_csv(b"x\n\xff\xfe\n")


def test_non_finite_spellings_are_categorical():
    data = parse_csv(b"x\n1\nnan\ninf\n")
    assert data.columns["x"].kind == "categorical"


def test_underscored_numbers_are_categorical():
    assert parse_csv(b"x\n1_0\n2\n").columns["x"].kind == "categorical"


def test_column_length_mismatch_rejected():
    with pytest.raises(DataError):
        Dataset({"x": Column("numeric", (1.0,))}, n_rows=2)


def test_categorical_rejects_reserved_missing_tokens():
    with pytest.raises(DataError):
        Column("categorical", ("NA",))
    with pytest.raises(DataError):
        Column("categorical", ("",))


def test_roundtrip_penguins(penguins):
    assert parse_csv(serialize_csv(penguins)) == penguins


_names = st.text(
    st.characters(whitelist_categories=("Ll", "Lu", "Nd")), min_size=1, max_size=8
)
_cells = st.one_of(
    st.none(),
    st.integers(-1000, 1000).map(float),
    st.text(
        st.characters(whitelist_categories=("Ll", "Lu")), min_size=1, max_size=6
    ).filter(lambda s: s != "NA"),  # reserved missing token
)


@given(
    names=st.lists(_names, min_size=1, max_size=4, unique=True),
    rows=st.integers(0, 12),
    data=st.data(),
)
def test_roundtrip_random(names, rows, data):
    columns = {}
    for name in names:
        raw = data.draw(st.lists(_cells, min_size=rows, max_size=rows))
        present = [v for v in raw if v is not None]
        # all-missing columns infer numeric, matching the parser
        if all(isinstance(v, float) for v in present):
            columns[name] = Column("numeric", tuple(raw))
        else:
            columns[name] = Column(
                "categorical",
                tuple(None if v is None else str(v) for v in raw),
            )
    ds = Dataset(columns, rows)
    assert parse_csv(serialize_csv(ds)) == ds


@pytest.mark.parametrize(
    "value,expected",
    [(50.0, "50"), (0.0, "0"), (1.5, "1.5"), (-3.0, "-3"), (0.2, "0.2"),
     (152.0, "152"), (1e-5, "0.00001")],
)
def test_format_number(value, expected):
    assert format_number(value) == expected
