from fractions import Fraction

import pytest

from sniep5.c_tables import (
    CASE_ORDERINGS,
    GIVEN_NAMES,
    REFERENCE_ROWS,
    golden_cells,
    golden_tables,
    parse_offdiag_cell,
)
from sniep5.exact import FormatError, Surd
from sniep5.pattern_c import TABLE_COLUMNS, appendix_d_rows, reproduce_cells

F = Fraction


@pytest.mark.parametrize(
    "text, expected",
    [
        ("53/100 (1/2)", (F(53, 100), F(1, 2), False)),
        ("9/20*", (F(9, 20), None, True)),
        ("1/2", (F(1, 2), None, False)),
        (" 12/25 (23/50) ", (F(12, 25), F(23, 50), False)),
    ],
)
def test_parse_offdiag_cell(text, expected):
    assert parse_offdiag_cell(text) == expected


@pytest.mark.parametrize("text", ["", "1/2 (", "abc", "-1/2"])
def test_parse_offdiag_cell_rejects(text):
    with pytest.raises(FormatError):
        parse_offdiag_cell(text)


def test_row_counts_per_case():
    counts = {c: sum(r.case == c for r in REFERENCE_ROWS) for c in CASE_ORDERINGS}
    assert counts == {1: 2, 2: 6, 3: 4, 4: 7}
    for row in REFERENCE_ROWS:
        assert len(row.given) == len(GIVEN_NAMES[row.case])


def test_golden_cells_shape():
    cells = golden_cells(REFERENCE_ROWS[0])
    assert len(cells) == 28
    assert isinstance(cells["b12 upper"], Surd)
    assert cells["b12 lower before relations"] == F(1, 2)
    assert cells["b12 lower"] == F(53, 100)
    assert cells["b35 via b13 selected"] is True
    assert cells["b35 via b45 selected"] is False


def test_golden_tables_are_fresh_copies():
    first = golden_tables()
    first[(1, 1)]["b12 lower"] = F(0)
    assert golden_tables()[(1, 1)]["b12 lower"] == F(53, 100)


def test_reproduction_uses_golden_cell_names():
    row = REFERENCE_ROWS[5]
    assert set(reproduce_cells(row.case, row.given)) == set(golden_cells(row))


def test_every_determinant_negative():
    assert all(cells["det(I - Bmin)"] < 0 for cells in golden_tables().values())


def test_rendered_rows_follow_column_order():
    rows = appendix_d_rows()
    assert len(rows) == 19
    assert all(tuple(r) == TABLE_COLUMNS for r in rows)
    first = rows[0]
    assert first["det_I_minus_Bmin"] == "-305646963/4000000000"
    assert first["b35_via_b13_selected"] == "*"
    assert first["b24_upper"] == "13/22"
