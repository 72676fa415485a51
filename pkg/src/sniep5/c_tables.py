"""Frozen reference tables for the pattern-C lower-bound pipeline.

Each row is one sub-range of one ordering case, transcribed cell by cell.
Off-diagonal cells use the printed notation: ``"53/100 (1/2)"`` is a value
raised by an ordering relation from the decimal bound in parentheses, and a
trailing ``*`` marks the side chosen for the b35 bound. Radical cells are
written ``k*sqrt(n)/d``.

:func:`golden_cells` turns a row into the flat, named cell mapping that the
verifier compares against its own reproduction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .exact import FormatError, parse_rational, parse_surd

__all__ = [
    "ReferenceRow",
    "REFERENCE_ROWS",
    "CASE_ORDERINGS",
    "GIVEN_NAMES",
    "golden_cells",
    "golden_tables",
    "parse_offdiag_cell",
]

# Diagonal ordering assumed in each case (largest relations only).
CASE_ORDERINGS = {
    1: "b55 >= b11 and b44 >= b33",
    2: "b11 >= b55 and b44 >= b33",
    3: "b55 >= b11 and b33 >= b44",
    4: "b11 >= b55 and b33 >= b44",
}

# Names of the free ranges each case is parametrised by.
GIVEN_NAMES = {
    1: ("b55 lower", "b55 upper"),
    2: ("b11 lower", "b11 upper"),
    3: ("b33 range lower", "b33 range upper", "b55 range lower", "b55 range upper"),
    4: ("b11 range lower", "b11 range upper", "b33 range lower", "b33 range upper"),
}


@dataclass(frozen=True)
class ReferenceRow:
    case: int
    index: int
    given: tuple[str, ...]
    lower: tuple[str, str, str, str, str]
    upper: tuple[str, str, str, str, str]
    # radicand 12, its root bound, b12 upper, then the same for 24
    intermediates: tuple[str, str, str, str, str, str]
    # b12, b13, b24, b35 via b13, b35 via b45, b45
    offdiag: tuple[str, str, str, str, str, str]
    det: str


def _row(case: int, index: int, given: str, lower: str, upper: str, inter: str, offdiag: str, det: str) -> ReferenceRow:
    def split(text: str) -> tuple[str, ...]:
        return tuple(c.strip() for c in text.split(";"))

    return ReferenceRow(case, index, split(given), split(lower), split(upper), split(inter), split(offdiag), det)  # type: ignore[arg-type]


REFERENCE_ROWS: tuple[ReferenceRow, ...] = (
    # case 1
    _row(1, 1, "0; 20/100", "3/40; 0; 0; 0; 0", "1/5; 1/10; 1/8; 1/6; 1/5",
         "35/6; 241/100; sqrt(56810)/437; 2304/625; 48/25; 13/22",
         "53/100 (1/2); 1/2; 53/100; 53/100*; 53/100; 1/2 (49/100)", "-305646963/4000000000"),
    _row(1, 2, "20/100; 26/100", "3/50; 0; 0; 0; 1/5", "1/4; 3/40; 1/10; 3/20; 13/50",
         "4284/625; 261/100; 3*sqrt(1252230)/6230; 1332/625; 29/20; sqrt(60605)/391",
         "1/2; 49/100; 13/25; 47/100*; 23/50; 49/100 (41/100)", "-136143299/2500000000"),
    # case 2
    _row(2, 1, "0; 14/100", "0; 0; 0; 0; 0", "7/50; 1/10; 7/50; 7/50; 7/50",
         "2396304/390625; 247/100; 68*sqrt(14867)/14867; 2396304/390625; 247/100; 68*sqrt(14867)/14867",
         "63/100 (1/2); 14/25; 63/100 (1/2); 63/100*; 63/100*; 14/25", "-390487023/1250000000"),
    _row(2, 2, "14/100; 20/100", "7/50; 0; 0; 0; 0", "1/5; 9/100; 1/6; 1/5; 1/5",
         "64/15; 103/50; sqrt(17894630)/7690; 2304/625; 48/25; 13/22",
         "1/2; 9/20; 14/25; 49/100; 1/2*; 1/2", "-48643/1000000"),
    _row(2, 3, "20/100; 24/100", "1/5; 0; 0; 0; 0", "6/25; 3/40; 3/20; 6/25; 6/25",
         "58786/15625; 193/100; sqrt(87262)/542; 976144/390625; 79/50; 9*sqrt(10402)/1486",
         "1/2; 41/100; 59/100; 11/25; 11/25*; 11/25", "-5699171/500000000"),
    _row(2, 4, "24/100; 28/100", "6/25; 0; 0; 0; 0", "7/25; 13/200; 13/100; 1/4; 1/4",
         "9657/2500; 49/25; sqrt(279110)/988; 1188/625; 137/100; sqrt(366)/30",
         "1/2; 39/100; 3/5; 21/50; 21/50*; 41/100", "-12411/4000000"),
    _row(2, 5, "28/100; 36/100", "7/25; 0; 0; 0; 0", "9/25; 11/200; 11/100; 11/50; 11/50",
         "1895166/390625; 11/5; 4*sqrt(751137)/6767; 489216/390625; 111/100; 8*sqrt(465063)/8159",
         "1/2; 37/100; 31/50; 11/25*; 43/100; 39/100", "-46207263/2500000000"),
    _row(2, 6, "36/100; 50/100", "9/25; 0; 0; 0; 0", "1/2; 7/200; 7/100; 7/50; 7/50",
         "3095226/390625; 281/100; sqrt(60285298)/16571; 0; 0; sqrt(1462)/43",
         "1/2; 6/25; 13/20; 11/25*; 11/25; 9/25", "-72/15625"),
    # case 3
    _row(3, 1, "0; 12/100; 0; 26/100", "1/25; 0; 0; 0; 19/200", "1/4; 1/10; 3/25; 3/25; 13/50",
         "2795584/390625; 267/100; sqrt(73334649)/15863; 1332/625; 29/20; sqrt(60605)/391",
         "1/2; 49/100; 51/100; 23/50*; 11/25; 49/100 (41/100)", "-214977947/20000000000"),
    _row(3, 2, "12/100; 26/100; 0; 18/100", "1/50; 0; 3/25; 0; 3/50", "9/50; 19/200; 13/50; 1/8; 9/50",
         "2331/625; 193/100; sqrt(22)/8; 1721344/390625; 209/100; 66*sqrt(12973)/12973",
         "1/2; 9/20; 51/100; 11/25; 9/20*; 49/100", "-335607/1250000000"),
    _row(3, 3, "12/100; 26/100; 18/100; 21/100", "1/100; 0; 3/25; 0; 9/50", "19/100; 1/15; 13/50; 1/10; 21/100",
         "63936/15625; 101/50; sqrt(44526)/362; 5752701/1562500; 191/100; sqrt(204021627)/24146",
         "13/25; 47/100; 13/25; 9/20; 9/20*; 12/25", "-7419049/156250000"),
    _row(3, 4, "12/100; 26/100; 21/100; 26/100", "0; 0; 3/25; 0; 21/100", "17/100; 17/300; 13/50; 17/200; 13/50",
         "1685979/390625; 207/100; sqrt(6307787)/4314; 1216116/390625; 44/25; sqrt(46730082)/11334",
         "13/25; 12/25; 13/25; 43/100*; 21/50; 12/25 (23/50)", "-7326711/156250000"),
    # case 4
    _row(4, 1, "0; 15/100; 0; 26/100", "3/50; 0; 1/15; 0; 0", "3/20; 1/10; 13/50; 3/20; 3/20",
         "52836/15625; 183/100; 3*sqrt(828714)/4682; 14161/2500; 119/50; 9/16",
         "1/2; 9/20; 13/25; 47/100; 49/100*; 27/50", "-17003473/468750000"),
    _row(4, 2, "15/100; 25/100; 0; 15/100", "3/20; 0; 0; 0; 0", "1/4; 7/80; 3/20; 3/20; 1/4",
         "14161/2500; 119/50; 3*sqrt(2)/8; 9/4; 3/2; 5/8",
         "1/2; 23/50; 57/100; 9/20*; 9/20; 23/50 (11/25)", "-1684287/80000000"),
    _row(4, 3, "15/100; 25/100; 15/100; 26/100", "3/20; 0; 3/20; 0; 0", "1/4; 1/15; 13/50; 1/6; 7/40",
         "1184/375; 177/100; 2*sqrt(149003)/1367; 1287/400; 179/100; 5*sqrt(5406)/612",
         "1/2; 39/100; 57/100; 21/50; 43/100*; 12/25", "-31285863/2000000000"),
    _row(4, 4, "25/100; 40/100; 0; 10/100", "1/4; 0; 0; 0; 0", "2/5; 1/16; 1/10; 1/10; 1/4",
         "5184/625; 72/25; sqrt(161)/26; 18/25; 21/25; 5*sqrt(1507)/274",
         "1/2; 2/5; 61/100; 43/100*; 21/50; 2/5 (19/50)", "-6702413/400000000"),
    _row(4, 5, "25/100; 40/100; 10/100; 20/100", "1/4; 0; 1/10; 0; 0", "2/5; 1/20; 1/5; 1/8; 3/20",
         "126/25; 56/25; sqrt(140910)/732; 714/625; 53/50; sqrt(66)/12",
         "1/2; 7/20; 61/100; 11/25*; 11/25; 43/100", "-136283/6250000"),
    _row(4, 6, "25/100; 40/100; 20/100; 26/100", "1/4; 0; 1/5; 0; 0", "2/5; 1/60; 1/4; 1/20; 1/20",
         "513/100; 113/50; sqrt(20155)/278; 1026/625; 32/25; sqrt(493)/34",
         "13/25 (1/2); 39/100; 61/100; 13/25*; 13/25; 53/100", "-153180277/1250000000"),
    _row(4, 7, "40/100; 50/100; 0; 26/100", "2/5; 0; 0; 0; 0", "1/2; 1/40; 1/10; 1/20; 1/10",
         "6156/625; 313/100; sqrt(105415)/727; 0; 0; sqrt(7)/3",
         "1/2; 7/25; 67/100; 12/25*; 23/50; 21/50", "-2089397/31250000"),
)

_OFFDIAG_RE = re.compile(r"^\s*(?P<value>[0-9/]+)\s*(?:\((?P<pre>[0-9/]+)\))?\s*(?P<star>\*)?\s*$")


def parse_offdiag_cell(text: str) -> tuple[Fraction, Fraction | None, bool]:
    """``"53/100 (1/2)"`` gives ``(53/100, 1/2, False)``; ``"9/20*"`` gives ``(9/20, None, True)``."""
    m = _OFFDIAG_RE.match(text)
    if m is None:
        raise FormatError(f"bad off-diagonal cell: {text!r}")
    pre = parse_rational(m.group("pre")) if m.group("pre") else None
    return parse_rational(m.group("value")), pre, m.group("star") is not None


DIAG_NAMES = ("b11", "b22", "b33", "b44", "b55")


def golden_cells(row: ReferenceRow) -> dict[str, Any]:
    """Named cells of one reference row, in table order.

    Unparenthesised relation-improvable cells get their "before relations"
    value equal to the final value, matching how the reproduction reports them.
    """
    cells: dict[str, Any] = {}
    for name, text in zip(DIAG_NAMES, row.lower):
        cells[f"{name} lower"] = parse_rational(text)
    for name, text in zip(DIAG_NAMES, row.upper):
        cells[f"{name} upper"] = parse_rational(text)
    r12, root12, up12, r24, root24, up24 = row.intermediates
    cells["radicand 12"] = parse_rational(r12)
    cells["radicand root 12"] = parse_rational(root12)
    cells["b12 upper"] = parse_surd(up12)
    cells["radicand 24"] = parse_rational(r24)
    cells["radicand root 24"] = parse_rational(root24)
    cells["b24 upper"] = parse_surd(up24)

    parsed = [parse_offdiag_cell(t) for t in row.offdiag]
    (v12, p12, _), (v13, _, _), (v24, p24, _), (v35a, _, s35a), (v35b, _, s35b), (v45, p45, _) = parsed
    cells["b12 lower before relations"] = p12 if p12 is not None else v12
    cells["b12 lower"] = v12
    cells["b13 lower"] = v13
    cells["b24 lower before relations"] = p24 if p24 is not None else v24
    cells["b24 lower"] = v24
    cells["b35 lower via b13"] = v35a
    cells["b35 lower via b45"] = v35b
    cells["b35 via b13 selected"] = s35a
    cells["b35 via b45 selected"] = s35b
    cells["b45 lower before relations"] = p45 if p45 is not None else v45
    cells["b45 lower"] = v45
    cells["det(I - Bmin)"] = parse_rational(row.det)
    return cells


def golden_tables() -> dict[tuple[int, int], dict[str, Any]]:
    """Fresh, mutable copy of every reference row keyed by ``(case, index)``."""
    return {(r.case, r.index): golden_cells(r) for r in REFERENCE_ROWS}
