import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sniep5.exact import (
    DecimalBound,
    DomainError,
    FormatError,
    Side,
    Surd,
    format_rational,
    parse_rational,
    parse_surd,
    sqrt_lower_bound,
    sqrt_upper_bound,
    verify_sqrt_bound,
)

rationals = st.fractions(min_value=0, max_value=10**6, max_denominator=10**6)
digits = st.integers(min_value=1, max_value=12)


def test_sqrt_lower_bound_worked_example():
    assert sqrt_lower_bound(Fraction(679, 2500), 2) == Fraction(13, 25)


def test_sqrt_lower_bound_perfect_square():
    assert sqrt_lower_bound(4, 2) == 2


def test_sqrt_lower_bound_ten_digits_matches_isqrt():
    assert sqrt_lower_bound(2, 10) == Fraction(math.isqrt(2 * 10**20), 10**10)
    assert sqrt_lower_bound(2, 10) == Fraction(14142135623, 10**10)


@pytest.mark.parametrize(
    "x, n, expected",
    [(4, 2, Fraction(2)), (2, 2, Fraction(142, 100)), (Fraction(63936, 15625), 2, Fraction(203, 100))],
)
def test_sqrt_upper_bound_examples(x, n, expected):
    assert sqrt_upper_bound(x, n) == expected


def test_negative_radicand_rejected():
    with pytest.raises(DomainError):
        sqrt_lower_bound(-1, 2)
    with pytest.raises(DomainError):
        sqrt_upper_bound(Fraction(-1, 3), 2)


def test_verify_sqrt_bound_examples():
    assert verify_sqrt_bound(Fraction(679, 2500), Fraction(52, 100), "lower")
    assert verify_sqrt_bound(4, (20, 10), Side.LOWER)
    assert not verify_sqrt_bound(2, Fraction(15, 10), "lower")


def test_verify_sqrt_bound_rejects_non_decimal_denominator():
    with pytest.raises(FormatError):
        verify_sqrt_bound(2, Fraction(1, 3), "lower")


def test_decimal_parsing_is_exact():
    assert parse_rational("0.35") == Fraction(7, 20)
    assert parse_rational("-18/25") == Fraction(-18, 25)
    assert format_rational(Fraction(6, 3)) == "2"


@given(rationals, digits)
def test_lower_and_upper_bracket_the_root(x, n):
    lo, hi = sqrt_lower_bound(x, n), sqrt_upper_bound(x, n)
    assert lo <= hi
    assert hi - lo <= Fraction(2, 10**n)
    assert lo * lo <= x <= hi * hi


@given(rationals, digits)
def test_lower_bound_verifies_and_is_tight(x, n):
    lo = sqrt_lower_bound(x, n)
    assert verify_sqrt_bound(x, (int(lo * 10**n), 10**n), "lower")
    assert (lo + Fraction(1, 10**n)) ** 2 > x


@given(rationals, digits)
def test_decimal_bound_invariant(x, n):
    r = int(sqrt_lower_bound(x, n) * 10**n)
    assert DecimalBound(r, n, Side.LOWER).holds_for(x)
    r_up = int(sqrt_upper_bound(x, n) * 10**n)
    assert DecimalBound(r_up, n, Side.UPPER).holds_for(x)


@given(st.fractions(), st.fractions())
def test_rational_arithmetic_round_trips(a, b):
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a


@pytest.mark.parametrize(
    "square, text",
    [
        (Fraction(44526, 362**2), "sqrt(44526)/362"),
        (Fraction(72), "6*sqrt(2)"),
        (Fraction(9, 4), "3/2"),
        (Fraction(0), "0"),
    ],
)
def test_surd_canonical_form(square, text):
    assert str(Surd(square)) == text
    assert parse_surd(text) == Surd(square)


def test_surd_accepts_radical_sign():
    assert parse_surd("3√2/8") == Surd(Fraction(18, 64))


@given(st.fractions(min_value=0, max_value=1000, max_denominator=10**4))
def test_surd_round_trip(square):
    s = Surd(square)
    assert parse_surd(str(s)) == s
    assert float(s) == pytest.approx(math.sqrt(square))
