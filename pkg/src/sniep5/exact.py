"""Exact rationals and certified decimal bounds on square roots.

Rationals are :class:`fractions.Fraction`, which already keeps numerator and
denominator coprime with a positive denominator. This module adds parsing of
the text format used across the package and integer-only square-root bounds.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "Side",
    "DecimalBound",
    "DomainError",
    "FormatError",
    "to_rational",
    "parse_rational",
    "format_rational",
    "sqrt_lower_bound",
    "sqrt_upper_bound",
    "verify_sqrt_bound",
    "decimal_bound",
    "Surd",
    "parse_surd",
]


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class FormatError(ValueError):
    """Malformed textual or structural input."""


class Side(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


_RATIONAL_RE = re.compile(
    r"""^\s*
    (?P<sign>[+-])?\s*
    (?:
        (?P<num>\d+)\s*/\s*(?P<den>\d+)
      | (?P<dec>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
    )\s*$""",
    re.VERBOSE,
)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a decimal literal into an exact fraction.

    >>> parse_rational("0.35")
    Fraction(7, 20)
    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise FormatError(f"not a rational literal: {text!r}")
    sign = -1 if m.group("sign") == "-" else 1
    if m.group("num") is not None:
        den = int(m.group("den"))
        if den == 0:
            raise FormatError(f"zero denominator: {text!r}")
        return sign * Fraction(int(m.group("num")), den)
    # Fraction parses decimal strings exactly, without a float detour.
    return sign * Fraction(m.group("dec"))


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ints, fractions and rational text to :class:`Fraction`.

    Floats are rejected: a binary float is never an intended exact input.
    """
    if isinstance(value, bool):
        raise FormatError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise FormatError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(x: Fraction) -> str:
    """Render as ``"p/q"``, or ``"p"`` for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _check_args(x: Fraction, n: int) -> Fraction:
    x = to_rational(x)
    if x < 0:
        raise DomainError(f"square root of negative rational {x}")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"digit count must be a positive integer, got {n!r}")
    return x


def _floor_sqrt_scaled(x: Fraction, n: int) -> int:
    # Largest r with r^2 <= x * 10^(2n), i.e. r^2 * q <= p * 10^(2n).
    scaled = x.numerator * 10 ** (2 * n)
    return math.isqrt(scaled // x.denominator)


def sqrt_lower_bound(x: RationalLike, n: int) -> Fraction:
    """Largest ``r/10**n`` whose square does not exceed ``x``.

    >>> sqrt_lower_bound(Fraction(679, 2500), 2)
    Fraction(13, 25)
    """
    x = _check_args(x, n)
    # floor(p*10^2n / q) has the same integer square root floor as p*10^2n/q.
    return Fraction(_floor_sqrt_scaled(x, n), 10**n)


def sqrt_upper_bound(x: RationalLike, n: int) -> Fraction:
    """Smallest ``r/10**n`` whose square is at least ``x``."""
    x = _check_args(x, n)
    r = _floor_sqrt_scaled(x, n)
    if r * r * x.denominator != x.numerator * 10 ** (2 * n):
        r += 1
    return Fraction(r, 10**n)


def _decimal_digits(den: int) -> int:
    """Smallest ``n`` with ``den`` dividing ``10**n``."""
    counts = []
    for prime in (2, 5):
        k = 0
        while den % prime == 0:
            den //= prime
            k += 1
        counts.append(k)
    if den != 1:
        raise FormatError("candidate denominator is not a power of ten")
    return max(counts)


@dataclass(frozen=True)
class DecimalBound:
    """A mantissa ``r`` read as ``r / 10**digits`` bounding a square root."""

    mantissa: int
    digits: int
    side: Side

    @property
    def value(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.digits)

    def holds_for(self, x: RationalLike) -> bool:
        """Integer-only check of the bound invariant for ``sqrt(x)``."""
        x = to_rational(x)
        p, q = x.numerator, x.denominator
        r, scale = self.mantissa, 10 ** (2 * self.digits)
        if self.side is Side.LOWER:
            return scale * p - q * r * r >= 0 and q * (r + 1) ** 2 - scale * p > 0
        return q * r * r - scale * p >= 0 and (r == 0 or scale * p - q * (r - 1) ** 2 > 0)


def decimal_bound(x: RationalLike, n: int, side: Side = Side.LOWER) -> DecimalBound:
    value = sqrt_lower_bound(x, n) if side is Side.LOWER else sqrt_upper_bound(x, n)
    return DecimalBound(int(value * 10**n), n, side)


def verify_sqrt_bound(x: RationalLike, candidate: Union[Fraction, tuple[int, int]], side: Side | str) -> bool:
    """Check ``candidate`` as a lower or upper decimal bound of ``sqrt(x)``.

    ``candidate`` may be a fraction or an unreduced ``(numerator, denominator)``
    pair such as ``(20, 10)``. A reduced fraction is read with the fewest
    decimal digits that express it: ``3/2`` is ``15/10``.
    """
    side = Side(side) if isinstance(side, str) else side
    if isinstance(candidate, tuple):
        num, den = candidate
    else:
        candidate = to_rational(candidate)
        num, den = candidate.numerator, candidate.denominator
    if den <= 0:
        raise FormatError("candidate denominator must be positive")
    digits = _decimal_digits(den)
    num *= 10**digits // den
    if num < 0:
        return False
    return DecimalBound(num, digits, side).holds_for(x)


def _square_part(n: int, trial_limit: int = 100_000) -> tuple[int, int]:
    """Split ``n = k**2 * rest`` by trial division.

    ``rest`` is square-free whenever ``n`` has no repeated prime factor above
    ``trial_limit``; the value ``k * sqrt(rest)`` is exact either way.
    """
    k, free, rest = 1, 1, n
    p = 2
    while p <= trial_limit and p * p <= rest:
        while rest % (p * p) == 0:
            rest //= p * p
            k *= p
        if rest % p == 0:
            rest //= p
            free *= p
        p += 1 if p == 2 else 2
    root = math.isqrt(rest)
    if root * root == rest:
        return k * root, free
    return k, free * rest


@dataclass(frozen=True)
class Surd:
    """The nonnegative square root of a nonnegative rational.

    Stored by its exact square, so equality and ordering are exact.
    """

    square: Fraction

    def __post_init__(self) -> None:
        sq = to_rational(self.square)
        if sq < 0:
            raise DomainError(f"square root of negative rational {sq}")
        object.__setattr__(self, "square", sq)

    def __lt__(self, other: "Surd") -> bool:
        return self.square < other.square

    def __le__(self, other: "Surd") -> bool:
        return self.square <= other.square

    def __float__(self) -> float:
        return math.sqrt(self.square.numerator / self.square.denominator)

    def parts(self) -> tuple[int, int, int]:
        """``(k, n, d)`` with value ``k * sqrt(n) / d`` and a rational denominator."""
        p, q = self.square.numerator, self.square.denominator
        k, n = _square_part(p * q)
        g = math.gcd(k, q)
        return k // g, n, q // g

    def rational(self) -> Fraction | None:
        k, n, d = self.parts()
        return Fraction(k, d) if n == 1 else None

    def __str__(self) -> str:
        k, n, d = self.parts()
        if n == 1:
            return format_rational(Fraction(k, d))
        head = f"sqrt({n})" if k == 1 else f"{k}*sqrt({n})"
        return head if d == 1 else f"{head}/{d}"


_SURD_RE = re.compile(r"^\s*(?:(?P<k>\d+)\s*\*?\s*)?(?:sqrt\((?P<n>\d+)\)|\u221a(?P<n2>\d+))\s*(?:/\s*(?P<d>\d+))?\s*$")


def parse_surd(text: str) -> Surd:
    """Parse ``"3*sqrt(2)/8"``, ``"3\u221a2/8"`` or a plain rational.

    >>> parse_surd("3*sqrt(2)/8").square
    Fraction(9, 32)
    """
    m = _SURD_RE.match(text.replace(",", ""))
    if m is None:
        value = parse_rational(text.replace(",", ""))
        if value < 0:
            raise FormatError(f"negative surd literal: {text!r}")
        return Surd(value * value)
    k = int(m.group("k") or 1)
    n = int(m.group("n") or m.group("n2"))
    d = int(m.group("d") or 1)
    if d == 0:
        raise FormatError(f"zero denominator: {text!r}")
    return Surd(Fraction(k * k * n, d * d))
