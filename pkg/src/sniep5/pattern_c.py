"""The five-by-five zero pattern C with trace one half.

The matrix family is::

    [ b11  b12  b13   0    0  ]
    [ b12  b22   0   b24   0  ]
    [ b13   0   b33   0   b35 ]
    [  0   b24   0   b44  b45 ]
    [  0    0   b35  b45  b55 ]

Contents:

* :class:`CParams` / :func:`build_c` for exact instances and
  :func:`c_predicates` for the exact truth value of every entry bound.
* The lower-bound pipeline used when both ``b33`` and ``b55`` are small:
  :func:`derive_diag_bounds`, :func:`offdiag_lower_bounds`,
  :func:`apply_relations` and :func:`build_bmin_and_eval`, replayed against
  the frozen tables of :mod:`sniep5.c_tables` by :func:`verify_appendix_d`.
* :func:`verify_appendix_c` for the large ``b33`` certificate and
  :func:`verify_c_identities` for the polynomial identities behind the bounds.
"""

from __future__ import annotations

import concurrent.futures
import functools
import math
import random
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from .c_tables import DIAG_NAMES, REFERENCE_ROWS, golden_tables
from .exact import (
    DomainError,
    RationalLike,
    Surd,
    format_rational,
    sqrt_lower_bound,
    to_rational,
    verify_sqrt_bound,
)
from .pattern_h import _identity, match_printed_roots
from .poly import Interval, MultiPoly, Sign, UniPoly, count_real_roots, sign_on_interval, variables
from .report import Report
from .spectral import SymMatrix, charpoly_exact, determinant, eigen_jacobi, permutation_conjugate

__all__ = [
    "C_SYMBOLS",
    "C_CYCLE_PERMUTATION",
    "C_SWAP_PERMUTATION",
    "CASE_RELATIONS",
    "TABLE_COLUMNS",
    "CParams",
    "build_c",
    "symbolic_c",
    "c_expressions",
    "c_predicates",
    "DUAL_C_PREDICATE",
    "DiagBounds",
    "PipelineResult",
    "PipelineError",
    "derive_diag_bounds",
    "offdiag_lower_bounds",
    "apply_relations",
    "build_bmin_and_eval",
    "reproduce_cells",
    "verify_appendix_d",
    "verify_appendix_c",
    "verify_c_identities",
    "appendix_d_rows",
    "large_b33_sampling_check",
    "lambda3_oracle",
]

HALF = Fraction(1, 2)
C_DIAG = DIAG_NAMES
C_ENTRIES = ("b12", "b13", "b24", "b35", "b45")
C_SYMBOLS = C_DIAG + C_ENTRIES

# Rows of the order-five relabelling that cycles the diagonal and keeps pattern C.
C_CYCLE_PERMUTATION = (
    (0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0),
    (1, 0, 0, 0, 0),
    (0, 0, 0, 0, 1),
    (0, 0, 1, 0, 0),
)
# Rows of the involution exchanging b11<->b44, b33<->b55, b12<->b24, b13<->b45.
C_SWAP_PERMUTATION = (
    (0, 0, 0, 1, 0),
    (0, 1, 0, 0, 0),
    (0, 0, 0, 0, 1),
    (1, 0, 0, 0, 0),
    (0, 0, 1, 0, 0),
)
C_SWAP_SYMBOLS = {
    "b11": "b44", "b44": "b11", "b33": "b55", "b55": "b33", "b22": "b22",
    "b12": "b24", "b24": "b12", "b13": "b45", "b45": "b13", "b35": "b35",
}


@dataclass(frozen=True)
class CParams:
    """Exact parameters of a pattern-C matrix with trace one half."""

    b11: Fraction
    b22: Fraction
    b33: Fraction
    b44: Fraction
    b55: Fraction
    b12: Fraction = Fraction(0)
    b13: Fraction = Fraction(0)
    b24: Fraction = Fraction(0)
    b35: Fraction = Fraction(0)
    b45: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, float):
                raise DomainError(f"{f.name} must be exact, got float {value!r}")
            object.__setattr__(self, f.name, to_rational(value))
        bad = [f.name for f in fields(self) if getattr(self, f.name) < 0]
        if bad:
            raise DomainError(f"negative parameters: {bad}")
        if sum(self.diagonal) != HALF:
            raise DomainError(f"diagonal sums to {sum(self.diagonal)}, not 1/2")

    @property
    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(getattr(self, n) for n in C_DIAG)

    def as_dict(self) -> dict[str, Fraction]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "CParams":
        unknown = set(values) - set(C_SYMBOLS)
        if unknown:
            raise DomainError(f"unknown pattern-C parameters: {sorted(unknown)}")
        return cls(**{k: v if isinstance(v, Fraction) else to_rational(v) for k, v in values.items()})

    def swapped(self) -> "CParams":
        """Parameters of the relabelled matrix under :data:`C_SWAP_PERMUTATION`."""
        d = self.as_dict()
        return CParams(**{C_SWAP_SYMBOLS[k]: v for k, v in d.items()})


def _c_rows(b11: Any, b22: Any, b33: Any, b44: Any, b55: Any, b12: Any, b13: Any, b24: Any, b35: Any, b45: Any, zero: Any) -> list[list[Any]]:
    return [
        [b11, b12, b13, zero, zero],
        [b12, b22, zero, b24, zero],
        [b13, zero, b33, zero, b35],
        [zero, b24, zero, b44, b45],
        [zero, zero, b35, b45, b55],
    ]


def build_c(params: CParams) -> SymMatrix:
    p = params.as_dict()
    return SymMatrix.from_rows(_c_rows(*(p[n] for n in C_SYMBOLS), zero=Fraction(0)), mode="exact")


def symbolic_c() -> list[list[MultiPoly]]:
    """The pattern-C matrix with polynomial entries in ``b11 ... b45``."""
    return _c_rows(*variables(" ".join(C_SYMBOLS)), zero=MultiPoly.const(0))


def _sub_rows(rows: Sequence[Sequence[Any]], idx: tuple[int, ...]) -> list[list[Any]]:
    return [[rows[i - 1][j - 1] for j in idx] for i in idx]


def _char_at(rows: Sequence[Sequence[MultiPoly]], lam: Fraction) -> MultiPoly:
    n = len(rows)
    shifted = [[(lam if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
    return determinant(shifted, MultiPoly.const(0))


# ---------------------------------------------------------------------------
# expression registry
# ---------------------------------------------------------------------------


def _unit_margin(bi: MultiPoly, bj: MultiPoly) -> MultiPoly:
    return (1 - bi) * (1 - bj)


def _half_margin(bi: MultiPoly, bj: MultiPoly) -> MultiPoly:
    return (1 - 2 * bi) * (1 - 2 * bj)


@functools.lru_cache(maxsize=1)
def c_expressions() -> dict[str, MultiPoly]:
    """Named polynomials of the pattern-C argument.

    Entry symbols are ``b11 ... b45``. The generic four-by-four block uses
    ``x1..x4`` (diagonal) and ``y1..y3`` (off-diagonal); the large-``b33``
    certificate uses ``x y z u v`` for the five diagonal entries. Bounds that
    carry radicals are registered as the polynomial ``gap`` whose sign
    decides them after squaring.
    """
    b11, b22, b33, b44, b55, b12, b13, b24, b35, b45 = variables(" ".join(C_SYMBOLS))
    x1, x2, x3, x4, y1, y2, y3 = variables("x1 x2 x3 x4 y1 y2 y3")
    x, y, z, u, v = variables("x y z u v")
    e: dict[str, MultiPoly] = {}

    # four-by-four block [[x1,y1,y2,0],[y1,x2,0,y3],[y2,0,x3,0],[0,y3,0,x4]]
    e["block_cp123_at_1"] = -(1 - x3) * y1**2 - (1 - x2) * (y2**2 - (1 - x1) * (1 - x3))
    e["block_cp_at_1"] = (
        -((1 - x1) * (1 - x3) - y2**2) * y3**2
        + (1 - x4) * ((1 - x2) * ((1 - x1) * (1 - x3) - y2**2) - (1 - x3) * y1**2)
    )
    k = 4 * y2**2 - (1 - 2 * x1) * (1 - 2 * x3)
    e["block_cp_at_half"] = (
        Fraction(1, 4) * k * y3**2
        - Fraction(1, 16) * (1 - 2 * x4) * ((1 - 2 * x2) * k + 4 * (1 - 2 * x3) * y1**2)
    )

    for name, (bi, bj) in {"12": (b11, b22), "15": (b11, b55), "45": (b44, b55), "34": (b33, b44), "24": (b22, b44)}.items():
        e[f"unit_margin_{name}"] = _unit_margin(bi, bj)
        e[f"half_margin_{name}"] = _half_margin(bi, bj)

    # entry-bound gaps; each bound holds when its gap has the stated sign
    e["b12_better_lower_gap"] = 4 * b12**2 - (1 + 2 * b44 + 4 * b11 * b22 + 4 * b33 * b55)
    e["b24_better_lower_gap"] = 4 * b24**2 - (1 + 2 * b11 + 4 * b22 * b44 + 4 * b33 * b55)
    e["b12_better_upper_numerator"] = (3 - 2 * b11 - 2 * b33) * (3 - 2 * b22 - 2 * b44)
    e["b24_better_upper_numerator"] = (3 - 2 * b11 - 2 * b22) * (3 - 2 * b44 - 2 * b55)
    e["b124_cp_at_1"] = (e["unit_margin_12"] - b12**2) * (1 - b44) - (1 - b11) * b24**2

    # large-b33 certificate, diagonal (x, y, z, u, v)
    e["b24_upper_sq_numerator"] = 625 * (3 - 2 * x - 2 * y) * (3 - 2 * u - 2 * v)
    e["b24_upper_sq_denominator_core"] = 5625 - 7650 * x - 7650 * v + 11084 * x * v
    e["b24_upper_sq_denominator"] = 4 * e["b24_upper_sq_denominator_core"]
    e["b24_lower_sq"] = Fraction(1, 4) * ((1 - 2 * y) * (1 - 2 * u) + (1 - 2 * z) * (1 - 2 * v))
    e["large_b33_gap"] = (
        625 * (3 - 2 * x - 2 * y) * (3 - 2 * u - 2 * v)
        - ((1 - 2 * y) * (1 - 2 * u) + (1 - 2 * z) * (1 - 2 * v)) * (5625 - 7650 * x - 7650 * v + 11084 * x * v)
    )

    # monotonicity constants of the b24 upper bound as a function of b11 (squared)
    e["b24_upper_scale_sq"] = 3 - 2 * b44 - 2 * b55
    e["b24_upper_shift"] = 3 - 2 * b22
    e["b24_upper_den_a_sq"] = 16 * (1 - b55)
    e["b24_upper_den_b_sq"] = 4 * (1 - 2 * b55)
    return e


# ---------------------------------------------------------------------------
# exact predicates
# ---------------------------------------------------------------------------


def _le_half_sqrt(b: Fraction, radicand: Fraction | None) -> bool | None:
    """``b <= (1/2) sqrt(radicand)`` for ``b >= 0``; None if undefined."""
    if radicand is None or radicand < 0:
        return None
    return 4 * b * b <= radicand


def _lt_sqrt(b: Fraction, radicand: Fraction | None) -> bool | None:
    if radicand is None or radicand < 0:
        return None
    return b * b < radicand


def _le_sqrt(b: Fraction, radicand: Fraction | None) -> bool | None:
    if radicand is None or radicand < 0:
        return None
    return b * b <= radicand


def _div(num: Fraction, den: Fraction) -> Fraction | None:
    return None if den == 0 else num / den


def _lt_nested(b: Fraction, numerator: Fraction, qq: Fraction, rr: Fraction) -> bool:
    """``b < sqrt(numerator) / (2 (2 sqrt(qq) + sqrt(rr)))`` with ``b, qq, rr >= 0``.

    Squared twice: ``16 b^2 sqrt(qq rr) < numerator - 4 b^2 (4 qq + rr)``.
    """
    rhs = numerator - 4 * b * b * (4 * qq + rr)
    if rhs <= 0:
        return False
    lhs = 16 * b * b
    return lhs * lhs * qq * rr < rhs * rhs


def _count_above(p: UniPoly, bound: Fraction) -> int:
    return count_real_roots(p, bound, None)


# Predicate names paired with their image under :meth:`CParams.swapped`.
DUAL_C_PREDICATE: dict[str, str] = {
    "b12_upper": "b24_upper",
    "b24_upper": "b12_upper",
    "b45_upper": "b13_upper",
    "b13_upper": "b45_upper",
    "b12_small": "b24_small",
    "b24_small": "b12_small",
    "b12_lower": "b24_lower",
    "b24_lower": "b12_lower",
    "b45_small": "b13_small",
    "b13_small": "b45_small",
    "b35_small": "b35_small",
    "b35_small_via_b45": "b35_small_via_b13",
    "b35_small_via_b13": "b35_small_via_b45",
    "b45_better_upper": "b13_better_upper",
    "b13_better_upper": "b45_better_upper",
    "b24_better_lower": "b12_better_lower",
    "b12_better_lower": "b24_better_lower",
    "b24_better_upper": "b12_better_upper",
    "b12_better_upper": "b24_better_upper",
    "b12_geq_b35": "b24_geq_b35",
    "b24_geq_b35": "b12_geq_b35",
    "b45_geq_b13": "b13_geq_b45",
    "rho_at_most_one": "rho_at_most_one",
    "lambda3_at_most_half": "lambda3_at_most_half",
}


def c_predicates(params: CParams) -> dict[str, bool | None]:
    """Exact truth value of every pattern-C entry bound at ``params``.

    ``None`` marks a bound whose radicand or denominator is undefined at this
    point. The ``assume_*`` keys report the normalising hypotheses under which
    the bound chain is stated; ``applicable`` is their conjunction. Spectral
    keys are decided by Sturm counts on the characteristic polynomial.
    """
    p = params
    b11, b22, b33, b44, b55 = p.diagonal
    b12, b13, b24, b35, b45 = p.b12, p.b13, p.b24, p.b35, p.b45
    out: dict[str, bool | None] = {}

    out["assume_b22_smallest"] = b22 == min(p.diagonal)
    out["assume_diagonal_interior"] = b11 + b44 > 0 and b11 < HALF and 0 < b33 < HALF and b44 < HALF and 0 < b55 < HALF
    out["assume_b11_dominates_b44"] = b11 >= b44 and b11 > 0
    out["assume_offdiagonal_positive"] = all(v > 0 for v in (b12, b13, b24, b35, b45))
    out["applicable"] = all(out[k] for k in list(out))

    q12, q24 = (1 - b11) * (1 - b22), (1 - b22) * (1 - b44)
    r12, r24 = (1 - 2 * b11) * (1 - 2 * b22), (1 - 2 * b22) * (1 - 2 * b44)
    d12, d24 = 4 * b12 * b12 - r12, 4 * b24 * b24 - r24

    out["b12_upper"] = _lt_sqrt(b12, q12)
    gap = q12 - b12 * b12
    out["b45_upper"] = None if gap <= 0 else _le_sqrt(b45, (1 - b55) * (1 - b44 - (1 - b11) * b24 * b24 / gap))
    out["b24_upper"] = _lt_sqrt(b24, q24)
    gap = q24 - b24 * b24
    out["b13_upper"] = None if gap <= 0 else _le_sqrt(b13, (1 - b33) * (1 - b11 - (1 - b44) * b12 * b12 / gap))

    out["b12_small"] = 4 * b12 * b12 <= r12
    out["b12_lower"] = not out["b12_small"]
    out["b24_small"] = 4 * b24 * b24 <= r24
    out["b24_lower"] = not out["b24_small"]
    out["b45_small"] = None if d12 <= 0 else _le_half_sqrt(b45, (1 - 2 * b55) * (1 - 2 * b44 + 4 * (1 - 2 * b11) * b24 * b24 / d12))
    out["b13_small"] = None if d24 <= 0 else _le_half_sqrt(b13, (1 - 2 * b33) * (1 - 2 * b11 + 4 * (1 - 2 * b44) * b12 * b12 / d24))
    out["b35_small"] = _le_half_sqrt(b35, (1 - 2 * b33) * (1 - 2 * b55))
    out["b35_small_via_b45"] = None if d24 <= 0 else _le_half_sqrt(b35, (1 - 2 * b33) * (1 - 2 * b55 + 4 * (1 - 2 * b22) * b45 * b45 / d24))
    out["b35_small_via_b13"] = None if d12 <= 0 else _le_half_sqrt(b35, (1 - 2 * b55) * (1 - 2 * b33 + 4 * (1 - 2 * b22) * b13 * b13 / d12))

    def better_upper(entry: Fraction, w: Fraction, a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> bool | None:
        # entry < (1/2) sqrt((w/a - b)(w/c - d))
        fa, fc = _div(w, a), _div(w, c)
        if fa is None or fc is None:
            return None
        radicand = (fa - b) * (fc - d)
        if radicand < 0:
            return None
        return 4 * entry * entry < radicand

    w24, w12 = 4 * b24 * b24, 4 * b12 * b12
    out["b45_better_upper"] = better_upper(b45, w24, 1 - 2 * b22, 1 - 2 * b44, 1 - 2 * b33, 1 - 2 * b55)
    out["b13_better_upper"] = better_upper(b13, w12, 1 - 2 * b22, 1 - 2 * b11, 1 - 2 * b55, 1 - 2 * b33)
    out["b24_better_lower"] = w24 > 1 + 2 * b11 + 4 * b22 * b44 + 4 * b33 * b55
    out["b12_better_lower"] = w12 > 1 + 2 * b44 + 4 * b11 * b22 + 4 * b33 * b55
    out["b24_better_upper"] = _lt_nested(
        b24, (3 - 2 * b11 - 2 * b22) * (3 - 2 * b44 - 2 * b55), (1 - b11) * (1 - b55), (1 - 2 * b11) * (1 - 2 * b55)
    )
    out["b12_better_upper"] = _lt_nested(
        b12, (3 - 2 * b11 - 2 * b33) * (3 - 2 * b22 - 2 * b44), (1 - b33) * (1 - b44), (1 - 2 * b33) * (1 - 2 * b44)
    )

    out["b12_geq_b35"] = b12 >= b35
    out["b24_geq_b35"] = b24 >= b35
    out["b45_geq_b13"] = b45 >= b13
    out["b13_geq_b45"] = b13 >= b45
    out["b24_geq_b13"] = (b24 >= b13) if b33 >= b44 else None

    cp = charpoly_exact(build_c(p))
    out["rho_at_most_one"] = _count_above(cp, Fraction(1)) == 0 and _count_above(cp.compose(UniPoly([0, -1])), Fraction(1)) == 0
    out["lambda3_at_most_half"] = _count_above(cp, HALF) <= 2
    return out


# ---------------------------------------------------------------------------
# diagonal bounds for the four ordering cases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagBounds:
    """Closed ranges ``lower[i] <= b_ii <= upper[i]`` for the five diagonal entries."""

    lower: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    upper: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        lo = tuple(to_rational(v) for v in self.lower)
        hi = tuple(to_rational(v) for v in self.upper)
        if len(lo) != 5 or len(hi) != 5:
            raise DomainError("diagonal bounds need five lower and five upper values")
        for name, a, b in zip(C_DIAG, lo, hi):
            if not 0 <= a <= b <= HALF:
                raise DomainError(f"{name}: need 0 <= {a} <= {b} <= 1/2")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def contains(self, diagonal: Sequence[Fraction]) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lower, diagonal, self.upper))


def _given(values: Sequence[RationalLike], count: int) -> list[Fraction]:
    vals = [to_rational(v) for v in values]
    if len(vals) != count:
        raise DomainError(f"expected {count} range endpoints, got {len(vals)}")
    for lo, hi in zip(vals[::2], vals[1::2]):
        if lo > hi:
            raise DomainError(f"empty range [{lo}, {hi}]")
    return vals


def derive_diag_bounds(case: int, given: Sequence[RationalLike]) -> DiagBounds:
    """Diagonal ranges implied by a case's ordering and its free ranges.

    ``given`` is ``(lo55, hi55)`` for case 1, ``(lo11, hi11)`` for case 2,
    ``(lo33, hi33, lo55, hi55)`` for case 3 and ``(lo11, hi11, lo33, hi33)``
    for case 4. Every diagonal entry is nonnegative and the five sum to 1/2.
    """
    f = Fraction
    zero = f(0)
    if case == 1:
        m55, big55 = _given(given, 2)
        m11, big11 = max(zero, f(1, 8) - big55 / 4), min(f(1, 4), big55, HALF - m55)
        big44 = min(f(1, 6), big55, f(1, 4) - m55 / 2)
        big33 = min(f(1, 8), big55, f(1, 6) - m55 / 3)
        big22 = min(f(1, 10), big55, f(1, 8) - m55 / 4)
        lower, upper = (m11, zero, zero, zero, m55), (big11, big22, big33, big44, big55)
    elif case == 2:
        m11, big11 = _given(given, 2)
        big44 = min(f(1, 4), big11, HALF - m11)
        big55 = min(f(1, 4), big11, HALF - m11)
        big33 = min(f(1, 6), big11, f(1, 4) - m11 / 2)
        big22 = min(f(1, 10), big11, f(1, 8) - m11 / 4)
        lower, upper = (m11, zero, zero, zero, zero), (big11, big22, big33, big44, big55)
    elif case == 3:
        lo33, hi33, lo55, hi55 = _given(given, 4)
        m33 = max(lo33, HALF - 4 * hi55, f(1, 6) - f(2, 3) * hi55)
        big33 = min(hi33, HALF - lo55)
        m55 = max(lo55, f(1, 4) - f(3, 2) * big33, f(1, 8) - big33 / 4)
        big55 = min(hi55, HALF - m33)
        m11 = max(zero, f(1, 6) - big33 / 3 - big55 / 3)
        big11 = min(big55, HALF - m33 - m55, f(1, 4) - m33 / 2)
        big44 = min(f(1, 8), big33, big55, f(1, 4) - m33 / 2 - m55 / 2, f(1, 6) - m33 / 3, f(1, 6) - m55 / 3)
        big22 = min(f(1, 10), big33, big55, f(1, 6) - m33 / 3 - m55 / 3, f(1, 8) - m33 / 4, f(1, 8) - m55 / 4)
        lower, upper = (m11, zero, m33, zero, m55), (big11, big22, big33, big44, big55)
    elif case == 4:
        lo11, hi11, lo33, hi33 = _given(given, 4)
        m11 = max(lo11, f(1, 4) - f(3, 2) * hi33, f(1, 8) - hi33 / 4)
        big11 = hi11
        m33 = max(lo33, HALF - 4 * big11, f(1, 6) - f(2, 3) * big11)
        big33 = min(hi33, HALF - m11)
        big44 = min(f(1, 6), big11, big33, HALF - m11 - m33, f(1, 4) - m11 / 2, f(1, 4) - m33 / 2)
        big55 = min(big11, HALF - m11 - m33, f(1, 4) - m33 / 2)
        big22 = min(f(1, 10), big11, big33, f(1, 6) - m11 / 3 - m33 / 3, f(1, 8) - m11 / 4, f(1, 8) - m33 / 4)
        lower, upper = (m11, zero, m33, zero, zero), (big11, big22, big33, big44, big55)
    else:
        raise DomainError(f"case must be 1, 2, 3 or 4, got {case!r}")
    return DiagBounds(lower, upper)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# off-diagonal lower-bound pipeline
# ---------------------------------------------------------------------------


class PipelineError(ArithmeticError):
    """A denominator in the lower-bound chain is not positive."""


DECIMAL_KEYS = ("b12", "b13", "b24", "b35_via_b13", "b35_via_b45", "b45")

# Ordering relations between off-diagonal entries available in each case:
# (target, source) means ``target >= source``.
CASE_RELATIONS: dict[int, tuple[tuple[str, str], ...]] = {
    1: (("b12", "b35"), ("b24", "b35"), ("b45", "b13")),
    2: (("b12", "b35"), ("b24", "b35"), ("b45", "b13")),
    3: (("b12", "b35"), ("b24", "b35"), ("b45", "b13"), ("b24", "b13")),
    4: (("b12", "b35"), ("b24", "b35"), ("b45", "b13"), ("b24", "b13")),
}


@dataclass(frozen=True)
class PipelineResult:
    """Every intermediate of the lower-bound chain for one diagonal box.

    Squares are exact; ``decimal`` holds the ``10**-digits`` lower bounds of
    their square roots. ``improved`` and ``b35_side`` are filled in by
    :func:`apply_relations`.
    """

    bounds: DiagBounds
    digits: int
    b12_sq_lower: Fraction
    b24_sq_lower: Fraction
    radicand_12: Fraction
    radicand_root_12: Fraction
    b12_sq_upper: Fraction
    radicand_24: Fraction
    radicand_root_24: Fraction
    b24_sq_upper: Fraction
    b13_sq_lower: Fraction
    b45_sq_lower: Fraction
    b35_sq_lower_via_b13: Fraction
    b35_sq_lower_via_b45: Fraction
    decimal: dict[str, Fraction]
    b35_side: str = ""
    case: int | None = None
    improved: dict[str, Fraction] = field(default_factory=dict)

    @property
    def exact_squares(self) -> dict[str, Fraction]:
        return {
            "b12": self.b12_sq_lower,
            "b13": self.b13_sq_lower,
            "b24": self.b24_sq_lower,
            "b35_via_b13": self.b35_sq_lower_via_b13,
            "b35_via_b45": self.b35_sq_lower_via_b45,
            "b45": self.b45_sq_lower,
        }


def _positive(value: Fraction, what: str) -> Fraction:
    if value <= 0:
        raise PipelineError(f"{what} = {format_rational(value)} is not positive")
    return value


def offdiag_lower_bounds(bounds: DiagBounds, digits: int = 2) -> PipelineResult:
    """Exact lower-bound chain for the off-diagonal entries, then decimals.

    The two radicands are rounded down to ``10**-digits`` before they enter
    the upper bounds on ``b12`` and ``b24``, which keeps every later quantity
    the square root of a rational.
    """
    lo, hi = bounds.lower, bounds.upper
    m11, m22, m33, m44, m55 = lo
    u11, u22, u33, u44, u55 = hi
    b12_sq = (1 + 2 * m44 + 4 * m11 * m22 + 4 * m33 * m55) / 4
    b24_sq = (1 + 2 * m11 + 4 * m22 * m44 + 4 * m33 * m55) / 4

    rad12 = 16 * (1 - u33) * (1 - u44) * (1 - 2 * u33) * (1 - 2 * u44)
    root12 = sqrt_lower_bound(rad12, digits)
    den12 = _positive(4 * (1 - u33) * (1 - u44) + root12 + (1 - 2 * u33) * (1 - 2 * u44), "b12 upper-bound denominator")
    up12_sq = (3 - 2 * m11 - 2 * u33) * (3 - 2 * m22 - 2 * u44) / (4 * den12)

    rad24 = 16 * (1 - u11) * (1 - u55) * (1 - 2 * u11) * (1 - 2 * u55)
    root24 = sqrt_lower_bound(rad24, digits)
    den24 = _positive(4 * (1 - u11) * (1 - u55) + root24 + (1 - 2 * u11) * (1 - 2 * u55), "b24 upper-bound denominator")
    up24_sq = (3 - 2 * u11 - 2 * m22) * (3 - 2 * m44 - 2 * u55) / (4 * den24)

    gap24 = _positive(4 * up24_sq - (1 - 2 * u22) * (1 - 2 * u44), "4 b24_upper^2 - (1-2 b22)(1-2 b44)")
    gap12 = _positive(4 * up12_sq - (1 - 2 * u11) * (1 - 2 * u22), "4 b12_upper^2 - (1-2 b11)(1-2 b22)")
    b13_sq = (1 - 2 * u33) * (1 - 2 * u11 + 4 * (1 - 2 * u44) * b12_sq / gap24) / 4
    b45_sq = (1 - 2 * u55) * (1 - 2 * u44 + 4 * (1 - 2 * u11) * b24_sq / gap12) / 4
    b35_13 = (1 - 2 * u55) * (1 - 2 * u33 + 4 * (1 - 2 * u22) * b13_sq / gap12) / 4
    b35_45 = (1 - 2 * u33) * (1 - 2 * u55 + 4 * (1 - 2 * u22) * b45_sq / gap24) / 4

    exact = dict(zip(DECIMAL_KEYS, (b12_sq, b13_sq, b24_sq, b35_13, b35_45, b45_sq)))
    decimal: dict[str, Fraction] = {}
    for key, sq in exact.items():
        if sq < 0:
            raise PipelineError(f"{key} lower bound squared = {format_rational(sq)} is negative")
        value = sqrt_lower_bound(sq, digits)
        if not verify_sqrt_bound(sq, (int(value * 10**digits), 10**digits), "lower"):
            raise PipelineError(f"{key}: {value} is not a {digits}-digit lower bound")
        decimal[key] = value
    return PipelineResult(
        bounds, digits, b12_sq, b24_sq, rad12, root12, up12_sq, rad24, root24, up24_sq,
        b13_sq, b45_sq, b35_13, b35_45, decimal,
    )


def apply_relations(case: int, result: PipelineResult) -> PipelineResult:
    """Raise lower bounds using the off-diagonal orderings of ``case``.

    The b35 bound is the larger of its two candidates; the side is decided on
    the exact squares and recorded as ``"b13"``, ``"b45"`` or ``"tie"``.
    """
    if case not in CASE_RELATIONS:
        raise DomainError(f"case must be 1, 2, 3 or 4, got {case!r}")
    d = result.decimal
    a, b = result.b35_sq_lower_via_b13, result.b35_sq_lower_via_b45
    side = "tie" if a == b else ("b13" if a > b else "b45")
    improved = {
        "b12": d["b12"],
        "b13": d["b13"],
        "b24": d["b24"],
        "b35": max(d["b35_via_b13"], d["b35_via_b45"]),
        "b45": d["b45"],
    }
    for target, source in CASE_RELATIONS[case]:
        improved[target] = max(improved[target], improved[source])
    return replace(result, b35_side=side, case=case, improved=improved)


def build_bmin_and_eval(result: PipelineResult, diagonal: Sequence[Fraction] | None = None) -> tuple[SymMatrix, Fraction]:
    """Assemble the entrywise lower-bound matrix and return ``det(I - B_min)``."""
    if not result.improved:
        raise DomainError("apply_relations must run before building B_min")
    diag = tuple(result.bounds.lower if diagonal is None else (to_rational(v) for v in diagonal))
    vals = dict(zip(C_DIAG, diag))
    vals.update(result.improved)
    rows = _c_rows(*(vals[n] for n in C_SYMBOLS), zero=Fraction(0))
    bmin = SymMatrix.from_rows(rows, mode="exact")
    shifted = [[(1 if i == j else 0) - rows[i][j] for j in range(5)] for i in range(5)]
    return bmin, determinant(shifted, Fraction(0))


# ---------------------------------------------------------------------------
# table replay
# ---------------------------------------------------------------------------


def reproduce_cells(case: int, given: Sequence[RationalLike], digits: int = 2) -> dict[str, Any]:
    """Recompute one table row from its free ranges, with the reference cell names."""
    bounds = derive_diag_bounds(case, given)
    res = apply_relations(case, offdiag_lower_bounds(bounds, digits))
    _, det = build_bmin_and_eval(res)
    cells: dict[str, Any] = {}
    for name, v in zip(C_DIAG, bounds.lower):
        cells[f"{name} lower"] = v
    for name, v in zip(C_DIAG, bounds.upper):
        cells[f"{name} upper"] = v
    cells["radicand 12"] = res.radicand_12
    cells["radicand root 12"] = res.radicand_root_12
    cells["b12 upper"] = Surd(res.b12_sq_upper)
    cells["radicand 24"] = res.radicand_24
    cells["radicand root 24"] = res.radicand_root_24
    cells["b24 upper"] = Surd(res.b24_sq_upper)
    d, imp = res.decimal, res.improved
    cells["b12 lower before relations"] = d["b12"]
    cells["b12 lower"] = imp["b12"]
    cells["b13 lower"] = imp["b13"]
    cells["b24 lower before relations"] = d["b24"]
    cells["b24 lower"] = imp["b24"]
    cells["b35 lower via b13"] = d["b35_via_b13"]
    cells["b35 lower via b45"] = d["b35_via_b45"]
    cells["b35 via b13 selected"] = res.b35_side in ("b13", "tie")
    cells["b35 via b45 selected"] = res.b35_side in ("b45", "tie")
    cells["b45 lower before relations"] = d["b45"]
    cells["b45 lower"] = imp["b45"]
    cells["det(I - Bmin)"] = det
    return cells


def _fmt_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "*" if v else ""
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)


def _replay_row(args: tuple[int, int, tuple[str, ...], int]) -> tuple[int, int, dict[str, Any]]:
    case, index, given, digits = args
    return case, index, reproduce_cells(case, given, digits)


def _replay_all(digits: int, jobs: int) -> list[tuple[int, int, dict[str, Any]]]:
    work = [(r.case, r.index, r.given, digits) for r in REFERENCE_ROWS]
    if jobs <= 1:
        return [_replay_row(w) for w in work]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_replay_row, work))


def verify_appendix_d(digits: int = 2, tables: Mapping[tuple[int, int], Mapping[str, Any]] | None = None, jobs: int = 1) -> Report:
    """Replay every sub-range and compare each cell with the reference tables.

    One step per sub-range. A step fails on the first cell whose reproduced
    value differs from ``tables`` (default: the frozen reference), naming the
    cell with both values, or when ``det(I - B_min)`` is not negative.
    """
    reference = golden_tables() if tables is None else tables
    rep = Report("appendix-d")
    for case, index, got in _replay_all(digits, jobs):
        step = f"case {case} sub-range {index}"
        expected = reference.get((case, index))
        if expected is None:
            rep.add(step, "reference row present", False, "no reference row")
            continue
        detail = ""
        ok = True
        for name, want in expected.items():
            have = got.get(name)
            if have != want:
                ok = False
                detail = f"cell {name!r}: expected {_fmt_cell(want)}, got {_fmt_cell(have)}"
                break
        det = got["det(I - Bmin)"]
        if ok and det >= 0:
            ok, detail = False, f"det(I - Bmin) = {format_rational(det)} is not negative"
        if ok:
            detail = f"det(I - Bmin) = {format_rational(det)}"
            if got["b35 via b13 selected"] and got["b35 via b45 selected"]:
                detail += "; b35 candidates tie exactly"
        rep.add(step, "every cell reproduces and det(I - Bmin) < 0", ok, detail)
    return rep


TABLE_COLUMNS = (
    "case", "sub_range", "given",
    "b11_lower", "b22_lower", "b33_lower", "b44_lower", "b55_lower",
    "b11_upper", "b22_upper", "b33_upper", "b44_upper", "b55_upper",
    "radicand_12", "radicand_root_12", "b12_upper", "radicand_24", "radicand_root_24", "b24_upper",
    "b12_lower", "b12_lower_before_relations", "b13_lower", "b24_lower", "b24_lower_before_relations",
    "b35_lower_via_b13", "b35_via_b13_selected", "b35_lower_via_b45", "b35_via_b45_selected",
    "b45_lower", "b45_lower_before_relations", "det_I_minus_Bmin",
)


def appendix_d_rows(digits: int = 2, jobs: int = 1) -> list[dict[str, str]]:
    """Reproduced tables as string rows in :data:`TABLE_COLUMNS` order."""
    rows = []
    given = {(r.case, r.index): r.given for r in REFERENCE_ROWS}
    for case, index, cells in _replay_all(digits, jobs):
        row = {"case": str(case), "sub_range": str(index), "given": ";".join(given[(case, index)])}
        for name, value in cells.items():
            key = name.replace("det(I - Bmin)", "det_I_minus_Bmin").replace(" ", "_")
            row[key] = _fmt_cell(value)
        rows.append({k: row[k] for k in TABLE_COLUMNS})
    return rows


# ---------------------------------------------------------------------------
# large-b33 certificate
# ---------------------------------------------------------------------------

BIG = Fraction(26, 100)
SMALL = Fraction(24, 100)
LARGE_B33_EDGE_ROOTS = ("-0.4935350885", "0.2582409708", "0.5")


def _signed(p: UniPoly, interval: Interval, expected: Sign) -> tuple[bool, str]:
    got = sign_on_interval(p, interval)
    return got.implies(expected), f"sign {got.value} on {interval}"


def _face(h: MultiPoly, **values: Any) -> MultiPoly:
    """Substitute expressions in ``x y z u v`` for some of those variables."""
    return h.with_vars(("x", "y", "z", "u", "v")).substitute(values)


def verify_appendix_c(samples: int = 0, seed: int = 0) -> Report:
    """Certify that ``b33 >= 26/100`` contradicts the two b24 bounds.

    Steps: the rational lower bound on ``sqrt((1-x)(1-2x))``, the expanded
    denominator, the polynomial form of the bound gap, each convexity claim
    as an identity for the second partial plus an exact corner evaluation,
    the boundary factorisations with Sturm sign certificates, and the symbol
    swap that yields the ``b55 >= 26/100`` variant. ``samples > 0`` adds an
    exact spot check at that many random points.
    """
    rep = Report("appendix-c")
    e = c_expressions()
    x, y, z, u, v = variables("x y z u v")
    gap = e["large_b33_gap"]
    quarter = Interval.closed(Fraction(0), Fraction(1, 4))
    z_range = Interval.closed(BIG, HALF)

    sq_gap = ((1 - x) * (1 - 2 * x) - (1 - Fraction(39, 25) * x) ** 2).to_uni("x")
    _identity(rep, "sqrt_bound_gap", "(1-x)(1-2x) - (1 - 39x/25)^2 = x(75 - 271x)/625",
              lambda: (1 - x) * (1 - 2 * x) - (1 - Fraction(39, 25) * x) ** 2, lambda: x * (75 - 271 * x) / 625)
    rep.check("sqrt_bound_gap_sign", "(1-x)(1-2x) - (1 - 39x/25)^2 >= 0 on [0, 1/4]",
              lambda: _signed(sq_gap, quarter, Sign.NONNEGATIVE))
    rep.check("sqrt_bound_base_sign", "1 - 39x/25 > 0 on [0, 1/4]",
              lambda: _signed((1 - Fraction(39, 25) * x).to_uni("x"), quarter, Sign.STRICTLY_POSITIVE))
    _identity(rep, "denominator_expansion",
              "4(1-x)(1-v) + (1-2x)(1-2v) + 4(1-39x/25)(1-39v/25) = (5625 - 7650x - 7650v + 11084xv)/625",
              lambda: 4 * (1 - x) * (1 - v) + (1 - 2 * x) * (1 - 2 * v) + 4 * (1 - Fraction(39, 25) * x) * (1 - Fraction(39, 25) * v),
              lambda: e["b24_upper_sq_denominator_core"] / 625)

    def denominator_positive() -> tuple[bool, str]:
        # bilinear in (x, v), so its minimum over the box sits at a corner
        core = e["b24_upper_sq_denominator_core"]
        corners = [core.evaluate({"x": a, "v": b}) for a in (0, SMALL) for b in (0, SMALL)]
        return min(corners) > 0, f"corner minimum {format_rational(min(corners))}"

    rep.check("denominator_positive", "5625 - 7650x - 7650v + 11084xv > 0 for x, v in [0, 24/100]", denominator_positive)
    _identity(rep, "b24_lower_sq_trace_form", "with v = 1/2-x-y-z-u, lower square = (1 + 2x + 4yu + 4zv)/4",
              lambda: _face(e["b24_lower_sq"] - (1 + 2 * x + 4 * y * u + 4 * z * v) / 4, v=HALF - x - y - z - u),
              lambda: MultiPoly.const(0))
    _identity(rep, "gap_definition", "gap = upper numerator - lower square * upper denominator",
              lambda: e["b24_upper_sq_numerator"] - e["b24_lower_sq"] * e["b24_upper_sq_denominator"], lambda: gap)

    gap_v = _face(gap, v=HALF - x - y - z - u)
    _identity(rep, "gap_xx", "d2/dx2 gap = 17168 + 133008(1-2z)x + 88672yu + 22168(4z-1)(1-2(y+z+u))",
              lambda: gap_v.partial_derivative("x", 2),
              lambda: 17168 + 133008 * (1 - 2 * z) * x + 88672 * y * u + 22168 * (4 * z - 1) * (1 - 2 * (y + z + u)))

    def xx_bound() -> tuple[bool, str]:
        # each added term is a product of factors that are nonnegative on F
        factors = {
            "1-2z on [26/100,1/2]": _signed((1 - 2 * z).to_uni("z"), z_range, Sign.NONNEGATIVE)[0],
            "4z-1 on [26/100,1/2]": _signed((4 * z - 1).to_uni("z"), z_range, Sign.STRICTLY_POSITIVE)[0],
        }
        corner = (17168 + 22168 * (4 * z - 1) * (1 - 2 * HALF)).to_uni("z")(BIG)
        ok = all(factors.values()) and corner == 17168
        return ok, f"corner value {corner}; 1-2(y+z+u) = 2(x+v) >= 0"

    rep.check("gap_xx_bound", "d2/dx2 gap >= 17168 > 0 on F", xx_bound)
    _identity(rep, "gap_uu", "d2/du2 gap = 272(225 - 326x)(z - y)",
              lambda: gap_v.partial_derivative("u", 2), lambda: 272 * (225 - 326 * x) * (z - y))
    rep.check("gap_uu_bound", "272(225 - 326x)(z - y) >= 498984/625 for x, y <= 24/100 <= 26/100 <= z",
              lambda: (272 * (225 - 326 * SMALL) * (BIG - SMALL) == Fraction(498984, 625) and 225 - 326 * SMALL > 0,
                       "decreasing in x and y, increasing in z"))
    face_v0 = _face(gap, x=HALF - y - z - u, v=MultiPoly.const(0))
    _identity(rep, "gap_face_v0_uu", "d2/du2 gap(1/2-y-z-u, y, z, u, 0) = 400(64 - 153y)",
              lambda: face_v0.partial_derivative("u", 2), lambda: 400 * (64 - 153 * y))
    rep.check("gap_face_v0_uu_bound", "400(64 - 153y) >= 10912 for y <= 24/100",
              lambda: 400 * (64 - 153 * SMALL) == 10912)

    zero = MultiPoly.const(0)
    face1 = _face(gap, x=zero, u=zero, v=HALF - y - z)
    _identity(rep, "gap_face1_yy", "d2/dy2 gap(0, y, z, 0, 1/2-y-z) = 200(306z - 25)",
              lambda: face1.partial_derivative("y", 2), lambda: 200 * (306 * z - 25))
    rep.check("gap_face1_yy_bound", "200(306z - 25) >= 10912 for z >= 26/100",
              lambda: 200 * (306 * BIG - 25) == 10912)
    edge_a = _face(gap, x=zero, y=zero, u=zero, v=HALF - z)
    edge_b = _face(gap, x=zero, y=HALF - z, u=zero, v=zero)
    _identity(rep, "gap_edge_y0", "gap(0, 0, z, 0, 1/2-z) = -150(1-2z)(102z^2 + 24z - 13)",
              lambda: edge_a, lambda: -150 * (1 - 2 * z) * (102 * z**2 + 24 * z - 13))
    rep.check("gap_edge_y0_roots", f"roots {', '.join(LARGE_B33_EDGE_ROOTS)}",
              lambda: match_printed_roots(edge_a.to_uni("z"), LARGE_B33_EDGE_ROOTS))
    rep.check("gap_edge_y0_sign", "gap(0, 0, z, 0, 1/2-z) <= 0 on [26/100, 1/2]",
              lambda: _signed(edge_a.to_uni("z"), z_range, Sign.NONPOSITIVE))
    _identity(rep, "gap_edge_y_full", "gap(0, 1/2-z, z, 0, 0) = -1875(1-2z)", lambda: edge_b, lambda: -1875 * (1 - 2 * z))
    rep.check("gap_edge_y_full_sign", "gap(0, 1/2-z, z, 0, 0) <= 0 on [26/100, 1/2]",
              lambda: _signed(edge_b.to_uni("z"), z_range, Sign.NONPOSITIVE))

    face2 = _face(gap, x=HALF - y - z, u=zero, v=zero)
    _identity(rep, "gap_face2_yy", "d2/dy2 gap(1/2-y-z, y, z, 0, 0) = 30600",
              lambda: face2.partial_derivative("y", 2), lambda: MultiPoly.const(30600))
    edge_c = _face(gap, x=HALF - z, y=zero, u=zero, v=zero)
    _identity(rep, "gap_edge_x_full", "gap(1/2-z, 0, z, 0, 0) = 150(1-2z)(1-51z)", lambda: edge_c, lambda: 150 * (1 - 2 * z) * (1 - 51 * z))
    rep.check("gap_edge_x_full_sign", "gap(1/2-z, 0, z, 0, 0) <= 0 on [26/100, 1/2]",
              lambda: _signed(edge_c.to_uni("z"), z_range, Sign.NONPOSITIVE))

    face3 = _face(gap, x=zero, u=HALF - y - z, v=zero)
    _identity(rep, "gap_face3_yy", "d2/dy2 gap(0, y, z, 1/2-y-z, 0) = 40000",
              lambda: face3.partial_derivative("y", 2), lambda: MultiPoly.const(40000))
    edge_d = _face(gap, x=zero, y=zero, u=HALF - z, v=zero)
    _identity(rep, "gap_edge_u_full", "gap(0, 0, z, 1/2-z, 0) = -1875(1-2z)", lambda: edge_d, lambda: -1875 * (1 - 2 * z))
    rep.check("gap_edge_u_full_sign", "gap(0, 0, z, 1/2-z, 0) <= 0 on [26/100, 1/2]",
              lambda: _signed(edge_d.to_uni("z"), z_range, Sign.NONPOSITIVE))

    def swap_variant() -> tuple[bool, str]:
        # the b12 premises become the b24 premises under the symbol swap
        got_lower = _swap_symbols(e["b12_better_lower_gap"])
        got_upper = _swap_symbols(e["b12_better_upper_numerator"])
        got_q = _swap_symbols(e["unit_margin_34"])
        got_r = _swap_symbols(e["half_margin_34"])
        ok = (
            (got_lower - e["b24_better_lower_gap"]).is_zero()
            and (got_upper - e["b24_better_upper_numerator"]).is_zero()
            and (got_q - e["unit_margin_15"]).is_zero()
            and (got_r - e["half_margin_15"]).is_zero()
            and C_SWAP_SYMBOLS["b55"] == "b33"
        )
        return ok, "b12 -> b24, b11 -> b44, b33 -> b55, b44 -> b11, b55 -> b33"

    rep.check("b12_variant_swap", "the b55 >= 26/100 premises map onto the b33 >= 26/100 premises", swap_variant)
    if samples > 0:
        def sampled() -> tuple[bool, str]:
            bad, worst = large_b33_sampling_check(samples, seed)
            return bad == 0, f"{samples} points, seed {seed}, largest value {format_rational(worst)}"

        rep.check("gap_sampled", "gap <= 0 at random rational points of F", sampled)
    return rep


def _swap_symbols(p: MultiPoly) -> MultiPoly:
    names = variables(" ".join(C_SYMBOLS))
    by_name = dict(zip(C_SYMBOLS, names))
    return p.with_vars(C_SYMBOLS).substitute({k: by_name[w] for k, w in C_SWAP_SYMBOLS.items()})


def _large_b33_gap_exact(x: Fraction, y: Fraction, z: Fraction, u: Fraction, v: Fraction) -> Fraction:
    return 625 * (3 - 2 * x - 2 * y) * (3 - 2 * u - 2 * v) - ((1 - 2 * y) * (1 - 2 * u) + (1 - 2 * z) * (1 - 2 * v)) * (
        5625 - 7650 * x - 7650 * v + 11084 * x * v
    )


def large_b33_sampling_check(count: int = 100_000, seed: int = 0, denominator: int = 10_000) -> tuple[int, Fraction]:
    """Evaluate ``gap`` exactly at ``count`` random rational points of its region.

    Points have coordinates in ``1/denominator`` steps, ``z >= 26/100`` and
    coordinate sum ``1/2``. Returns ``(violations, largest value seen)``.
    """
    rng = random.Random(seed)
    total = denominator // 2
    floor_z = math.ceil(BIG * denominator)
    worst: Fraction | None = None
    bad = 0
    for _ in range(count):
        zi = rng.randint(floor_z, total)
        rest = total - zi
        cuts = sorted(rng.randint(0, rest) for _ in range(3))
        xi, yi, ui, vi = cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], rest - cuts[2]
        point = [Fraction(c, denominator) for c in (xi, yi, zi, ui, vi)]
        val = _large_b33_gap_exact(*point)
        if val > 0:
            bad += 1
        worst = val if worst is None or val > worst else worst
    return bad, worst if worst is not None else Fraction(0)


# ---------------------------------------------------------------------------
# symbolic identities
# ---------------------------------------------------------------------------


def verify_c_identities() -> Report:
    """Check the pattern-C polynomial identities; one step per identity."""
    rep = Report("identities-c")
    e = c_expressions()
    b11, b22, b33, b44, b55, b12, b13, b24, b35, b45 = variables(" ".join(C_SYMBOLS))
    x1, x2, x3, x4, y1, y2, y3 = variables("x1 x2 x3 x4 y1 y2 y3")
    zero = MultiPoly.const(0)
    block = [[x1, y1, y2, zero], [y1, x2, zero, y3], [y2, zero, x3, zero], [zero, y3, zero, x4]]

    _identity(rep, "block_cp123_at_1", "P_M[1,2,3](1) expansion for the four-by-four block",
              lambda: _char_at(_sub_rows(block, (1, 2, 3)), Fraction(1)), lambda: e["block_cp123_at_1"])
    _identity(rep, "block_cp_at_1", "P_M(1) expansion for the four-by-four block",
              lambda: _char_at(block, Fraction(1)), lambda: e["block_cp_at_1"])
    _identity(rep, "block_cp_at_half", "P_M(1/2) expansion for the four-by-four block",
              lambda: _char_at(block, HALF), lambda: e["block_cp_at_half"])

    rows = symbolic_c()
    expected_orbit = [
        _c_rows(b22, b44, b11, b55, b33, b24, b12, b45, b13, b35, zero),
        _c_rows(b44, b55, b22, b33, b11, b45, b24, b35, b12, b13, zero),
        _c_rows(b55, b33, b44, b11, b22, b35, b45, b13, b24, b12, zero),
        _c_rows(b33, b11, b55, b22, b44, b13, b35, b12, b45, b24, zero),
    ]

    def orbit() -> tuple[bool, str]:
        cur = rows
        for k, want in enumerate(expected_orbit, start=1):
            cur = permutation_conjugate(cur, C_CYCLE_PERMUTATION)
            if any(not (a - b).is_zero() for ra, rb in zip(cur, want) for a, b in zip(ra, rb)):
                return False, f"power {k} differs"
        cur = permutation_conjugate(cur, C_CYCLE_PERMUTATION)
        back = all((a - b).is_zero() for ra, rb in zip(cur, rows) for a, b in zip(ra, rb))
        return back, "" if back else "fifth power does not return B"

    rep.check("cycle_orbit", "Q^k B Q^-k for k = 1..4 keep pattern C with the stated entries; Q^5 B Q^-5 = B", orbit)

    def swap() -> tuple[bool, str]:
        got = permutation_conjugate(rows, C_SWAP_PERMUTATION)
        want = _c_rows(b44, b22, b55, b11, b33, b24, b45, b12, b35, b13, zero)
        return all((a - b).is_zero() for ra, rb in zip(got, want) for a, b in zip(ra, rb)), ""

    rep.check("swap_conjugation", "P B P^-1 keeps pattern C with b11<->b44, b33<->b55, b12<->b24, b13<->b45", swap)

    sub_forms = {
        "1245": (((0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0), (0, 0, 0, 1)), (b22, b44, b11, b55, b24, b12, b45)),
        "1234": (((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)), (b22, b11, b44, b33, b12, b24, b13)),
        "2345_first": (((0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)), (b55, b44, b33, b22, b45, b35, b24)),
        "2345_second": (((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0)), (b44, b55, b22, b33, b45, b24, b35)),
        "1235": (((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1)), (b11, b33, b22, b55, b13, b12, b35)),
    }
    for name, (perm, (d1, d2, d3, d4, o1, o2, o3)) in sub_forms.items():
        idx = tuple(int(c) for c in name.split("_")[0])

        def sub_check(perm: Any = perm, idx: tuple[int, ...] = idx, want_args: tuple[Any, ...] = (d1, d2, d3, d4, o1, o2, o3)) -> tuple[bool, str]:
            got = permutation_conjugate(_sub_rows(rows, idx), perm)
            a1, a2, a3, a4, c1, c2, c3 = want_args
            want = [[a1, c1, c2, zero], [c1, a2, zero, c3], [c2, zero, a3, zero], [zero, c3, zero, a4]]
            return all((p - q).is_zero() for rp, rq in zip(got, want) for p, q in zip(rp, rq)), ""

        rep.check(f"block_form_{name}", f"B[{','.join(map(str, idx))}] relabels onto the four-by-four block pattern", sub_check)

    _identity(rep, "cp_124_at_1", "P_B[1,2,4](1) = ((1-b11)(1-b22) - b12^2)(1-b44) - (1-b11) b24^2",
              lambda: _char_at(_sub_rows(rows, (1, 2, 4)), Fraction(1)), lambda: e["b124_cp_at_1"])

    # trace-one-half equivalences for the better lower bounds
    w = 4 * b24**2
    a_, c_, d_, e_, f_ = 1 - 2 * b22, 1 - 2 * b33, 1 - 2 * b44, 1 - 2 * b55, 1 - 2 * b11
    den = 4 * b12**2 - f_ * (1 - 2 * b22)
    trace = {"b55": HALF - b11 - b22 - b33 - b44}

    def on_trace(p: MultiPoly) -> MultiPoly:
        return p.with_vars(C_SYMBOLS).substitute(trace)

    _identity(rep, "b24_relation_equivalence",
              "upper^2 - lower^2 for b45, cleared, equals 4 b24^2 ((4 b24^2 - K) D - (1-2b11) R) on the trace plane",
              lambda: on_trace((w - a_ * d_) * (w - c_ * e_) * den - a_ * c_ * e_ * (d_ * den + f_ * w)),
              lambda: on_trace(w * ((w - 1 - 2 * b11 - 4 * b22 * b44 - 4 * b33 * b55) * den - f_ * a_ * c_ * e_)))
    w2 = 4 * b12**2
    den2 = 4 * b24**2 - a_ * d_
    _identity(rep, "b12_relation_equivalence",
              "upper^2 - lower^2 for b13, cleared, equals 4 b12^2 ((4 b12^2 - K') D' - (1-2b44) R') on the trace plane",
              lambda: on_trace((w2 - a_ * f_) * (w2 - e_ * c_) * den2 - a_ * e_ * c_ * (f_ * den2 + d_ * w2)),
              lambda: on_trace(w2 * ((w2 - 1 - 2 * b44 - 4 * b11 * b22 - 4 * b33 * b55) * den2 - d_ * a_ * e_ * c_)))

    # the b45 gap profile and its peak, with sq = sqrt(unit_margin_15), sr = sqrt(half_margin_15) as free symbols
    sq, sr, q12, r12, q45, r45, xx = variables("sq sr q12 r12 q45 r45 xx")
    _identity(rep, "b45_gap_relation",
              "(upper^2 - lower^2) for b45 times (unit_margin_12 - x)(4x - half_margin_12) = (unit_margin_45 - half_margin_45/4)(unit_margin_12-x)(4x-half_margin_12) - b24^2 (unit_margin_15 (4x - half_margin_12) + half_margin_15 (unit_margin_12 - x))",
              lambda: (
                  ((1 - b55) * ((1 - b44) * (e["unit_margin_12"] - b12**2) - (1 - b11) * b24**2)) * (4 * b12**2 - e["half_margin_12"])
                  - Fraction(1, 4) * (1 - 2 * b55) * ((1 - 2 * b44) * (4 * b12**2 - e["half_margin_12"]) + 4 * (1 - 2 * b11) * b24**2) * (e["unit_margin_12"] - b12**2)
              ),
              lambda: (
                  (e["unit_margin_45"] - e["half_margin_45"] / 4) * (e["unit_margin_12"] - b12**2) * (4 * b12**2 - e["half_margin_12"])
                  - b24**2 * (e["unit_margin_15"] * (4 * b12**2 - e["half_margin_12"]) + e["half_margin_15"] * (e["unit_margin_12"] - b12**2))
              ))
    scale = 4 * sq + 2 * sr
    peak_num = sq * r12 + 2 * sr * q12
    _identity(rep, "b45_gap_peak_left", "(unit_margin_12 - peak)(4 sqrt(unit_margin_15) + 2 sqrt(half_margin_15)) = sqrt(unit_margin_15)(4 unit_margin_12 - half_margin_12)",
              lambda: q12 * scale - peak_num, lambda: sq * (4 * q12 - r12))
    _identity(rep, "b45_gap_peak_right", "(4 peak - half_margin_12)(4 sqrt(unit_margin_15) + 2 sqrt(half_margin_15)) = 2 sqrt(half_margin_15)(4 unit_margin_12 - half_margin_12)",
              lambda: 4 * peak_num - r12 * scale, lambda: 2 * sr * (4 * q12 - r12))
    _identity(rep, "b45_gap_peak_critical", "sqrt(unit_margin_15)/(unit_margin_12 - peak) = 2 sqrt(half_margin_15)/(4 peak - half_margin_12), cross-multiplied",
              lambda: sq * (4 * peak_num - r12 * scale), lambda: 2 * sr * (q12 * scale - peak_num))
    _identity(rep, "b45_gap_peak_value",
              "at the peak the profile denominator times (4 unit_margin_12 - half_margin_12) is (2 sqrt(unit_margin_15) + sqrt(half_margin_15))^2, so gap(peak) = (4 unit_margin_45 - half_margin_45)(4 unit_margin_12 - half_margin_12)/(4(2sqrt(unit_margin_15)+sqrt(half_margin_15))^2)",
              lambda: sq**2 * (2 * sr) * scale + sr**2 * sq * scale,
              lambda: 2 * sq * sr * (2 * sq + sr) ** 2)
    _identity(rep, "upper_denominator_square", "(2(2 sqrt(Q) + sqrt(R)))^2 = 4(4Q + sqrt(16 Q R) + R)",
              lambda: (2 * (2 * sq + sr)) ** 2, lambda: 4 * (4 * sq**2 + 4 * sq * sr + sr**2))
    _identity(rep, "b12_window_width", "unit_margin_12 - half_margin_12/4 = (3 - 2 b11 - 2 b22)/4",
              lambda: e["unit_margin_12"] - e["half_margin_12"] / 4, lambda: (3 - 2 * b11 - 2 * b22) / 4)

    def premise_swap() -> tuple[bool, str]:
        # premises of the b12 upper bound map onto those of the b24 upper bound
        pairs = [
            ((1 - b22) * (1 - b44) - b24**2, e["unit_margin_12"] - b12**2),
            (e["unit_margin_24"] * (1 - b11) - (1 - b44) * b12**2, e["unit_margin_12"] * (1 - b44) - (1 - b11) * b24**2),
            (4 * b24**2 - e["half_margin_24"], 4 * b12**2 - e["half_margin_12"]),
            (
                (1 - 2 * b33) * ((1 - 2 * b11) * (4 * b24**2 - e["half_margin_24"]) + 4 * (1 - 2 * b44) * b12**2),
                (1 - 2 * b55) * ((1 - 2 * b44) * (4 * b12**2 - e["half_margin_12"]) + 4 * (1 - 2 * b11) * b24**2),
            ),
        ]
        ok = all((_swap_symbols(a) - b).is_zero() for a, b in pairs)
        return ok, ""

    rep.check("upper_bound_swap", "the b24-side premises become the b12-side premises under the symbol swap", premise_swap)
    return rep


def lambda3_oracle(params: CParams) -> float:
    """Third largest eigenvalue by the Jacobi solver."""
    return float(eigen_jacobi(build_c(params).to_float()).values[2])
