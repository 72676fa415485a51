"""The five-by-five zero pattern H with trace one half.

The matrix family is::

    [ 1/2-t-s  a12  a13   0    0  ]
    [  a12      0    0   a24  a25 ]
    [  a13      0    t    0   a35 ]
    [   0      a24   0    s   a45 ]
    [   0      a25  a35  a45   0  ]

Three layers live here:

* :class:`HParams` / :func:`build_h` give exact rational instances.
* :func:`h_expressions` is a registry of the named polynomials that the
  pattern-H argument works with, as :class:`~sniep5.poly.MultiPoly` objects.
* :func:`h_predicates`, :func:`verify_h_identities` and
  :func:`verify_appendix_ab` evaluate every bound exactly and replay the
  algebra and one-variable sign arguments with Sturm certificates.

Bounds involving square roots are decided in squared form, with explicit
sign guards on both sides, so every predicate is exact over the rationals.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Any, Callable, Mapping

from .exact import DomainError, to_rational
from .poly import (
    Interval,
    MultiPoly,
    Sign,
    UniPoly,
    count_real_roots,
    identity_check,
    isolate_real_roots,
    sign_on_interval,
    variables,
)
from .report import Report
from .spectral import (
    SymMatrix,
    charpoly_exact,
    determinant,
    eigen_jacobi,
    permutation_conjugate,
    principal_submatrix,
)

__all__ = [
    "HParams",
    "build_h",
    "symbolic_h",
    "h_expressions",
    "h_predicates",
    "DUAL_PREDICATE",
    "verify_h_identities",
    "verify_appendix_ab",
    "APPENDIX_A_ROOTS",
    "a45_sq_floor",
    "a45_sq_ceiling",
    "a24_sq_window",
    "extremal_window",
]

HALF = Fraction(1, 2)
H_ENTRIES = ("a12", "a13", "a24", "a25", "a35", "a45")
H_SYMBOLS = ("t", "s") + H_ENTRIES

# Rows of the relabelling that exchanges the two ends of the pattern.
H_SWAP_PERMUTATION = (
    (0, 0, 1, 0, 0),
    (0, 0, 0, 0, 1),
    (1, 0, 0, 0, 0),
    (0, 0, 0, 1, 0),
    (0, 1, 0, 0, 0),
)


@dataclass(frozen=True)
class HParams:
    """Exact parameters of a pattern-H matrix with trace one half."""

    t: Fraction
    s: Fraction
    a12: Fraction = Fraction(0)
    a13: Fraction = Fraction(0)
    a24: Fraction = Fraction(0)
    a25: Fraction = Fraction(0)
    a35: Fraction = Fraction(0)
    a45: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, float):
                raise DomainError(f"{f.name} must be exact, got float {value!r}")
            object.__setattr__(self, f.name, to_rational(value))
        bad = [f.name for f in fields(self) if getattr(self, f.name) < 0]
        if bad:
            raise DomainError(f"negative parameters: {bad}")
        if self.t + self.s > HALF:
            raise DomainError(f"t + s = {self.t + self.s} exceeds 1/2")

    @property
    def a11(self) -> Fraction:
        return HALF - self.t - self.s

    def as_dict(self) -> dict[str, Fraction]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "HParams":
        unknown = set(values) - set(H_SYMBOLS)
        if unknown:
            raise DomainError(f"unknown pattern-H parameters: {sorted(unknown)}")
        return cls(**{k: to_rational(v) if not isinstance(v, Fraction) else v for k, v in values.items()})

    def swapped(self) -> "HParams":
        """Parameters of the relabelled matrix that exchanges both ends.

        The corner entry ``1/2 - t - s`` trades places with ``t``, ``a12`` with
        ``a35`` and ``a24`` with ``a45``; ``s``, ``a13`` and ``a25`` stay.
        """
        return replace(self, t=self.a11, a12=self.a35, a35=self.a12, a24=self.a45, a45=self.a24)


def _h_rows(t: Any, s: Any, a12: Any, a13: Any, a24: Any, a25: Any, a35: Any, a45: Any, zero: Any) -> list[list[Any]]:
    a11 = HALF - t - s
    return [
        [a11, a12, a13, zero, zero],
        [a12, zero, zero, a24, a25],
        [a13, zero, t, zero, a35],
        [zero, a24, zero, s, a45],
        [zero, a25, a35, a45, zero],
    ]


def build_h(params: HParams) -> SymMatrix:
    """The exact pattern-H matrix for ``params``."""
    p = params
    rows = _h_rows(p.t, p.s, p.a12, p.a13, p.a24, p.a25, p.a35, p.a45, Fraction(0))
    return SymMatrix.from_rows(rows, mode="exact")


def symbolic_h() -> list[list[MultiPoly]]:
    """The pattern-H matrix with polynomial entries in ``t, s, a12, ...``."""
    syms = variables(" ".join(H_SYMBOLS))
    return _h_rows(*syms, zero=MultiPoly.const(0))


def _sub_rows(rows: list[list[Any]], idx: tuple[int, ...]) -> list[list[Any]]:
    return [[rows[i - 1][j - 1] for j in idx] for i in idx]


def _char_at(rows: list[list[MultiPoly]], lam: Fraction) -> MultiPoly:
    n = len(rows)
    shifted = [[(lam if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
    return determinant(shifted, MultiPoly.const(0))


# ---------------------------------------------------------------------------
# expression registry
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=1)
def h_expressions() -> dict[str, MultiPoly]:
    """Named polynomials of the pattern-H argument.

    Entry symbols are ``t s a12 a13 a24 a25 a35 a45``; the auxiliary
    polynomials use ``x y z w`` for their free arguments. Quantities that carry
    square roots are exposed separately through :func:`a24_sq_window`,
    :func:`extremal_window`, :func:`a45_sq_floor` and :func:`a45_sq_ceiling`.
    """
    t, s, a12, a13, a24, a25, a35, a45, x, y, z, w = variables("t s a12 a13 a24 a25 a35 a45 x y z w")
    e: dict[str, MultiPoly] = {}
    e["cp245_at_1"] = 1 - s - a24**2 - (1 - s) * a25**2 - a45**2 - 2 * a24 * a25 * a45
    e["cp245_at_half_scaled"] = -1 + 2 * s + 4 * a24**2 + 4 * (1 - 2 * s) * a25**2 + 4 * a45**2 + 16 * a24 * a25 * a45

    e["a45_profile_lead"] = 1 + t + s
    e["a45_profile_linear"] = (1 + t + s) * (4 * y + 6 * s - 5)
    e["a45_profile_const"] = (-1 + 2 * t + 4 * s) * y + (1 - s) * (1 - 2 * s) * (1 + t + s)
    e["a45_profile"] = 4 * e["a45_profile_lead"] * x**2 + e["a45_profile_linear"] * x + e["a45_profile_const"]
    e["a45_profile_disc"] = 16 * e["a45_profile_lead"] * y**2 - 8 * (3 - 2 * s) * (1 + 3 * t + 3 * s) * y + (3 - 2 * s) ** 2 * e["a45_profile_lead"]

    e["cp1235_form"] = (
        (-1 + z**2) * y**2
        - 2 * x * z * w * y
        - HALF * (1 - t) * (1 + 2 * t + 2 * s) * z**2
        - HALF * (t - 1 + w**2) * (1 + 2 * t + 2 * s - 2 * x**2)
    )
    e["extremal_numerator"] = (
        -4 * ((1 - 2 * t) * (1 + t + s) * x + (3 - 2 * t) * (t + s) * y) * (4 * x + 4 * y + 2 * s - 1)
        - (1 - 2 * s) * (6 * t**2 - 3 * (1 - 2 * s) * t - 5 * s - 1) * (4 * x + 4 * y + 2 * s - 1)
        + 4 * (1 + s) * (4 * x + 2 * s - 1) * (4 * y + 2 * s - 1)
    )
    e["extremal_disc_lead"] = 16 * t**2 - 8 * (1 - 2 * s) * t + 3 * (1 - 2 * s)
    e["extremal_disc_linear"] = 16 * t**3 + 56 * t**2 * s + 40 * t * s**2 + 28 * t**2 - 12 * s**2 + 12 * t * s - 12 * t + 9
    e["extremal_disc_const"] = (4 * t**2 + 4 * t * s + 2 * s + 3) ** 2
    e["extremal_disc"] = 256 * (3 + 2 * s) * e["extremal_disc_lead"] * x**2 - 128 * (1 - 2 * s) * e["extremal_disc_linear"] * x + 16 * (1 - 2 * s) ** 2 * e["extremal_disc_const"]

    e["floor_gap"] = (
        64 * s**2 * t**2 + 64 * t * s**3 - 24 * s**3 + 32 * t**3 - 16 * t * s**2 + 48 * s * t**2
        + 12 * s**2 - 152 * t**2 - 168 * t * s + 78 * s + 56 * t - 3
    )
    e["floor_residual"] = (
        128 * s**4 * t + 128 * t**2 * s**3 - 48 * s**4 - 192 * t * s**3 + 64 * s**2 * t**2 + 256 * s * t**3
        + 64 * t**4 + 96 * s**3 - 512 * t * s**2 - 736 * s * t**2 - 192 * t**3 + 232 * s**2 + 528 * t * s
        + 352 * t**2 - 136 * s - 120 * t + 1
    )
    e["ceiling_gap"] = -(6 - 8 * t) * s + 2 * t**2 - 15 * t + 9
    e["ceiling_residual"] = 4 * s**2 - 16 * t * s - 2 * t**2 + 27 * t - 9
    e["window_gap"] = 44 * t * s**2 + 56 * s * t**2 - 12 * s**2 + 36 * t**2 - 4 * t * s + 6 * s - 9 * t
    e["window_residual"] = (36 * s**2 + 44 * s + 33) * t**2 + (-16 * s**2 + 32 * s - 12) * t + 24 * s**2 - 12 * s
    return e


def _sqrt_float(x: Fraction) -> float:
    return math.sqrt(float(x)) if x > 0 else 0.0


def a24_sq_window(s: Fraction, t: Fraction) -> tuple[float, float]:
    """Numeric values of the two roots of ``a45_profile_disc`` (smaller first)."""
    s, t = Fraction(s), Fraction(t)
    root = _sqrt_float((1 + 2 * t + 2 * s) * (t + s))
    scale = float((3 - 2 * s) / (4 * (1 + t + s)))
    centre = float(1 + 3 * t + 3 * s)
    return scale * (centre - 2 * root), scale * (centre + 2 * root)


def extremal_window(s: Fraction, t: Fraction) -> tuple[float, float]:
    """Numeric values of the two roots of ``extremal_disc`` (smaller first)."""
    e = h_expressions()
    point = {"s": Fraction(s), "t": Fraction(t)}
    c4, c5 = e["extremal_disc_lead"].evaluate(point), e["extremal_disc_linear"].evaluate(point)
    s, t = point["s"], point["t"]
    centre = float((1 - 2 * s) * c5 / (4 * (3 + 2 * s) * c4))
    spread = float(2 * (1 - 2 * t) * (1 - 2 * s) / ((3 + 2 * s) * c4)) * _sqrt_float((3 - 2 * t) * (1 + s) * (t + s) ** 3)
    return centre - spread, centre + spread


def a45_sq_floor(s: Fraction, t: Fraction) -> float:
    s, t = Fraction(s), Fraction(t)
    inner = 1 - (1 - 2 * s) * (3 - 2 * s) * (t + s) / (1 + t + s)
    return float((1 - s) / 2) - _sqrt_float(inner) / 4


def a45_sq_ceiling(s: Fraction, t: Fraction) -> float:
    s, t = Fraction(s), Fraction(t)
    return float(3 - 2 * s) * (float(5 - 6 * t) - 4 * _sqrt_float((1 - t) * (1 - 2 * t))) / float(4 * (3 - 2 * t))


# ---------------------------------------------------------------------------
# exact predicates
# ---------------------------------------------------------------------------


def _half_sqrt_cmp(a: Fraction, num: Fraction, den: Fraction) -> int | None:
    """Sign of ``a - (1/2) sqrt(num/den)`` for ``a >= 0``; None if undefined."""
    if den == 0:
        return None
    ratio = num / den
    if ratio < 0:
        return None
    lhs, rhs = 4 * a * a, ratio
    return (lhs > rhs) - (lhs < rhs)


def _radical_gt(r: Fraction, k: Fraction, c: Fraction) -> bool:
    """``r > k * sqrt(c)`` with ``k > 0`` and ``c >= 0``."""
    return r > 0 and r * r > k * k * c


def _radical_lt(r: Fraction, k: Fraction, c: Fraction) -> bool:
    """``r < k * sqrt(c)`` with ``k > 0`` and ``c >= 0``."""
    return r < 0 or r * r < k * k * c


def _count_above(p: UniPoly, bound: Fraction) -> int:
    return count_real_roots(p, bound, None)


# Predicate names paired with their image under the end-swap relabelling.
DUAL_PREDICATE: dict[str, str] = {
    "cp245_at_1_nonnegative": "cp245_at_1_nonnegative",
    "cp245_at_half_scaled_positive": "cp245_at_half_scaled_positive",
    "a24_small": "a45_small",
    "a45_small": "a24_small",
    "a13_small": "a13_small",
    "a24_lower": "a45_lower",
    "a45_lower": "a24_lower",
    "a24_upper": "a45_upper",
    "a45_upper": "a24_upper",
    "a25_upper": "a25_upper",
    "a12_upper": "a35_upper",
    "a35_upper": "a12_upper",
    "a12_lower": "a35_lower",
    "a35_lower": "a12_lower",
    "a24_better_upper": "a45_better_upper",
    "a45_better_upper": "a24_better_upper",
    "a45_better_lower": "a24_better_lower",
    "a24_better_lower": "a45_better_lower",
    "a13_lower": "a13_lower",
    "rho_at_most_one": "rho_at_most_one",
    "lambda3_at_most_half": "lambda3_at_most_half",
}


def h_predicates(params: HParams) -> dict[str, bool | None]:
    """Exact truth value of every pattern-H bound at ``params``.

    ``None`` marks a bound whose radicand is undefined or negative at this
    point. ``rho_at_most_one`` and ``lambda3_at_most_half`` are decided by Sturm
    counts on the characteristic polynomial. ``sufficient_condition`` is true
    when one of the three small-entry conditions holds, and
    ``submatrix_1245_witness`` when the four-by-four principal submatrix on
    rows 1, 2, 4, 5 has at most one eigenvalue above one half.
    """
    p = params
    t, s = p.t, p.s
    a12, a13, a24, a25, a35, a45 = p.a12, p.a13, p.a24, p.a25, p.a35, p.a45
    e = h_expressions()
    point = p.as_dict()
    s1 = e["cp245_at_1"].evaluate(point)
    s2 = e["cp245_at_half_scaled"].evaluate(point)
    out: dict[str, bool | None] = {}

    out["cp245_at_1_nonnegative"] = s1 >= 0
    out["cp245_at_half_scaled_positive"] = s2 > 0
    out["a24_small"] = 4 * a24**2 <= 1 - 2 * s
    out["a45_small"] = 4 * a45**2 <= 1 - 2 * s
    out["a13_small"] = 4 * a13**2 <= 2 * (1 - 2 * t) * (t + s)
    out["a24_lower"] = not out["a24_small"]
    out["a45_lower"] = not out["a45_small"]
    out["a24_upper"] = 4 * a24**2 < 3 - 2 * s
    out["a45_upper"] = 4 * a45**2 < 3 - 2 * s
    out["a25_upper"] = 2 * (1 - s) * a25 < 1
    out["a13_lower"] = not out["a13_small"]

    c = _half_sqrt_cmp(a12, 2 * (1 + 2 * t + 2 * s) * s1, 1 - s - a45**2)
    out["a12_upper"] = None if c is None else c <= 0
    c = _half_sqrt_cmp(a35, 4 * (1 - t) * s1, 1 - s - a24**2)
    out["a35_upper"] = None if c is None else c <= 0
    c = _half_sqrt_cmp(a12, 2 * (t + s) * s2, 4 * a45**2 + 2 * s - 1)
    out["a12_lower"] = None if c is None else c > 0
    c = _half_sqrt_cmp(a35, (1 - 2 * t) * s2, 4 * a24**2 + 2 * s - 1)
    out["a35_lower"] = None if c is None else c > 0

    # a24 < (1/2) sqrt((3-2s)(1+3t+3s - 2 sqrt(K)) / (1+t+s))
    r = 1 + 3 * t + 3 * s - 4 * a24**2 * (1 + t + s) / (3 - 2 * s)
    out["a24_better_upper"] = _radical_gt(r, Fraction(2), (1 + 2 * t + 2 * s) * (t + s))
    # a45 < (1/2) sqrt((3-2s)(5-6t - 4 sqrt(W)) / (3-2t))
    r = 5 - 6 * t - 4 * a45**2 * (3 - 2 * t) / (3 - 2 * s)
    out["a45_better_upper"] = _radical_gt(r, Fraction(4), (1 - t) * (1 - 2 * t))
    # a45^2 > (1-s)/2 - (1/4) sqrt(E)
    inner = 1 - (1 - 2 * s) * (3 - 2 * s) * (t + s) / (1 + t + s)
    out["a45_better_lower"] = None if inner < 0 else _radical_lt((1 - s) / 2 - a45**2, Fraction(1, 4), inner)
    inner = 1 - (1 - 2 * s) * (3 - 2 * s) * (1 - 2 * t) / (3 - 2 * t)
    out["a24_better_lower"] = None if inner < 0 else _radical_lt((1 - s) / 2 - a24**2, Fraction(1, 4), inner)

    fx = {"x": a45**2, "y": a24**2, "t": t, "s": s}
    out["a45_profile_negative"] = e["a45_profile"].evaluate(fx) < 0

    m = build_h(p)
    cp = charpoly_exact(m)
    out["rho_at_most_one"] = _count_above(cp, Fraction(1)) == 0 and _count_above(cp.compose(UniPoly([0, -1])), Fraction(1)) == 0
    out["lambda3_at_most_half"] = _count_above(cp, HALF) <= 2
    out["sufficient_condition"] = bool(out["a24_small"] or out["a45_small"] or out["a13_small"])
    sub = charpoly_exact(principal_submatrix(m, (1, 2, 4, 5)))
    out["submatrix_1245_witness"] = _count_above(sub, HALF) <= 1
    return out


# ---------------------------------------------------------------------------
# symbolic identities
# ---------------------------------------------------------------------------


def _reduce_square(p: MultiPoly, var: str, value: MultiPoly) -> MultiPoly:
    """Rewrite ``var**2`` as ``value`` everywhere in ``p``."""
    i = p.vars.index(var)
    out = MultiPoly.const(0)
    for exps, coeff in p.terms.items():
        k = exps[i]
        mono = MultiPoly({exps[:i] + (k % 2,) + exps[i + 1 :]: coeff}, p.vars)
        out = out + mono * value ** (k // 2)
    return out


def _identity(report: Report, step: str, claim: str, lhs: Callable[[], MultiPoly], rhs: Callable[[], MultiPoly]) -> None:
    def run() -> tuple[bool, str]:
        diff = lhs() - rhs()
        if diff.is_zero():
            return True, ""
        return False, f"difference has {len(diff.terms)} terms"

    report.check(step, claim, run)


def verify_h_identities() -> Report:
    """Check the pattern-H polynomial identities; one step per identity."""
    rep = Report("identities-h")
    e = h_expressions()
    t, s, a12, a13, a24, a25, a35, a45, x, y, z, w = variables("t s a12 a13 a24 a25 a35 a45 x y z w")
    rows = symbolic_h()
    a1245 = _sub_rows(rows, (1, 2, 4, 5))
    a245 = _sub_rows(rows, (2, 4, 5))

    _identity(rep, "cp245_at_1_definition", "cp245_at_1 is the characteristic polynomial of A[2,4,5] at 1",
              lambda: _char_at(a245, Fraction(1)), lambda: e["cp245_at_1"])
    _identity(rep, "cp245_at_half_scaled_definition", "cp245_at_half_scaled is -8 times the characteristic polynomial of A[2,4,5] at 1/2",
              lambda: -8 * _char_at(a245, HALF), lambda: e["cp245_at_half_scaled"])
    _identity(rep, "cp_1245_at_1", "P_A[1,2,4,5](1) = (1+2t+2s) cp245_at_1 / 2 + a12^2 (a45^2 + s - 1)",
              lambda: _char_at(a1245, Fraction(1)),
              lambda: HALF * (1 + 2 * t + 2 * s) * e["cp245_at_1"] + a12**2 * (a45**2 + s - 1))
    _identity(rep, "cp_1245_at_half", "P_A[1,2,4,5](1/2) = -(t+s) cp245_at_half_scaled / 8 + a12^2 (4 a45^2 + 2s - 1) / 4",
              lambda: _char_at(a1245, HALF),
              lambda: -Fraction(1, 8) * (t + s) * e["cp245_at_half_scaled"] + Fraction(1, 4) * a12**2 * (4 * a45**2 + 2 * s - 1))
    _identity(rep, "cp_1235_at_1", "P_A[1,2,3,5](1) = cp1235_form(a12, a13, a25, a35)",
              lambda: _char_at(_sub_rows(rows, (1, 2, 3, 5)), Fraction(1)),
              lambda: e["cp1235_form"].substitute({"x": a12, "y": a13, "z": a25, "w": a35}))

    def conjugated() -> MultiPoly:
        got = permutation_conjugate(rows, H_SWAP_PERMUTATION)
        a33 = t
        expected = [
            [a33, a35, a13, 0, 0],
            [a35, 0, 0, a45, a25],
            [a13, 0, HALF - t - s, 0, a12],
            [0, a45, 0, s, a24],
            [0, a25, a12, a24, 0],
        ]
        total = MultiPoly.const(0)
        for i in range(5):
            for j in range(5):
                d = got[i][j] - expected[i][j]
                total = total + d * d
        return total

    _identity(rep, "end_swap_conjugation", "P A P^-1 has the end-swapped entry layout",
              conjugated, lambda: MultiPoly.const(0))

    swap = {"t": HALF - t - s, "a12": a35, "a35": a12, "a24": a45, "a45": a24}
    _identity(rep, "cp245_at_1_swap_invariant", "cp245_at_1 is unchanged by the end swap", lambda: e["cp245_at_1"].with_vars(H_SYMBOLS).substitute(swap), lambda: e["cp245_at_1"])
    _identity(rep, "cp245_at_half_scaled_swap_invariant", "cp245_at_half_scaled is unchanged by the end swap", lambda: e["cp245_at_half_scaled"].with_vars(H_SYMBOLS).substitute(swap), lambda: e["cp245_at_half_scaled"])
    _identity(rep, "cp245_at_1_decreasing_in_a25", "d(cp245_at_1)/da25 = -2(1-s) a25 - 2 a24 a45",
              lambda: e["cp245_at_1"].partial_derivative("a25"), lambda: -2 * (1 - s) * a25 - 2 * a24 * a45)
    _identity(rep, "cp245_at_half_scaled_increasing_in_a25", "d(cp245_at_half_scaled)/da25 = 8(1-2s) a25 + 16 a24 a45",
              lambda: e["cp245_at_half_scaled"].partial_derivative("a25"), lambda: 8 * (1 - 2 * s) * a25 + 16 * a24 * a45)
    q = Fraction(1, 4) * (1 - 2 * s)
    _identity(rep, "cp245_at_1_at_small_entries", "cp245_at_1 with a24^2 = a45^2 = (1-2s)/4 factors as (1+z)(1-2(1-s)z)/2",
              lambda: 1 - s - (1 - s) * z**2 - 2 * q - 2 * z * q, lambda: HALF * (1 + z) * (1 - 2 * (1 - s) * z))
    _identity(rep, "cp245_at_half_scaled_at_small_entries", "cp245_at_half_scaled with a24^2 = a45^2 = (1-2s)/4 is (1+2z)^2 (1-2s)",
              lambda: -1 + 2 * s + 8 * q + 4 * (1 - 2 * s) * z**2 + 16 * q * z, lambda: (1 + 2 * z) ** 2 * (1 - 2 * s))

    _identity(rep, "a45_profile_from_a12_bounds", "a45_profile(x, y) is the cross-multiplied comparison of the two a12 bounds",
              lambda: (t + s) * (-1 + 2 * s + 4 * y + 4 * x) * (1 - s - x) - (1 + 2 * t + 2 * s) * (1 - s - y - x) * (4 * x + 2 * s - 1),
              lambda: e["a45_profile"])
    _identity(rep, "a45_profile_const_lower_corner", "a45_profile_const((1-2s)/4) = (1-2s)(3-2s)(1+2t+2s)/4",
              lambda: e["a45_profile_const"].substitute({"y": Fraction(1, 4) - HALF * s}),
              lambda: Fraction(1, 4) * (1 - 2 * s) * (3 - 2 * s) * (1 + 2 * t + 2 * s))
    _identity(rep, "a45_profile_const_upper_corner", "a45_profile_const((3-2s)/4) expands to the stated nonnegative form",
              lambda: e["a45_profile_const"].substitute({"y": Fraction(3, 4) - HALF * s}),
              lambda: Fraction(3, 2) * s * (1 - 2 * s) + HALF * t * (5 - 8 * s) + 2 * s**3 + 2 * t * s**2 + Fraction(1, 4))
    _identity(rep, "a45_profile_discriminant", "a45_profile_linear^2 - 16 a45_profile_lead a45_profile_const = a45_profile_lead a45_profile_disc",
              lambda: e["a45_profile_linear"] ** 2 - 16 * e["a45_profile_lead"] * e["a45_profile_const"], lambda: e["a45_profile_lead"] * e["a45_profile_disc"])
    # a24_sq_window = (3-2s)(P +- 2 sqrt(K)) / (4 a45_profile_lead): its product and its being a root of a45_profile_disc
    P = 1 + 3 * t + 3 * s
    K = (1 + 2 * t + 2 * s) * (t + s)
    _identity(rep, "a24_sq_window_product", "a24_sq_window+ a24_sq_window- = (3-2s)^2/16, i.e. P^2 - 4K = a45_profile_lead^2",
              lambda: P**2 - 4 * K, lambda: e["a45_profile_lead"] ** 2)
    _identity(rep, "a24_sq_window_roots_of_a45_profile_disc", "discriminant of a45_profile_disc is 256 (3-2s)^2 K",
              lambda: (8 * (3 - 2 * s) * P) ** 2 - 4 * 16 * e["a45_profile_lead"] * (3 - 2 * s) ** 2 * e["a45_profile_lead"],
              lambda: 256 * (3 - 2 * s) ** 2 * K)
    _identity(rep, "a45_profile_y_derivative", "d a45_profile / dy = 4 a45_profile_lead x - 1 + 2t + 4s",
              lambda: e["a45_profile"].partial_derivative("y"), lambda: 4 * e["a45_profile_lead"] * x - 1 + 2 * t + 4 * s)
    _identity(rep, "a45_profile_at_lower_x", "a45_profile((1-2s)/4, y) = (3-2s)(t+s) y",
              lambda: e["a45_profile"].substitute({"x": Fraction(1, 4) - HALF * s}), lambda: (3 - 2 * s) * (t + s) * y)
    _identity(rep, "a45_profile_disc_at_lower_y", "a45_profile_disc((1-2s)/4) = 4 a45_profile_lead E with E the inner radicand of the a45 lower bound",
              lambda: e["a45_profile_disc"].substitute({"y": Fraction(1, 4) - HALF * s}),
              lambda: 4 * ((1 + t + s) - (1 - 2 * s) * (3 - 2 * s) * (t + s)))

    a13_sq = HALF * (1 - 2 * t) * (t + s)
    _identity(rep, "cp1235_form_at_a13_floor", "cp1235_form(x, a13_floor, z, w) with 2 y = sqrt(2(1-2t)(t+s))",
              lambda: _reduce_square(e["cp1235_form"], "y", a13_sq),
              lambda: -HALF * (1 + s) * z**2 - x * w * 2 * y * z + (t - 1 + w**2) * x**2 + HALF * (1 + s) - HALF * (1 + 2 * t + 2 * s) * w**2)
    X, Y = x, y
    D1, D2, T = 4 * X + 2 * s - 1, 4 * Y + 2 * s - 1, -1 + 2 * s + 4 * X + 4 * Y
    _identity(rep, "extremal_numerator_combination", "8 D1 D2 cp1235_form(a12_floor, a13_floor, 0, a35_floor) = extremal_numerator(a45^2, a24^2, s, t)",
              lambda: (t - 1) * (t + s) * T * 4 * D2 + (1 - 2 * t) * (t + s) * T**2 + 4 * (1 + s) * D1 * D2 - (1 + 2 * t + 2 * s) * (1 - 2 * t) * T * D1,
              lambda: e["extremal_numerator"])
    _identity(rep, "extremal_numerator_at_s_half", "extremal_numerator(x, y, 1/2, 0) = -24 (x - y)^2",
              lambda: e["extremal_numerator"].restrict({"s": HALF, "t": 0}), lambda: -24 * (x - y) ** 2)
    _identity(rep, "extremal_numerator_y2_coefficient", "the y^2 coefficient of extremal_numerator is -16 (3-2t)(t+s)",
              lambda: e["extremal_numerator"].partial_derivative("y", 2) / 2, lambda: -16 * (3 - 2 * t) * (t + s))

    def extremal_numerator_disc() -> MultiPoly:
        extremal_numerator = e["extremal_numerator"]
        a = extremal_numerator.partial_derivative("y", 2) / 2
        b = extremal_numerator.partial_derivative("y").restrict({"y": 0})
        c = extremal_numerator.restrict({"y": 0})
        return b * b - 4 * a * c

    _identity(rep, "extremal_disc_discriminant", "extremal_disc(x) is the discriminant of extremal_numerator in y", extremal_numerator_disc, lambda: e["extremal_disc"])
    _identity(rep, "extremal_disc_lead_minimum", "extremal_disc_lead at t = (1-2s)/4 equals 2(1+s)(1-2s)",
              lambda: e["extremal_disc_lead"].substitute({"t": Fraction(1, 4) - HALF * s}), lambda: 2 * (1 + s) * (1 - 2 * s))
    _identity(rep, "extremal_window_surd", "(1-2s)^2 (extremal_disc_linear^2 - (3+2s) extremal_disc_lead extremal_disc_const) = (8(1-2t)(1-2s))^2 (3-2t)(1+s)(t+s)^3",
              lambda: (1 - 2 * s) ** 2 * (e["extremal_disc_linear"] ** 2 - (3 + 2 * s) * e["extremal_disc_lead"] * e["extremal_disc_const"]),
              lambda: (8 * (1 - 2 * t) * (1 - 2 * s)) ** 2 * (3 - 2 * t) * (1 + s) * (t + s) ** 3)
    return rep


# ---------------------------------------------------------------------------
# one-variable sign and root replays
# ---------------------------------------------------------------------------

# Printed 10-significant-digit roots of the one-variable restrictions.
APPENDIX_A_ROOTS: dict[str, tuple[str, ...]] = {
    "floor_gap(s,0)": ("-1.591478567", "0.03825363319", "2.053224934"),
    "floor_gap(s,1/4-s/2)": ("-1.400220700", "-1", "-0.04587223942", "1.946092939"),
    "floor_gap(0,t)": ("0.06482035236", "0.3322609755", "4.352918672"),
    "d2(floor_residual)/dt2(s,1/4-s/2)": ("-1.333013968", "0.5332693631", "2.549744605"),
    "floor_residual(s,0)": ("-1.733921023", "0.007447858016", "0.5", "3.226473165"),
    "floor_residual(s,1/4-s/2)": ("-1.221500234", "-1.061552813", "-0.1534997659", "0.5", "3.061552813"),
    "floor_residual(0,t)": ("0.008546600862", "0.4150148497"),
    "floor_residual(1/2-2t,t)": ("-1.280776406", "0", "0.3267498830", "0.7807764064", "0.8607501170"),
}

ROOT_TOL = Fraction(1, 10**9)


def _restrictions() -> dict[str, UniPoly]:
    e = h_expressions()
    s, t = variables("s t")
    floor_gap, floor_residual = e["floor_gap"], e["floor_residual"]
    diag = {"t": Fraction(1, 4) - HALF * s}
    return {
        "floor_gap(s,0)": floor_gap.restrict({"t": 0}).to_uni("s"),
        "floor_gap(s,1/4-s/2)": floor_gap.substitute(diag).to_uni("s"),
        "floor_gap(0,t)": floor_gap.restrict({"s": 0}).to_uni("t"),
        "d2(floor_residual)/dt2(s,1/4-s/2)": floor_residual.partial_derivative("t", 2).substitute(diag).to_uni("s"),
        "floor_residual(s,0)": floor_residual.restrict({"t": 0}).to_uni("s"),
        "floor_residual(s,1/4-s/2)": floor_residual.substitute(diag).to_uni("s"),
        "floor_residual(0,t)": floor_residual.restrict({"s": 0}).to_uni("t"),
        "floor_residual(1/2-2t,t)": floor_residual.substitute({"s": HALF - 2 * t}).to_uni("t"),
    }


def match_printed_roots(p: UniPoly, printed: tuple[str, ...], digits: int = 10) -> tuple[bool, str]:
    """Every printed value lies within 1e-9 of a distinct isolated root, and
    the counts agree."""
    roots = isolate_real_roots(p, digits)
    if len(roots) != len(printed):
        return False, f"{len(roots)} real roots isolated, {len(printed)} printed"
    for value, iv in zip(sorted(Fraction(v) for v in printed), roots):
        if not (iv.lo - ROOT_TOL <= value <= iv.hi + ROOT_TOL):
            return False, f"printed {value} not within 1e-9 of root in {iv}"
    return True, ""


def _signed(p: UniPoly, interval: Interval, expected: Sign) -> tuple[bool, str]:
    got = sign_on_interval(p, interval)
    return got.implies(expected), f"sign {got.value} on {interval}"


def _root_in(p: UniPoly, lo: Fraction, hi: Fraction, index: int) -> Interval:
    """Isolating interval of the ``index``-th root of ``p`` inside ``(lo, hi)``."""
    inside = [iv for iv in isolate_real_roots(p, 12) if lo < iv.lo and iv.hi < hi]
    return inside[index]


def verify_appendix_ab(digits: int = 10) -> Report:
    """Replay the two one-variable sign arguments behind the extremal_window comparisons.

    The first part shows ``a45_sq_floor >= extremal_window-`` through the polynomials ``floor_gap`` and
    ``floor_residual``; the second shows ``a45_sq_ceiling <= extremal_window+`` through ``ceiling_gap`` to ``window_residual``.
    """
    rep = Report("appendix-ab")
    e = h_expressions()
    s, t = variables("s t")
    floor_gap, floor_residual, ceiling_gap, ceiling_residual, window_gap, window_residual = (e[k] for k in ("floor_gap", "floor_residual", "ceiling_gap", "ceiling_residual", "window_gap", "window_residual"))
    extremal_disc_lead, extremal_disc_linear = e["extremal_disc_lead"], e["extremal_disc_linear"]
    restr = _restrictions()
    diag = {"t": Fraction(1, 4) - HALF * s}
    zero_half = Interval.half_open(0, HALF)

    # --- lower comparison -------------------------------------------------
    _identity(rep, "a45_sq_floor_relaxed", "1/2(1-s) - 1/4(1 - F/2) = (1-2s)((5-2s)(t+s)+2) / (8(1+t+s))",
              lambda: 8 * (1 + t + s) * (HALF * (1 - s)) - 2 * ((1 + t + s) - HALF * (1 - 2 * s) * (3 - 2 * s) * (t + s)),
              lambda: (1 - 2 * s) * ((5 - 2 * s) * (t + s) + 2))
    _identity(rep, "floor_gap_definition", "(t+s) floor_gap = 2(1+t+s) extremal_disc_linear - (3+2s)((5-2s)(t+s)+2) extremal_disc_lead",
              lambda: (t + s) * floor_gap, lambda: 2 * (1 + t + s) * extremal_disc_linear - (3 + 2 * s) * ((5 - 2 * s) * (t + s) + 2) * extremal_disc_lead)
    _identity(rep, "floor_residual_definition", "256(1-2t)^2(3-2t)(1+s)(t+s)(1+t+s)^2 - floor_gap^2 = -(3+2s) extremal_disc_lead floor_residual",
              lambda: 256 * (1 - 2 * t) ** 2 * (3 - 2 * t) * (1 + s) * (t + s) * (1 + t + s) ** 2 - floor_gap**2,
              lambda: -(3 + 2 * s) * extremal_disc_lead * floor_residual)
    _identity(rep, "floor_gap_tt", "d2(floor_gap)/dt2 = 128 s^2 + 96 s + 192 t - 304",
              lambda: floor_gap.partial_derivative("t", 2), lambda: 128 * s**2 + 96 * s + 192 * t - 304)
    rep.check("floor_gap_concave_in_t", "d2(floor_gap)/dt2 at t = 1/4 - s/2 is 128 s^2 - 256 < -224 on [0, 1/2)",
              lambda: identity_check(floor_gap.partial_derivative("t", 2).substitute(diag), 128 * s**2 - 256)
              and _signed(UniPoly([-32, 0, 128]), zero_half, Sign.STRICTLY_NEGATIVE)[0])
    _identity(rep, "floor_gap_s_edge", "floor_gap(s, 0) = -24 s^3 + 12 s^2 + 78 s - 3",
              lambda: floor_gap.restrict({"t": 0}), lambda: -24 * s**3 + 12 * s**2 + 78 * s - 3)
    _identity(rep, "floor_gap_diag_edge", "floor_gap(s, 1/4 - s/2) = -2(1+s)(8s^3 - 4s^2 - 22s - 1)",
              lambda: floor_gap.substitute(diag), lambda: -2 * (1 + s) * (8 * s**3 - 4 * s**2 - 22 * s - 1))
    _identity(rep, "floor_gap_t_edge", "floor_gap(0, t) = 32 t^3 - 152 t^2 + 56 t - 3",
              lambda: floor_gap.restrict({"s": 0}), lambda: 32 * t**3 - 152 * t**2 + 56 * t - 3)

    for name, printed in APPENDIX_A_ROOTS.items():
        p = restr[name]
        rep.check(f"roots {name}", f"printed roots {', '.join(printed)}", lambda p=p, printed=printed: match_printed_roots(p, printed, digits))

    def s0_split() -> tuple[bool, str]:
        p = restr["floor_gap(s,0)"]
        if count_real_roots(p, 0, HALF) != 1 or p(0) >= 0 or p(HALF) <= 0:
            return False, "expected a single sign change on (0, 1/2)"
        iv = _root_in(p, Fraction(0), HALF, 0)
        return iv.hi < Fraction(4, 100), f"s0 in {iv}"

    rep.check("floor_gap_s_edge_sign", "floor_gap(s,0) < 0 on [0, s0), >= 0 on [s0, 1/2), and s0 < 4/100", s0_split)
    rep.check("floor_gap_diag_edge_positive", "floor_gap(s, 1/4 - s/2) > 0 on [0, 1/2)",
              lambda: _signed(restr["floor_gap(s,1/4-s/2)"], zero_half, Sign.STRICTLY_POSITIVE))
    _identity(rep, "floor_gap_ss", "d2(floor_gap)/ds2 = 128 t^2 - 32 t + 48(8t - 3) s + 24",
              lambda: floor_gap.partial_derivative("s", 2), lambda: 128 * t**2 - 32 * t + 48 * (8 * t - 3) * s + 24)
    rep.check("floor_gap_convex_in_s", "with s <= 4/100: 128 t^2 - 416/25 t + 456/25 > 0 on [0, 3/8]",
              lambda: identity_check(floor_gap.partial_derivative("s", 2).restrict({"s": Fraction(4, 100)}),
                                     128 * t**2 - Fraction(416, 25) * t + Fraction(456, 25))
              and _signed(UniPoly([Fraction(456, 25), Fraction(-416, 25), 128]), Interval.closed(0, Fraction(3, 8)), Sign.STRICTLY_POSITIVE)[0])
    rep.check("floor_gap_increasing_in_s", "d(floor_gap)/ds at s = 0 is 48 t^2 - 168 t + 78 >= 36 on [0, 1/4]",
              lambda: identity_check(floor_gap.partial_derivative("s").restrict({"s": 0}), 48 * t**2 - 168 * t + 78)
              and _signed(UniPoly([42, -168, 48]), Interval.closed(0, Fraction(1, 4)), Sign.NONNEGATIVE)[0])

    _identity(rep, "floor_residual_tt", "d2(floor_residual)/dt2 = 256 s^3 + 128 s^2 + 1536 t s + 768 t^2 - 1472 s - 1152 t + 704",
              lambda: floor_residual.partial_derivative("t", 2),
              lambda: 256 * s**3 + 128 * s**2 + 1536 * t * s + 768 * t**2 - 1472 * s - 1152 * t + 704)
    _identity(rep, "floor_residual_ttt", "d3(floor_residual)/dt3 = 1536 t + 1536 s - 1152",
              lambda: floor_residual.partial_derivative("t", 3), lambda: 1536 * t + 1536 * s - 1152)
    _identity(rep, "floor_residual_ttt_bound", "d3(floor_residual)/dt3 at t = 1/4 - s/2 is -768(1-s)",
              lambda: floor_residual.partial_derivative("t", 3).substitute(diag), lambda: -768 * (1 - s))
    _identity(rep, "floor_residual_tt_diag", "d2(floor_residual)/dt2 at t = 1/4 - s/2 is 256 s^3 - 448 s^2 - 704 s + 464",
              lambda: floor_residual.partial_derivative("t", 2).substitute(diag), lambda: 256 * s**3 - 448 * s**2 - 704 * s + 464)
    rep.check("floor_residual_convex_in_t", "256 s^3 - 448 s^2 - 704 s + 464 > 0 on [0, 1/2)",
              lambda: _signed(restr["d2(floor_residual)/dt2(s,1/4-s/2)"], zero_half, Sign.STRICTLY_POSITIVE))
    _identity(rep, "floor_residual_s_edge", "floor_residual(s, 0) = (1-2s)(24 s^3 - 36 s^2 - 134 s + 1)",
              lambda: floor_residual.restrict({"t": 0}), lambda: (1 - 2 * s) * (24 * s**3 - 36 * s**2 - 134 * s + 1))

    def s1_split() -> tuple[bool, str]:
        p = restr["floor_residual(s,0)"]
        if count_real_roots(p, 0, HALF) != 2 or p(0) <= 0:
            return False, "expected roots s1 and 1/2 in (0, 1/2] with floor_residual(0,0) > 0"
        iv = _root_in(p, Fraction(0), HALF, 0)
        mid = (iv.hi + HALF) / 2
        return p(mid) < 0 and iv.hi < Fraction(1, 100), f"s1 in {iv}"

    rep.check("floor_residual_s_edge_sign", "floor_residual(s,0) < 0 on (s1, 1/2), >= 0 on [0, s1], and s1 < 1/100", s1_split)
    _identity(rep, "floor_residual_diag_edge", "floor_residual(s, 1/4 - s/2) = (1-2s)(16 s^2 + 22 s + 3)(4 s^2 - 8 s - 13) / 4",
              lambda: floor_residual.substitute(diag), lambda: Fraction(1, 4) * (1 - 2 * s) * (16 * s**2 + 22 * s + 3) * (4 * s**2 - 8 * s - 13))
    rep.check("floor_residual_diag_edge_negative", "floor_residual(s, 1/4 - s/2) < 0 on [0, 1/2)",
              lambda: _signed(restr["floor_residual(s,1/4-s/2)"], zero_half, Sign.STRICTLY_NEGATIVE))
    _identity(rep, "floor_residual_ss", "d2(floor_residual)/ds2 = (128 + 768 s) t^2 + (1536 s^2 - 1152 s - 1024) t - 576 s^2 + 576 s + 464",
              lambda: floor_residual.partial_derivative("s", 2),
              lambda: (128 + 768 * s) * t**2 + (1536 * s**2 - 1152 * s - 1024) * t - 576 * s**2 + 576 * s + 464)
    _identity(rep, "floor_residual_sst", "d/dt d2(floor_residual)/ds2 = (256 + 1536 s) t + 1536 s^2 - 1152 s - 1024",
              lambda: floor_residual.partial_derivative("s", 2).partial_derivative("t"),
              lambda: (256 + 1536 * s) * t + 1536 * s**2 - 1152 * s - 1024)
    rep.check("floor_residual_sst_negative", "at t = 1/4 - s/2 it is 768 s^2 - 896 s - 960 <= -768 on [0, 1/2]",
              lambda: identity_check(floor_residual.partial_derivative("s", 2).partial_derivative("t").substitute(diag), 768 * s**2 - 896 * s - 960)
              and _signed(UniPoly([-192, -896, 768]), Interval.closed(0, HALF), Sign.NONPOSITIVE)[0])
    _identity(rep, "floor_residual_ss_diag", "d2(floor_residual)/ds2 at t = 1/4 - s/2 is 8(3-2s)(36 s^2 + 40 s + 9)",
              lambda: floor_residual.partial_derivative("s", 2).substitute(diag), lambda: 8 * (3 - 2 * s) * (36 * s**2 + 40 * s + 9))
    rep.check("floor_residual_convex_in_s", "8(3-2s)(36 s^2 + 40 s + 9) > 0 on [0, 1/2)",
              lambda: _signed((floor_residual.partial_derivative("s", 2).substitute(diag)).to_uni("s"), zero_half, Sign.STRICTLY_POSITIVE))
    _identity(rep, "floor_residual_t_edge", "floor_residual(0, t) = 64 t^4 - 192 t^3 + 352 t^2 - 120 t + 1",
              lambda: floor_residual.restrict({"s": 0}), lambda: 64 * t**4 - 192 * t**3 + 352 * t**2 - 120 * t + 1)

    def t1_split() -> tuple[bool, str]:
        p = restr["floor_residual(0,t)"]
        q = Fraction(1, 4)
        if count_real_roots(p, 0, q) != 1 or p(0) <= 0 or p(q) >= 0:
            return False, "expected one sign change of floor_residual(0,t) on (0, 1/4]"
        iv = _root_in(p, Fraction(0), q + 1, 0)
        return iv.hi < Fraction(1, 100), f"t1 in {iv}"

    rep.check("floor_residual_t_edge_sign", "floor_residual(0,t) < 0 on (t1, 1/4], >= 0 on [0, t1], and t1 < 1/100", t1_split)
    _identity(rep, "floor_residual_far_edge", "floor_residual(1/2 - 2t, t) = 16 t (2t^2 + t - 2)(32 t^2 - 38 t + 9)",
              lambda: floor_residual.substitute({"s": HALF - 2 * t}), lambda: 16 * t * (2 * t**2 + t - 2) * (32 * t**2 - 38 * t + 9))
    rep.check("floor_residual_far_edge_negative", "floor_residual(1/2 - 2t, t) < 0 on (0, 1/4]",
              lambda: _signed(restr["floor_residual(1/2-2t,t)"], Interval(Fraction(0), Fraction(1, 4), False, True), Sign.STRICTLY_NEGATIVE))
    rep.check("floor_gap_corner_value", "floor_gap(1/100, 1/100) = -5283621/3125000 < 0",
              lambda: floor_gap.evaluate({"s": Fraction(1, 100), "t": Fraction(1, 100)}) == Fraction(-5283621, 3125000))

    # --- upper comparison -------------------------------------------------
    x2 = Fraction(1, 4) + t / 3 - s / 6
    _identity(rep, "ceiling_gap_definition", "3/4 ((3-2s)(5-6t) - 4(3-2t)(1/4 + t/3 - s/6)) = ceiling_gap",
              lambda: Fraction(3, 4) * ((3 - 2 * s) * (5 - 6 * t) - 4 * (3 - 2 * t) * x2), lambda: ceiling_gap)
    rep.check("ceiling_gap_s_coefficient", "the s coefficient of ceiling_gap is -(6 - 8t) < 0 on [0, 1/4]",
              lambda: identity_check(ceiling_gap.partial_derivative("s"), -(6 - 8 * t))
              and _signed(UniPoly([-6, 8]), Interval.closed(0, Fraction(1, 4)), Sign.STRICTLY_NEGATIVE)[0])
    rep.check("ceiling_gap_positive", "ceiling_gap(1/2 - 2t, t) = -14 t^2 + t + 6 >= 41/8 on [0, 1/4]",
              lambda: identity_check(ceiling_gap.substitute({"s": HALF - 2 * t}), -14 * t**2 + t + 6)
              and _signed(UniPoly([Fraction(7, 8), 1, -14]), Interval.closed(0, Fraction(1, 4)), Sign.NONNEGATIVE)[0])
    _identity(rep, "ceiling_residual_definition", "9(3-2s)^2 (1-t)(1-2t) - ceiling_gap^2 = -t(3-2t) ceiling_residual",
              lambda: 9 * (3 - 2 * s) ** 2 * (1 - t) * (1 - 2 * t) - ceiling_gap**2, lambda: -t * (3 - 2 * t) * ceiling_residual)
    rep.check("ceiling_residual_negative", "ceiling_residual <= 4 s^2 + 27 t - 9, which is -5/4 at s = 1/2, t = 1/4",
              lambda: identity_check(4 * s**2 + 27 * t - 9 - ceiling_residual, 2 * t * (8 * s + t))
              and (4 * s**2 + 27 * t - 9).evaluate({"s": HALF, "t": Fraction(1, 4)}) == Fraction(-5, 4))
    _identity(rep, "window_gap_definition", "(3+2s)(3+4t-2s) extremal_disc_lead - 3(1-2s) extremal_disc_linear = 4(t+s) window_gap",
              lambda: (3 + 2 * s) * (3 + 4 * t - 2 * s) * extremal_disc_lead - 3 * (1 - 2 * s) * extremal_disc_linear, lambda: 4 * (t + s) * window_gap)
    _identity(rep, "window_residual_definition", "36(1-2t)^2(1-2s)^2(3-2t)(1+s)(t+s) - window_gap^2 = -(3+2s) extremal_disc_lead window_residual",
              lambda: 36 * (1 - 2 * t) ** 2 * (1 - 2 * s) ** 2 * (3 - 2 * t) * (1 + s) * (t + s) - window_gap**2,
              lambda: -(3 + 2 * s) * extremal_disc_lead * window_residual)
    rep.check("window_residual_convex_in_t", "the t^2 coefficient 36 s^2 + 44 s + 33 of window_residual is positive on [0, 1/2]",
              lambda: identity_check(window_residual.partial_derivative("t", 2) / 2, 36 * s**2 + 44 * s + 33)
              and _signed(UniPoly([33, 44, 36]), Interval.closed(0, HALF), Sign.STRICTLY_POSITIVE)[0])
    _identity(rep, "window_residual_s_edge", "window_residual(s, 0) = -12 s (1 - 2s)", lambda: window_residual.restrict({"t": 0}), lambda: -12 * s * (1 - 2 * s))
    rep.check("window_residual_s_edge_sign", "window_residual(s, 0) <= 0 on [0, 1/2)",
              lambda: _signed(window_residual.restrict({"t": 0}).to_uni("s"), zero_half, Sign.NONPOSITIVE))
    _identity(rep, "window_residual_diag_edge", "window_residual(s, 1/4 - s/2) = -(1-2s)(72 s^3 + 116 s^2 + 86 s + 15) / 16",
              lambda: window_residual.substitute(diag), lambda: -Fraction(1, 16) * (1 - 2 * s) * (72 * s**3 + 116 * s**2 + 86 * s + 15))
    rep.check("window_residual_diag_edge_negative", "window_residual(s, 1/4 - s/2) < 0 on [0, 1/2)",
              lambda: _signed(window_residual.substitute(diag).to_uni("s"), zero_half, Sign.STRICTLY_NEGATIVE))

    # The upper comparison prints no roots; its factors must have none in [0, 1/2).
    factors = {
        "72s^3+116s^2+86s+15": (72 * s**3 + 116 * s**2 + 86 * s + 15).to_uni("s"),
        "36s^2+44s+33": (36 * s**2 + 44 * s + 33).to_uni("s"),
    }
    for name, p in factors.items():
        rep.check(f"factor_roots {name}", f"every real root of {name} lies outside [0, 1/2)",
                  lambda p=p: (all(iv.hi < 0 or iv.lo >= HALF for iv in isolate_real_roots(p, digits)),
                               ", ".join(str(iv) for iv in isolate_real_roots(p, digits)) or "no real roots"))
    return rep


def lambda3_oracle(params: HParams) -> float:
    """Third largest eigenvalue from the floating Jacobi solver."""
    return eigen_jacobi(build_h(params).to_float()).values[2]
