"""Exact polynomials over the rationals.

:class:`UniPoly` is a dense univariate polynomial used for characteristic
polynomials and for the one-variable restrictions that carry sign arguments.
Real roots are isolated with Sturm sequences on the square-free part.

:class:`MultiPoly` is a sparse multivariate polynomial over named variables,
used to state and check expansions, partial derivatives and substitutions.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .exact import DomainError, FormatError, format_rational, parse_rational, to_rational

__all__ = [
    "UniPoly",
    "MultiPoly",
    "Interval",
    "Sign",
    "uni_eval",
    "isolate_real_roots",
    "count_real_roots",
    "sign_on_interval",
    "identity_check",
    "variables",
    "sturm_sequence",
]

Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------


def _strip(coeffs: Iterable[Number]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class UniPoly:
    """Dense polynomial with coefficients stored in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs: tuple[Fraction, ...] = _strip(coeffs)

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "UniPoly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    # basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.to_multi("x").to_text()

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other: object) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "UniPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: object) -> "UniPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "UniPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise DomainError("negative polynomial power")
        out = UniPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly(c / self.lead for c in self.coeffs)

    def derivative(self, order: int = 1) -> "UniPoly":
        p = self
        for _ in range(order):
            p = UniPoly(i * c for i, c in enumerate(p.coeffs) if i)
        return p

    def __call__(self, x: Number) -> Fraction:
        return uni_eval(self, x)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> "UniPoly":
        if self.degree <= 0:
            return self.monic()
        return (self // self.gcd(self.derivative())).monic()

    def sign_at(self, x: Number) -> int:
        v = uni_eval(self, x)
        return (v > 0) - (v < 0)

    def to_multi(self, var: str) -> "MultiPoly":
        return MultiPoly({(i,): c for i, c in enumerate(self.coeffs) if c}, (var,))

    def to_float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def uni_eval(p: UniPoly, x: Number) -> Fraction:
    """Exact Horner evaluation."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Signed remainder chain of the square-free part of ``p``."""
    if p.is_zero():
        raise DomainError("Sturm sequence of the zero polynomial")
    f = p.squarefree_part()
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(seq: Sequence[UniPoly], x: Fraction) -> int:
    signs = [s for s in (q.sign_at(x) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at_infinity(seq: Sequence[UniPoly], positive: bool) -> int:
    signs = []
    for q in seq:
        s = 1 if q.lead > 0 else -1
        if not positive and q.degree % 2:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: UniPoly, lo: Number | None = None, hi: Number | None = None) -> int:
    """Number of distinct real roots in ``(lo, hi]``; ``None`` means infinite."""
    seq = sturm_sequence(p)
    v_lo = _variations_at_infinity(seq, False) if lo is None else _variations(seq, Fraction(lo))
    v_hi = _variations_at_infinity(seq, True) if hi is None else _variations(seq, Fraction(hi))
    return v_lo - v_hi


def _root_bound(p: UniPoly) -> Fraction:
    # Cauchy bound: every root has |x| < 1 + max |a_i / a_n|.
    return 1 + max((abs(c / p.lead) for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class Interval:
    """Interval with rational endpoints and per-end closedness."""

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", to_rational(self.lo))
        object.__setattr__(self, "hi", to_rational(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def closed(cls, lo: Number | str, hi: Number | str) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def half_open(cls, lo: Number | str, hi: Number | str) -> "Interval":
        """``[lo, hi)``."""
        return cls(lo, hi, True, False)

    @classmethod
    def open(cls, lo: Number | str, hi: Number | str) -> "Interval":
        return cls(lo, hi, False, False)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Number) -> bool:
        x = Fraction(x)
        left = self.lo <= x if self.lo_closed else self.lo < x
        right = x <= self.hi if self.hi_closed else x < self.hi
        return left and right

    def __str__(self) -> str:
        return (
            ("[" if self.lo_closed else "(")
            + f"{format_rational(self.lo)}, {format_rational(self.hi)}"
            + ("]" if self.hi_closed else ")")
        )


class _Isolator:
    """Bisection over a square-free polynomial, deflating exact rational roots."""

    def __init__(self, f: UniPoly):
        self.f = f
        self.seq = sturm_sequence(f)

    def count(self, a: Fraction, b: Fraction) -> int:
        return _variations(self.seq, a) - _variations(self.seq, b)

    def deflate(self, r: Fraction) -> None:
        self.f = self.f // UniPoly([-r, 1])
        self.seq = sturm_sequence(self.f) if self.f.degree > 0 else [self.f]


def _isolate(f: UniPoly, lo: Fraction, hi: Fraction, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b)`` each holding one root of ``f`` in ``(lo, hi)``.

    ``f`` is square-free with no root at ``lo`` or ``hi``. Exact rational roots
    are reported as ``(r, r)``; otherwise the root is strictly inside and the
    endpoints are not roots.
    """
    iso = _Isolator(f)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        if iso.f.degree <= 0:
            break
        k = iso.count(a, b)
        if k == 0:
            continue
        if k == 1 and b - a <= width:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if uni_eval(iso.f, m) == 0:
            out.append((m, m))
            iso.deflate(m)
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out


def isolate_real_roots(p: UniPoly, digits: int = 10) -> list[Interval]:
    """One closed interval of width at most ``10**-digits`` per distinct real root.

    Intervals are sorted and pairwise disjoint. A rational root found exactly
    during bisection is returned as a degenerate interval.
    """
    if p.is_zero():
        raise DomainError("cannot isolate the roots of the zero polynomial")
    if digits < 0:
        raise DomainError("digit accuracy must be nonnegative")
    f = p.squarefree_part()
    if f.degree <= 0:
        return []
    bound = _root_bound(f)
    width = Fraction(1, 10**digits)
    return [Interval.closed(a, b) for a, b in _isolate(f, -bound, bound, width)]


class Sign(str, enum.Enum):
    STRICTLY_POSITIVE = "strictly-positive"
    STRICTLY_NEGATIVE = "strictly-negative"
    NONNEGATIVE = "nonnegative"
    NONPOSITIVE = "nonpositive"
    MIXED = "mixed"

    def implies(self, weaker: "Sign") -> bool:
        """Whether this classification entails ``weaker``."""
        table = {
            Sign.STRICTLY_POSITIVE: {Sign.STRICTLY_POSITIVE, Sign.NONNEGATIVE},
            Sign.STRICTLY_NEGATIVE: {Sign.STRICTLY_NEGATIVE, Sign.NONPOSITIVE},
            Sign.NONNEGATIVE: {Sign.NONNEGATIVE},
            Sign.NONPOSITIVE: {Sign.NONPOSITIVE},
            Sign.MIXED: {Sign.MIXED},
        }
        return weaker in table[self]


def sign_on_interval(p: UniPoly, interval: Interval) -> Sign:
    """Certified sign of ``p`` over ``interval``.

    The zero polynomial is reported as ``nonnegative``.
    """
    lo, hi = interval.lo, interval.hi
    signs: set[int] = set()
    if p.is_zero():
        return Sign.NONNEGATIVE
    if interval.lo_closed:
        signs.add(p.sign_at(lo))
    if interval.hi_closed:
        signs.add(p.sign_at(hi))
    if lo < hi:
        f = p.squarefree_part()
        for end in (lo, hi):
            if f.degree > 0 and uni_eval(f, end) == 0:
                f = f // UniPoly([-end, 1])
        samples: list[Fraction]
        if f.degree <= 0:
            samples = [(lo + hi) / 2]
        else:
            roots = _isolate(f, lo, hi, hi - lo)
            roots = _separate(f, roots, lo, hi)
            if roots:
                signs.add(0)
            edges = [lo] + [x for ab in roots for x in ab] + [hi]
            samples = [(edges[2 * i] + edges[2 * i + 1]) / 2 for i in range(len(roots) + 1)]
        signs.update(p.sign_at(x) for x in samples)
    if signs <= {1}:
        return Sign.STRICTLY_POSITIVE
    if signs <= {-1}:
        return Sign.STRICTLY_NEGATIVE
    if 1 in signs and -1 in signs:
        return Sign.MIXED
    if 1 in signs or signs == {0}:
        return Sign.NONNEGATIVE
    return Sign.NONPOSITIVE


def _separate(
    f: UniPoly, roots: list[tuple[Fraction, Fraction]], lo: Fraction, hi: Fraction
) -> list[tuple[Fraction, Fraction]]:
    """Shrink isolating intervals until they are strictly apart from each other and the ends."""
    seq = sturm_sequence(f)
    roots = list(roots)

    def gap_ok(i: int) -> bool:
        left = lo if i == 0 else roots[i - 1][1]
        right = hi if i == len(roots) else roots[i][0]
        return left < right

    changed = True
    while changed:
        changed = False
        for i in range(len(roots) + 1):
            if gap_ok(i):
                continue
            # Shrink a neighbouring non-degenerate interval.
            for j in (i - 1, i):
                if 0 <= j < len(roots) and roots[j][0] < roots[j][1]:
                    a, b = roots[j]
                    m = (a + b) / 2
                    if uni_eval(f, m) == 0:
                        roots[j] = (m, m)
                    elif _variations(seq, a) - _variations(seq, m) == 1:
                        roots[j] = (a, m)
                    else:
                        roots[j] = (m, b)
                    changed = True
                    break
    return roots


# ---------------------------------------------------------------------------
# multivariate
# ---------------------------------------------------------------------------

Exponents = tuple[int, ...]


class MultiPoly:
    """Sparse polynomial: map from exponent vectors to nonzero coefficients.

    Variables are an ordered tuple of names. Arithmetic between polynomials on
    different variable tuples works on the ordered union of both.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[Exponents, Number] | None = None, vars: Sequence[str] = ()):
        self.vars: tuple[str, ...] = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise DomainError(f"repeated variable names in {self.vars}")
        clean: dict[Exponents, Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(self.vars):
                raise DomainError("exponent vector does not match variable count")
            c = Fraction(c)
            if c:
                clean[tuple(exps)] = clean.get(tuple(exps), Fraction(0)) + c
        self.terms: dict[Exponents, Fraction] = {e: c for e, c in clean.items() if c}

    # construction -------------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({(1,): 1}, (name,))

    @classmethod
    def const(cls, c: Number | str) -> "MultiPoly":
        return cls({(): to_rational(c) if isinstance(c, str) else c}, ())

    # properties ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return sum(self.terms.values(), Fraction(0))

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise DomainError(f"unknown variable {var!r}; known: {self.vars}") from None

    # alignment ----------------------------------------------------------
    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over a superset of the current variables."""
        vars = tuple(vars)
        missing = [v for v in self.used_vars() if v not in vars]
        if missing:
            raise DomainError(f"cannot drop variables in use: {missing}")
        pos = [self.vars.index(v) if v in self.vars else -1 for v in vars]
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(e[p] if p >= 0 else 0 for p in pos)] = c
        return MultiPoly(terms, vars)

    @staticmethod
    def _union(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
        return tuple(a) + tuple(v for v in b if v not in a)

    @classmethod
    def _coerce(cls, other: object) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return cls({(): other}, ())
        if isinstance(other, UniPoly):
            return other.to_multi("x")
        return NotImplemented  # type: ignore[return-value]

    def _aligned(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.vars == other.vars:
            return self, other
        vs = self._union(self.vars, other.vars)
        return self.with_vars(vs), other.with_vars(vs)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: object) -> "MultiPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._aligned(o)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPoly(terms, a.vars)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other: object) -> "MultiPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "MultiPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._aligned(o)
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(terms, a.vars)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "MultiPoly":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise DomainError("polynomial powers must be nonnegative integers")
        out = MultiPoly({(0,) * len(self.vars): 1}, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self) -> int:
        return hash(frozenset(self.canonical_terms().items()))

    def canonical_terms(self) -> dict[tuple[tuple[str, int], ...], Fraction]:
        """Terms keyed by named monomials, independent of variable order."""
        out = {}
        for e, c in self.terms.items():
            out[tuple((v, k) for v, k in zip(self.vars, e) if k)] = c
        return out

    # calculus and substitution ------------------------------------------
    def partial_derivative(self, var: str, order: int = 1) -> "MultiPoly":
        i = self._index(var)
        p = self
        for _ in range(order):
            terms = {}
            for e, c in p.terms.items():
                if e[i]:
                    ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
                    terms[ne] = c * e[i]
            p = MultiPoly(terms, p.vars)
        return p

    def restrict(self, values: Mapping[str, Number | str]) -> "MultiPoly":
        """Fix variables to rational values; the variables are dropped."""
        idx = {self._index(v): to_rational(x) if isinstance(x, str) else Fraction(x) for v, x in values.items()}
        keep = [i for i in range(len(self.vars)) if i not in idx]
        terms: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            for i, x in idx.items():
                if e[i]:
                    c = c * x ** e[i]
            if c:
                ne = tuple(e[i] for i in keep)
                terms[ne] = terms.get(ne, Fraction(0)) + c
        return MultiPoly(terms, tuple(self.vars[i] for i in keep))

    def substitute(self, mapping: Mapping[str, "MultiPoly | Number"]) -> "MultiPoly":
        """Simultaneous substitution of polynomials for variables."""
        for v in mapping:
            self._index(v)
        repl = {v: self._coerce(p) for v, p in mapping.items()}
        keep = tuple(v for v in self.vars if v not in repl)
        result = MultiPoly({}, keep)
        power_cache: dict[tuple[str, int], MultiPoly] = {}

        def power(v: str, k: int) -> MultiPoly:
            key = (v, k)
            if key not in power_cache:
                power_cache[key] = repl[v] ** k
            return power_cache[key]

        for e, c in self.terms.items():
            mono = MultiPoly({tuple(e[self.vars.index(v)] for v in keep): c}, keep)
            for v, k in zip(self.vars, e):
                if k and v in repl:
                    mono = mono * power(v, k)
            result = result + mono
        return result

    def evaluate(self, values: Mapping[str, Number | str]) -> Fraction:
        missing = [v for v in self.used_vars() if v not in values]
        if missing:
            raise DomainError(f"no value for variables {missing}")
        return self.restrict({v: values[v] for v in self.vars if v in values}).constant_value()

    def evaluate_float(self, values: Mapping[str, float]) -> float:
        total = 0.0
        xs = [values.get(v, 0.0) for v in self.vars]
        for e, c in self.terms.items():
            term = float(c)
            for x, k in zip(xs, e):
                if k:
                    term *= x**k
            total += term
        return total

    def to_uni(self, var: str | None = None) -> UniPoly:
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise DomainError(f"polynomial is not univariate: {used}")
            var = used[0] if used else (self.vars[0] if self.vars else "x")
        if any(v != var for v in used):
            raise DomainError(f"polynomial depends on variables other than {var!r}: {used}")
        if not self.vars or var not in self.vars:
            return UniPoly([self.constant_value()] if self.terms else [])
        i = self._index(var)
        coeffs = [Fraction(0)] * (self.degree_in(var) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            coeffs[e[i]] += c
        return UniPoly(coeffs)

    # text I/O -----------------------------------------------------------
    def _sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-k for k in kv[0])))

    def to_text(self) -> str:
        """Sparse term list such as ``"64 * s^2 t^2 - 24 * s^3 + 1"``."""
        if not self.terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self._sorted_terms()):
            mono = " ".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k)
            body = format_rational(abs(c)) + (f" * {mono}" if mono else "")
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r}, vars={self.vars})"

    @classmethod
    def from_text(cls, text: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        """Parse the sparse term list produced by :meth:`to_text`.

        Coefficients may be omitted (``"s^2"``), and the factors of a term may
        be separated by spaces or ``*`` (``"3 * s^2 t"``, ``"3*s^2*t"``).
        """
        tokens = _tokenize(text)
        if not tokens:
            raise FormatError("empty polynomial text")
        found: list[str] = []
        raw: list[tuple[dict[str, int], Fraction]] = []
        pos = 0
        sign = 1
        while pos < len(tokens):
            kind, val = tokens[pos]
            if kind == "op" and val in "+-":
                sign = -1 if val == "-" else 1
                pos += 1
                if pos >= len(tokens):
                    raise FormatError(f"dangling sign in {text!r}")
            elif raw:
                raise FormatError(f"missing '+' or '-' between terms in {text!r}")
            coeff = Fraction(1)
            powers: dict[str, int] = {}
            seen_any = False
            while pos < len(tokens) and not (tokens[pos][0] == "op" and tokens[pos][1] in "+-"):
                kind, val = tokens[pos]
                if kind == "num":
                    if seen_any:
                        raise FormatError(f"coefficient must lead its term in {text!r}")
                    coeff = parse_rational(val)
                elif kind == "name":
                    k = 1
                    if pos + 1 < len(tokens) and tokens[pos + 1] == ("op", "^"):
                        if pos + 2 >= len(tokens) or tokens[pos + 2][0] != "num" or not tokens[pos + 2][1].isdigit():
                            raise FormatError(f"bad exponent in {text!r}")
                        k = int(tokens[pos + 2][1])
                        pos += 2
                    powers[val] = powers.get(val, 0) + k
                    if val not in found:
                        found.append(val)
                elif val != "*":
                    raise FormatError(f"unexpected {val!r} in {text!r}")
                seen_any = True
                pos += 1
            if not seen_any:
                raise FormatError(f"empty term in {text!r}")
            raw.append((powers, sign * coeff))
            sign = 1
        vs = tuple(vars) if vars is not None else tuple(found)
        for v in found:
            if v not in vs:
                raise FormatError(f"variable {v!r} not among {vs}")
        terms: dict[Exponents, Fraction] = {}
        for powers, c in raw:
            e = tuple(powers.get(v, 0) for v in vs)
            terms[e] = terms.get(e, Fraction(0)) + c
        return cls(terms, vs)

    def iter_terms(self) -> Iterator[tuple[dict[str, int], Fraction]]:
        for e, c in self._sorted_terms():
            yield {v: k for v, k in zip(self.vars, e) if k}, c


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+/\d+|\d*\.\d+|\d+\.?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise FormatError(f"cannot parse polynomial text at {text[pos:]!r}")
        kind = m.lastgroup
        assert kind is not None
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def variables(names: str) -> tuple[MultiPoly, ...]:
    """``s, t = variables("s t")``."""
    return tuple(MultiPoly.var(n) for n in names.replace(",", " ").split())


def identity_check(lhs: MultiPoly | UniPoly, rhs: MultiPoly | UniPoly) -> bool:
    """True iff ``lhs - rhs`` is the zero polynomial."""
    if isinstance(lhs, UniPoly) and isinstance(rhs, UniPoly):
        return (lhs - rhs).is_zero()
    a = lhs.to_multi("x") if isinstance(lhs, UniPoly) else lhs
    b = rhs.to_multi("x") if isinstance(rhs, UniPoly) else rhs
    return (a - b).is_zero()
