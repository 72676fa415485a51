"""Small symmetric matrices: exact characteristic polynomials and Jacobi eigensolves.

A :class:`SymMatrix` has order at most five and stores its upper triangle,
either as exact fractions or as floats. Determinants are taken by cofactor
expansion over any commutative ring whose elements support ``+``, ``-`` and
``*``, so the same routine serves fractions, floats, :class:`UniPoly` and
:class:`MultiPoly` entries.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .exact import DomainError, FormatError, format_rational, parse_rational, to_rational
from .poly import UniPoly, uni_eval

__all__ = [
    "Mode",
    "ModeError",
    "NumericError",
    "SymMatrix",
    "Spectrum",
    "determinant",
    "charpoly_exact",
    "charpoly_at",
    "eigen_jacobi",
    "jacobi_eigh",
    "negative_cp_witness",
    "principal_submatrix",
    "permutation_conjugate",
    "example_matrix",
    "example_matrix_entry_squares",
    "verify_example_matrix",
    "EXAMPLE_SPECTRUM",
    "MAX_ORDER",
]

MAX_ORDER = 5


class ModeError(TypeError):
    """Operation requires the other storage mode."""


class NumericError(ArithmeticError):
    """Iterative method did not converge."""


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def _upper_index(n: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    # row-major packing of the upper triangle
    return i * n - i * (i - 1) // 2 + (j - i)


class SymMatrix:
    """Immutable symmetric matrix of order ``n <= 5`` with one stored triangle."""

    __slots__ = ("n", "mode", "_upper")

    def __init__(self, n: int, upper: Sequence[Any], mode: Mode | str):
        mode = Mode(mode)
        if not 1 <= n <= MAX_ORDER:
            raise DomainError(f"order must be between 1 and {MAX_ORDER}, got {n}")
        if len(upper) != n * (n + 1) // 2:
            raise DomainError("upper triangle has the wrong number of entries")
        if mode is Mode.EXACT:
            vals = tuple(to_rational(v) if not isinstance(v, Fraction) else v for v in upper)
        else:
            vals = tuple(float(v) for v in upper)
        self.n = n
        self.mode = mode
        self._upper = vals

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], mode: Mode | str | None = None, tol: float = 0.0) -> "SymMatrix":
        """Build from a full square array, checking symmetry.

        Without an explicit mode, rows of ints, fractions or rational text give
        an exact matrix and anything containing floats gives a float matrix.
        """
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("matrix rows must form a square")
        if mode is None:
            floaty = any(isinstance(v, float) or isinstance(v, np.floating) for r in rows for v in r)
            mode = Mode.FLOAT if floaty else Mode.EXACT
        mode = Mode(mode)
        conv: Callable[[Any], Any] = (lambda v: to_rational(v) if not isinstance(v, Fraction) else v) if mode is Mode.EXACT else float
        full = [[conv(v) for v in r] for r in rows]
        for i in range(n):
            for j in range(i + 1, n):
                a, b = full[i][j], full[j][i]
                if (mode is Mode.EXACT and a != b) or (mode is Mode.FLOAT and abs(a - b) > tol):
                    raise DomainError(f"matrix is not symmetric at ({i + 1},{j + 1})")
        upper = [full[i][j] for i in range(n) for j in range(i, n)]
        return cls(n, upper, mode)

    @classmethod
    def from_numpy(cls, array: np.ndarray, tol: float = 1e-12) -> "SymMatrix":
        return cls.from_rows(np.asarray(array, dtype=float).tolist(), Mode.FLOAT, tol)

    @classmethod
    def zeros(cls, n: int, mode: Mode | str = Mode.EXACT) -> "SymMatrix":
        return cls(n, [0] * (n * (n + 1) // 2), mode)

    @classmethod
    def identity(cls, n: int, mode: Mode | str = Mode.EXACT) -> "SymMatrix":
        return cls.diag([1] * n, mode)

    @classmethod
    def diag(cls, values: Sequence[Any], mode: Mode | str = Mode.EXACT) -> "SymMatrix":
        n = len(values)
        return cls(n, [values[i] if i == j else 0 for i in range(n) for j in range(i, n)], mode)

    # access -------------------------------------------------------------
    def __getitem__(self, ij: tuple[int, int]) -> Any:
        """Zero-based entry access."""
        i, j = ij
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(ij)
        return self._upper[_upper_index(self.n, i, j)]

    def entry(self, i: int, j: int) -> Any:
        """One-based entry access, as in ``b_ij``."""
        return self[i - 1, j - 1]

    def rows(self) -> list[list[Any]]:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(v) for v in r] for r in self.rows()], dtype=float)

    def to_float(self) -> "SymMatrix":
        return SymMatrix(self.n, [float(v) for v in self._upper], Mode.FLOAT)

    def trace(self) -> Any:
        return sum((self[i, i] for i in range(self.n)), Fraction(0) if self.mode is Mode.EXACT else 0.0)

    def min_entry(self) -> Any:
        return min(self._upper)

    def is_nonnegative(self, tol: float = 0.0) -> bool:
        return all(v >= -tol for v in self._upper)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymMatrix) and self.n == other.n and self.mode == other.mode and self._upper == other._upper

    def __hash__(self) -> int:
        return hash((self.n, self.mode, self._upper))

    def __repr__(self) -> str:
        return f"SymMatrix(n={self.n}, mode={self.mode.value}, rows={self.rows()!r})"

    def map(self, fn: Callable[[Any], Any], mode: Mode | str | None = None) -> "SymMatrix":
        return SymMatrix(self.n, [fn(v) for v in self._upper], mode or self.mode)

    def with_entry(self, i: int, j: int, value: Any) -> "SymMatrix":
        """Copy with the one-based entry ``(i, j)`` (and ``(j, i)``) replaced."""
        upper = list(self._upper)
        upper[_upper_index(self.n, i - 1, j - 1)] = value
        return SymMatrix(self.n, upper, self.mode)

    # text and JSON ------------------------------------------------------
    def to_text(self) -> str:
        """Row-major, whitespace separated, one row per line."""
        fmt = format_rational if self.mode is Mode.EXACT else repr
        return "\n".join(" ".join(fmt(v) for v in r) for r in self.rows())

    @classmethod
    def from_text(cls, text: str, mode: Mode | str = Mode.EXACT) -> "SymMatrix":
        """Parse rows separated by newlines or ``;`` with whitespace or commas between entries."""
        rows = [r for r in (line.replace(",", " ").split() for line in text.replace(";", "\n").splitlines()) if r]
        if not rows:
            raise FormatError("empty matrix text")
        mode = Mode(mode)
        if mode is Mode.EXACT:
            parsed = [[parse_rational(v) for v in r] for r in rows]
        else:
            try:
                parsed = [[float(parse_rational(v)) if "/" in v else float(v) for v in r] for r in rows]
            except ValueError as exc:
                raise FormatError(str(exc)) from None
        return cls.from_rows(parsed, mode, tol=1e-12)

    def to_json_obj(self) -> dict[str, Any]:
        fmt = format_rational if self.mode is Mode.EXACT else float
        return {"order": self.n, "mode": self.mode.value, "rows": [[fmt(v) for v in r] for r in self.rows()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict[str, Any]) -> "SymMatrix":
        mode = Mode(obj.get("mode", "exact"))
        rows = obj["rows"]
        if mode is Mode.EXACT:
            rows = [[parse_rational(str(v)) for v in r] for r in rows]
        return cls.from_rows(rows, mode, tol=1e-12)


# ---------------------------------------------------------------------------
# determinants and characteristic polynomials
# ---------------------------------------------------------------------------


def determinant(rows: Sequence[Sequence[Any]], zero: Any = 0) -> Any:
    """Cofactor expansion along rows, memoised on column subsets.

    Works over any commutative ring; ``zero`` is the additive identity used
    for the empty sum.
    """
    n = len(rows)
    if n == 0:
        return zero + 1
    memo: dict[tuple[int, frozenset[int]], Any] = {}

    def minor(r: int, cols: frozenset[int]) -> Any:
        if r == n:
            return zero + 1
        key = (r, cols)
        if key in memo:
            return memo[key]
        total = zero
        ordered = sorted(cols)
        for k, c in enumerate(ordered):
            a = rows[r][c]
            if isinstance(a, (int, float, Fraction)) and a == 0:
                continue
            if hasattr(a, "is_zero") and a.is_zero():
                continue
            term = a * minor(r + 1, cols - {c})
            total = total + term if k % 2 == 0 else total - term
        memo[key] = total
        return total

    return minor(0, frozenset(range(n)))


def charpoly_exact(m: SymMatrix) -> UniPoly:
    """``det(lambda I - M)`` as an exact monic polynomial."""
    if m.mode is not Mode.EXACT:
        raise ModeError("charpoly_exact needs an exact matrix")
    lam = UniPoly([0, 1])
    rows = [[(lam if i == j else UniPoly()) - m[i, j] for j in range(m.n)] for i in range(m.n)]
    return determinant(rows, UniPoly())


def charpoly_at(m: SymMatrix, lam: Any) -> Any:
    """``det(lam I - M)`` evaluated directly, without forming the polynomial."""
    rows = [[(lam if i == j else 0) - m[i, j] for j in range(m.n)] for i in range(m.n)]
    zero = Fraction(0) if m.mode is Mode.EXACT else 0.0
    return determinant(rows, zero)


def negative_cp_witness(m: SymMatrix, lam: Any) -> bool:
    """True iff the characteristic polynomial is negative at ``lam``.

    For a nonnegative symmetric matrix this certifies a spectral radius
    strictly above ``lam``.
    """
    if m.mode is not Mode.EXACT:
        raise ModeError("witness needs an exact matrix")
    return uni_eval(charpoly_exact(m), to_rational(lam) if not isinstance(lam, Fraction) else lam) < 0


def principal_submatrix(m: SymMatrix, indices: Sequence[int]) -> SymMatrix:
    """Rows and columns ``indices`` (one-based, strictly increasing)."""
    idx = list(indices)
    if not idx or any(b <= a for a, b in zip(idx, idx[1:])) or idx[0] < 1 or idx[-1] > m.n:
        raise DomainError(f"bad principal index set {indices} for order {m.n}")
    k = len(idx)
    return SymMatrix(k, [m[idx[a] - 1, idx[b] - 1] for a in range(k) for b in range(a, k)], m.mode)


def permutation_conjugate(rows: Sequence[Sequence[Any]], perm_rows: Sequence[Sequence[int]]) -> list[list[Any]]:
    """``P M P^T`` for a permutation matrix ``P`` given by its rows.

    Entries are only moved, never combined, so this works for any entry type.
    """
    n = len(rows)
    sigma = []
    for r in perm_rows:
        if sorted(r) != [0] * (n - 1) + [1]:
            raise DomainError("not a permutation matrix")
        sigma.append(list(r).index(1))
    if sorted(sigma) != list(range(n)):
        raise DomainError("not a permutation matrix")
    # (P M P^T)_{ij} = M_{sigma(i), sigma(j)}
    return [[rows[sigma[i]][sigma[j]] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# Jacobi eigensolver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending with a per-value error radius."""

    values: tuple[float, ...]
    radii: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if any(b > a for a, b in zip(vals, vals[1:])):
            raise DomainError("spectrum values must be sorted descending")
        radii = tuple(float(r) for r in self.radii) or (0.0,) * len(vals)
        if len(radii) != len(vals) or any(r < 0 for r in radii):
            raise DomainError("error radii must be nonnegative, one per value")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "radii", radii)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def max_deviation(self, other: Iterable[float]) -> float:
        ref = sorted((float(v) for v in other), reverse=True)
        if len(ref) != len(self.values):
            raise DomainError("spectra of different lengths")
        return max((abs(a - b) for a, b in zip(self.values, ref)), default=0.0)


def _off_norm(a: list[list[float]]) -> float:
    n = len(a)
    return math.sqrt(2.0 * sum(a[i][j] ** 2 for i in range(n) for j in range(i + 1, n)))


def jacobi_eigh(m: SymMatrix | np.ndarray | Sequence[Sequence[float]], tol: float = 1e-12, max_sweeps: int = 100) -> tuple[list[float], list[list[float]], float]:
    """Cyclic Jacobi rotations on a float copy.

    Returns ``(values, vectors, off_norm)`` with values sorted descending and
    ``vectors[k]`` the unit eigenvector of ``values[k]``. ``off_norm`` is the
    off-diagonal Frobenius norm at termination.
    """
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    rows = m.rows() if isinstance(m, SymMatrix) else (m.tolist() if isinstance(m, np.ndarray) else m)
    a = [[float(v) for v in r] for r in rows]
    n = len(a)
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    off = _off_norm(a)
    sweeps = 0
    while off >= tol:
        if sweeps >= max_sweeps:
            raise NumericError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e})")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
                for k in range(n):
                    vkp, vkq = v[k][p], v[k][q]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q] = s * vkp + c * vkq
        off = _off_norm(a)
    order = sorted(range(n), key=lambda i: -a[i][i])
    values = [a[i][i] for i in order]
    vectors = [[v[k][i] for k in range(n)] for i in order]
    return values, vectors, off


def eigen_jacobi(m: SymMatrix, tol: float = 1e-12) -> Spectrum:
    """Eigenvalues of a float-mode matrix by cyclic Jacobi (cap: 100 sweeps)."""
    if m.mode is not Mode.FLOAT:
        raise ModeError("eigen_jacobi needs a float matrix; call to_float() first")
    values, _, off = jacobi_eigh(m, tol)
    return Spectrum(tuple(values), (off,) * len(values))


# ---------------------------------------------------------------------------
# the counterexample outside the trace region
# ---------------------------------------------------------------------------

EXAMPLE_SPECTRUM = (Fraction(1), Fraction(35, 100), Fraction(34, 100), Fraction(-72, 100), Fraction(-72, 100))

# (row, col, square of entry, sign-free root description) for the surd entries
_EXAMPLE_SURD_SQUARES = {
    (1, 2): Fraction(130, 625),
    (1, 3): Fraction(130, 625),
    (2, 5): Fraction(630, 2500),
    (3, 4): Fraction(630, 2500),
}
_EXAMPLE_RATIONAL = {
    (1, 1): Fraction(2, 25),
    (4, 4): Fraction(17, 200),
    (5, 5): Fraction(17, 200),
    (4, 5): Fraction(91, 200),
}


def example_matrix_entry_squares() -> dict[tuple[int, int], Fraction]:
    """Exact squares of every nonzero upper-triangle entry of the counterexample."""
    out = dict(_EXAMPLE_SURD_SQUARES)
    out.update({k: v * v for k, v in _EXAMPLE_RATIONAL.items()})
    return out


def example_matrix() -> SymMatrix:
    """Float form of the trace-1/4 matrix whose third eigenvalue exceeds its trace."""
    rows = [[0.0] * 5 for _ in range(5)]
    for (i, j), sq in _EXAMPLE_SURD_SQUARES.items():
        rows[i - 1][j - 1] = rows[j - 1][i - 1] = math.sqrt(sq.numerator / sq.denominator)
    for (i, j), val in _EXAMPLE_RATIONAL.items():
        rows[i - 1][j - 1] = rows[j - 1][i - 1] = float(val)
    return SymMatrix.from_rows(rows, Mode.FLOAT)


@dataclass(frozen=True)
class ExampleCheck:
    ok: bool
    residual: float
    spectrum: Spectrum
    trace: float
    lambda3_exceeds_trace: bool
    trace_below_half_perron: bool


def verify_example_matrix(matrix: SymMatrix | None = None, tol: float = 1e-9, detail: bool = False) -> bool | ExampleCheck:
    """Check the counterexample spectrum and that it lies outside the trace region.

    ``matrix`` defaults to :func:`example_matrix`; passing a perturbed copy
    lets callers confirm the check is sensitive.
    """
    m = matrix if matrix is not None else example_matrix()
    spectrum = eigen_jacobi(m.to_float() if m.mode is Mode.EXACT else m)
    residual = spectrum.max_deviation(float(x) for x in EXAMPLE_SPECTRUM)
    trace = float(m.trace())
    lam = spectrum.values
    exceeds = lam[2] > trace
    below = trace < lam[0] / 2
    ok = residual < tol and exceeds and below and abs(trace - 0.25) < tol
    if detail:
        return ExampleCheck(ok, residual, spectrum, trace, exceeds, below)
    return ok


def all_permutations(n: int) -> Iterable[list[list[int]]]:
    for perm in itertools.permutations(range(n)):
        yield [[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)]
