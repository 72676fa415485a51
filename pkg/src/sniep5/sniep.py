"""Realizability of five-element spectra by nonnegative symmetric matrices.

The decision covers lists whose sum is at least half the largest value. In
that region a sorted list ``l1 >= ... >= l5`` with sum ``T`` is the spectrum of
a nonnegative symmetric matrix exactly when

* ``l1 >= |l5|``                       (Perron),
* ``l2 + l5 <= T``                     (McDonald and Neumann),
* ``l3 <= T``.

The realizer builds certificates from 1x1 and 2x2 blocks joined by the rank
two Fiedler construction; every certificate is re-checked with the Jacobi
eigensolver before it is returned.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Sequence

import numpy as np

from .exact import DomainError, FormatError, format_rational, parse_rational, to_rational
from .spectral import Mode, SymMatrix, jacobi_eigh

__all__ = [
    "InputError",
    "ConstructionError",
    "SpectrumList",
    "VerdictKind",
    "Condition",
    "Verdict",
    "Certificate",
    "PerronBlock",
    "check_conditions",
    "normalize",
    "glue",
    "realize",
    "decide",
    "sample_random",
    "sample_array",
    "PATTERN_FULL",
    "PATTERN_H",
    "PATTERN_C",
    "CERTIFICATE_TOL",
]

CERTIFICATE_TOL = 1e-8
JACOBI_TOL = 1e-12
NONNEG_TOL = 1e-12


class InputError(ValueError):
    """Malformed spectrum input."""


class ConstructionError(RuntimeError):
    """A construction step was given inputs outside its contract, or failed validation."""


# ---------------------------------------------------------------------------
# spectra and verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumList:
    """Five exact values sorted descending.

    ``reordered`` records that the caller's order was not descending.
    """

    values: tuple[Fraction, ...]
    reordered: bool = False

    def __post_init__(self) -> None:
        vals = tuple(to_rational(v) if not isinstance(v, Fraction) else v for v in self.values)
        if len(vals) != 5:
            raise InputError(f"expected 5 eigenvalues, got {len(vals)}")
        ordered = tuple(sorted(vals, reverse=True))
        object.__setattr__(self, "values", ordered)
        if ordered != vals:
            object.__setattr__(self, "reordered", True)

    @classmethod
    def parse(cls, text: str) -> "SpectrumList":
        """Parse ``"1, 0.35, 0.34, -0.72, -0.72"`` (commas or whitespace)."""
        parts = [p for p in text.replace(",", " ").split() if p]
        try:
            vals = tuple(parse_rational(p) for p in parts)
        except FormatError as exc:
            raise InputError(str(exc)) from None
        return cls(vals)

    @property
    def trace(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def __getitem__(self, k: int) -> Fraction:
        """One-based access: ``sigma[1]`` is the largest value."""
        if not 1 <= k <= 5:
            raise IndexError(k)
        return self.values[k - 1]

    def scaled(self, c: Fraction) -> "SpectrumList":
        return SpectrumList(tuple(c * v for v in self.values))

    def as_floats(self) -> list[float]:
        return [float(v) for v in self.values]

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(v) for v in self.values) + ")"


class VerdictKind(str, enum.Enum):
    REALIZABLE = "Realizable"
    NOT_REALIZABLE = "NotRealizable"
    OUT_OF_REGION = "OutOfRegion"


class Condition(str, enum.Enum):
    PERRON = "perron"
    MCDONALD_NEUMANN = "mcdonald_neumann"
    LAMBDA3 = "lambda3"


@dataclass(frozen=True)
class Certificate:
    matrix: SymMatrix
    residual: float
    steps: tuple[str, ...] = ()

    def to_json_obj(self) -> dict[str, Any]:
        return {"matrix": [[float(v) for v in r] for r in self.matrix.rows()], "residual": self.residual, "construction": list(self.steps)}


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    spectrum: SpectrumList
    failed_condition: Condition | None = None
    certificate: Certificate | None = None
    notes: tuple[str, ...] = ()

    def to_json_obj(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value, "spectrum": [format_rational(v) for v in self.spectrum.values]}
        if self.failed_condition is not None:
            out["failed_condition"] = self.failed_condition.value
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json_obj()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _coerce_spectrum(sigma: SpectrumList | Sequence[Any] | str) -> SpectrumList:
    if isinstance(sigma, SpectrumList):
        return sigma
    if isinstance(sigma, str):
        return SpectrumList.parse(sigma)
    try:
        return SpectrumList(tuple(sigma))
    except FormatError as exc:
        raise InputError(str(exc)) from None


def check_conditions(sigma: SpectrumList | Sequence[Any] | str) -> Verdict:
    """Three-way decision without building a certificate."""
    sigma = _coerce_spectrum(sigma)
    notes = ("input was not in descending order and has been sorted",) if sigma.reordered else ()
    l1, l2, l3, _, l5 = sigma.values
    trace = sigma.trace
    if trace < l1 / 2:
        return Verdict(VerdictKind.OUT_OF_REGION, sigma, notes=notes)
    if l1 < -l5 or l1 < 0:
        return Verdict(VerdictKind.NOT_REALIZABLE, sigma, Condition.PERRON, notes=notes)
    if l2 + l5 > trace:
        return Verdict(VerdictKind.NOT_REALIZABLE, sigma, Condition.MCDONALD_NEUMANN, notes=notes)
    if l3 > trace:
        return Verdict(VerdictKind.NOT_REALIZABLE, sigma, Condition.LAMBDA3, notes=notes)
    return Verdict(VerdictKind.REALIZABLE, sigma, notes=notes)


def normalize(sigma: SpectrumList | Sequence[Any] | str) -> tuple[SpectrumList, Fraction]:
    """Scale to trace one half; returns ``(sigma / scale, scale)`` with ``scale = 2 * trace``."""
    sigma = _coerce_spectrum(sigma)
    trace = sigma.trace
    if trace <= 0:
        raise DomainError("normalization needs a positive trace")
    scale = 2 * trace
    return sigma.scaled(1 / scale), scale


# ---------------------------------------------------------------------------
# Fiedler join
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PerronBlock:
    """Nonnegative symmetric float matrix with its Perron root and unit Perron vector."""

    matrix: np.ndarray
    root: float
    vector: np.ndarray
    steps: tuple[str, ...] = field(default=())

    @classmethod
    def scalar(cls, value: float) -> "PerronBlock":
        return cls(np.array([[float(value)]]), float(value), np.array([1.0]), (f"[{_fmt(value)}]",))

    @classmethod
    def from_matrix(cls, matrix: SymMatrix | np.ndarray) -> "PerronBlock":
        """Perron data from the Jacobi solver; the vector is made nonnegative."""
        arr = matrix.to_numpy() if isinstance(matrix, SymMatrix) else np.asarray(matrix, dtype=float)
        values, vectors, _ = jacobi_eigh(arr)
        vec = np.array(vectors[0])
        if vec.sum() < 0:
            vec = -vec
        return cls(arr, float(values[0]), vec, ("given block",))

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def glue(a: PerronBlock, b: PerronBlock, gamma: float, tol: float = 1e-12) -> PerronBlock:
    """Join two blocks so their Perron roots become ``gamma`` and ``alpha + beta - gamma``.

    The result is ``[[A, rho u v^T], [rho v u^T, B]]`` with
    ``rho = sqrt((gamma - alpha)(gamma - beta))``. It needs
    ``gamma >= max(alpha, beta)`` and nonnegative unit Perron vectors.
    """
    alpha, beta = a.root, b.root
    if gamma < alpha - tol or gamma < beta - tol:
        raise ConstructionError(f"target {gamma} is below a Perron root ({alpha}, {beta})")
    for blk in (a, b):
        if np.any(blk.vector < -tol) or abs(float(np.linalg.norm(blk.vector)) - 1.0) > 1e-9:
            raise ConstructionError("Perron vectors must be nonnegative unit vectors")
    da, db = max(gamma - alpha, 0.0), max(gamma - beta, 0.0)
    rho = math.sqrt(da * db)
    u, v = np.clip(a.vector, 0.0, None), np.clip(b.vector, 0.0, None)
    n, m = a.order, b.order
    c = np.zeros((n + m, n + m))
    c[:n, :n] = a.matrix
    c[n:, n:] = b.matrix
    c[:n, n:] = rho * np.outer(u, v)
    c[n:, :n] = c[:n, n:].T
    # eigenvector of [[alpha, rho], [rho, beta]] for gamma
    if rho > 0:
        x, y = rho, da
    elif da <= db:
        x, y = 1.0, 0.0
    else:
        x, y = 0.0, 1.0
    norm = math.hypot(x, y)
    w = np.concatenate([u * (x / norm), v * (y / norm)])
    step = f"join roots {_fmt(alpha)} and {_fmt(beta)} at {_fmt(gamma)} (coupling {_fmt(rho)})"
    return PerronBlock(c, float(gamma), w, a.steps + b.steps + (step,))


def _direct_sum(*blocks: PerronBlock) -> PerronBlock:
    size = sum(b.order for b in blocks)
    c = np.zeros((size, size))
    lead = max(range(len(blocks)), key=lambda k: blocks[k].root)
    w = np.zeros(size)
    pos = 0
    for k, blk in enumerate(blocks):
        c[pos : pos + blk.order, pos : pos + blk.order] = blk.matrix
        if k == lead:
            w[pos : pos + blk.order] = blk.vector
        pos += blk.order
    steps: tuple[str, ...] = tuple(s for b in blocks for s in b.steps) + ("direct sum",)
    return PerronBlock(c, blocks[lead].root, w, steps)


def _pair(high: float, low: float) -> PerronBlock:
    """2x2 block with spectrum ``(high, low)``; needs ``high + low >= 0``."""
    a, b = (high + low) / 2, (high - low) / 2
    m = np.array([[a, b], [b, a]])
    return PerronBlock(m, high, np.array([1.0, 1.0]) / math.sqrt(2.0), (f"pair ({_fmt(high)}, {_fmt(low)})",))


def _one_positive(top: float, negatives: Sequence[float]) -> PerronBlock:
    """Realize ``(top, n1, ..., nk)`` with all ``n <= 0`` and nonnegative sum.

    Peel the most negative value: realize the shorter list led by
    ``top + n_min`` and join it with a zero block at ``top``.
    """
    if not negatives:
        return PerronBlock.scalar(top)
    ordered = sorted(negatives)
    low, rest = ordered[0], ordered[1:]
    inner = _one_positive(top + low, rest)
    return glue(inner, PerronBlock.scalar(0.0), top)


def _four(mu: Sequence[float]) -> PerronBlock:
    """Realize a descending 4-list with ``mu2 >= 0``, Perron and nonnegative trace."""
    m1, m2, m3, m4 = mu
    if m3 >= 0:
        return _direct_sum(_pair(m1, m4), PerronBlock.scalar(m2), PerronBlock.scalar(m3))
    alpha = max(-m4, m2)
    beta = m1 + m2 - alpha
    return glue(_pair(alpha, m4), _pair(beta, m3), m1)


def _construct(values: Sequence[float]) -> PerronBlock:
    l1, l2, l3, l4, l5 = values
    if l5 >= 0:
        return _direct_sum(*(PerronBlock.scalar(v) for v in values))
    if l3 >= 0:
        return _direct_sum(_four((l1, l2, l4, l5)), PerronBlock.scalar(l3))
    if l2 <= 0:
        return _one_positive(l1, (l2, l3, l4, l5))
    alpha = max(l2, -l3 - l4)
    beta = l1 + l2 - alpha
    return glue(_one_positive(alpha, (l3, l4)), _pair(beta, l5), l1)


def realize(sigma: SpectrumList | Sequence[Any] | str, tol: float = CERTIFICATE_TOL) -> Certificate:
    """Nonnegative symmetric matrix with spectrum ``sigma``.

    Raises :class:`ConstructionError` unless the three conditions hold, and
    also if the Jacobi check of the output misses ``tol``.
    """
    sigma = _coerce_spectrum(sigma)
    verdict = check_conditions(sigma)
    target = sigma.as_floats()
    if all(v == 0 for v in sigma.values):
        block = PerronBlock(np.zeros((5, 5)), 0.0, np.eye(5)[0], ("zero matrix",))
    elif verdict.kind is VerdictKind.NOT_REALIZABLE:
        raise ConstructionError(f"{sigma} fails the {verdict.failed_condition.value} condition")  # type: ignore[union-attr]
    elif sigma.values[0] < 0 or sigma.trace < 0:
        raise ConstructionError(f"{sigma} has a negative trace or Perron value")
    else:
        block = _construct(target)
    mat = (block.matrix + block.matrix.T) / 2
    cert = SymMatrix.from_rows(mat.tolist(), Mode.FLOAT)
    values, _, _ = jacobi_eigh(cert, JACOBI_TOL)
    residual = max(abs(a - b) for a, b in zip(values, target))
    if residual > tol or float(mat.min()) < -NONNEG_TOL:
        raise ConstructionError(f"certificate for {sigma} failed validation (residual {residual:.3e}, min entry {mat.min():.3e})")
    return Certificate(cert, residual, block.steps)


def decide(sigma: SpectrumList | Sequence[Any] | str) -> Verdict:
    """:func:`check_conditions` plus a certificate when realizable."""
    verdict = check_conditions(sigma)
    if verdict.kind is not VerdictKind.REALIZABLE:
        return verdict
    return Verdict(verdict.kind, verdict.spectrum, None, realize(verdict.spectrum), verdict.notes)


# ---------------------------------------------------------------------------
# random nonnegative symmetric matrices
# ---------------------------------------------------------------------------

# Allowed nonzero positions (upper triangle, zero-based); the diagonal is a
# separate mask.
PATTERN_FULL = {
    "offdiag": [(i, j) for i in range(5) for j in range(i + 1, 5)],
    "diag": [0, 1, 2, 3, 4],
}
PATTERN_H = {
    "offdiag": [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 4)],
    "diag": [0, 2, 3],
}
PATTERN_C = {
    "offdiag": [(0, 1), (0, 2), (1, 3), (2, 4), (3, 4)],
    "diag": [0, 1, 2, 3, 4],
}

_CHUNK = 1024


def _draw_chunk(rng: np.random.Generator, size: int, trace: float, pattern: dict[str, Any]) -> np.ndarray:
    """One chunk of nonnegative symmetric matrices with the given trace.

    Entry magnitudes mix uniform and heavy-tailed draws with random sparsity;
    half of each chunk is pushed onto the unit spectral-radius boundary by
    scaling the off-diagonal part, which is where the sampled claims are
    tightest.
    """
    m = np.zeros((size, 5, 5))
    offdiag = pattern["offdiag"]
    diag = pattern["diag"]
    rows = np.array([i for i, _ in offdiag])
    cols = np.array([j for _, j in offdiag])
    heavy = rng.random(size) < 0.3
    vals = np.where(heavy[:, None], rng.exponential(1.0, (size, len(offdiag))), rng.random((size, len(offdiag))))
    keep = rng.random((size, len(offdiag))) < rng.uniform(0.4, 1.0, (size, 1))
    vals = vals * keep * rng.uniform(0.05, 1.0, (size, 1))
    m[:, rows, cols] = vals
    m[:, cols, rows] = vals
    dvals = rng.random((size, len(diag))) * (rng.random((size, len(diag))) < 0.8)
    dvals = np.where(rng.random((size, len(diag))) < 0.2, dvals**4, dvals)
    empty = dvals.sum(axis=1) == 0
    dvals[empty, rng.integers(0, len(diag), empty.sum())] = 1.0
    dvals *= trace / dvals.sum(axis=1, keepdims=True)
    idx = np.array(diag)
    m[:, idx, idx] = dvals
    # off-diagonal scale relative to the trace
    m_off = m.copy()
    m_off[:, range(5), range(5)] = 0.0
    m_diag = m - m_off
    m = m_diag + m_off * (trace * rng.uniform(0.2, 4.0, (size, 1, 1)))
    boundary = rng.random(size) < 0.5
    if trace > 0 and boundary.any():
        m[boundary] = _to_boundary(m_diag[boundary], m[boundary] - m_diag[boundary])
    return m


def _to_boundary(diag_part: np.ndarray, off_part: np.ndarray, target: float = 1.0) -> np.ndarray:
    """Scale off-diagonal parts so the spectral radius equals ``target`` where possible."""
    lo = np.zeros(diag_part.shape[0])
    hi = np.ones(diag_part.shape[0])
    # grow the upper bracket until the radius exceeds the target
    for _ in range(60):
        rad = np.linalg.eigvalsh(diag_part + hi[:, None, None] * off_part)[:, -1]
        grow = rad < target
        if not grow.any():
            break
        hi = np.where(grow, hi * 2, hi)
    reachable = np.linalg.eigvalsh(diag_part + hi[:, None, None] * off_part)[:, -1] >= target
    for _ in range(50):
        mid = (lo + hi) / 2
        rad = np.linalg.eigvalsh(diag_part + mid[:, None, None] * off_part)[:, -1]
        above = rad > target
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    scale = np.where(reachable, lo, 1.0)
    return diag_part + scale[:, None, None] * off_part


def sample_array(
    trace: Fraction | float | str,
    count: int,
    seed: int,
    max_radius: float | None = None,
    pattern: dict[str, Any] | None = None,
) -> np.ndarray:
    """Array of ``count`` sampled matrices, shape ``(count, 5, 5)``.

    The stream is cut into chunks of 1024 draws; chunk ``k`` is generated from
    the seed sequence ``(seed, k)``, so any slice of the stream can be
    regenerated independently. With ``max_radius`` set, draws whose spectral
    radius exceeds it are skipped and ``count`` counts accepted matrices.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    tr = float(to_rational(trace) if isinstance(trace, str) else trace)
    pattern = pattern or PATTERN_FULL
    out: list[np.ndarray] = []
    have = 0
    k = 0
    while have < count:
        rng = np.random.default_rng(np.random.SeedSequence([seed, k]))
        chunk = _draw_chunk(rng, _CHUNK, tr, pattern)
        if max_radius is not None:
            rad = np.linalg.eigvalsh(chunk)[:, -1]
            chunk = chunk[rad <= max_radius]
        out.append(chunk[: count - have])
        have += min(len(chunk), count - have)
        k += 1
    return np.concatenate(out, axis=0)


def sample_random(
    trace: Fraction | float | str,
    count: int,
    seed: int,
    max_radius: float | None = None,
    pattern: dict[str, Any] | None = None,
) -> Iterator[SymMatrix]:
    """Deterministic stream of nonnegative symmetric 5x5 float matrices with the given trace."""
    for arr in sample_array(trace, count, seed, max_radius, pattern):
        yield SymMatrix.from_rows(arr.tolist(), Mode.FLOAT)
