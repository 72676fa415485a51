import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sniep5.exact import DomainError
from sniep5.pattern_c import CParams, apply_relations, build_bmin_and_eval, build_c, derive_diag_bounds, offdiag_lower_bounds
from sniep5.poly import UniPoly, isolate_real_roots
from sniep5.spectral import (
    EXAMPLE_SPECTRUM,
    Mode,
    ModeError,
    SymMatrix,
    all_permutations,
    charpoly_at,
    charpoly_exact,
    eigen_jacobi,
    example_matrix,
    example_matrix_entry_squares,
    negative_cp_witness,
    permutation_conjugate,
    principal_submatrix,
    verify_example_matrix,
)

entries = st.fractions(min_value=-3, max_value=3, max_denominator=20)


def _sym(values, n=5):
    it = iter(values)
    upper = [next(it) for _ in range(n * (n + 1) // 2)]
    return SymMatrix(n, upper, Mode.EXACT)


def _bmin(case, given):
    res = apply_relations(case, offdiag_lower_bounds(derive_diag_bounds(case, given)))
    return build_bmin_and_eval(res)[0]


def test_charpoly_of_diagonal():
    assert charpoly_exact(SymMatrix.diag([1, 2, 3])) == UniPoly.from_roots([1, 2, 3])


def test_charpoly_rejects_float_mode():
    with pytest.raises(ModeError):
        charpoly_exact(SymMatrix.identity(3, Mode.FLOAT))


def test_charpoly_of_case3_bmin_at_one():
    bmin = _bmin(3, ("12/100", "26/100", "18/100", "21/100"))
    assert charpoly_exact(bmin)(1) == Fraction(-7419049, 156250000)
    assert charpoly_at(bmin, 1) == Fraction(-7419049, 156250000)


def test_eigen_jacobi_identity():
    spectrum = eigen_jacobi(SymMatrix.identity(5, Mode.FLOAT))
    assert spectrum.values == (1.0,) * 5


def test_example_matrix_spectrum():
    spectrum = eigen_jacobi(example_matrix())
    assert spectrum.max_deviation(float(v) for v in EXAMPLE_SPECTRUM) < 1e-9


def test_negative_cp_witness_examples():
    assert negative_cp_witness(_bmin(1, ("0", "20/100")), Fraction(1))
    assert not negative_cp_witness(SymMatrix.identity(3), Fraction(2))
    assert negative_cp_witness(SymMatrix.from_rows([[0, 1], [1, 0]]), Fraction(1, 2))


def test_principal_submatrix():
    m = build_c(CParams(b11="1/10", b22="1/10", b33="1/10", b44="1/10", b55="1/10", b12="1/5", b24="1/3"))
    assert principal_submatrix(m, (1, 2, 3, 4, 5)) == m
    sub = principal_submatrix(m, (1, 2, 4))
    assert sub.entry(1, 2) == Fraction(1, 5) and sub.entry(2, 3) == Fraction(1, 3) and sub.entry(1, 3) == 0
    with pytest.raises(DomainError):
        principal_submatrix(m, (2, 1))
    with pytest.raises(DomainError):
        principal_submatrix(m, (1, 6))


def test_example_matrix_verification():
    assert verify_example_matrix()
    check = verify_example_matrix(detail=True)
    assert check.lambda3_exceeds_trace and check.trace_below_half_perron


def test_example_matrix_perturbation_detected():
    m = example_matrix().with_entry(0, 0, example_matrix()[0, 0] + 0.01)
    assert not verify_example_matrix(m)


def test_example_entry_squares():
    sq = example_matrix_entry_squares()
    assert sq[(1, 2)] == Fraction(130, 625)
    assert sq[(2, 5)] == Fraction(630, 2500)
    assert sq[(4, 5)] == Fraction(91, 200) ** 2
    m = example_matrix()
    for (i, j), value in sq.items():
        assert m.entry(i, j) ** 2 == pytest.approx(float(value), abs=1e-15)


def test_text_and_json_round_trip():
    m = _sym([Fraction(k, 7) for k in range(15)])
    assert SymMatrix.from_text(m.to_text()) == m
    assert SymMatrix.from_json_obj(m.to_json_obj()) == m


@settings(max_examples=25)
@given(st.lists(entries, min_size=15, max_size=15))
def test_charpoly_permutation_invariant(values):
    m = _sym(values)
    cp = charpoly_exact(m)
    for perm in itertools.islice(all_permutations(5), 0, 120, 7):
        conj = SymMatrix.from_rows(permutation_conjugate(m.rows(), perm), Mode.EXACT)
        assert charpoly_exact(conj) == cp


@settings(max_examples=30)
@given(st.lists(entries, min_size=15, max_size=15))
def test_jacobi_matches_exact_charpoly(values):
    m = _sym(values)
    spectrum = eigen_jacobi(m.to_float())
    # repeated roots are isolated once, so compare each eigenvalue with its nearest root
    roots = [float(iv.midpoint) for iv in isolate_real_roots(charpoly_exact(m), 8)]
    for v in spectrum.values:
        assert min(abs(v - r) for r in roots) < 1e-6
    assert sum(spectrum.values) == pytest.approx(float(m.trace()), abs=1e-10)


def test_interlacing_on_random_matrices():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        a = rng.normal(size=(5, 5))
        a = (a + a.T) / 2
        lam = np.linalg.eigvalsh(a)[::-1]
        m = SymMatrix.from_numpy(a)
        for drop in range(5):
            keep = tuple(i + 1 for i in range(5) if i != drop)
            mu = eigen_jacobi(principal_submatrix(m, keep)).values
            for k in range(4):
                assert lam[k] + 1e-8 >= mu[k] >= lam[k + 1] - 1e-8
            assert max(abs(x) for x in mu) <= max(abs(lam)) + 1e-8
