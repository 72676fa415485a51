from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sniep5.exact import DomainError
from sniep5.sniep import (
    PATTERN_FULL,
    Condition,
    ConstructionError,
    InputError,
    PerronBlock,
    SpectrumList,
    VerdictKind,
    check_conditions,
    decide,
    glue,
    normalize,
    realize,
    sample_array,
    sample_random,
)
from sniep5.spectral import eigen_jacobi

F = Fraction


def _spectrum_of(matrix):
    return np.linalg.eigvalsh(np.asarray(matrix, dtype=float))[::-1]


@pytest.mark.parametrize(
    "values, kind, failed",
    [
        ((1, F(7, 10), F(7, 10), F(-9, 10), F(-9, 10)), VerdictKind.NOT_REALIZABLE, Condition.LAMBDA3),
        ((1, F(35, 100), F(34, 100), F(-72, 100), F(-72, 100)), VerdictKind.OUT_OF_REGION, None),
        ((4, 3, -2, -2, -2), VerdictKind.OUT_OF_REGION, None),
        ((1, 1, 1, -1, -1), VerdictKind.REALIZABLE, None),
        ((1, 1, 1, 0, F(-3, 2)), VerdictKind.NOT_REALIZABLE, Condition.PERRON),
    ],
)
def test_check_conditions_examples(values, kind, failed):
    verdict = check_conditions(values)
    assert verdict.kind is kind
    assert verdict.failed_condition is failed


def test_wrong_arity_is_input_error():
    with pytest.raises(InputError):
        check_conditions((1, 2, 3))


def test_unsorted_input_is_sorted_with_note():
    verdict = check_conditions("-1, 1, 1, 1, -1")
    assert verdict.spectrum.values == (1, 1, 1, -1, -1)
    assert verdict.notes


def test_boundary_trace_is_in_region():
    assert check_conditions((1, 0, 0, 0, F(-1, 2))).kind is VerdictKind.REALIZABLE


def test_normalize_examples():
    sigma, scale = normalize((1, 0, 0, 0, 0))
    assert sigma.values == (F(1, 2), 0, 0, 0, 0) and scale == 2
    sigma, scale = normalize((4, 3, -2, -2, -2))
    assert sigma.values == (2, F(3, 2), -1, -1, -1) and scale == 2
    assert sigma[1] > 1
    with pytest.raises(DomainError):
        normalize((1, 0, 0, -1, -1))


def test_glue_examples():
    zero = PerronBlock.scalar(0)
    c = glue(zero, zero, 1.0)
    assert np.allclose(c.matrix, [[0, 1], [1, 0]])
    swap = PerronBlock.from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    c = glue(swap, zero, 1.5)
    assert np.allclose(_spectrum_of(c.matrix), [1.5, -0.5, -1.0])
    c = glue(swap, swap, 2.0)
    assert np.allclose(_spectrum_of(c.matrix), [2.0, 0.0, -1.0, -1.0])
    assert c.matrix.min() >= 0


def test_glue_rejects_low_target():
    swap = PerronBlock.from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ConstructionError):
        glue(swap, PerronBlock.scalar(0), 0.5)


@pytest.mark.parametrize(
    "values",
    [(1, 0, 0, 0, 0), (1, 1, 1, -1, -1), (1, F(1, 2), F(-1, 4), F(-1, 4), F(-1, 4)), (0, 0, 0, 0, 0)],
)
def test_realize_examples(values):
    cert = realize(values)
    assert cert.residual < 1e-9
    m = cert.matrix.to_numpy()
    assert m.min() >= -1e-12
    assert np.allclose(m, m.T)


def test_realize_single_perron_value_is_diagonal():
    cert = realize((1, 0, 0, 0, 0))
    assert np.allclose(np.sort(np.diag(cert.matrix.to_numpy())), [0, 0, 0, 0, 1])


def test_realize_refuses_infeasible():
    with pytest.raises(ConstructionError):
        realize((1, F(7, 10), F(7, 10), F(-9, 10), F(-9, 10)))


def test_decide_attaches_certificate():
    verdict = decide("1, 0.5, 0.2, -0.3, -0.6")
    assert verdict.kind is VerdictKind.REALIZABLE and verdict.certificate is not None
    assert decide("1, 0.7, 0.7, -0.9, -0.9").certificate is None


def test_sample_random_trace_and_determinism():
    (m,) = list(sample_random(F(1, 2), 1, 42))
    assert abs(float(m.trace()) - 0.5) < 1e-12
    a = sample_array(F(1, 2), 300, 9)
    b = sample_array(F(1, 2), 300, 9)
    assert np.array_equal(a, b)
    assert (a >= 0).all()


def test_sample_filter_respects_radius():
    a = sample_array(F(1, 2), 500, 4, max_radius=1.0, pattern=PATTERN_FULL)
    assert np.linalg.eigvalsh(a)[:, -1].max() <= 1.0


def test_sampled_lambda3_bound():
    a = sample_array(F(1, 2), 20_000, 7, max_radius=1.0)
    assert (np.linalg.eigvalsh(a)[:, 2] <= 0.5 + 1e-12).all()


spectra_entries = st.fractions(min_value=-1, max_value=1, max_denominator=50)


@given(st.lists(spectra_entries, min_size=5, max_size=5), st.fractions(min_value=F(1, 100), max_value=100, max_denominator=100))
def test_check_conditions_scale_invariant(values, c):
    a = check_conditions(values)
    b = check_conditions([c * v for v in values])
    assert a.kind is b.kind and a.failed_condition is b.failed_condition


@given(st.lists(spectra_entries, min_size=5, max_size=5))
def test_normalize_gives_trace_half(values):
    sigma = SpectrumList(tuple(values))
    if sigma.trace <= 0:
        return
    norm, scale = normalize(sigma)
    assert norm.trace == F(1, 2)
    assert (norm[1] <= 1) == (sigma.trace >= sigma[1] / 2)


@given(st.lists(spectra_entries, min_size=5, max_size=5))
def test_realize_sound_on_feasible_lists(values):
    verdict = check_conditions(values)
    if verdict.kind is not VerdictKind.REALIZABLE:
        return
    cert = realize(verdict.spectrum)
    m = cert.matrix.to_numpy()
    assert m.min() >= -1e-12
    assert eigen_jacobi(cert.matrix).max_deviation(verdict.spectrum.as_floats()) < 1e-8


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_glue_spectral_law(n, m, seed):
    rng = np.random.default_rng(seed)

    def block(k):
        a = rng.random((k, k))
        return PerronBlock.from_matrix((a + a.T) / 2)

    a, b = block(n), block(m)
    gamma = max(a.root, b.root) + float(rng.random())
    c = glue(a, b, gamma)
    expected = sorted(
        [gamma, a.root + b.root - gamma]
        + sorted(_spectrum_of(a.matrix))[:-1]
        + sorted(_spectrum_of(b.matrix))[:-1]
    )
    assert np.allclose(sorted(_spectrum_of(c.matrix)), expected, atol=1e-9)
    assert c.matrix.min() >= -1e-12


@given(st.lists(spectra_entries, min_size=5, max_size=5))
def test_mcdonald_neumann_never_first_failure_in_region(values):
    # with l1 >= |l5| and trace >= l1/2, l1 + l3 + l4 >= 0 follows
    verdict = check_conditions(values)
    assert verdict.failed_condition is not Condition.MCDONALD_NEUMANN
