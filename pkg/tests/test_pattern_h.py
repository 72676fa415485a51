from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sniep5.exact import DomainError
from sniep5.pattern_h import (
    DUAL_PREDICATE,
    HParams,
    build_h,
    h_expressions,
    h_predicates,
    lambda3_oracle,
    verify_appendix_ab,
    verify_h_identities,
)
from sniep5.poly import Interval, Sign, sign_on_interval, variables
from sniep5.sniep import PATTERN_H, sample_array
from sniep5.spectral import charpoly_exact

F = Fraction
entry = st.fractions(min_value=0, max_value=F(3, 4), max_denominator=40)


@st.composite
def h_params(draw):
    i = draw(st.integers(0, 40))
    j = draw(st.integers(0, 40 - i))
    offs = [draw(entry) for _ in range(6)]
    return HParams(F(i, 80), F(j, 80), *offs)


def test_build_h_all_zero():
    m = build_h(HParams(0, 0))
    assert m.rows() == [[F(1, 2), 0, 0, 0, 0]] + [[0] * 5 for _ in range(4)]


def test_build_h_rejects_bad_params():
    with pytest.raises(DomainError):
        HParams(F(1, 3), F(1, 3))
    with pytest.raises(DomainError):
        HParams(0, 0, a12=-1)
    with pytest.raises(DomainError):
        HParams(0.1, 0)


@given(h_params())
def test_build_h_trace_and_charpoly(params):
    m = build_h(params)
    assert m.trace() == F(1, 2)
    cp = charpoly_exact(m)
    assert cp.degree == 5 and cp.lead == 1
    for i, j in ((1, 4), (1, 5), (2, 3), (3, 4)):
        assert m.entry(i, j) == 0


def test_all_zero_offdiagonal_s1():
    s = F(1, 5)
    p = HParams(F(1, 10), s)
    assert h_expressions()["cp245_at_1"].evaluate(p.as_dict()) == 1 - s
    assert h_predicates(p)["cp245_at_1_nonnegative"]


def test_a24_boundary_predicts_lambda3():
    # 4 a24^2 = 1 - 2s exactly with a perfect-square radicand
    p = HParams(F(1, 10), F(3, 8), a24=F(1, 4), a12=F(1, 5), a45=F(1, 3))
    preds = h_predicates(p)
    assert preds["a24_small"] and preds["sufficient_condition"]
    assert preds["lambda3_at_most_half"]
    assert lambda3_oracle(p) <= 0.5 + 1e-12


def test_identity_suite():
    rep = verify_h_identities()
    assert rep.ok, rep.to_text()
    assert len(rep) >= 15


def test_appendix_ab_replay():
    rep = verify_appendix_ab()
    assert rep.ok, rep.to_text()
    assert rep["floor_gap_corner_value"].ok


def test_floor_gap_spot_value():
    assert h_expressions()["floor_gap"].evaluate({"s": F(1, 100), "t": F(1, 100)}) == F(-5283621, 3125000)


def test_window_residual_edge_sign():
    (s,) = variables("s")
    edge = (-12 * s * (1 - 2 * s)).to_uni("s")
    assert sign_on_interval(edge, Interval.half_open(0, F(1, 2))).implies(Sign.NONPOSITIVE)


@given(h_params())
def test_predicates_dual_under_swap(params):
    a = h_predicates(params)
    b = h_predicates(params.swapped())
    for name, dual in DUAL_PREDICATE.items():
        assert a[name] == b[dual], name


@settings(max_examples=60)
@given(h_params())
def test_sufficient_condition_gives_lambda3(params):
    preds = h_predicates(params)
    if preds["rho_at_most_one"] and preds["sufficient_condition"]:
        assert preds["lambda3_at_most_half"]


@settings(max_examples=60)
@given(h_params())
def test_rho_bound_gives_upper_bounds(params):
    preds = h_predicates(params)
    if preds["rho_at_most_one"]:
        assert preds["cp245_at_1_nonnegative"]
        assert preds["lambda3_at_most_half"]
        assert preds["a12_upper"] is not False
        assert preds["a35_upper"] is not False


def test_a24_and_a25_bounds_need_the_lower_premises():
    # Both points have spectral radius at most one yet break the strict bounds.
    wide = h_predicates(HParams(t=Fraction(0), s=Fraction(0), a24=Fraction(9, 10)))
    assert wide["rho_at_most_one"] and wide["a24_upper"] is False
    edge = h_predicates(HParams(t=Fraction(0), s=Fraction(0), a25=Fraction(1, 2)))
    assert edge["rho_at_most_one"] and edge["a25_upper"] is False


def _lambda3_violations(pattern_draws):
    eig = np.linalg.eigvalsh(pattern_draws)
    return int((eig[:, 2] > 0.5 + 1e-10).sum())


def test_lambda3_sampling_pattern_h():
    draws = sample_array(F(1, 2), 10_000, 11, max_radius=1.0, pattern=PATTERN_H)
    assert _lambda3_violations(draws) == 0


def test_submatrix_premise_sampling():
    draws = sample_array(F(1, 2), 4_000, 12, pattern=PATTERN_H)
    keep = []
    for m in draws:
        subs = [np.delete(np.delete(m, k, 0), k, 1) for k in range(5)]
        if all(np.linalg.eigvalsh(sub)[-1] <= 1.0 for sub in subs):
            keep.append(m)
    assert keep
    assert _lambda3_violations(np.array(keep)) == 0


def test_s_monotone_in_a25():
    e = h_expressions()
    d1 = e["cp245_at_1"].partial_derivative("a25")
    d2 = e["cp245_at_half_scaled"].partial_derivative("a25")
    rng = np.random.default_rng(5)
    for _ in range(200):
        t = F(int(rng.integers(0, 50)), 100)
        s = F(int(rng.integers(0, 50 - t * 100 + 1)), 100)
        point = {name: F(int(rng.integers(0, 100)), 100) for name in ("a12", "a13", "a24", "a25", "a35", "a45")}
        point.update(t=t, s=s)
        assert d1.evaluate(point) <= 0
        assert d2.evaluate(point) >= 0
