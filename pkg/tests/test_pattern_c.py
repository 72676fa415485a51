from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sniep5.c_tables import REFERENCE_ROWS, golden_tables
from sniep5.exact import DomainError, Surd, verify_sqrt_bound
from sniep5.pattern_c import (
    CASE_RELATIONS,
    DUAL_C_PREDICATE,
    CParams,
    DiagBounds,
    PipelineError,
    apply_relations,
    build_bmin_and_eval,
    build_c,
    c_predicates,
    derive_diag_bounds,
    large_b33_sampling_check,
    offdiag_lower_bounds,
    reproduce_cells,
    verify_appendix_c,
    verify_appendix_d,
    verify_c_identities,
)
from sniep5.sniep import PATTERN_C, sample_array

F = Fraction
ZERO5 = (F(0),) * 5


def _pipeline(case, given):
    bounds = derive_diag_bounds(case, given)
    return bounds, apply_relations(case, offdiag_lower_bounds(bounds))


@st.composite
def c_params(draw):
    cuts = sorted(draw(st.lists(st.integers(0, 40), min_size=4, max_size=4)))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [40])]
    entry = st.fractions(min_value=0, max_value=F(3, 4), max_denominator=40)
    off = {k: draw(entry) for k in ("b12", "b13", "b24", "b35", "b45")}
    return CParams(*(F(p, 80) for p in parts), **off)


# --- parameters ----------------------------------------------------------


def test_params_validation():
    with pytest.raises(DomainError):
        CParams(F(1, 2), 0, 0, 0, F(1, 10))
    with pytest.raises(DomainError):
        CParams(F(1, 2), 0, 0, 0, 0, b12=F(-1, 10))
    with pytest.raises(DomainError):
        CParams(0.5, 0, 0, 0, 0)


def test_matrix_has_pattern_c_zeros():
    m = build_c(CParams(F(1, 10), F(1, 10), F(1, 10), F(1, 10), F(1, 10), 1, 1, 1, 1, 1))
    for i, j in [(0, 3), (0, 4), (1, 2), (1, 4), (2, 3)]:
        assert m[i, j] == 0
    assert m[0, 1] == m[0, 2] == m[1, 3] == m[2, 4] == m[3, 4] == 1


def test_predicates_flag_non_applicable_diagonal():
    preds = c_predicates(CParams(F(1, 2), 0, 0, 0, 0))
    assert preds["applicable"] is False


@settings(max_examples=60)
@given(c_params())
def test_predicates_respect_swap(params):
    here = c_predicates(params)
    there = c_predicates(params.swapped())
    for name, dual in DUAL_C_PREDICATE.items():
        assert here[name] == there[dual], name


@settings(max_examples=60)
@given(c_params())
def test_rho_bound_gives_entry_upper_bounds(params):
    preds = c_predicates(params)
    if preds["rho_at_most_one"]:
        for name in ("b12_upper", "b24_upper", "b45_upper", "b13_upper"):
            assert preds[name] is not False, name
        assert preds["lambda3_at_most_half"]


def test_lambda3_sampling_pattern_c():
    draws = sample_array(F(1, 2), 10_000, 21, max_radius=1.0, pattern=PATTERN_C)
    eig = np.linalg.eigvalsh(draws)
    assert int((eig[:, 2] > 0.5 + 1e-10).sum()) == 0


# --- diagonal bounds -----------------------------------------------------


def test_diag_bounds_case_1():
    b = derive_diag_bounds(1, (0, F(20, 100)))
    assert b.lower[0] == F(3, 40)
    assert b.upper[1:4] == (F(1, 10), F(1, 8), F(1, 6))


def test_diag_bounds_case_3():
    b = derive_diag_bounds(3, (F(12, 100), F(26, 100), F(18, 100), F(21, 100)))
    assert b.lower[0] == F(1, 100)
    assert b.upper[4] == F(21, 100)
    assert b.upper[1] == F(1, 15)


def test_diag_bounds_case_2():
    b = derive_diag_bounds(2, (F(36, 100), F(50, 100)))
    assert b.upper[1] == F(7, 200)


@pytest.mark.parametrize(
    "case, given",
    [(1, (F(1, 5), F(1, 10))), (3, (0, F(1, 10), F(1, 5), F(1, 10))), (5, (0, F(1, 10))), (2, (0,))],
)
def test_diag_bounds_rejects_bad_input(case, given):
    with pytest.raises(DomainError):
        derive_diag_bounds(case, given)


def test_diag_bounds_invariant():
    with pytest.raises(DomainError):
        DiagBounds((F(1, 4),) + ZERO5[1:], (F(1, 8),) + ZERO5[1:])


# --- pipeline ------------------------------------------------------------


def test_worked_example_chain():
    bounds = derive_diag_bounds(3, (F(12, 100), F(26, 100), F(18, 100), F(21, 100)))
    res = offdiag_lower_bounds(bounds)
    assert res.b12_sq_lower == F(679, 2500)
    assert res.radicand_12 == F(63936, 15625)
    assert res.radicand_root_12 == F(101, 50)
    assert Surd(res.b12_sq_upper) == Surd(F(44526, 362**2))
    assert str(Surd(res.b12_sq_upper)) == "sqrt(44526)/362"
    assert res.decimal == {
        "b12": F(13, 25),
        "b13": F(47, 100),
        "b24": F(13, 25),
        "b35_via_b13": F(9, 20),
        "b35_via_b45": F(9, 20),
        "b45": F(12, 25),
    }
    for key, sq in res.exact_squares.items():
        assert verify_sqrt_bound(sq, res.decimal[key], "lower")


def test_zero_lower_bounds_collapse():
    res = offdiag_lower_bounds(DiagBounds(ZERO5, (F(1, 100),) * 5))
    assert res.b12_sq_lower == res.b24_sq_lower == F(1, 4)
    assert res.decimal["b12"] == res.decimal["b24"] == F(1, 2)


def test_case_1_first_sub_range_intermediates():
    _, res = _pipeline(1, (0, F(20, 100)))
    assert res.radicand_root_12 == F(241, 100)
    assert Surd(res.b24_sq_upper) == Surd(F(169, 484))


def test_relations_case_1_first_sub_range():
    _, res = _pipeline(1, (0, F(20, 100)))
    assert res.decimal["b12"] == F(1, 2) and res.improved["b12"] == F(53, 100)
    assert res.decimal["b45"] == F(49, 100) and res.improved["b45"] == F(1, 2)


def test_relations_leave_large_entries_alone():
    res = offdiag_lower_bounds(DiagBounds(ZERO5, (F(1, 100),) * 5))
    small = {**res.decimal, "b35_via_b13": F(0), "b35_via_b45": F(0), "b13": F(0)}
    out = apply_relations(1, replace(res, decimal=small))
    assert out.improved["b12"] == small["b12"]
    assert out.improved["b24"] == small["b24"]
    assert out.improved["b45"] == small["b45"]


def test_relations_only_use_b13_for_b24_when_b33_dominates():
    assert ("b24", "b13") not in CASE_RELATIONS[1] + CASE_RELATIONS[2]
    assert ("b24", "b13") in CASE_RELATIONS[3] and ("b24", "b13") in CASE_RELATIONS[4]


def test_tie_marks_both_sides():
    _, res = _pipeline(3, (F(12, 100), F(26, 100), F(18, 100), F(21, 100)))
    assert res.b35_sq_lower_via_b13 != res.b35_sq_lower_via_b45 or res.b35_side == "tie"
    cells = reproduce_cells(2, ("0", "14/100"))
    assert cells["b35 via b13 selected"] and cells["b35 via b45 selected"]


def test_relations_reject_unknown_case():
    res = offdiag_lower_bounds(DiagBounds(ZERO5, (F(1, 100),) * 5))
    with pytest.raises(DomainError):
        apply_relations(7, res)


def test_bmin_requires_relations():
    res = offdiag_lower_bounds(DiagBounds(ZERO5, (F(1, 100),) * 5))
    with pytest.raises(DomainError):
        build_bmin_and_eval(res)


@pytest.mark.parametrize(
    "case, given, det",
    [
        (3, ("12/100", "26/100", "18/100", "21/100"), F(-7419049, 156250000)),
        (1, ("0", "20/100"), F(-305646963, 4000000000)),
        (4, ("40/100", "50/100", "0", "26/100"), F(-2089397, 31250000)),
        (2, ("24/100", "28/100"), F(-12411, 4000000)),
    ],
)
def test_bmin_determinant(case, given, det):
    _, res = _pipeline(case, given)
    bmin, value = build_bmin_and_eval(res)
    assert value == det
    assert bmin.min_entry() >= 0


def test_bmin_satisfies_its_lower_bounds():
    bounds, res = _pipeline(3, ("12/100", "26/100", "18/100", "21/100"))
    bmin, _ = build_bmin_and_eval(res)
    assert [bmin[i, i] for i in range(5)] == list(bounds.lower)
    positions = {"b12": (0, 1), "b13": (0, 2), "b24": (1, 3), "b35": (2, 4), "b45": (3, 4)}
    for key, (i, j) in positions.items():
        assert bmin[i, j] == res.improved[key]
    for key, sq in res.exact_squares.items():
        assert res.decimal[key] ** 2 <= sq
    assert res.improved["b35"] ** 2 <= max(res.b35_sq_lower_via_b13, res.b35_sq_lower_via_b45)


def test_pipeline_error_on_degenerate_box():
    # The all-zero box makes 4 b24_upper^2 equal (1-2 b22)(1-2 b44).
    with pytest.raises(PipelineError, match="b24_upper"):
        offdiag_lower_bounds(DiagBounds(ZERO5, ZERO5))


@st.composite
def nested_boxes(draw):
    outer_lo, outer_hi, inner_lo, inner_hi = [], [], [], []
    for _ in range(5):
        a, b, c, d = sorted(draw(st.lists(st.integers(0, 12), min_size=4, max_size=4)))
        outer_lo.append(F(a, 100))
        inner_lo.append(F(b, 100))
        inner_hi.append(F(c, 100))
        outer_hi.append(F(d, 100))
    return DiagBounds(tuple(outer_lo), tuple(outer_hi)), DiagBounds(tuple(inner_lo), tuple(inner_hi))


@settings(max_examples=80)
@given(nested_boxes(), st.sampled_from([1, 2, 3, 4]))
def test_pipeline_monotone_under_shrinking(boxes, case):
    outer, inner = boxes
    try:
        wide = apply_relations(case, offdiag_lower_bounds(outer))
        narrow = apply_relations(case, offdiag_lower_bounds(inner))
    except PipelineError:
        assume(False)
    for key, sq in wide.exact_squares.items():
        assert narrow.exact_squares[key] >= sq, key
        assert narrow.decimal[key] >= wide.decimal[key], key
    for key, value in wide.improved.items():
        assert narrow.improved[key] >= value, key


# --- verifiers -----------------------------------------------------------


def test_appendix_d_replays_every_row():
    rep = verify_appendix_d()
    assert len(rep) == len(REFERENCE_ROWS) == 19
    assert rep.ok, [s.detail for s in rep.failures()]
    assert "tie" in rep["case 2 sub-range 1"].detail


def test_appendix_d_is_deterministic():
    first = verify_appendix_d().to_json_obj()
    second = verify_appendix_d(jobs=2).to_json_obj()
    assert first == second


def _bump(value):
    if isinstance(value, bool):
        return not value
    if isinstance(value, Surd):
        return Surd(value.square + F(1, 100))
    return value + F(1, 100)


@pytest.mark.parametrize("key", [(1, 1), (2, 4), (3, 3), (4, 7)])
def test_mutated_cell_is_named(key):
    tables = golden_tables()
    for name in ("b11 upper", "radicand root 24", "b24 upper", "b45 lower before relations", "det(I - Bmin)"):
        mutated = golden_tables()
        mutated[key][name] = _bump(tables[key][name])
        rep = verify_appendix_d(tables=mutated)
        bad = rep.failures()
        assert [s.step for s in bad] == [f"case {key[0]} sub-range {key[1]}"]
        assert f"'{name}'" in bad[0].detail


def test_missing_reference_row_fails():
    tables = golden_tables()
    del tables[(4, 2)]
    rep = verify_appendix_d(tables=tables)
    assert [s.step for s in rep.failures()] == ["case 4 sub-range 2"]


def test_appendix_c_certificate():
    rep = verify_appendix_c()
    assert rep.ok, [(s.step, s.detail) for s in rep.failures()]
    assert "b12_variant_swap" in [s.step for s in rep.steps]


def test_large_b33_gap_sampling():
    bad, worst = large_b33_sampling_check(count=5_000, seed=3)
    assert bad == 0
    assert worst <= 0


def test_c_identities():
    rep = verify_c_identities()
    assert rep.ok, [(s.step, s.detail) for s in rep.failures()]
    assert len(rep) >= 15
