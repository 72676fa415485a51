from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sniep5.exact import DomainError
from sniep5.poly import (
    Interval,
    MultiPoly,
    Sign,
    UniPoly,
    count_real_roots,
    identity_check,
    isolate_real_roots,
    sign_on_interval,
    uni_eval,
    variables,
)

small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_uni_eval_examples():
    assert uni_eval(UniPoly([-1, 0, 1]), 1) == 0
    assert uni_eval(UniPoly([-3, 56, -152, 32]), 0) == -3


def _within(printed, intervals, tol=Fraction(1, 10**9)):
    return all(iv.lo - tol <= Fraction(v) <= iv.hi + tol for v, iv in zip(printed, intervals))


def test_isolate_cubic_edge_roots():
    roots = isolate_real_roots(UniPoly([-3, 78, 12, -24]), 10)
    assert len(roots) == 3
    assert _within(("-1.591478567", "0.03825363319", "2.053224934"), roots)
    assert all(iv.width <= Fraction(1, 10**10) for iv in roots)


def test_isolate_second_cubic():
    roots = isolate_real_roots(UniPoly([-3, 56, -152, 32]), 10)
    assert _within(("0.06482035236", "0.3322609755", "4.352918672"), roots)


def test_isolate_exact_rational_roots():
    roots = isolate_real_roots(UniPoly([-1, 0, 1]), 2)
    assert [(iv.lo, iv.hi) for iv in roots] == [(-1, -1), (1, 1)]


def test_isolate_zero_polynomial_rejected():
    with pytest.raises(DomainError):
        isolate_real_roots(UniPoly([]), 4)


def test_sign_on_interval_examples():
    s, z = variables("s z")
    assert sign_on_interval(UniPoly([0, 0, 1]), Interval.closed(-1, 1)) is Sign.NONNEGATIVE
    edge = (-150 * (1 - 2 * z) * (102 * z**2 + 24 * z - 13)).to_uni("z")
    assert sign_on_interval(edge, Interval.closed(Fraction(26, 100), Fraction(1, 2))).implies(Sign.NONPOSITIVE)
    assert sign_on_interval(UniPoly([-1, 0, 1]), Interval.closed(-2, 2)) is Sign.MIXED


def test_multivariate_operations():
    s, t = variables("s t")
    cubic = MultiPoly.from_text("32*t^3 - 152*t^2 + 56*t - 3", ["s", "t"])
    assert identity_check(cubic.restrict({"t": 0}), MultiPoly.const(-3))
    assert identity_check((s + t) ** 2, s**2 + 2 * s * t + t**2)
    assert (cubic - cubic).is_zero()
    sub = (t * t).with_vars(("s", "t")).substitute({"t": Fraction(1, 4) - s / 2})
    assert identity_check(sub, (Fraction(1, 4) - s / 2) ** 2)


def test_unknown_variable_rejected():
    (s,) = variables("s")
    with pytest.raises(DomainError):
        s.partial_derivative("q")


def test_text_round_trip():
    x, y = variables("x y")
    p = Fraction(3, 7) * x**2 * y - 5 * y + 1
    assert identity_check(MultiPoly.from_text(p.to_text(), ["x", "y"]), p)


@given(st.lists(small_fracs, min_size=2, max_size=7))
def test_sturm_count_matches_isolation(coeffs):
    p = UniPoly(coeffs)
    if p.degree < 1:
        return
    roots = isolate_real_roots(p, 6)
    assert len(roots) == count_real_roots(p)
    for iv in roots:
        assert iv.width <= Fraction(1, 10**6)
        assert p(iv.lo) * p(iv.hi) <= 0 or p.squarefree_part()(iv.lo) * p.squarefree_part()(iv.hi) <= 0


@given(st.lists(small_fracs, min_size=2, max_size=6))
def test_squarefree_part_keeps_roots(coeffs):
    p = UniPoly(coeffs)
    if p.degree < 1:
        return
    q = p * p * UniPoly([1, 1])
    assert len(isolate_real_roots(q, 4)) == len(isolate_real_roots(p * UniPoly([1, 1]), 4))


@given(st.lists(st.tuples(small_fracs, st.integers(0, 3), st.integers(0, 3)), max_size=5),
       st.lists(st.tuples(small_fracs, st.integers(0, 3), st.integers(0, 3)), max_size=5))
def test_product_rule(a_terms, b_terms):
    x, y = variables("x y")
    a = sum((c * x**i * y**j for c, i, j in a_terms), MultiPoly.const(0))
    b = sum((c * x**i * y**j for c, i, j in b_terms), MultiPoly.const(0))
    lhs = (a * b).with_vars(("x", "y")).partial_derivative("x")
    rhs = a.with_vars(("x", "y")).partial_derivative("x") * b + b.with_vars(("x", "y")).partial_derivative("x") * a
    assert identity_check(lhs, rhs)
