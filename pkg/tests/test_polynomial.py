"""Exact polynomial arithmetic, eventual order and the chi constructor."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pairstab.model import VarietyContext
from pairstab.polynomial import (
    ONE,
    Z,
    ZERO,
    RationalPolynomial,
    as_fraction,
    cauchy_root_bound,
    eventually_leq,
    eventually_lt,
    hilbert_polynomial,
)


def poly(*coefficients):
    # low degree first, like the constructor
    return RationalPolynomial(coefficients)


rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=12
)
polynomials = st.lists(rationals, max_size=6).map(RationalPolynomial)


# -- construction and representation ------------------------------------------


def test_trailing_zeros_are_stripped():
    assert poly(1, 2, 0, 0) == poly(1, 2)
    assert poly(0, 0).is_zero()
    assert poly().degree == -1


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        RationalPolynomial([0.5])
    with pytest.raises(TypeError):
        poly(1, 2).evaluate(1.5)


def test_string_coefficients_parse_exactly():
    assert poly("1/3", "-2") == RationalPolynomial([Fraction(1, 3), Fraction(-2)])
    with pytest.raises(ValueError):
        as_fraction("junk")


def test_immutability():
    p = poly(1, 2)
    with pytest.raises(AttributeError):
        p.coefficients = ()


def test_str_rendering():
    assert str(poly(5, 2)) == "2·z + 5"
    assert str(poly(-2, 0, 1)) == "z^2 - 2"
    assert str(ZERO) == "0"
    assert str(poly(Fraction(1, 2))) == "1/2"


# -- eventual order ------------------------------------------------------------


def test_eventually_leq_frozen_cases():
    assert eventually_leq(Z, Z * Z)
    assert eventually_leq(poly(3, 1), poly(3, 1))
    assert not eventually_lt(poly(3, 1), poly(3, 1))
    assert not eventually_leq(poly(5, 2), poly(3, 2))


def test_eventually_lt_frozen_cases():
    assert eventually_lt(Z, poly(1, 1))
    assert not eventually_lt(ONE, ONE)
    assert eventually_lt(ZERO, poly(0, -100, 1))


def test_zero_polynomial_convention():
    assert eventually_leq(ZERO, ZERO)
    assert not eventually_lt(ZERO, ZERO)


@given(polynomials, polynomials)
def test_eventual_order_trichotomy(p, q):
    # exactly one of p < q, q < p, p = q
    outcomes = [eventually_lt(p, q), eventually_lt(q, p), p == q]
    assert outcomes.count(True) == 1


@given(polynomials, polynomials)
def test_eventual_order_agrees_with_evaluation(p, q):
    diff = q - p
    n0 = math.ceil(cauchy_root_bound(diff)) + 1
    for n in (n0, n0 + 7):
        assert eventually_leq(p, q) == (p.evaluate(n) <= q.evaluate(n))
        if eventually_lt(p, q):
            assert p.evaluate(n) < q.evaluate(n)


# -- difference and evaluation ---------------------------------------------------


def test_difference_frozen_cases():
    assert (Z * Z).difference() == poly(-1, 2)
    assert poly(7).difference() == ZERO
    assert Z.difference() == ONE


@given(polynomials, polynomials)
def test_difference_is_linear(p, q):
    assert (p + q).difference() == p.difference() + q.difference()


@given(polynomials)
def test_difference_drops_degree_by_one(p):
    if p.degree >= 1:
        assert p.difference().degree == p.degree - 1
    else:
        assert p.difference().is_zero()


def test_evaluate_frozen_cases():
    assert (Z * Z).evaluate(3) == 9
    assert ZERO.evaluate(12345) == 0
    assert poly(5, 2)(-1) == 3
    assert poly(5, 2)(Fraction(1, 2)) == 6


@given(polynomials, rationals, rationals)
def test_shift_matches_evaluation(p, t, x):
    assert p.shift(t).evaluate(x) == p.evaluate(x + t)


# -- serialization ---------------------------------------------------------------


def test_json_round_trip_frozen():
    p = poly("1/2", "-3", "7/5")
    assert p.to_json() == ["1/2", "-3", "7/5"]
    assert RationalPolynomial.from_json(p.to_json()) == p


@given(polynomials)
def test_json_round_trip(p):
    assert RationalPolynomial.from_json(p.to_json()) == p


def test_from_json_rejects_junk():
    with pytest.raises(ValueError):
        RationalPolynomial.from_json("not a list")
    with pytest.raises(ValueError):
        RationalPolynomial.from_json(["1/0"])


# -- hilbert polynomial -----------------------------------------------------------


def test_hilbert_on_a_curve_matches_riemann_roch():
    # chi = h*r*z + d + r*(1 - g)
    ctx = VarietyContext.curve(genus=2)
    assert hilbert_polynomial(ctx, 2, 0) == poly(-2, 2)
    assert hilbert_polynomial(ctx, 1, 3) == poly(2, 1)


def test_hilbert_on_a_surface():
    # chi = H^2*r*z^2/2 + (d - r*K/2)*z + c
    ctx = VarietyContext.surface(h_squared=1, canonical_degree=2)
    assert hilbert_polynomial(ctx, 2, 3, lower=(Fraction(1, 3),)) == poly("1/3", 1, 1)


def test_hilbert_torsion_rank_zero():
    ctx = VarietyContext.curve(genus=3)
    assert hilbert_polynomial(ctx, 0, 5) == poly(5)


def test_hilbert_rejects_bad_shapes():
    ctx = VarietyContext.curve(genus=1)
    with pytest.raises(ValueError):
        hilbert_polynomial(ctx, -1, 0)
    with pytest.raises(ValueError):
        hilbert_polynomial(ctx, 1, 0, lower=(1,))


@given(
    st.integers(min_value=0, max_value=5),
    st.integers(min_value=0, max_value=5),
    rationals,
    rationals,
    rationals,
    rationals,
)
def test_hilbert_is_linear_in_rank_degree_and_lower(r1, r2, d1, d2, c1, c2):
    ctx = VarietyContext.surface(h_squared=2, canonical_degree=-3)
    combined = hilbert_polynomial(ctx, r1 + r2, d1 + d2, lower=(c1 + c2,))
    split = hilbert_polynomial(ctx, r1, d1, lower=(c1,)) + hilbert_polynomial(
        ctx, r2, d2, lower=(c2,)
    )
    assert combined == split


def test_cauchy_bound_dominates_roots():
    # (z - 3)(z + 5) = z^2 + 2z - 15 has roots 3 and -5
    p = poly(-15, 2, 1)
    assert cauchy_root_bound(p) >= 3
    assert cauchy_root_bound(poly(7)) == 0
