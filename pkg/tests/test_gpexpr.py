"""Tests for the expression language: parsing, evaluation, indicators."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gplab.errors import NonBooleanValue, ParseError, PreconditionError
from gplab.gpexpr import (
    N,
    Add,
    Const,
    Dist,
    Floor,
    Frac,
    Mul,
    Nint,
    Pow,
    RationalConst,
    Sub,
    canonicalize,
    discrete_difference,
    dist_lt_const,
    eval_indicator,
    eval_value,
    indicator_of_range,
    indicator_of_zero_set,
    is_floor_only,
    members,
    parse,
    substitute_var,
    to_text,
)
from gplab.realnum import NumberField, compare, to_float

from oracles import floor_quadratic


@pytest.fixture(scope="module")
def phi():
    return NumberField((-1, -1, 1), 1, 2, "phi").generator()


# -- parsing ------------------------------------------------------------------

def test_parse_floor_expression():
    e = parse("floor(2*n/3)")
    assert eval_value(e, 4) == 2
    assert eval_value(e, 0) == 0
    assert eval_value(e, -1) == -1


def test_parse_let_and_dist(phi):
    e = parse("let phi = root(x^2-x-1, 1, 2); dist(n*phi)")
    v = eval_value(e, 5)
    assert abs(to_float(v) - 0.09016994374947424) < 1e-15
    assert compare(v, (phi * 5).dist_to_int()) == 0


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as exc:
        parse("floor(n")
    assert exc.value.line == 1 and exc.value.col >= 7

    with pytest.raises(ParseError):
        parse("frob(n)")
    with pytest.raises(ParseError):
        parse("let t = root(x^2-4, 1, 3); t")  # reducible polynomial
    with pytest.raises(ParseError):
        parse("let t = root(x^2-2, -2, 2); t")  # not isolating
    with pytest.raises(ParseError):
        parse("n / floor(n)")  # division by a variable expression


def test_halves_example():
    e = parse("n/2 - floor(n/2)")
    assert eval_value(e, 7) == Fraction(1, 2)
    assert eval_value(e, 8) == 0


def test_division_by_field_constant():
    e = parse("let b = root(x^3-x^2-x-1, 1, 2); nint(n/b)")
    # 1/beta ~ 0.5437
    assert eval_value(e, 2) == 1
    assert eval_value(e, 13) == 7


def test_roundtrip_idempotent_on_lets(phi):
    e = Floor(Mul(Const("phi", phi), N))
    text = to_text(e)
    assert "root(x^2 - x - 1" in text
    again = parse(text)
    assert to_text(again) == text
    assert parse(to_text(again)) == again


def test_print_expands_non_generator_constants(phi):
    w = phi * Fraction(2, 3) + Fraction(1, 7)
    e = Nint(Mul(Const("phi", w), N))
    text = to_text(e)
    reparsed = parse(text)
    for n in (1, 5, 11):
        assert compare(eval_value(e, n), eval_value(reparsed, n)) == 0


# -- evaluation ---------------------------------------------------------------

def test_eval_matches_quadratic_oracle(phi):
    e = parse("let phi = root(x^2-x-1, 1, 2); floor(n*phi)")
    for n in range(-30, 60):
        assert eval_value(e, n) == floor_quadratic(Fraction(n, 2), Fraction(n, 2), 5)


def test_canonicalize_preserves_value(phi):
    exprs = [
        Frac(Mul(Const("phi", phi), N)),
        Nint(Add(N, Mul(RationalConst(Fraction(1, 3)), N))),
        Pow(Dist(Mul(Const("phi", phi), N)), 2),
        Sub(Frac(N * Fraction(5, 7)), Nint(N * Fraction(2, 9))),
    ]
    for e in exprs:
        c = canonicalize(e)
        assert is_floor_only(c) or isinstance(e, Frac) is False
        for n in (-7, 0, 1, 12, 55):
            assert compare(eval_value(e, n), eval_value(c, n)) == 0


def test_canonical_dist_squared_is_floor_only(phi):
    e = Pow(Dist(Mul(Const("phi", phi), N)), 4)
    assert is_floor_only(canonicalize(e))


# -- indicators ---------------------------------------------------------------

def test_zero_set_indicator_examples():
    h = Sub(N, RationalConst(Fraction(3)))
    iz = indicator_of_zero_set(h)
    assert eval_indicator(iz, 3) == 1
    assert eval_indicator(iz, 5) == 0
    assert members(iz, 1, 10) == [3]


def test_zero_set_indicator_dist_argument():
    sq2 = NumberField((-2, 0, 1), 1, 2, "s").generator()
    # ||n sqrt2|| = 0 exactly iff n = 0
    h = Sub(Mul(Const("s", sq2), N), Nint(Mul(Const("s", sq2), N)))
    iz = indicator_of_zero_set(h)
    assert eval_indicator(iz, 0) == 1
    assert eval_indicator(iz, 7) == 0


def test_range_indicator_examples(phi):
    half_n = Mul(RationalConst(Fraction(1, 2)), N)
    ir = indicator_of_range(half_n, 1, 2)
    assert eval_indicator(ir, 2) == 1
    assert eval_indicator(ir, 4) == 0
    frac_phi = Frac(Mul(Const("phi", phi), N))
    ir2 = indicator_of_range(frac_phi, 0, Fraction(1, 10))
    assert eval_indicator(ir2, 34) == 1
    assert eval_indicator(ir2, 33) == 0
    with pytest.raises(PreconditionError):
        indicator_of_range(N, 1, 1)


def test_dist_threshold_indicator(phi):
    ind = dist_lt_const(Mul(Const("phi", phi), N), Fraction(1, 8))
    # ||4 phi|| ~ 0.472, ||5 phi|| ~ 0.090
    assert eval_indicator(ind, 4) == 0
    assert eval_indicator(ind, 5) == 1


def test_members_reports_non_boolean():
    with pytest.raises(NonBooleanValue):
        members(Mul(N, N), 1, 3)


def test_members_constant_one():
    assert members(RationalConst(Fraction(1)), 1, 5) == [1, 2, 3, 4, 5]


def test_substitute_var(phi):
    e = Floor(Mul(Const("phi", phi), N))
    sub = substitute_var(e, Nint(Mul(RationalConst(Fraction(1, 2)), N)))
    # floor(phi * nint(n/2)) at n = 10 -> floor(5 phi) = 8
    assert eval_value(sub, 10) == 8


# -- discrete differences -----------------------------------------------------

def test_discrete_difference_examples():
    q = Pow(N, 2)
    assert discrete_difference(q, [1, 2, 4]) == 0
    assert discrete_difference(N, [5]) == -5
    flo = parse("let phi = root(x^2-x-1, 1, 2); floor(n*phi)")
    val = discrete_difference(flo, [1, 2, 4])
    assert isinstance(val, Fraction)  # floors make the value an integer
    assert abs(val) <= 4  # bounded; recorded, not asserted further


@given(
    st.lists(st.integers(-6, 6), min_size=1, max_size=3),
    st.lists(st.integers(1, 40), min_size=1, max_size=5),
)
@settings(max_examples=40, deadline=None)
def test_discrete_difference_vanishes_for_polynomials(coeffs, shifts):
    if len(shifts) <= len(coeffs) - 1:
        shifts = shifts + [3] * (len(coeffs) - len(shifts))
    e = RationalConst(Fraction(coeffs[0]))
    for j, c in enumerate(coeffs[1:], start=1):
        e = Add(e, Mul(RationalConst(Fraction(c)), Pow(N, j)))
    assert discrete_difference(e, shifts) == 0


def test_members_over_negative_range(phi):
    # indicators are defined on all of Z
    ind = indicator_of_range(Mul(RationalConst(Fraction(1, 3)), N), -1, 0)
    assert members(ind, -5, 5) == [-3, -2, -1]


def test_eval_negative_arguments(phi):
    e = Floor(Mul(Const("phi", phi), N))
    assert eval_value(e, -5) == -9  # floor(-8.09...)
    assert eval_value(e, 0) == 0
