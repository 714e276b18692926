"""Tests for the very-sparse compiler and the sequence densifier."""

from fractions import Fraction

import pytest

from gplab.constructions import (
    DENSIFY_C_MIN,
    densify_sequence,
    very_sparse_alpha,
    very_sparse_set,
)
from gplab.errors import NoValidL, PrecisionExhausted, PreconditionError
from gplab.gpexpr import eval_indicator

from oracles import coprime

N2 = 128**7


@pytest.fixture(scope="module")
def params():
    return very_sparse_alpha([2, 128, N2], 5, 6)


@pytest.fixture(scope="module")
def cert(params):
    return very_sparse_set(params)


def test_chain_construction(params):
    assert params.m_seq[0] == 0
    assert params.intervals[0] == (Fraction(1, 128), Fraction(1, 64))
    assert params.m_seq[1] == 1 and coprime(1, 128)
    assert coprime(params.m_seq[2], N2)
    for (lo0, hi0), (lo1, hi1) in zip(params.intervals, params.intervals[1:]):
        assert lo0 <= lo1 and hi1 <= hi0
    for m, n in zip(params.m_seq, params.n_seq):
        lo, hi = Fraction(m, n) + Fraction(1, 4 * n**5), Fraction(m, n) + Fraction(1, 2 * n**5)
        assert (lo, hi) in params.intervals


def test_alpha_stream_nesting(params):
    prev = None
    for k in (4, 10, 30):
        lo, hi = params.alpha.interval(k)
        assert hi - lo <= Fraction(1, 2**k)
        if prev:
            assert prev[0] <= lo and hi <= prev[1]
        prev = (lo, hi)
    with pytest.raises(PrecisionExhausted):
        params.alpha.interval(100000)


def test_growth_violation_rejected():
    with pytest.raises(PreconditionError):
        very_sparse_alpha([2, 50], 5, 6)  # 50 < 2^6: growth too slow
    with pytest.raises(PreconditionError):
        very_sparse_alpha([2, 2**100], 5, 6)  # too fast: above n^(2D)
    with pytest.raises(PreconditionError):
        very_sparse_alpha([2, 128], 5, 13)  # D > (C-1)^2/2
    with pytest.raises(PreconditionError):
        very_sparse_alpha([1, 128], 5, 6)  # n0 < 2


def test_membership_examples(cert):
    assert cert.member(2)
    assert not cert.member(3)
    assert cert.member(128)
    assert cert.member(N2)
    assert cert.members(2, 10**5) == [2, 128]


def test_formal_indicator_agrees_on_decidable_points(cert):
    # the theta-form tree decides membership wherever margins exist
    assert eval_indicator(cert.indicator, 2) == 1
    assert eval_indicator(cert.indicator, 3) == 0
    assert eval_indicator(cert.indicator, 128) == 1
    for n in range(2, 200):
        assert eval_indicator(cert.indicator, n) == (1 if cert.member(n) else 0)


def test_formal_indicator_boundary_raises(cert):
    # membership of the deepest term sits on the closed boundary of the
    # available data: the semantic predicate decides it, the theta form cannot
    assert cert.member(N2)
    with pytest.raises(PrecisionExhausted):
        eval_indicator(cert.indicator, N2, 4096)


def test_densify_single_ratio_1000():
    plan = densify_sequence([2, 2**1000])
    assert plan.depth_per_step == (3,)
    assert plan.interpolated == (2, 2**10, 2**100, 2**1000)
    assert plan.original_positions == (0, 3)
    assert plan.shifted == (2, 2**10 + 1, 2**100 + 1, 2**1000)
    assert plan.ratio_window_from == 0


def test_densify_identity_when_ratios_in_window():
    plan = densify_sequence([3, 3**9, 3**81])
    assert plan.depth_per_step == (1, 1)
    assert plan.interpolated == (3, 3**9, 3**81)


def test_densify_gap_raises_no_valid_l():
    with pytest.raises(NoValidL) as exc:
        densify_sequence([2, 2**2000])
    assert exc.value.step == 0
    assert 3.0 < exc.value.ratio_lo < 3.2
    assert 3.8 < exc.value.ratio_hi < 4.0


def test_densify_c_min_coverage():
    # every integer exponent A >= C_MIN sits strictly inside some (7^l, 11^l)
    import math

    assert DENSIFY_C_MIN == 7**5 + 1
    for a_exp in list(range(DENSIFY_C_MIN, DENSIFY_C_MIN + 50)) + [
        11**5, 7**6, 11**6, 7**7, 10**6
    ]:
        ok = any(7**l < a_exp < 11**l for l in range(1, 40))
        assert ok, a_exp


def test_densify_output_ratios_in_window():
    import math

    plan = densify_sequence([2, 2 ** (7**5 + 13)])
    seq = plan.interpolated
    for a, b in zip(seq[plan.ratio_window_from :], seq[plan.ratio_window_from + 1 :]):
        r = math.log(b) / math.log(a)
        assert 6 < r < 12


def test_scan_agrees_with_exact_containment(params, cert):
    # the fixed-point scan's verdicts match the exact rational containment
    # test point by point (the latter is the arbitrary-precision confirmation)
    from gplab.constructions.verysparse import _member_by_containment

    scanned = set(cert.members(2, 4000))
    for n in range(2, 4001):
        assert (n in scanned) == _member_by_containment(params, n)
