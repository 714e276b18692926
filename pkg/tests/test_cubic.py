"""Tests for the cubic Pisot construction."""

import pytest

from gplab.constructions import cubic_pisot_set, recurrence_terms
from gplab.errors import PreconditionError
from gplab.gpexpr import eval_value, members
from gplab.realnum import compare, to_float


@pytest.fixture(scope="module")
def trib():
    return cubic_pisot_set(1, 1)


def test_parameter_validation():
    with pytest.raises(PreconditionError):
        cubic_pisot_set(1, 3)  # b > a+1
    with pytest.raises(PreconditionError):
        cubic_pisot_set(1, -1)  # b = -1 needs a >= 2
    with pytest.raises(PreconditionError):
        cubic_pisot_set(0, 0)  # x^3 - 1 is reducible


def test_m1_value_and_location(trib):
    assert trib.m1_at == (1, 0)
    assert abs(to_float(trib.m1_sq) - 0.2955977425220848**2) < 1e-12
    # m1^2 = 2 beta^2 - 2 beta - 3 exactly
    b = trib.beta
    assert (trib.m1_sq - (2 * b * b - 2 * b - 3)).is_zero()


def test_member_set_matches_recurrence(trib):
    mem = trib.certificate.members(1, 10**4)
    assert mem == [1, 2, 4, 7, 13, 24, 44, 81, 149, 274, 504, 927, 1705, 3136, 5768]
    assert trib.certificate.exceptional == ()


def test_plateau_value_at_index_ten(trib):
    # g(R_i) * m1^2 = beta^i for large i; checked exactly at i = 10
    terms = recurrence_terms(trib.recurrence, 10**4)
    q = terms[10]
    assert (trib.g_value(q) * trib.m1_sq - trib.beta**10).is_zero()


def test_h_matches_bruteforce_when_small(trib):
    im_sq = trib.norm.im_u_sq
    for q in range(1, 300):
        n0 = trib.n0_sq(q)
        if (n0 * 4 - im_sq).sign() < 0:
            assert (trib.h_sq(q) - n0).is_zero()
        else:
            # h is always an upper bound for the true distance
            assert (trib.h_sq(q) - n0).sign() >= 0


def test_record_scaling_exact(trib):
    terms = recurrence_terms(trib.recurrence, 10**5)
    k = trib.plateau_pow
    m1_4 = trib.m1_sq * trib.m1_sq
    for i in range(2, 18):
        n0 = trib.n0_sq(terms[i])
        assert (n0 * n0 * trib.beta ** (2 * i - k) - m1_4).is_zero()


def test_indicator_agrees_with_fast_scan(trib):
    generic = members(trib.certificate.indicator, 1, 600)
    assert generic == trib.certificate.members(1, 600)


def test_g_h_expressions_evaluate_exactly(trib):
    for q in (7, 100, 1705):
        g_tree = eval_value(trib.g_expr, q)
        h_tree = eval_value(trib.h_sq_expr, q)
        assert compare(g_tree, trib.g_value(q)) == 0
        assert compare(h_tree, trib.h_sq(q)) == 0


def test_other_parameters_single_orbit():
    for a, b in ((1, 0), (0, 1), (3, -1)):
        cons = cubic_pisot_set(a, b)
        cert = cons.certificate
        assert "plateau_shared_by_extra_orbit" not in cert.meta
        oracle = sorted(set(t for t in recurrence_terms(cons.recurrence, 3000) if t >= 1))
        assert cert.members(1, 3000) == oracle


def test_known_extra_orbit_parameters_are_flagged():
    cons = cubic_pisot_set(2, -1)
    assert cons.certificate.meta.get("plateau_shared_by_extra_orbit") is True
    # the flagged extra members really do sit on the same exact plateau
    beta_k = cons.beta**cons.plateau_pow
    for q in (12, 21, 37):
        v = cons.h_sq(q) * cons.g_value(q)
        assert (v * v - beta_k).is_zero()


def test_certificate_file_roundtrip(trib):
    from gplab.constructions.certificate import Certificate

    text = trib.certificate.to_file_text()
    back = Certificate.from_file_text(text)
    assert members(back.indicator, 1, 700) == trib.certificate.members(1, 700)
    assert back.meta["plateau_pow"] == "2"
    assert back.to_file_text() == text
