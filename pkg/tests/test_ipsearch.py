"""Tests for finite-sums searches and density estimation."""

import itertools
import random
from fractions import Fraction

import pytest

from gplab.constructions import Certificate, fibonacci_like_set
from gplab.errors import PreconditionError
from gplab.gpexpr import RationalConst
from gplab.ipsearch import (
    ap_witness_in_small_dist_set,
    density_estimate,
    find_ipr_in_set,
    finite_sums,
    translated_ip_probe,
)


def _set_cert(pred, desc="test set"):
    return Certificate(indicator=None, target_description=desc, predicate=pred)


def test_finite_sums_examples():
    assert finite_sums([1, 2, 4]).distinct == (1, 2, 3, 4, 5, 6, 7)
    assert finite_sums([5, 8]).sums == (5, 8, 13)
    fam = finite_sums([1, 1])
    assert fam.sums == (1, 1, 2) and fam.distinct == (1, 2)
    with pytest.raises(PreconditionError):
        finite_sums([0, 3])


def test_finite_sums_cardinality_on_powers_of_two():
    rng = random.Random(5150)
    for _ in range(20):
        r = rng.randrange(1, 9)
        gens = rng.sample([2**j for j in range(12)], r)
        fam = finite_sums(gens)
        assert len(fam.sums) == 2**r - 1
        assert len(fam.distinct) == 2**r - 1  # distinct powers: all sums distinct


def test_ipr_witness_in_fibonacci():
    fib = fibonacci_like_set(1)
    rep = find_ipr_in_set(fib, 2, 100)
    assert rep.witness is not None
    sums = finite_sums(rep.witness).sums
    assert all(fib.member(s) for s in sums)
    # the documented instance FS(5, 8) = {5, 8, 13} also lies inside
    assert all(fib.member(s) for s in finite_sums([5, 8]).sums)


def test_ipr_full_set_trivial():
    full = _set_cert(lambda n: n >= 1)
    rep = find_ipr_in_set(full, 3, 7)
    assert rep.witness is not None
    assert finite_sums(rep.witness).sums[-1] <= 7
    # the canonical binary-representation witness is admissible too
    assert finite_sums([1, 2, 4]).distinct == tuple(range(1, 8))


def test_ipr_exhaustive_negative_matches_bruteforce():
    # cross-check the pruned search against naive enumeration on a small case
    target = _set_cert(lambda n: n in {1, 2, 3, 5, 8, 13, 21})
    bound = 21
    rep = find_ipr_in_set(target, 3, bound)
    naive = None
    for gens in itertools.combinations(range(1, bound + 1), 3):
        fam = finite_sums(gens)
        if fam.sums[-1] <= bound and all(s in {1, 2, 3, 5, 8, 13, 21} for s in fam.sums):
            naive = gens
            break
    assert (rep.witness is None) == (naive is None)
    if naive is not None:
        assert all(s in {1, 2, 3, 5, 8, 13, 21} for s in finite_sums(rep.witness).sums)


def test_ipr_repeats_mode():
    fib = fibonacci_like_set(1)
    rep = find_ipr_in_set(fib, 3, 100, distinct=False)
    assert rep.witness == (1, 1, 1)
    rep_d = find_ipr_in_set(fib, 4, 1000)
    assert rep_d.exhaustive and rep_d.witness is None


def test_translated_probe_mod5():
    cert = _set_cert(lambda n: n % 5 == 3)
    rep = translated_ip_probe(cert, 2, 60, range(5))
    assert rep.witness is not None and rep.witness_shift == 3
    assert all(g % 5 == 0 for g in rep.witness)


def test_translated_probe_empty_set():
    empty = _set_cert(lambda n: False)
    rep = translated_ip_probe(empty, 2, 30, range(3))
    assert rep.exhaustive and rep.witness is None


def test_report_serialization_format():
    fib = fibonacci_like_set(1)
    rep = find_ipr_in_set(fib, 2, 50)
    text = rep.to_text()
    assert "mode: ipr" in text and "witness:" in text and "nodes_explored:" in text


def test_ap_witness_examples():
    assert ap_witness_in_small_dist_set(1).witness[0] == 1
    rep5 = ap_witness_in_small_dist_set(5)
    assert rep5.witness == (169, 338, 507, 676, 845)
    rep12 = ap_witness_in_small_dist_set(12)
    m = rep12.witness[0]
    assert m >= 12**3 and len(rep12.witness) == 12


def test_density_examples():
    full = _set_cert(lambda n: True)
    assert density_estimate(full, 100).density == 1.0
    empty = Certificate(indicator=RationalConst(Fraction(0)), target_description="empty")
    assert density_estimate(empty, 50).count == 0
    fib = fibonacci_like_set(1)
    est = density_estimate(fib, 10**6)
    # 29 Fibonacci values below 1e6 plus the n=0 membership of the indicator
    assert abs(est.count - 29) <= 1
    assert not est.partial


def test_density_monotone():
    fib = fibonacci_like_set(1)
    counts = [density_estimate(fib, N).count for N in (10, 100, 1000, 5000)]
    assert counts == sorted(counts)
