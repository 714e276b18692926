"""Independent oracles used by the test suite.

Everything here is built from plain integer arithmetic (``math.isqrt``) and
``fractions.Fraction``, deliberately avoiding the package's own number-field
machinery, so expected values are computed along a second, independent path.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def floor_quadratic(p: Fraction, q: Fraction, d: int) -> int:
    """floor(p + q*sqrt(d)) for rationals p, q and a nonsquare integer d > 0."""
    p, q = Fraction(p), Fraction(q)
    if q == 0:
        return p.numerator // p.denominator
    c = p.denominator * q.denominator // gcd(p.denominator, q.denominator)
    a = p.numerator * (c // p.denominator)
    b = q.numerator * (c // q.denominator)
    # floor(b*sqrt(d)) for integer b != 0: b^2*d is not a perfect square
    if b > 0:
        fl = isqrt(b * b * d)
    else:
        fl = -isqrt(b * b * d) - 1
    # value*c lies strictly inside (a+fl, a+fl+1)
    return (a + fl) // c


def frac_quadratic(p: Fraction, q: Fraction, d: int) -> tuple[Fraction, Fraction]:
    """{p + q sqrt d} returned as (p', q) with value p' + q*sqrt(d)."""
    return p - floor_quadratic(p, q, d), q


def quad_lt(p1: Fraction, q1: Fraction, d: int, r: Fraction) -> bool:
    """p1 + q1*sqrt(d) < r, exactly."""
    s = p1 - r  # want s + q1 sqrt d < 0
    if q1 == 0:
        return s < 0
    if q1 > 0:
        return s < 0 and s * s > q1 * q1 * d
    return s < 0 or s * s < q1 * q1 * d


def dist_quadratic_lt(p: Fraction, q: Fraction, d: int, r: Fraction) -> bool:
    """||p + q sqrt d|| < r, exactly; intended for irrational arguments."""
    fp, fq = frac_quadratic(Fraction(p), Fraction(q), d)
    return quad_lt(fp, fq, d, Fraction(r)) or not quad_lt(fp, fq, d, 1 - Fraction(r))


def fibonacci_upto(bound: int, a: int = 1) -> list[int]:
    """Terms of n0=0, n1=1, n_{i+2} = a n_{i+1} + n_i, up to bound."""
    out = [0, 1]
    while True:
        nxt = a * out[-1] + out[-2]
        if nxt > bound:
            return out
        out.append(nxt)


def tribonacci_R(bound: int, a: int = 1, b: int = 1) -> list[int]:
    out = [1, a, a * a + b]
    while out[-1] <= bound:
        out.append(a * out[-1] + b * out[-2] + out[-3])
    return [t for t in out if t <= bound]


def cf_convergents(terms: list[int]) -> list[tuple[int, int]]:
    p0, q0 = 1, 0
    p1, q1 = terms[0], 1
    out = [(p1, q1)]
    for a in terms[1:]:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        out.append((p1, q1))
    return out


def best_denominators_bruteforce(
    mult: Fraction, d: int, Q: int, offset: Fraction = Fraction(0)
) -> list[int]:
    """Best-approximation denominators of x = offset + mult*sqrt(d), q <= Q.

    Tracks the strictly decreasing records of ||q*x|| using exact surd
    comparisons only.
    """
    best: tuple[Fraction, Fraction] | None = None
    out = []
    for q in range(1, Q + 1):
        fp, fq = frac_quadratic(q * offset, q * mult, d)
        # distance = min(f, 1-f)
        if quad_lt(fp, fq, d, Fraction(1, 2)):
            cur = (fp, fq)
        else:
            cur = (1 - fp, -fq)
        if best is None or quad_lt(cur[0] - best[0], cur[1] - best[1], d, Fraction(0)):
            out.append(q)
            best = cur
    return out


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
