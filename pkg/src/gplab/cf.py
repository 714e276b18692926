"""Continued fractions of quadratic irrationals and best approximations.

The expansion uses the classical integer surd state ``(P + sqrt(D))/Q``,
so partial quotients and the (always eventually periodic) period are exact.
Best approximations in one and two dimensions are found by exhaustive
record scans with exact comparisons; the planar norm is ``|u*x1 + v*x2|``
for a complex constant ``u`` and real ``v``, evaluated through its exact
squared value in the ground field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NondegenerateNormRequired, NotFound, PreconditionError
from .realnum import (
    DEFAULT_MAX_BITS,
    FieldElement,
    NumberField,
    Real,
    compare,
    dist_of,
    nint_of,
    rr_sqrt,
    rsub,
    as_stream,
    sqrt_interval,
)


@dataclass(frozen=True)
class ContinuedFraction:
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    source: object = None

    def quotients(self, count: int) -> list[int]:
        out = list(self.preperiod[:count])
        while len(out) < count:
            if not self.period:
                raise PreconditionError("finite expansion exhausted")
            take = min(len(self.period), count - len(out))
            out.extend(self.period[:take])
        return out

    def __str__(self):
        pre = ";".join(str(a) for a in self.preperiod)
        per = ",".join(str(a) for a in self.period)
        return f"[{pre}; ({per})*]" if per else f"[{pre}]"


@dataclass(frozen=True)
class BestApprox:
    """Best approximation record: q beats every smaller positive integer."""

    q: int
    p: tuple[int, ...]
    value_sq: object  # exact squared distance when available (FieldElement/Fraction)
    value: object  # Real: the distance itself (may be a sqrt stream)

    def value_float(self) -> float:
        from .realnum import to_float

        return to_float(self.value)


def _surd_state(x: FieldElement) -> tuple[int, int, int]:
    """Write x = (P + sqrt(D))/Q with integers, D nonsquare, Q | D - P^2."""
    field = x.field
    if field.degree != 2:
        raise PreconditionError("continued fraction expansion needs a quadratic element")
    if x.is_rational():
        raise PreconditionError("continued fraction expansion needs an irrational element")
    c0, c1, _ = (Fraction(c) for c in field.minpoly)
    disc = c1 * c1 - 4 * c0
    if disc <= 0:
        raise PreconditionError("field is not real quadratic")
    # generator g = (-c1 + s*sqrt(disc))/2 with s = sign(g + c1/2)
    s = (field.generator() + c1 / 2).sign()
    a, b = x.coords
    # x = (a - b*c1/2) + (b*s/2) * sqrt(disc)
    ra = a - b * c1 / 2
    rb = b * s / 2
    d_int = disc.numerator * disc.denominator  # sqrt(p/q) = sqrt(pq)/q
    ra, rb = ra, rb / disc.denominator
    # now x = ra + rb*sqrt(d_int); clear denominators
    den = math.lcm(ra.denominator, rb.denominator)
    A = ra.numerator * (den // ra.denominator)
    B = rb.numerator * (den // rb.denominator)
    # fold |B| into the radicand so the numerator is P + sqrt(D)
    if B < 0:
        A, B, den = -A, -B, -den
    P, D, Q = A, B * B * d_int, den
    if (D - P * P) % Q != 0:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, D, Q


def cf_expand(x: FieldElement, max_terms: int = 10_000) -> ContinuedFraction:
    """Exact continued fraction of a real quadratic irrational.

    The period is detected by recurrence of the integer surd state, so it
    is exact rather than heuristic.
    """
    P, D, Q = _surd_state(x)
    fl = math.isqrt(D)
    terms: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    while len(terms) <= max_terms:
        key = (P, Q)
        if key in seen:
            start = seen[key]
            pre, per = terms[:start], terms[start:]
            if not pre:
                # normalize purely periodic expansions to start with one term
                pre, per = per[:1], per[1:] + per[:1]
            return ContinuedFraction(tuple(pre), tuple(per), x)
        seen[key] = len(terms)
        a = (P + fl) // Q if Q > 0 else (P + fl + 1) // Q
        terms.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    raise PreconditionError(f"period not detected within {max_terms} terms")


def convergents(cf: ContinuedFraction, count: int) -> list[tuple[int, int]]:
    """First ``count`` convergents (p_j, q_j); determinant identity holds."""
    if count < 1:
        raise PreconditionError("count must be at least 1")
    qs = cf.quotients(count)
    p0, q0 = 1, 0
    p1, q1 = qs[0], 1
    out = [(p1, q1)]
    for a in qs[1:]:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        out.append((p1, q1))
    return out


def legendre_check(x: Real, m: int, n: int, max_bits: int = DEFAULT_MAX_BITS) -> bool:
    """|x - m/n| <= 1/(2 n^2), decided exactly where the value is exact."""
    if n < 1:
        raise PreconditionError("denominator must be positive")
    if math.gcd(m, n) != 1:
        raise PreconditionError("m and n must be coprime")
    d = rsub(x, Fraction(m, n))
    t = Fraction(1, 2 * n * n)
    return compare(d, t, max_bits) <= 0 and compare(d, -t, max_bits) >= 0


def best_approx_1d(x: Real, Q: int, max_bits: int = DEFAULT_MAX_BITS) -> list[BestApprox]:
    """All best approximations with q <= Q by exhaustive record minimization."""
    if Q < 1:
        raise PreconditionError("Q must be at least 1")
    out: list[BestApprox] = []
    best: Real | None = None
    for q in range(1, Q + 1):
        from .realnum import rmul

        qx = rmul(Fraction(q), x)
        d = dist_of(qx, max_bits)
        if best is None or compare(d, best, max_bits) < 0:
            p = nint_of(qx, max_bits)
            from .realnum import rpow

            out.append(BestApprox(q, (p,), rpow(d, 2), d))
            best = d
    return out


class RauzyNorm:
    """Planar norm N(x) = |u x1 + v x2| with Im(u) != 0 and v real.

    ``u`` is given by its exact real part and exact squared imaginary part
    in a real number field; ``v`` lies in the same field.  ``norm_sq`` is
    then exact field arithmetic.
    """

    def __init__(self, re_u: FieldElement, im_u_sq: FieldElement, v: FieldElement):
        if im_u_sq.sign() <= 0:
            raise NondegenerateNormRequired("norm needs a nonzero imaginary part")
        self.field = re_u.field
        self.re_u = re_u
        self.im_u_sq = im_u_sq
        self.v = v
        # rational bounds used for search windows
        lo, hi = im_u_sq.enclosure(Fraction(1, 2**24))
        self.im_lo = sqrt_interval(lo, hi, 24)[0]
        vlo, vhi = v.enclosure(Fraction(1, 2**24))
        self.v_lo, self.v_hi = vlo, vhi
        rlo, rhi = re_u.enclosure(Fraction(1, 2**24))
        self.re_abs_hi = max(abs(rlo), abs(rhi))

    @classmethod
    def for_cubic_field(cls, field: NumberField, b: int) -> "RauzyNorm":
        """Norm attached to x^3 - a x^2 - b x - 1: u = alpha + b/beta, v = 1/beta."""
        if field.degree != 3:
            raise PreconditionError("cubic field required")
        beta = field.generator()
        inv_beta = beta.inverse()
        re_alpha = field.complex_pair_real_part()
        im_sq = field.complex_pair_modulus_sq() - re_alpha * re_alpha
        return cls(re_alpha + b * inv_beta, im_sq, inv_beta)

    def norm_sq(self, x1: FieldElement, x2: FieldElement) -> FieldElement:
        re = self.re_u * x1 + self.v * x2
        return re * re + self.im_u_sq * x1 * x1


def _nearest_lattice_sq(
    norm: RauzyNorm, y1: FieldElement, y2: FieldElement
) -> tuple[FieldElement, tuple[int, int]]:
    """Exact min over p in Z^2 of N(y - p)^2, with a provably wide window."""
    c1 = y1.nint()
    c2 = y2.nint()
    bound_sq = norm.norm_sq(y1 - c1, y2 - c2)
    blo, bhi = bound_sq.enclosure(Fraction(1, 2**24))
    bound_hi = sqrt_interval(Fraction(0) if blo < 0 else blo, bhi, 24)[1]
    r1 = bound_hi / norm.im_lo
    lo1 = math.floor((y1 - r1).enclosure(Fraction(1, 4))[0])
    hi1 = math.ceil((y1 + r1).enclosure(Fraction(1, 4))[1])
    best = bound_sq
    best_p = (c1, c2)
    for p1 in range(lo1, hi1 + 1):
        x1 = y1 - p1
        # |v*x2 + re_u*x1| <= bound  =>  x2 in an explicit rational window
        mid = norm.re_u * x1
        mlo, mhi = mid.enclosure(Fraction(1, 2**24))
        m_abs = max(abs(mlo), abs(mhi))
        y2lo, y2hi = y2.enclosure(Fraction(1, 2**24))
        lo2 = math.floor(y2lo - (bound_hi + m_abs) / norm.v_lo)
        hi2 = math.ceil(y2hi + (bound_hi + m_abs) / norm.v_lo)
        for p2 in range(lo2, hi2 + 1):
            cand = norm.norm_sq(x1, y2 - p2)
            if cand.compare(best) < 0:
                best = cand
                best_p = (p1, p2)
                blo, bhi = best.enclosure(Fraction(1, 2**24))
                bound_hi = sqrt_interval(Fraction(0) if blo < 0 else blo, bhi, 24)[1]
    return best, best_p


def best_approx_2d(
    theta: tuple[FieldElement, FieldElement],
    norm: RauzyNorm,
    Q: int,
) -> list[BestApprox]:
    """Best approximations of a planar point under the given norm, q <= Q.

    Exhaustive minimization of N(q*theta - p) over a window guaranteed to
    contain the minimizer; records strictly decrease along the output.
    """
    if Q < 1:
        raise PreconditionError("Q must be at least 1")
    th1, th2 = theta
    out: list[BestApprox] = []
    best_sq: FieldElement | None = None
    for q in range(1, Q + 1):
        n0_sq, p = _nearest_lattice_sq(norm, th1 * q, th2 * q)
        if best_sq is None or n0_sq.compare(best_sq) < 0:
            out.append(BestApprox(q, p, n0_sq, rr_sqrt(as_stream(n0_sq))))
            best_sq = n0_sq
    return out


def coprime_in_interval(start, length, q: int) -> int:
    """Least integer n in [start, start+length) with gcd(n, q) = 1."""
    if q < 1:
        raise PreconditionError("q must be a positive integer")
    start = Fraction(start)
    length = Fraction(length)
    n = math.ceil(start)
    end = start + length
    while Fraction(n) < end:
        if math.gcd(n, q) == 1:
            return n
        n += 1
    raise NotFound(f"no integer coprime to {q} in [{start}, {end})")
