"""Heisenberg nilmanifold simulator.

Group elements are upper-triangular unipotent matrices in coordinates
``[x, y, z]`` with the product ``[x1,y1,z1]*[x2,y2,z2] =
[x1+x2, y1+y2, z1+z2+x1*y2]``.  The lattice of integer-coordinate elements
acts on the right; reduction factors any element as (fractional part) *
(integral part) with the fractional part in the unit-cube section.

Orbits of g(n) = [-n*alpha, n*beta, 0] are the driving example: the
reduced third coordinate is {n*alpha*floor(n*beta)}, whose small values
are counted by ``growth_count``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionExhausted, PreconditionError
from .realnum import (
    DEFAULT_MAX_BITS,
    NumberField,
    Real,
    compare,
    floor_frac,
    interval_of,
    radd,
    rmul,
    rneg,
    rpow,
    rsub,
)

_Zero = Fraction(0)


@dataclass(frozen=True)
class HeisenbergElem:
    x: Real
    y: Real
    z: Real

    def __iter__(self):
        return iter((self.x, self.y, self.z))


IDENTITY = HeisenbergElem(_Zero, _Zero, _Zero)


def elem(x, y, z) -> HeisenbergElem:
    def conv(v):
        return Fraction(v) if isinstance(v, (int, Fraction)) else v

    return HeisenbergElem(conv(x), conv(y), conv(z))


def heis_mul(g: HeisenbergElem, h: HeisenbergElem) -> HeisenbergElem:
    return HeisenbergElem(
        radd(g.x, h.x),
        radd(g.y, h.y),
        radd(radd(g.z, h.z), rmul(g.x, h.y)),
    )


def heis_inv(g: HeisenbergElem) -> HeisenbergElem:
    return HeisenbergElem(rneg(g.x), rneg(g.y), radd(rneg(g.z), rmul(g.x, g.y)))


def heis_pow(g: HeisenbergElem, n: int) -> HeisenbergElem:
    if n < 0:
        return heis_pow(heis_inv(g), -n)
    out = IDENTITY
    base = g
    while n:
        if n & 1:
            out = heis_mul(out, base)
        base = heis_mul(base, base)
        n >>= 1
    return out


def heis_reduce(
    g: HeisenbergElem, max_bits: int = DEFAULT_MAX_BITS
) -> tuple[HeisenbergElem, HeisenbergElem]:
    """Factor g = fractional * integral with fractional coords in [0, 1)."""
    xi, xf = floor_frac(g.x, max_bits)
    yi, yf = floor_frac(g.y, max_bits)
    rest = rsub(g.z, rmul(xf, Fraction(yi)))
    zi, zf = floor_frac(rest, max_bits)
    frac = HeisenbergElem(xf, yf, zf)
    integral = HeisenbergElem(Fraction(xi), Fraction(yi), Fraction(zi))
    return frac, integral


@dataclass(frozen=True)
class OrbitSpec:
    """Orbit data: g(n) = [-n*alpha, n*beta, 0], threshold n^(-c)."""

    alpha: Real
    beta: Real
    c: Fraction
    n_max: int = 10**6

    def __post_init__(self):
        if not (0 < self.c < 1):
            raise PreconditionError("exponent c must lie in (0, 1)")


def default_orbit_spec(c=Fraction(1, 20), n_max: int = 10**6) -> OrbitSpec:
    """The sqrt2/sqrt3 preset; 1, sqrt2, sqrt3 are independent over Q."""
    for d in (2, 3, 6):
        r = math.isqrt(d)
        if r * r == d:
            raise PreconditionError("preset radicands must be nonsquare")
    alpha = NumberField((-2, 0, 1), 1, 2, "sqrt2").generator()
    beta = NumberField((-3, 0, 1), 1, 2, "sqrt3").generator()
    return OrbitSpec(alpha, beta, Fraction(c), n_max)


def orbit_point(spec: OrbitSpec, n: int, max_bits: int = DEFAULT_MAX_BITS) -> HeisenbergElem:
    """Reduced fractional part of g(n); third coordinate cross-checked."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    g = HeisenbergElem(rmul(Fraction(-n), spec.alpha), rmul(Fraction(n), spec.beta), _Zero)
    frac, _ = heis_reduce(g, max_bits)
    m = floor_frac(rmul(Fraction(n), spec.beta), max_bits)[0]
    expected = floor_frac(rmul(rmul(Fraction(n), spec.alpha), Fraction(m)), max_bits)[1]
    if compare(frac.z, expected, max_bits) != 0:
        raise AssertionError(f"third-coordinate identity failed at n={n}")
    return frac


def _threshold_at_least_half(n: int, c: Fraction) -> bool:
    # n^(-c) >= 1/2  <=>  n^num <= 2^den
    return n ** c.numerator <= 2**c.denominator


def small_value_indicator(spec: OrbitSpec, n: int, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """f(n) = 1 iff ||n*alpha*floor(n*beta)|| < n^(-c); f(0) = 0."""
    if n < 1:
        return 0
    if _threshold_at_least_half(n, spec.c):
        # the distance is strictly below 1/2 for irrational arguments
        return 1
    m = floor_frac(rmul(Fraction(n), spec.beta), max_bits)[0]
    x = rmul(rmul(Fraction(n), spec.alpha), Fraction(m))
    _, f = floor_frac(x, max_bits)
    d = f if compare(f, Fraction(1, 2), max_bits) <= 0 else rsub(Fraction(1), f)
    # ||x|| < n^(-c)  <=>  ||x||^den * n^num < 1
    lhs = rmul(rpow(d, spec.c.denominator), Fraction(n**spec.c.numerator))
    return 1 if compare(lhs, Fraction(1), max_bits) < 0 else 0


@dataclass
class GrowthRow:
    N: int
    count: int
    ratio: float  # count / N^(1-c)
    skipped: int


def growth_count(
    spec: OrbitSpec,
    ladder: tuple[int, ...] = (10**3, 10**4, 10**5, 10**6),
    max_bits: int = DEFAULT_MAX_BITS,
) -> list[GrowthRow]:
    """S(N) = #{0 <= n < N : f(n) = 1} along a geometric ladder of N.

    Precision failures are skipped and reported per row, never counted.
    """
    ladder = tuple(sorted(ladder))
    rows = []
    count = 0
    skipped = 0
    n = 0
    for N in ladder:
        while n < N:
            if n >= 1:
                try:
                    count += small_value_indicator(spec, n, max_bits)
                except PrecisionExhausted:
                    skipped += 1
            n += 1
        exponent = 1 - float(spec.c)
        rows.append(GrowthRow(N=N, count=count, ratio=count / N**exponent, skipped=skipped))
    return rows


@dataclass
class BoxCount:
    index: tuple[int, int, int]
    count: int
    volume: float
    deviation: float


def equidist_stats(
    spec: OrbitSpec,
    N: int,
    divisions: int,
    max_bits: int = DEFAULT_MAX_BITS,
) -> tuple[list[BoxCount], float]:
    """Counts of reduced orbit points per box of a uniform grid on [0,1)^3.

    Returns the per-box table and the maximum discrepancy |count/N - vol|.
    """
    if divisions < 1:
        raise PreconditionError("need at least one division per axis")
    k = divisions
    counts = [[[0] * k for _ in range(k)] for _ in range(k)]

    def box_of(v: Real) -> int:
        # floor(k * v) for v in [0,1): decided by refinement
        m, _ = floor_frac(rmul(Fraction(k), v), max_bits)
        return min(max(m, 0), k - 1)

    def exact_boxes(n: int) -> tuple[int, int, int]:
        alpha_n = rmul(Fraction(-n), spec.alpha)
        beta_n = rmul(Fraction(n), spec.beta)
        _, xf = floor_frac(alpha_n, max_bits)
        yi, yf = floor_frac(beta_n, max_bits)
        _, zf = floor_frac(rmul(rmul(Fraction(n), spec.alpha), Fraction(yi)), max_bits)
        return box_of(xf), box_of(yf), box_of(zf)

    # fixed-point fast path; boundary-ambiguous points fall back to exact
    bits = 96
    scale = 1 << bits
    mask = scale - 1
    alo, ahi = interval_of(spec.alpha, bits)
    blo, bhi = interval_of(spec.beta, bits)
    a_fix = (alo.numerator << bits) // alo.denominator
    b_fix = (blo.numerator << bits) // blo.denominator
    err = lambda n: n + 2  # fixed-point width after scaling by n, plus slack

    def fast_box(value_fix: int, slack: int) -> int | None:
        f = value_fix & mask
        scaled = f * k
        if (scaled & mask) < k * slack or mask - (scaled & mask) < k * slack:
            return None
        return scaled >> bits

    for n in range(N):
        e = err(n)
        bx = fast_box(-n * a_fix, e)
        by = fast_box(n * b_fix, e)
        bz = None
        if by is not None:
            yi = (n * b_fix) >> bits
            if ((n * b_fix) & mask) >= e and scale - ((n * b_fix) & mask) >= e:
                bz = fast_box(n * a_fix * yi, e * max(yi, 1) + e)
        if bx is None or by is None or bz is None:
            bx, by, bz = exact_boxes(n)
        counts[bx][by][bz] += 1

    vol = 1.0 / k**3
    table = []
    worst = 0.0
    for i in range(k):
        for j in range(k):
            for l in range(k):
                c = counts[i][j][l]
                dev = abs(c / N - vol) if N else vol
                table.append(BoxCount((i, j, l), c, vol, dev))
                worst = max(worst, dev if N else 0.0)
    if N == 0:
        worst = 0.0
    return table, worst
