"""Compiling very sparse integer sequences into small-distance certificates.

Given a fast-growing sequence (n_i) with n_i^D < n_{i+1} < n_i^{2D} and
5 <= C < D <= (C-1)^2/2, a real alpha is built as the intersection of the
nested intervals I_i = [m_i/n_i + n_i^{-C}/4, m_i/n_i + n_i^{-C}/2], with
numerators m_i chosen coprime to n_i from the first index where that is
possible.  The set

    E' = {n : n^{-C+1}/4 <= ||n * alpha|| <= n^{-C+1}/2}

then differs from {n_i} by a finite set.  Membership is decided by
closed-interval containment against the deepest available chain interval,
which is decidable for *every* real compatible with the data; queries that
would need depth beyond the supplied sequence raise PrecisionExhausted.

``densify_sequence`` implements the interpolation that upgrades any
sequence with growth exponent at least ``DENSIFY_C_MIN`` into one
satisfying the 6 < log-ratio < 12 window, together with the pairing plan
(original terms vs. shifted interpolated terms) whose two certificates
intersect to the original set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath

from ..errors import NoCoprimeCandidate, NotFound, NoValidL, PrecisionExhausted, PreconditionError
from ..gpexpr import (
    Const,
    Dist,
    Mul,
    N,
    Pow,
    RationalConst,
    Sub,
    ind_or,
    indicator_of_range,
    indicator_of_zero_set,
)
from ..realnum import RefinableReal
from ..cf import coprime_in_interval
from .certificate import Certificate

#: Smallest growth exponent for which the plain interpolation always finds
#: an admissible depth l: every A >= this lies strictly inside some open
#: interval (7^l, 11^l), since 7^(l+1) < 11^l from l = 5 on.
DENSIFY_C_MIN = 7**5 + 1


@dataclass
class VerySparseParams:
    C: int
    D: int
    n_seq: tuple[int, ...]
    m_seq: tuple[int, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]
    coprime_from: int
    alpha: RefinableReal = dc_field(repr=False, default=None)


def very_sparse_alpha(n_seq, C: int, D: int) -> VerySparseParams:
    """Construct the interval chain and alpha for the given sequence."""
    n_seq = tuple(int(n) for n in n_seq)
    if not (5 <= C < D <= (C - 1) ** 2 / 2):
        raise PreconditionError("need 5 <= C < D <= (C-1)^2/2")
    if not n_seq or n_seq[0] < 2:
        raise PreconditionError("need n_0 >= 2")
    for i in range(len(n_seq) - 1):
        if not n_seq[i] ** D < n_seq[i + 1] < n_seq[i] ** (2 * D):
            raise PreconditionError(
                f"growth violated at step {i}: need n_{i}^{D} < n_{i+1} < n_{i}^{2 * D}"
            )
    m_seq = [0]
    intervals = []

    def interval_for(m: int, n: int) -> tuple[Fraction, Fraction]:
        base = Fraction(m, n)
        quarter = Fraction(1, 4 * n**C)
        return base + quarter, base + 2 * quarter

    intervals.append(interval_for(0, n_seq[0]))
    coprime_from = 0 if math.gcd(m_seq[0], n_seq[0]) == 1 else 1
    for i in range(1, len(n_seq)):
        lo_prev, hi_prev = intervals[-1]
        n = n_seq[i]
        quarter = Fraction(1, 4 * n**C)
        # nesting: m/n + quarter >= lo_prev and m/n + 2*quarter <= hi_prev
        m_lo = (lo_prev - quarter) * n
        m_hi = (hi_prev - 2 * quarter) * n
        lo_int = math.ceil(m_lo)
        hi_int = math.floor(m_hi)
        if lo_int > hi_int:
            raise NoCoprimeCandidate(f"empty numerator window at step {i}", index=i)
        try:
            m = coprime_in_interval(Fraction(lo_int), Fraction(hi_int - lo_int + 1), n)
        except NotFound:
            m = lo_int
            coprime_from = i + 1
        m_seq.append(m)
        intervals.append(interval_for(m, n))

    chain = tuple(intervals)
    deepest = len(chain) - 1

    def approximant(k: int) -> tuple[Fraction, Fraction]:
        target = Fraction(1, 2**k)
        for lo, hi in chain:
            if hi - lo <= target:
                return lo, hi
        raise PrecisionExhausted(
            f"alpha known only to the depth of n_{deepest}; extend the sequence",
            bits=k,
        )

    params = VerySparseParams(
        C=C,
        D=D,
        n_seq=n_seq,
        m_seq=tuple(m_seq),
        intervals=chain,
        coprime_from=coprime_from,
        alpha=RefinableReal(approximant, "alpha"),
    )
    return params


def _member_by_containment(params: VerySparseParams, n: int) -> bool:
    """Decide n in E' by closed containment against the deepest interval.

    True if n*I maps inside the closed distance window for every point of
    the deepest interval; False if it misses it entirely; PrecisionExhausted
    if the data cannot decide (only possible past the available depth).
    """
    if n < 1:
        return False
    lo_t = Fraction(1, 4 * n ** (params.C - 1))
    hi_t = Fraction(1, 2 * n ** (params.C - 1))
    for lo_a, hi_a in reversed(params.intervals):
        xlo, xhi = n * lo_a, n * hi_a
        if xhi - xlo > Fraction(1, 2):
            continue  # this depth is too coarse for the distance to be defined
        m = (xlo + xhi) / 2
        r = m.numerator // m.denominator
        if m - r > Fraction(1, 2):
            r += 1
        dlo_l, dlo_h = abs(xlo - r), abs(xhi - r)
        dist_lo = Fraction(0) if (xlo <= r <= xhi) else min(dlo_l, dlo_h)
        dist_hi = max(dlo_l, dlo_h)
        if lo_t <= dist_lo and dist_hi <= hi_t:
            return True
        if dist_hi < lo_t or dist_lo > hi_t:
            return False
    raise PrecisionExhausted(
        f"membership of {n} undecidable at available chain depth", n=n
    )


def very_sparse_set(params: VerySparseParams) -> Certificate:
    """Certificate for E' with thresholds at exponent -C+1."""
    C = params.C
    # scaled form: 1 <= 4 n^(C-1) ||n alpha|| <= 2, i.e. the closed window
    alpha_const = Const("alpha", params.alpha)
    y = Mul(Mul(RationalConst(Fraction(4)), Pow(N, C - 1)), Dist(Mul(N, alpha_const)))
    indicator = ind_or(
        indicator_of_range(y, 1, 2),
        indicator_of_zero_set(Sub(y, RationalConst(Fraction(2)))),
    )

    def predicate(n: int) -> bool:
        return _member_by_containment(params, n)

    def fast_scan(lo: int, hi: int) -> list[int]:
        return _very_sparse_scan(params, lo, hi)

    return Certificate(
        indicator=indicator,
        target_description=f"terms of the supplied sequence {params.n_seq[:3]}...",
        predicate=predicate,
        fast_scan=fast_scan,
        meta={
            "construction": f"very_sparse C={params.C} D={params.D}",
            "coprime_from": params.coprime_from,
            "alpha_lo": str(params.intervals[-1][0]),
            "alpha_hi": str(params.intervals[-1][1]),
        },
    )


def _very_sparse_scan(params: VerySparseParams, lo: int, hi: int) -> list[int]:
    """Scan by fixed-point arithmetic on the deepest interval; exact logic.

    Off-boundary decisions follow from the interval containment test; the
    rare undecidable points are reported via PrecisionExhausted by the
    exact predicate.
    """
    out = []
    lo = max(lo, 1)
    alo, ahi = params.intervals[-1]
    bits = max(64, (hi * (ahi - alo)).numerator.bit_length() + 64)
    scale = 1 << bits
    a_lo_fix = alo.numerator * scale // alo.denominator
    a_hi_fix = -((-ahi.numerator * scale) // ahi.denominator)
    C = params.C
    mask = scale - 1
    half = scale >> 1
    def tent(t: int) -> int:
        # distance of a point in [0, 2*scale) to the nearest multiple of scale
        t = t if t < scale else t - scale
        return t if t <= half else scale - t

    for n in range(lo, hi + 1):
        xlo = n * a_lo_fix
        xhi = n * a_hi_fix
        # distance range of [xlo, xhi] to the nearest multiple of `scale`
        flo = xlo & mask
        width = xhi - xlo
        fhi = flo + width
        if width >= half:
            dist_lo_fix, dist_hi_fix = 0, half
        else:
            d_ends = (tent(flo), tent(fhi))
            dist_lo_fix = 0 if flo <= scale <= fhi else min(d_ends)
            covers_half = flo <= half <= fhi or flo <= scale + half <= fhi
            dist_hi_fix = half if covers_half else max(d_ends)
        # thresholds n^{-C+1}/4, n^{-C+1}/2 in fixed point (outward)
        denom4 = 4 * n ** (C - 1)
        t_lo = -((-scale) // denom4)  # ceil(scale / (4 n^{C-1}))
        t_hi = (2 * scale) // denom4  # floor
        if t_lo <= dist_lo_fix and dist_hi_fix <= t_hi:
            out.append(n)
            continue
        t_lo_f = scale // denom4
        t_hi_f = -((-2 * scale) // denom4)
        if dist_hi_fix < t_lo_f or dist_lo_fix > t_hi_f:
            continue
        if _member_by_containment(params, n):
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# densifier
# ---------------------------------------------------------------------------

@dataclass
class DensifyPlan:
    interpolated: tuple[int, ...]
    original_positions: tuple[int, ...]  # j with interpolated[j] = original term
    shifted: tuple[int, ...]  # second sequence: +1 off the original positions
    depth_per_step: tuple[int, ...]
    ratio_window_from: int  # first index from which 6 < log-ratio < 12 holds


def _select_depth(n_lo: int, n_hi: int, step: int) -> int:
    """Integer l strictly inside (log A / log 11, log A / log 7), validated."""
    for prec in (128, 256, 1024, 4096):
        with _IvPrec(prec) as iv:
            log_a = iv.log(iv.mpf(n_hi)) / iv.log(iv.mpf(n_lo))
            lo_l = iv.log(log_a) / iv.log(iv.mpf(11))
            hi_l = iv.log(log_a) / iv.log(iv.mpf(7))
            lmin = max(1, int(mpmath.floor(lo_l.a)))
            lmax = int(mpmath.ceil(hi_l.b))
            uncertain = False
            for cand in range(lmin, lmax + 1):
                if lo_l.b < cand < hi_l.a:
                    return cand
                certainly_out = cand <= lo_l.a or cand >= hi_l.b
                if not certainly_out:
                    uncertain = True
            if not uncertain:
                raise NoValidL(
                    f"no admissible interpolation depth at step {step}",
                    step=step,
                    ratio_lo=float(mpmath.mpf(lo_l.a)),
                    ratio_hi=float(mpmath.mpf(hi_l.b)),
                )
    raise PrecisionExhausted(f"depth selection undecided at step {step}")


class _IvPrec:
    """Temporarily raise the interval context's working precision."""

    def __init__(self, prec: int):
        self.prec = prec

    def __enter__(self):
        self._old = mpmath.iv.prec
        mpmath.iv.prec = self.prec
        return mpmath.iv

    def __exit__(self, *exc):
        mpmath.iv.prec = self._old


def _exact_log(n_hi: int, n_lo: int) -> int | None:
    """M with n_lo^M = n_hi exactly, if it exists."""
    est = max(1, n_hi.bit_length() // max(1, n_lo.bit_length() - 1))
    for m in range(max(1, est - 2), est + 3):
        if n_lo**m == n_hi:
            return m
    return None


def _exact_root(m: int, r: int) -> int | None:
    """t with t^r = m exactly, if it exists."""
    if r == 1:
        return m
    t = round(m ** (1.0 / r))
    for cand in (t - 1, t, t + 1):
        if cand >= 1 and cand**r == m:
            return cand
    return None


def _interp_term(n_lo: int, n_hi: int, k: int, l: int) -> int:
    """floor(exp((log n_hi)^(k/l) * (log n_lo)^(1-k/l))), validated.

    When n_hi = n_lo^M and M^(k/l) is an exact integer the value is an
    exact power and the floor is taken symbolically; otherwise the
    interpolation exponent is algebraic irrational, the value is
    transcendental, and interval refinement terminates.
    """
    m_exp = _exact_log(n_hi, n_lo)
    if m_exp is not None:
        g = math.gcd(k, l)
        t = _exact_root(m_exp, l // g)
        if t is not None:
            return n_lo ** (t ** (k // g))
    for prec in (192, 384, 768, 1536, 6144):
        with _IvPrec(prec) as iv:
            lhi = iv.log(iv.mpf(n_hi))
            llo = iv.log(iv.mpf(n_lo))
            a = iv.exp(iv.log(lhi) * k / l + iv.log(llo) * (l - k) / l)
            v = iv.exp(a)
            flo = mpmath.floor(v.a)
            fhi = mpmath.floor(v.b)
            if flo == fhi:
                return int(flo)
    raise PrecisionExhausted("floor(exp(...)) undecided; value too close to an integer")


def densify_sequence(n_seq, c: int | None = None) -> DensifyPlan:
    """Interpolate the sequence so consecutive log-ratios land in (6, 12).

    Each gap A = log n_{i+1} / log n_i is split into l equal geometric steps
    with l an integer in (log A / log 11, log A / log 7); that interval is
    nonempty for every A >= DENSIFY_C_MIN, and may be verified empty for
    smaller growth, in which case NoValidL is raised with diagnostics.
    """
    n_seq = [int(n) for n in n_seq]
    if not n_seq or n_seq[0] < 2:
        raise PreconditionError("need n_0 >= 2")
    for i in range(len(n_seq) - 1):
        if n_seq[i + 1] < n_seq[i] ** 2:
            raise PreconditionError(f"sequence must grow at least quadratically (step {i})")
    interp: list[int] = [n_seq[0]]
    positions = [0]
    depths = []
    for i in range(len(n_seq) - 1):
        l = _select_depth(n_seq[i], n_seq[i + 1], i)
        depths.append(l)
        for k in range(1, l):
            interp.append(_interp_term(n_seq[i], n_seq[i + 1], k, l))
        interp.append(n_seq[i + 1])
        positions.append(len(interp) - 1)
    pos_set = set(positions)
    shifted = tuple((v if j in pos_set else v + 1) for j, v in enumerate(interp))
    # report from which index the (6, 12) window holds
    window_from = len(interp) - 1
    for j in range(len(interp) - 1):
        ok = True
        for jj in range(j, len(interp) - 1):
            r = math.log(interp[jj + 1]) / math.log(interp[jj])
            if not (6.0 < r < 12.0):
                ok = False
                break
        if ok:
            window_from = j
            break
    return DensifyPlan(
        interpolated=tuple(interp),
        original_positions=tuple(positions),
        shifted=shifted,
        depth_per_step=tuple(depths),
        ratio_window_from=window_from,
    )
