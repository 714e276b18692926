"""Certificates for quadratic Pisot-unit value sets.

Three layers:

* ``fibonacci_like_set``: the basic small-distance set
  E' = {n >= 1 : ||n*x|| < 1/(2n)} for a quadratic unit root x, whose
  members are the denominators of the continued-fraction convergents of x
  (nearly all of them for the norm -1 recurrences);
* the odd-denominator filter for norm +1 roots,
  E = {n in E' : nint(w*n) not in E'} with w = v1/u1 computed exactly;
* ``scaled_set_transfer``: membership transport m |-> (nint(u*m) in E_R and
  ||u*m|| < |u|/2), which converts a certificate for one linear-recurrence
  value set into one for another with the same characteristic polynomial.

Scans use a float prefilter with an explicit error margin; every candidate
(and only candidates) is confirmed by exact field arithmetic, so scan
output is exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import PreconditionError
from ..gpexpr import (
    Const,
    Mul,
    N,
    Nint,
    RationalConst,
    dist_lt_const,
    dist_lt_scaled,
    ind_and,
    ind_not,
    ind_or,
    substitute_var,
)
from ..realnum import FieldElement, NumberField
from .certificate import Certificate, verify_certificate
from .recurrence import LinearRecurrence, recurrence_terms, residue_coefficient

_DEFAULT_VERIFY_TO = 4000


def _dist_lt_half_over_n_member(x: FieldElement, n: int) -> bool:
    """Exact test of ||n*x|| < 1/(2n) for n >= 1 (true at n = 0 by scaling)."""
    if n == 0:
        return True
    if n < 0:
        return False
    d = (x * n).dist_to_int()
    return (d * (2 * n) - 1).sign() < 0


def _half_over_n_scan(x: FieldElement, lo: int, hi: int) -> list[int]:
    """Members of {n : ||n x|| < 1/(2n)} on [lo, hi]: prefilter + exact confirm."""
    out = []
    lo0 = lo
    if lo <= 0:
        out.extend(n for n in range(lo, min(0, hi) + 1) if _dist_lt_half_over_n_member(x, n))
        lo0 = 1
    if lo0 > hi:
        return out
    xf = x.to_float()
    ns = np.arange(lo0, hi + 1, dtype=np.float64)
    v = ns * xf
    f = v - np.floor(v)
    dist = np.minimum(f, 1.0 - f)
    # |computed - true| <= value * 2^-50; widen the threshold by that much
    margin = abs(v[-1] if v[-1] >= v[0] else v[0]) * 2.0**-50 + 1e-12
    cand = np.nonzero(dist < 0.5 / ns + margin)[0]
    for idx in cand:
        n = lo0 + int(idx)
        if _dist_lt_half_over_n_member(x, n):
            out.append(n)
    return out


def _half_over_n_certificate(x: FieldElement, description: str) -> Certificate:
    ind = dist_lt_scaled(Mul(N, Const(x.field.name, x)), Mul(RationalConst(Fraction(2)), N))
    return Certificate(
        indicator=ind,
        target_description=description,
        predicate=lambda n: _dist_lt_half_over_n_member(x, n),
        fast_scan=lambda lo, hi: _half_over_n_scan(x, lo, hi),
        meta={"kind": "half-over-n", "root": repr(x)},
    )


def fibonacci_like_set(a: int, verify_to: int = _DEFAULT_VERIFY_TO) -> Certificate:
    """Certificate for the value set of x_{i+2} = a x_{i+1} + x_i, x_0=0, x_1=1.

    The indicator is the strict small-distance predicate ||n*alpha|| < 1/(2n)
    with alpha = (a + sqrt(a^2+4))/2; the exceptional set is determined by
    scanning against the recurrence oracle.
    """
    if a < 1:
        raise PreconditionError("a must be a positive integer")
    field = NumberField((-1, -a, 1), a, a + 1, "alpha")
    alpha = field.generator()
    cert = _half_over_n_certificate(
        alpha, f"value set of x(i+2) = {a} x(i+1) + x(i) from 0, 1"
    )
    cert.meta["construction"] = f"fibonacci_like a={a}"
    rec = LinearRecurrence((a, 1), (0, 1), f"fibonacci_like({a})")
    cert.meta["oracle"] = rec
    verify_certificate(cert, recurrence_terms(rec, verify_to), 0, verify_to)
    return cert


def scaled_set_transfer(
    cert_r: Certificate,
    u: FieldElement,
    target_description: str = "",
    oracle_members=None,
    verify_to: int = _DEFAULT_VERIFY_TO,
) -> Certificate:
    """Certificate for {m : nint(u*m) in E_R and ||u*m|| < |u|/2}.

    When the source terms satisfy R_i = u*S_i + o(1) this is, up to a finite
    exceptional set, a certificate for the value set {S_i}.
    """
    if u.is_zero():
        raise PreconditionError("transfer constant must be nonzero")
    u_abs = u.abs()
    un = Mul(Const(u.field.name, u), N)
    if u_abs.is_rational():
        near_src = dist_lt_const(un, u_abs.as_rational() / 2)
    else:
        near_src = _dist_lt_field_const(un, u_abs * Fraction(1, 2))
    indicator = ind_and(substitute_var(cert_r.indicator, Nint(un)), near_src)

    def predicate(m: int) -> bool:
        um = u * m
        r = um.nint()
        if not cert_r.member(r):
            return False
        return (um.dist_to_int() * 2 - u_abs).sign() < 0

    def fast_scan(lo: int, hi: int) -> list[int]:
        # invert: each source member r pulls back to at most one candidate m
        ulo, uhi = u_abs.enclosure(Fraction(1, 2**20))
        r_hi = int(uhi * max(abs(lo), abs(hi)) + uhi / 2) + 2
        src = cert_r.members(0, r_hi)
        inv_u = u.inverse()
        out = []
        for r in src:
            m = (inv_u * r).nint()
            if lo <= m <= hi and predicate(m):
                out.append(m)
        # u < 0 or sign quirks could place candidates off by one; widen by hand
        extra = [m for r in src for m in ((inv_u * r).nint() - 1, (inv_u * r).nint() + 1)]
        for m in extra:
            if lo <= m <= hi and m not in out and predicate(m):
                out.append(m)
        return sorted(out)

    cert = Certificate(
        indicator=indicator,
        target_description=target_description or f"transfer of ({cert_r.target_description})",
        predicate=predicate,
        fast_scan=fast_scan,
        meta={"kind": "scaled-transfer", "u": repr(u)},
    )
    if oracle_members is not None:
        verify_certificate(cert, oracle_members, 0, verify_to)
    return cert


def _dist_lt_field_const(e, t: FieldElement):
    """Indicator of ||e|| < t for an exact irrational threshold t in (0, 1]."""
    inv_t = t.inverse()
    return dist_lt_scaled(e, Const(inv_t.field.name, inv_t))


def nint_powers(x: FieldElement, bound: int) -> list[int]:
    """nint(x^i) for i >= 0 while the value stays at most ``bound`` (exact)."""
    out = []
    p = x.field.one()
    while True:
        v = p.nint()
        if v > bound:
            return out
        out.append(v)
        p = p * x


def _norm_plus_odd_certificate(
    gamma: FieldElement, a: int, verify_to: int
) -> tuple[Certificate, FieldElement]:
    """Odd-index convergent denominators of gamma with gamma^2 = a*gamma - 1.

    Returns the filtered certificate and the exact constant v1 with
    q_{2i+1} = v1 * gamma^i + o(1).
    """
    if a < 4:
        raise PreconditionError("the denominator filter needs a >= 4")
    if not (gamma * gamma - a * gamma + 1).is_zero():
        raise PreconditionError("gamma must satisfy gamma^2 = a*gamma - 1")
    # convergent denominators: q0 = q1 = 1, alternating (a-2)-step and sum
    q = [1, 1]
    while len(q) < 8:
        q.append((a - 2) * q[-1] + q[-2] if len(q) % 2 == 0 else q[-1] + q[-2])
    inv_g = gamma.inverse()
    denom = gamma - inv_g
    u1 = (q[2] - inv_g * q[0]) / denom
    v1 = (q[3] - inv_g * q[1]) / denom
    w = v1 / u1
    base = _half_over_n_certificate(
        gamma, f"denominators with small ||n*gamma||, gamma^2 = {a} gamma - 1"
    )
    wn = Mul(Const(w.field.name, w), N)
    indicator = ind_and(base.indicator, ind_not(substitute_var(base.indicator, Nint(wn))))

    def predicate(n: int) -> bool:
        if not base.member(n):
            return False
        m = (w * n).nint()
        return not base.member(m)

    def fast_scan(lo: int, hi: int) -> list[int]:
        return [n for n in base.members(lo, hi) if predicate(n)]

    cert = Certificate(
        indicator=indicator,
        target_description=f"odd-index convergent denominators of gamma, gamma^2 = {a} gamma - 1",
        predicate=predicate,
        fast_scan=fast_scan,
        meta={"kind": "odd-denominator-filter", "a": a, "w": repr(w)},
    )
    # oracle: odd-index denominators by their two-step recurrences
    odd = [q[1], q[3]]
    while odd[-1] <= verify_to:
        odd.append(a * odd[-1] - odd[-2])
    verify_certificate(cert, [t for t in odd if t <= verify_to], 1, verify_to)
    return cert, v1


def norm_plus_filtered_set(a: int, verify_to: int = _DEFAULT_VERIFY_TO) -> Certificate:
    """The filtered set {n in E' : nint(w*n) not in E'} for beta^2 = a*beta - 1.

    Equal, up to a finite exceptional set, to the odd-index convergent
    denominators of beta; requires a >= 4.
    """
    field = NumberField((1, -a, 1), a - 1, a, "beta")
    cert, _ = _norm_plus_odd_certificate(field.generator(), a, verify_to)
    return cert


def quadratic_pisot_unit_set(a: int, norm: int, verify_to: int = _DEFAULT_VERIFY_TO) -> Certificate:
    """Certificate for {nint(beta^i)} for the quadratic Pisot unit beta.

    ``norm=-1``: beta^2 = a*beta + 1 (a >= 1), built from the basic
    small-distance set and one transfer.  ``norm=+1``: beta^2 = a*beta - 1
    (a >= 3), built from the odd-denominator filter (via beta^2 when a = 3)
    and transfers.
    """
    if norm == -1:
        if a < 1:
            raise PreconditionError("norm -1 needs a >= 1")
        base = fibonacci_like_set(a, verify_to)
        field = NumberField((-1, -a, 1), a, a + 1, "beta")
        beta = field.generator()
        rec = LinearRecurrence((a, 1), (0, 1))
        u = residue_coefficient(rec, field)
        cert = scaled_set_transfer(
            base,
            u,
            f"nearest integers to powers of the root of x^2 - {a}x - 1",
            oracle_members=nint_powers(beta, verify_to),
            verify_to=verify_to,
        )
        cert.meta["construction"] = f"quadratic a={a} norm=-1"
        return cert
    if norm != 1:
        raise PreconditionError("norm must be +1 or -1")
    if a < 3:
        raise PreconditionError("norm +1 needs a >= 3")
    field = NumberField((1, -a, 1), a - 1, a, "beta")
    beta = field.generator()
    if a >= 4:
        odd_cert, v1 = _norm_plus_odd_certificate(beta, a, verify_to)
        cert = scaled_set_transfer(
            odd_cert,
            v1,
            f"nearest integers to powers of the root of x^2 - {a}x + 1",
            oracle_members=nint_powers(beta, verify_to),
            verify_to=verify_to,
        )
        cert.meta["construction"] = f"quadratic a={a} norm=+1"
        return cert
    # a = 3: pass to beta^2, which satisfies x^2 = 7x - 1, then rejoin halves
    gamma = beta * beta
    odd_cert, v1g = _norm_plus_odd_certificate(gamma, 7, verify_to)
    even = scaled_set_transfer(
        odd_cert,
        v1g,
        "nearest integers to even powers of the root of x^2 - 3x + 1",
        oracle_members=nint_powers(gamma, verify_to),
        verify_to=verify_to,
    )
    odd_powers = scaled_set_transfer(
        even,
        beta.inverse(),
        "nearest integers to odd powers of the root of x^2 - 3x + 1",
        oracle_members=[v for i, v in enumerate(nint_powers(beta, verify_to)) if i % 2 == 1],
        verify_to=verify_to,
    )
    indicator = ind_or(even.indicator, odd_powers.indicator)

    def predicate(n: int) -> bool:
        return even.member(n) or odd_powers.member(n)

    def fast_scan(lo: int, hi: int) -> list[int]:
        return sorted(set(even.members(lo, hi)) | set(odd_powers.members(lo, hi)))

    cert = Certificate(
        indicator=indicator,
        target_description="nearest integers to powers of the root of x^2 - 3x + 1",
        predicate=predicate,
        fast_scan=fast_scan,
        meta={"construction": "quadratic a=3 norm=+1"},
    )
    verify_certificate(cert, nint_powers(beta, verify_to), 1, verify_to)
    return cert
