"""Evaluation of expressions: exact values and adaptive fixed-point scans.

Two walkers cooperate:

* ``eval_exact`` produces an exact :data:`~gplab.realnum.value.Real`
  (rational / field element / interval stream).  Floors on exact values are
  decided exactly; floors on streams refine up to the precision budget.

* ``_eval_dyadic`` evaluates over dyadic fixed-point intervals
  ``[lo, hi] * 2^-bits`` with plain integer arithmetic.  It is the fast
  path for range scans; whenever a floor cannot be decided at the current
  precision it signals and the driver escalates, falling back to the exact
  walker last.

Exact integer intermediate results stay exact in the dyadic walker (their
endpoints coincide and carry no rounding), so indicator expressions always
evaluate to exact 0/1 once every floor is decided.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NonBooleanValue, PrecisionExhausted
from ..realnum import (
    DEFAULT_MAX_BITS,
    Real,
    dist_of,
    floor_frac,
    frac_of,
    interval_of,
    nint_of,
    radd,
    rmul,
    rpow,
    rsub,
)
from .ast import (
    Add,
    Const,
    Dist,
    Expr,
    Floor,
    Frac,
    Mul,
    Nint,
    Pow,
    RationalConst,
    Sub,
    Var,
)


# ---------------------------------------------------------------------------
# exact walker
# ---------------------------------------------------------------------------

def eval_exact(e: Expr, n: int, max_bits: int = DEFAULT_MAX_BITS) -> Real:
    if isinstance(e, RationalConst):
        return e.value
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return Fraction(n)
    if isinstance(e, Add):
        return radd(eval_exact(e.left, n, max_bits), eval_exact(e.right, n, max_bits))
    if isinstance(e, Sub):
        return rsub(eval_exact(e.left, n, max_bits), eval_exact(e.right, n, max_bits))
    if isinstance(e, Mul):
        return rmul(eval_exact(e.left, n, max_bits), eval_exact(e.right, n, max_bits))
    if isinstance(e, Pow):
        return rpow(eval_exact(e.base, n, max_bits), e.exponent)
    if isinstance(e, Floor):
        return Fraction(floor_frac(eval_exact(e.arg, n, max_bits), max_bits)[0])
    if isinstance(e, Frac):
        return frac_of(eval_exact(e.arg, n, max_bits), max_bits)
    if isinstance(e, Nint):
        return Fraction(nint_of(eval_exact(e.arg, n, max_bits), max_bits))
    if isinstance(e, Dist):
        return dist_of(eval_exact(e.arg, n, max_bits), max_bits)
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# dyadic fixed-point walker
# ---------------------------------------------------------------------------

class _NeedBits(Exception):
    """A floor/nint decision is ambiguous at the current precision."""


class _ConstCache:
    """Dyadic enclosures of variable-free constants, keyed per precision."""

    def __init__(self):
        self._store: dict[tuple[int, int], tuple[int, int]] = {}

    def get(self, node: Const | RationalConst, bits: int) -> tuple[int, int]:
        key = (id(node), bits)
        hit = self._store.get(key)
        if hit is not None:
            return hit
        if isinstance(node, RationalConst):
            value = node.value
            lo = (value.numerator << bits) // value.denominator
            hi = -((-value.numerator << bits) // value.denominator)
            out = (lo, hi)
        else:
            flo, fhi = interval_of(node.value, bits + 2)
            lo = (flo.numerator << bits) // flo.denominator
            hi = -((-fhi.numerator << bits) // fhi.denominator)
            out = (lo, hi)
        self._store[key] = out
        return out


def _mul_iv(a: tuple[int, int], b: tuple[int, int], bits: int) -> tuple[int, int]:
    al, ah = a
    bl, bh = b
    p1, p2, p3, p4 = al * bl, al * bh, ah * bl, ah * bh
    lo = min(p1, p2, p3, p4)
    hi = max(p1, p2, p3, p4)
    return lo >> bits, -((-hi) >> bits)


def _floor_iv(v: tuple[int, int], bits: int) -> int:
    flo = v[0] >> bits
    fhi = v[1] >> bits
    if flo != fhi:
        raise _NeedBits
    return flo


def _eval_dyadic(e: Expr, n: int, bits: int, cache: _ConstCache) -> tuple[int, int]:
    if isinstance(e, (RationalConst, Const)):
        return cache.get(e, bits)
    if isinstance(e, Var):
        v = n << bits
        return v, v
    if isinstance(e, Add):
        a = _eval_dyadic(e.left, n, bits, cache)
        b = _eval_dyadic(e.right, n, bits, cache)
        return a[0] + b[0], a[1] + b[1]
    if isinstance(e, Sub):
        a = _eval_dyadic(e.left, n, bits, cache)
        b = _eval_dyadic(e.right, n, bits, cache)
        return a[0] - b[1], a[1] - b[0]
    if isinstance(e, Mul):
        a = _eval_dyadic(e.left, n, bits, cache)
        if a == (0, 0):
            return 0, 0
        b = _eval_dyadic(e.right, n, bits, cache)
        if b == (0, 0):
            return 0, 0
        return _mul_iv(a, b, bits)
    if isinstance(e, Pow):
        if e.exponent == 0:
            one = 1 << bits
            return one, one
        base = _eval_dyadic(e.base, n, bits, cache)
        out = base
        for _ in range(e.exponent - 1):
            out = _mul_iv(out, base, bits)
        return out
    if isinstance(e, Floor):
        f = _floor_iv(_eval_dyadic(e.arg, n, bits, cache), bits)
        v = f << bits
        return v, v
    if isinstance(e, Frac):
        a = _eval_dyadic(e.arg, n, bits, cache)
        f = _floor_iv(a, bits) << bits
        return a[0] - f, a[1] - f
    if isinstance(e, Nint):
        a = _eval_dyadic(e.arg, n, bits, cache)
        half = 1 << (bits - 1)
        f = _floor_iv((a[0] + half, a[1] + half), bits)
        v = f << bits
        return v, v
    if isinstance(e, Dist):
        a = _eval_dyadic(e.arg, n, bits, cache)
        f = _floor_iv(a, bits) << bits
        flo, fhi = a[0] - f, a[1] - f
        one = 1 << bits
        half = 1 << (bits - 1)
        if fhi <= half:
            return flo, fhi
        if flo >= half:
            return one - fhi, one - flo
        return min(flo, one - fhi), half
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------

_START_BITS = 96


def _dyadic_ladder(max_bits: int):
    b = _START_BITS
    top = max(max_bits, _START_BITS)
    while b <= top:
        yield b
        b *= 2


def eval_value(e: Expr, n: int, max_bits: int = DEFAULT_MAX_BITS) -> Real:
    """Exact value of the expression at integer n (spec semantics)."""
    return eval_exact(e, n, max_bits)


def eval_indicator(
    e: Expr,
    n: int,
    max_bits: int = DEFAULT_MAX_BITS,
    cache: _ConstCache | None = None,
) -> int:
    """Value of an indicator expression; raises NonBooleanValue outside {0,1}."""
    cache = cache if cache is not None else _ConstCache()
    for bits in _dyadic_ladder(max_bits):
        try:
            lo, hi = _eval_dyadic(e, n, bits, cache)
        except _NeedBits:
            continue
        if lo == hi and lo % (1 << bits) == 0:
            val = lo >> bits
        else:
            # non-point result: the expression did not collapse to an integer
            if hi < 0 or lo > (1 << bits):
                raise NonBooleanValue("indicator outside {0,1}", n=n, value=(lo, hi))
            continue
        if val not in (0, 1):
            raise NonBooleanValue(f"indicator value {val} at n={n}", n=n, value=val)
        return val
    try:
        value = eval_exact(e, n, max_bits)
    except PrecisionExhausted as exc:
        raise PrecisionExhausted(f"indicator undecided at n={n}", n=n, bits=max_bits) from exc
    if isinstance(value, Fraction):
        if value == 0:
            return 0
        if value == 1:
            return 1
        raise NonBooleanValue(f"indicator value {value} at n={n}", n=n, value=value)
    raise NonBooleanValue(f"indicator did not reduce to an integer at n={n}", n=n, value=value)


def members(
    e: Expr,
    lo: int,
    hi: int,
    max_bits: int = DEFAULT_MAX_BITS,
) -> list[int]:
    """All n in [lo, hi] where the indicator evaluates to 1, in order."""
    out = []
    cache = _ConstCache()
    for n in range(lo, hi + 1):
        if eval_indicator(e, n, max_bits, cache) == 1:
            out.append(n)
    return out


def discrete_difference(q: Expr, shifts: list[int], max_bits: int = DEFAULT_MAX_BITS) -> Real:
    """Alternating-sign sum of q over all subset sums of the shifts.

    The empty subset contributes q(0) with positive sign; for a true
    polynomial of degree below ``len(shifts)`` the sum vanishes.
    """
    d = len(shifts)
    if d < 1:
        raise ValueError("need at least one shift")
    total: Real = Fraction(0)
    for mask in range(1 << d):
        s = 0
        parity = 0
        for i in range(d):
            if mask >> i & 1:
                s += shifts[i]
                parity ^= 1
        term = eval_exact(q, s, max_bits)
        total = rsub(total, term) if parity else radd(total, term)
    return total
