"""Indicators for sets {n : 0 < q(n) < p(n)^b} with b a negative rational.

The rational exponent is cleared to integer powers before canonicalization:
with b = -num/den the condition q < p^b becomes q^den * p^num < 1, both
sides nonnegative, and the strict lower bound 0 < q becomes the complement
of a zero test.  When q is a distance-to-nearest-integer term it enters
only through its square, which stays inside the +, *, floor closure.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import PreconditionError
from ..gpexpr import (
    Const,
    Dist,
    Expr,
    Mul,
    N,
    Pow,
    Sub,
    canonicalize,
    eval_exact,
    ind_and,
    ind_not,
    indicator_of_range,
    indicator_of_zero_set,
    nint_expr,
)
from ..realnum import NumberField, compare, sign_of
from .certificate import Certificate


def small_fp_family(q: Expr, p: Expr, b, probe_to: int = 0) -> Expr:
    """Indicator of {n : 0 < q(n) < p(n)^b} as a floor-closure expression.

    ``q`` must be nonnegative-valued and ``p`` positive and unbounded; with
    ``probe_to`` > 0 these are spot-checked empirically on [1, probe_to].
    """
    b = Fraction(b)
    if b >= 0:
        raise PreconditionError("exponent must be negative")
    num, den = -b.numerator, b.denominator
    if probe_to:
        _probe_growth(p, probe_to)
    if isinstance(q, Dist):
        # enter through the square: q^(2 den) p^(2 num) < 1
        offset = Sub(q.arg, nint_expr(q.arg))
        y = Mul(Pow(Pow(offset, 2), den), Pow(p, 2 * num))
        positive = ind_not(indicator_of_zero_set(offset))
    else:
        y = Mul(Pow(q, den), Pow(p, num))
        positive = ind_not(indicator_of_zero_set(q))
    in_range = indicator_of_range(y, 0, 1)
    return canonicalize(ind_and(positive, in_range))


def _probe_growth(p: Expr, probe_to: int) -> None:
    first = eval_exact(p, 1)
    last = eval_exact(p, probe_to)
    for n in (1, probe_to // 2, probe_to):
        if sign_of(eval_exact(p, max(n, 1))) <= 0:
            raise PreconditionError("p(n) must be positive on the probe range")
    if compare(last, first) <= 0:
        raise PreconditionError("p(n) does not grow on the probe range")


def sqrt2_small_dist_certificate() -> Certificate:
    """Certificate for E = {n >= 1 : ||n sqrt(2)|| < 1/sqrt(n)}.

    The membership test is exact: ||n sqrt2||^2 * n < 1 in Q(sqrt2).
    """
    fld = NumberField((-2, 0, 1), 1, 2, "s")
    sq2 = fld.generator()
    indicator = small_fp_family(Dist(Mul(N, Const("s", sq2))), N, Fraction(-1, 2))

    def predicate(n: int) -> bool:
        if n < 1:
            return False
        d = (sq2 * n).dist_to_int()
        if d.is_zero():
            return False
        return (d * d * n - 1).sign() < 0

    return Certificate(
        indicator=indicator,
        target_description="integers with ||n sqrt(2)|| below 1/sqrt(n)",
        predicate=predicate,
        meta={"construction": "small_fp sqrt2 b=-1/2"},
    )
