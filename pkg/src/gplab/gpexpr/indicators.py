"""Indicator constructions and canonical forms.

The closure operations are addition, multiplication and floor; ``frac``,
``nint`` and even powers of ``dist`` rewrite into that closure.  Membership
predicates are built from two primitives:

* zero test: ``[h = 0]`` is ``floor(1 - frac(theta * h))`` for a constant
  ``theta`` chosen so ``theta*h(n)`` is irrational whenever ``h(n) != 0``
  (the built-in surrogate is transcendental, which suffices for ``h`` with
  algebraic constants);
* half-open range: ``[a <= h < b]`` rescales to ``[0, 1)`` and zero-tests
  the floor.

Strict threshold predicates on the distance-to-nearest-integer rewrite to
the union of two fractional-part ranges (sum minus product), which keeps
exported certificates inside the closure.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import PreconditionError
from ..realnum import THETA, Real
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
    walk,
    wrap,
)


def canonicalize(e: Expr) -> Expr:
    """Rewrite frac/nint (and even powers of dist) into floor-only form.

    A bare ``dist`` node is left in place: as a real value the distance to
    the nearest integer is not itself in the closure, only its thresholds
    and even powers are.
    """
    if isinstance(e, (RationalConst, Const, Var)):
        return e
    if isinstance(e, Add):
        return Add(canonicalize(e.left), canonicalize(e.right))
    if isinstance(e, Sub):
        return Sub(canonicalize(e.left), canonicalize(e.right))
    if isinstance(e, Mul):
        return Mul(canonicalize(e.left), canonicalize(e.right))
    if isinstance(e, Pow):
        if isinstance(e.base, Dist) and e.exponent % 2 == 0:
            inner = canonicalize(e.base.arg)
            offset = Sub(inner, Floor(Add(inner, RationalConst(Fraction(1, 2)))))
            return Pow(offset, e.exponent)
        return Pow(canonicalize(e.base), e.exponent)
    if isinstance(e, Floor):
        return Floor(canonicalize(e.arg))
    if isinstance(e, Frac):
        inner = canonicalize(e.arg)
        return Sub(inner, Floor(inner))
    if isinstance(e, Nint):
        inner = canonicalize(e.arg)
        return Floor(Add(inner, RationalConst(Fraction(1, 2))))
    if isinstance(e, Dist):
        return Dist(canonicalize(e.arg))
    raise TypeError(f"unknown node {e!r}")


def is_floor_only(e: Expr) -> bool:
    return not any(isinstance(node, (Frac, Nint, Dist)) for node in walk(e))


def frac_expr(e: Expr) -> Expr:
    return Sub(e, Floor(e))


def nint_expr(e: Expr) -> Expr:
    return Floor(Add(e, RationalConst(Fraction(1, 2))))


def dist_sq_expr(e: Expr) -> Expr:
    """||e||^2 inside the closure: (e - nint(e))^2."""
    return Pow(Sub(e, nint_expr(e)), 2)


def indicator_of_zero_set(h: Expr, theta: Real | None = None) -> Expr:
    """Indicator of {n : h(n) = 0}, assuming theta*h(n) irrational off zeros."""
    th = Const("theta", THETA) if theta is None else wrap(theta)
    return Floor(Sub(RationalConst(Fraction(1)), frac_expr(Mul(th, h))))


def indicator_of_range(h: Expr, a, b, theta: Real | None = None) -> Expr:
    """Indicator of {n : a <= h(n) < b} for rationals a < b."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise PreconditionError(f"empty range [{a}, {b})")
    scaled = Mul(Sub(h, RationalConst(a)), RationalConst(1 / (b - a)))
    return indicator_of_zero_set(Floor(scaled), theta)


def indicator_neg(h: Expr, lower_bound) -> Expr:
    """Indicator of {n : h(n) < 0}, given h(n) >= -lower_bound on the domain."""
    m = Fraction(lower_bound)
    if m <= 0:
        raise PreconditionError("lower_bound must be positive")
    return indicator_of_range(h, -m, 0)


def ind_not(p: Expr) -> Expr:
    return Sub(RationalConst(Fraction(1)), p)


def ind_and(p: Expr, q: Expr) -> Expr:
    return Mul(p, q)


def ind_or(p: Expr, q: Expr) -> Expr:
    return Sub(Add(p, q), Mul(p, q))


def dist_lt_scaled(e: Expr, scale: Expr) -> Expr:
    """Indicator of {n : scale(n) * ||e(n)|| < 1} for scale(n) >= 0.

    Equivalent to ``||e|| < 1/scale`` where scale is positive; both branches
    ``scale*{e} < 1`` and ``scale*(1-{e}) < 1`` are half-open ranges since
    the scaled quantities are nonnegative.
    """
    f = frac_expr(e)
    a = indicator_of_range(Mul(scale, f), 0, 1)
    b = indicator_of_range(Mul(scale, Sub(RationalConst(Fraction(1)), f)), 0, 1)
    return ind_or(a, b)


def dist_lt_const(e: Expr, t) -> Expr:
    """Indicator of {n : ||e(n)|| < t} for a rational threshold t > 0."""
    t = Fraction(t)
    if t <= 0:
        raise PreconditionError("threshold must be positive")
    return dist_lt_scaled(e, RationalConst(1 / t))
