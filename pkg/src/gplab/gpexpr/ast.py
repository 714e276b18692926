"""Abstract syntax trees for the generalised-polynomial expression language.

An expression is a function of one integer variable ``n`` built from
rational constants, named real constants (field elements or interval
streams), addition, subtraction, multiplication, nonnegative integer
powers, and the integer-part family ``floor``/``frac``/``nint``/``dist``.

Nodes are immutable and compare structurally; operator overloading is
provided so construction code reads like the formulas it implements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import PreconditionError
from ..realnum import FieldElement, RefinableReal


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, wrap(other))

    def __radd__(self, other):
        return Add(wrap(other), self)

    def __sub__(self, other):
        return Sub(self, wrap(other))

    def __rsub__(self, other):
        return Sub(wrap(other), self)

    def __mul__(self, other):
        return Mul(self, wrap(other))

    def __rmul__(self, other):
        return Mul(wrap(other), self)

    def __pow__(self, k: int):
        return Pow(self, int(k))


def wrap(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalConst(Fraction(value))
    if isinstance(value, FieldElement):
        return Const(value.field.name, value)
    if isinstance(value, RefinableReal):
        return Const(value.name or "const", value)
    raise PreconditionError(f"cannot use {value!r} in an expression")


@dataclass(frozen=True, slots=True)
class RationalConst(Expr):
    value: Fraction


@dataclass(frozen=True, slots=True)
class Const(Expr):
    """Named real constant: a field element or a refinable real."""

    name: str
    value: object  # FieldElement | RefinableReal | Fraction

    def __hash__(self):
        v = self.value
        if isinstance(v, RefinableReal):
            return hash((self.name, id(v)))
        return hash((self.name, v))


@dataclass(frozen=True, slots=True)
class Var(Expr):
    pass


N = Var()


@dataclass(frozen=True, slots=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise PreconditionError("powers must have nonnegative integer exponents")


@dataclass(frozen=True, slots=True)
class Floor(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Frac(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Nint(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Dist(Expr):
    arg: Expr


_UNARY = {Floor: "floor", Frac: "frac", Nint: "nint", Dist: "dist"}


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (Add, Sub, Mul)):
        return (e.left, e.right)
    if isinstance(e, Pow):
        return (e.base,)
    if isinstance(e, (Floor, Frac, Nint, Dist)):
        return (e.arg,)
    return ()


def walk(e: Expr):
    yield e
    for c in children(e):
        yield from walk(c)


def depends_on_var(e: Expr) -> bool:
    return any(isinstance(node, Var) for node in walk(e))


def substitute_var(e: Expr, replacement: Expr) -> Expr:
    """Replace every occurrence of the variable by ``replacement``."""
    if isinstance(e, Var):
        return replacement
    if isinstance(e, Add):
        return Add(substitute_var(e.left, replacement), substitute_var(e.right, replacement))
    if isinstance(e, Sub):
        return Sub(substitute_var(e.left, replacement), substitute_var(e.right, replacement))
    if isinstance(e, Mul):
        return Mul(substitute_var(e.left, replacement), substitute_var(e.right, replacement))
    if isinstance(e, Pow):
        return Pow(substitute_var(e.base, replacement), e.exponent)
    if isinstance(e, Floor):
        return Floor(substitute_var(e.arg, replacement))
    if isinstance(e, Frac):
        return Frac(substitute_var(e.arg, replacement))
    if isinstance(e, Nint):
        return Nint(substitute_var(e.arg, replacement))
    if isinstance(e, Dist):
        return Dist(substitute_var(e.arg, replacement))
    return e


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4


def _rat_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator) if q >= 0 else f"({q.numerator})"
    return f"({q.numerator}/{q.denominator})"


def _collect_lets(e: Expr) -> tuple[dict[str, object], dict[object, str]]:
    """Let-name -> bound value in first-use order, plus the key -> name map."""
    lets: dict[str, object] = {}
    assigned: dict[object, str] = {}

    def name_for(const: Const) -> None:
        v = const.value
        if isinstance(v, RefinableReal):
            if v.name == "theta":
                return  # builtin, no let required
            raise PreconditionError(
                f"constant {const.name!r} is a general computable real and has no "
                "textual form; snapshot it to a rational first"
            )
        if isinstance(v, FieldElement) and v.is_rational():
            return  # prints as a plain rational; no let needed
        key = (const.name, v) if isinstance(v, Fraction) else id(v.field)
        if key in assigned:
            return
        base = (const.name if isinstance(v, Fraction) else v.field.name) or "c"
        name = base
        i = 2
        while name in lets:
            name = f"{base}{i}"
            i += 1
        lets[name] = v if isinstance(v, Fraction) else v.field
        assigned[key] = name

    for node in walk(e):
        if isinstance(node, Const):
            name_for(node)
    return lets, assigned


def _intpoly_text(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif i == 1:
            body = "x" if mag == 1 else f"{mag}*x"
        else:
            body = f"x^{i}" if mag == 1 else f"{mag}*x^{i}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(terms) if terms else "0"


def to_text(e: Expr) -> str:
    """Render an expression (with let declarations) in the surface syntax."""
    lets, assigned = _collect_lets(e)

    def const_text(node: Const) -> tuple[str, int]:
        """Render a constant exactly as its reparsed expression tree prints."""
        v = node.value
        if isinstance(v, RefinableReal):
            return "theta", _PREC_ATOM
        if isinstance(v, Fraction):
            return assigned[(node.name, v)], _PREC_ATOM
        if v.is_rational():
            return _rat_text(v.as_rational()), _PREC_ATOM
        name = assigned[id(v.field)]
        coords = v.coords
        if all(c == 0 for c in coords[2:]) and coords[0] == 0 and coords[1] == 1:
            return name, _PREC_ATOM
        terms = []
        term_precs = []
        for i, c in enumerate(coords):
            if c == 0:
                continue
            if i == 0:
                terms.append(_rat_text(c))
                term_precs.append(_PREC_ATOM)
            else:
                power = name if i == 1 else f"{name}^{i}"
                power_prec = _PREC_ATOM if i == 1 else _PREC_POW
                if c == 1:
                    terms.append(power)
                    term_precs.append(power_prec)
                else:
                    terms.append(f"{_rat_text(c)} * {power}")
                    term_precs.append(_PREC_MUL)
        if not terms:
            return "0", _PREC_ATOM
        if len(terms) == 1:
            return terms[0], term_precs[0]
        return " + ".join(terms), _PREC_ADD

    def render(node: Expr) -> tuple[str, int]:
        if isinstance(node, RationalConst):
            return _rat_text(node.value), _PREC_ATOM
        if isinstance(node, Const):
            return const_text(node)
        if isinstance(node, Var):
            return "n", _PREC_ATOM
        if isinstance(node, Add):
            lt, _ = _at_least(render(node.left), _PREC_ADD)
            rt, _ = _at_least(render(node.right), _PREC_ADD)
            return f"{lt} + {rt}", _PREC_ADD
        if isinstance(node, Sub):
            lt, _ = _at_least(render(node.left), _PREC_ADD)
            rt, _ = _at_least(render(node.right), _PREC_MUL)
            return f"{lt} - {rt}", _PREC_ADD
        if isinstance(node, Mul):
            lt, _ = _at_least(render(node.left), _PREC_MUL)
            rt, _ = _at_least(render(node.right), _PREC_MUL)
            return f"{lt} * {rt}", _PREC_MUL
        if isinstance(node, Pow):
            bt, _ = _at_least(render(node.base), _PREC_ATOM)
            return f"{bt}^{node.exponent}", _PREC_POW
        for cls, kw in _UNARY.items():
            if isinstance(node, cls):
                inner, _ = render(node.arg)
                return f"{kw}({inner})", _PREC_ATOM
        raise PreconditionError(f"unknown node {node!r}")

    def _at_least(rendered: tuple[str, int], prec: int) -> tuple[str, int]:
        text, p = rendered
        if p < prec:
            return f"({text})", _PREC_ATOM
        return text, p

    body = render(e)[0]
    decls = []
    for name, bound in lets.items():
        if isinstance(bound, Fraction):
            decls.append(f"let {name} = {bound.numerator}/{bound.denominator};"
                         if bound.denominator != 1 else f"let {name} = {bound.numerator};")
        else:
            lo, hi = bound.isolating_interval
            decls.append(
                f"let {name} = root({_intpoly_text(bound.minpoly)}, "
                f"{lo.numerator}/{lo.denominator}, {hi.numerator}/{hi.denominator});"
            )
    if decls:
        return "\n".join(decls) + "\n" + body
    return body
