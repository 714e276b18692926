"""Expression language: AST, parser, printer, evaluators, indicators."""

from .ast import (
    N,
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
    children,
    depends_on_var,
    substitute_var,
    to_text,
    walk,
    wrap,
)
from .evaluate import (
    discrete_difference,
    eval_exact,
    eval_indicator,
    eval_value,
    members,
)
from .indicators import (
    canonicalize,
    dist_lt_const,
    dist_lt_scaled,
    dist_sq_expr,
    frac_expr,
    ind_and,
    ind_not,
    ind_or,
    indicator_neg,
    indicator_of_range,
    indicator_of_zero_set,
    is_floor_only,
    nint_expr,
)
from .parse import parse

__all__ = [
    "Expr",
    "RationalConst",
    "Const",
    "Var",
    "N",
    "Add",
    "Sub",
    "Mul",
    "Pow",
    "Floor",
    "Frac",
    "Nint",
    "Dist",
    "wrap",
    "walk",
    "children",
    "depends_on_var",
    "substitute_var",
    "to_text",
    "parse",
    "eval_exact",
    "eval_value",
    "eval_indicator",
    "members",
    "discrete_difference",
    "canonicalize",
    "is_floor_only",
    "frac_expr",
    "nint_expr",
    "dist_sq_expr",
    "indicator_of_zero_set",
    "indicator_of_range",
    "indicator_neg",
    "ind_and",
    "ind_or",
    "ind_not",
    "dist_lt_const",
    "dist_lt_scaled",
]
