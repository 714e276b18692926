"""Exact real arithmetic: number fields, interval streams, unified values."""

from .field import FieldElement, NumberField
from .refine import DEFAULT_MAX_BITS, THETA, RefinableReal, rr_sqrt, sqrt_interval
from .value import (
    Real,
    as_stream,
    compare,
    dist_of,
    floor_frac,
    frac_of,
    interval_of,
    is_exact_zero,
    nint_of,
    radd,
    rinv,
    rmul,
    rneg,
    rpow,
    rsub,
    sign_of,
    to_float,
)

__all__ = [
    "NumberField",
    "FieldElement",
    "RefinableReal",
    "THETA",
    "DEFAULT_MAX_BITS",
    "Real",
    "as_stream",
    "compare",
    "dist_of",
    "floor_frac",
    "frac_of",
    "interval_of",
    "is_exact_zero",
    "nint_of",
    "radd",
    "rinv",
    "rmul",
    "rneg",
    "rpow",
    "rsub",
    "sign_of",
    "sqrt_interval",
    "rr_sqrt",
    "to_float",
]
