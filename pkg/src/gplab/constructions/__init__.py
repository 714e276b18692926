"""Executable builders for the sparse generalised-polynomial set family."""

from .certificate import Certificate, VerificationReport, verify_certificate
from .cubic import CubicConstruction, cubic_pisot_set
from .quadratic import (
    fibonacci_like_set,
    nint_powers,
    norm_plus_filtered_set,
    quadratic_pisot_unit_set,
    scaled_set_transfer,
)
from .recurrence import LinearRecurrence, recurrence_terms, residue_coefficient
from .smallfp import small_fp_family, sqrt2_small_dist_certificate
from .verysparse import (
    DENSIFY_C_MIN,
    DensifyPlan,
    VerySparseParams,
    densify_sequence,
    very_sparse_alpha,
    very_sparse_set,
)

__all__ = [
    "Certificate",
    "VerificationReport",
    "verify_certificate",
    "LinearRecurrence",
    "recurrence_terms",
    "residue_coefficient",
    "fibonacci_like_set",
    "quadratic_pisot_unit_set",
    "norm_plus_filtered_set",
    "scaled_set_transfer",
    "nint_powers",
    "CubicConstruction",
    "cubic_pisot_set",
    "VerySparseParams",
    "very_sparse_alpha",
    "very_sparse_set",
    "densify_sequence",
    "DensifyPlan",
    "DENSIFY_C_MIN",
    "small_fp_family",
    "sqrt2_small_dist_certificate",
]
