"""gplab: a verifiable laboratory for sparse generalised polynomials."""

__version__ = "0.1.0"
