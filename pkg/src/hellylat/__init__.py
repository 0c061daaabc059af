"""Exact lattice geometry: empty and hollow polytopes at desk scale."""

from .scalars import QuadExt, Scalar, binomial, ceil_log, compare, gcd_vector

__all__ = ["QuadExt", "Scalar", "binomial", "ceil_log", "compare", "gcd_vector"]
