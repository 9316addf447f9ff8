"""Numerical logarithmic capacity of planar compacts."""

from .chebyshev import chebyshev_constant, chebyshev_norm
from .estimate import LADDER, POLAR_THRESHOLD, CapacityEstimate, LawReport, capacity, law_check
from .fekete import fekete_points, leja_points, transfinite_diameter, vandermonde_mean
from .sets import CompactSet, cantor, circle, disk, finite_set, make_set, preimage, segment, square, union

__all__ = [
    "CompactSet", "make_set", "disk", "circle", "square", "segment", "finite_set", "cantor", "union",
    "preimage", "leja_points", "fekete_points", "vandermonde_mean", "transfinite_diameter",
    "chebyshev_norm", "chebyshev_constant", "CapacityEstimate", "capacity", "LawReport", "law_check",
    "LADDER", "POLAR_THRESHOLD",
]
