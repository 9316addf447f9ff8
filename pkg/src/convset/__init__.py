"""Truncated power series, phi-convergence sets of divergent series, and capacity estimates."""

from .constructions import SGrid, construct_for_finite_set, gen_example_f, gen_example_g, scan
from .curve import (
    ATable,
    Curve,
    DTable,
    forward_map,
    forward_map_multinomial,
    forward_map_substitution,
    inverse_closed_form,
    inverse_solve,
    lambda_poly,
    phi_at,
    probe,
    probe_series,
    triangularity_check,
)
from .errors import ConvsetError, PreconditionError, SolverError, StructureError, TriangularityError
from .growth import CONVERGENT, DIVERGENT, INCONCLUSIVE, GrowthProfile, VerdictRule, growth_profile
from .scalars import QQi, RATIONAL, Backend, float_backend
from .series import TruncatedSeries, substitute_y

__version__ = "0.1.0"

__all__ = [
    "TruncatedSeries", "substitute_y", "QQi", "Backend", "RATIONAL", "float_backend",
    "VerdictRule", "GrowthProfile", "growth_profile", "CONVERGENT", "DIVERGENT", "INCONCLUSIVE",
    "Curve", "ATable", "DTable", "phi_at", "forward_map", "forward_map_multinomial",
    "forward_map_substitution", "triangularity_check", "inverse_solve", "inverse_closed_form",
    "lambda_poly", "probe", "probe_series", "SGrid", "gen_example_f", "gen_example_g",
    "construct_for_finite_set", "scan", "ConvsetError", "StructureError", "PreconditionError",
    "TriangularityError", "SolverError",
]
