"""Exact slopes and fundamental strata of formal flat G-bundles.

Supported groups are ``GL_n``, ``SL_n`` and ``Sp_2n`` in their defining
representations.  All arithmetic is over Q.
"""

__version__ = "0.1.0"

from .errors import (CapabilityError, DimensionError, HomogeneityError, InconsistencyError,
                     InvertibilityError, MembershipError, ParseError, StrataKitError)
from .exact import Laurent, LaurentMatrix, invert_unit
from .filtration import Connection, depth_at, graded_decompose, leading_representative
from .katz import katz_newton_slope
from .roots import ApartmentPoint, GroupData, build_group
from .slope import (SlopeReport, adjoint_matrix, character_slopes, depth_map, frenkel_gross_check,
                    fundamentalize_depth_zero, is_regular_singular, katz_boundedness_trace,
                    pullback_connection, slope, stratum_search)
from .strata import GaugeElement, Stratum, associates_at, contains, gauge_transform, is_fundamental

__all__ = [
    "ApartmentPoint", "CapabilityError", "Connection", "DimensionError", "GaugeElement", "GroupData",
    "HomogeneityError", "InconsistencyError", "InvertibilityError", "Laurent", "LaurentMatrix",
    "MembershipError", "ParseError", "SlopeReport", "StrataKitError", "Stratum", "adjoint_matrix",
    "associates_at", "build_group", "character_slopes", "contains", "depth_at", "depth_map",
    "frenkel_gross_check", "fundamentalize_depth_zero", "gauge_transform", "graded_decompose",
    "invert_unit", "is_fundamental", "is_regular_singular", "katz_boundedness_trace",
    "katz_newton_slope", "leading_representative", "pullback_connection", "slope", "stratum_search",
]
