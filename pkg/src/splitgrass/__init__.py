"""Exact secant-dimension computations and the Veronese-Grassmann identification."""

from .exactla import GF, QQ, Field, Mat, VecSubspace, contains, nullspace, rank, span_intersect, span_sum
from .grassmann import PlueckerVec, Subspace, is_decomposable, pluecker_of, proj_equal, subspace_of
from .polyalg import (
    HomPoly,
    MonomialIndex,
    conic_rank,
    divide_exact,
    essential_vars_rank,
    multiply,
    parse_poly,
    partial,
    power,
    splits_ternary_cubic,
)
from .terracini import SecantReport, VarietySpec, secant_dimension, split2_codim_formula
from .verograss import (
    CurveDivisor,
    curve_intersection_degree,
    identification,
    osc_frame,
    rnc_point,
    span_of_divisor,
    veronese_jet_span,
    veronese_to_pluecker,
)

__version__ = "0.1.0"
