"""Exact lattice-point enumeration for lattice polytopes.

Computes Ehrhart values, h*- and f*-vectors in exact integer arithmetic,
audits the known inequalities between them, and searches spiked
h*-patterns for nonunimodal f*-vectors.
"""

from .audit import (
    AuditReport,
    CheckResult,
    SearchOutcome,
    SpikeRange,
    check_binom_diff_lemma,
    full_audit,
    search_nonunimodal,
    unimodality,
)
from .engine import (
    BoxPointTable,
    CountProfile,
    box_points_simplex,
    compute_vectors,
    count_points,
    count_profile,
    f_star_from_profile,
    h_star_of,
)
from .errors import (
    CostGuardExceeded,
    DegenerateSimplexError,
    EhrstarError,
    InputError,
    NoCountingStrategy,
    NotFullDimensionalError,
    VolumeCapExceeded,
)
from .lattice import (
    HalfSpace,
    LatticePolytope,
    LatticeSimplex,
    affine_dimension,
    iterated_pyramid,
    make_cube,
    make_higashitani,
    make_random_simplex,
    make_unimodular_simplex,
    polytope_from_json,
    pyramid,
    simplex_contains,
)
from .starbasis import (
    FStarVector,
    HStarVector,
    alternating_sum,
    degree_of,
    eval_ehrhart,
    eval_ehrhart_f,
    f_from_h,
    gorenstein_index,
    h_from_f,
    hstar_poly_identity_check,
    series_numerator,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BoxPointTable",
    "CheckResult",
    "CostGuardExceeded",
    "CountProfile",
    "DegenerateSimplexError",
    "EhrstarError",
    "FStarVector",
    "HStarVector",
    "HalfSpace",
    "InputError",
    "LatticePolytope",
    "LatticeSimplex",
    "NoCountingStrategy",
    "NotFullDimensionalError",
    "SearchOutcome",
    "SpikeRange",
    "VolumeCapExceeded",
    "affine_dimension",
    "alternating_sum",
    "box_points_simplex",
    "check_binom_diff_lemma",
    "compute_vectors",
    "count_points",
    "count_profile",
    "degree_of",
    "eval_ehrhart",
    "eval_ehrhart_f",
    "f_from_h",
    "f_star_from_profile",
    "full_audit",
    "gorenstein_index",
    "h_from_f",
    "h_star_of",
    "hstar_poly_identity_check",
    "iterated_pyramid",
    "make_cube",
    "make_higashitani",
    "make_random_simplex",
    "make_unimodular_simplex",
    "polytope_from_json",
    "pyramid",
    "search_nonunimodal",
    "series_numerator",
    "simplex_contains",
    "unimodality",
]
