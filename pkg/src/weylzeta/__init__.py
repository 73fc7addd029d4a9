"""Exact zeta and L-functions of flat rank-2 apartment quotients.

The package builds finite quotients of the two rank-2 affine apartments
(simplicial tori and Klein bottles), counts their closed geodesic
walks, half-lattice geodesics and geodesic galleries, computes the
corresponding zeta functions and L-functions in exact rational
arithmetic, and verifies the structural identities tying them together
as exact rational-function equalities.
"""

from .algebra import (
    IntMatrix,
    NotPolynomialWithinBound,
    Poly,
    RationalFunctionW,
    Series,
    det_identity_minus_wT,
    poly_gcd,
    ratfunc_equal,
    ratfunc_negate_variable,
    ratfunc_substitute,
    reconstruct_poly_from_series,
    series_exp,
    series_log,
)
from .census import (
    CountTable,
    count_closed_galleries,
    count_closed_walks,
    count_geodesic_walks,
    count_semi_closings,
    lambda_set_size,
)
from .corpus import CorpusMember, generate_corpus
from .identities import VerificationReport, VerifyRecord, verify
from .quotient import (
    AffineMap,
    KleinSpec,
    QuotientGroup,
    SpecValidationError,
    TorusSpec,
    build,
    glide_conjugacy_representative,
    normalize_generators,
)
from .rootgeom import HalfVec, ReprData, RootSystem
from .specfile import ParsedSpec, SpecFileError, load_spec_file, parse_spec_text
from .zeta import (
    OrderInsufficientError,
    TransferSystem,
    ZetaBundle,
    build_gallery_system,
    build_semi_system,
    build_walk_system,
    correction_factor,
    l_function,
    required_order,
    torus_closed_form,
    zeta_bundle,
    zeta_galleries,
    zeta_semi,
    zeta_walks,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "CorpusMember",
    "CountTable",
    "HalfVec",
    "IntMatrix",
    "KleinSpec",
    "NotPolynomialWithinBound",
    "OrderInsufficientError",
    "ParsedSpec",
    "Poly",
    "QuotientGroup",
    "RationalFunctionW",
    "ReprData",
    "RootSystem",
    "Series",
    "SpecFileError",
    "SpecValidationError",
    "TorusSpec",
    "TransferSystem",
    "VerificationReport",
    "VerifyRecord",
    "ZetaBundle",
    "build",
    "build_gallery_system",
    "build_semi_system",
    "build_walk_system",
    "correction_factor",
    "count_closed_galleries",
    "count_closed_walks",
    "count_geodesic_walks",
    "count_semi_closings",
    "det_identity_minus_wT",
    "generate_corpus",
    "glide_conjugacy_representative",
    "l_function",
    "lambda_set_size",
    "load_spec_file",
    "normalize_generators",
    "parse_spec_text",
    "poly_gcd",
    "ratfunc_equal",
    "ratfunc_negate_variable",
    "ratfunc_substitute",
    "reconstruct_poly_from_series",
    "required_order",
    "series_exp",
    "series_log",
    "torus_closed_form",
    "verify",
    "zeta_bundle",
    "zeta_galleries",
    "zeta_semi",
    "zeta_walks",
]
