"""Derived discreteness of bound quiver algebras.

Decides derived discreteness, recognizes the one-cycle normal forms
Lambda(r,s,t), computes hom dimension tables over their derived categories
and Jordan-Hoelder style composition series with replayable traces.
"""

__version__ = "0.1.0"

from .errors import (
    DdiscError,
    InfiniteDimensionalError,
    NonStabilizingError,
    ParseError,
    PreconditionError,
    PresentationError,
    StripStuckError,
)
from .fields import GF, QQ
from .classify import (
    AGInvariant,
    ClockReport,
    DerivedEquivClass,
    DiscretenessVerdict,
    DynkinHereditary,
    GentleCertificate,
    LambdaClass,
    UnknownClass,
    ag_invariant,
    clock_condition,
    cycle_count,
    dynkin_type,
    is_derived_discrete,
    is_gentle,
    lambda_normal_form,
)
from .homology import (
    HomTable,
    PathMatrix,
    ProjComplex,
    RepModule,
    build_string_object,
    cohomology_dim_vector,
    ext_dim,
    hom_shift_dim,
    hom_table,
    hom_table_at_margin,
    indec_projective,
    infinite_gldim_check,
    module_as_complex,
    module_direct_sum,
    projective_cover,
    projective_dimension,
    quotient_module,
    resolve,
    simple_module,
)
from .jordan import (
    FactorClass,
    K,
    RadicalProjectivity,
    SeriesStep,
    SeriesTrace,
    SimplicityVerdict,
    TraceReport,
    composition_factors,
    idempotent_subalgebra,
    is_n_derived_simple,
    is_radical_projective,
    strip_series,
    two_truncated_cycle,
    verify_trace,
)
from .presentation import (
    BoundQuiverPresentation,
    LambdaDescriptor,
    Path,
    Quiver,
    are_isomorphic,
    build_lambda,
    cartan_matrix,
    connected_components,
    direct_sum,
    find_isomorphism,
    grothendieck_rank,
    lambda_descriptor_of,
    parse_presentation,
    path_basis,
    serialize_presentation,
    vertex_sort_key,
)

__all__ = [
    "DdiscError",
    "GF",
    "InfiniteDimensionalError",
    "NonStabilizingError",
    "ParseError",
    "PreconditionError",
    "PresentationError",
    "QQ",
    "StripStuckError",
    "AGInvariant",
    "BoundQuiverPresentation",
    "ClockReport",
    "DerivedEquivClass",
    "DiscretenessVerdict",
    "DynkinHereditary",
    "GentleCertificate",
    "LambdaClass",
    "LambdaDescriptor",
    "UnknownClass",
    "ag_invariant",
    "clock_condition",
    "cycle_count",
    "dynkin_type",
    "is_derived_discrete",
    "is_gentle",
    "lambda_normal_form",
    "HomTable",
    "PathMatrix",
    "ProjComplex",
    "RepModule",
    "build_string_object",
    "cohomology_dim_vector",
    "ext_dim",
    "hom_shift_dim",
    "hom_table",
    "hom_table_at_margin",
    "indec_projective",
    "infinite_gldim_check",
    "module_as_complex",
    "module_direct_sum",
    "projective_cover",
    "projective_dimension",
    "quotient_module",
    "resolve",
    "simple_module",
    "FactorClass",
    "K",
    "RadicalProjectivity",
    "SeriesStep",
    "SeriesTrace",
    "SimplicityVerdict",
    "TraceReport",
    "composition_factors",
    "idempotent_subalgebra",
    "is_n_derived_simple",
    "is_radical_projective",
    "strip_series",
    "two_truncated_cycle",
    "verify_trace",
    "Path",
    "Quiver",
    "are_isomorphic",
    "build_lambda",
    "cartan_matrix",
    "connected_components",
    "direct_sum",
    "find_isomorphism",
    "grothendieck_rank",
    "lambda_descriptor_of",
    "parse_presentation",
    "path_basis",
    "serialize_presentation",
    "vertex_sort_key",
    "__version__",
]
