"""Exact counting and classification of signed swallowtails of
polynomial maps from R^3 to R^3."""

from .poly import (
    ONE,
    ZERO,
    ParseError,
    PolyMap,
    Polynomial,
    cross,
    det3,
    dot,
    format_polynomial,
    gradient,
    minors2,
    parse,
)
from .groebner import (
    DEGLEX,
    DEGREVLEX,
    LEX,
    GroebnerBasis,
    INFINITE_DIMENSIONAL,
    InfiniteDimensional,
    MonomialOrder,
    QuotientAlgebra,
    buchberger,
    contains_one,
    mult_matrix,
    normal_form,
    quotient_basis,
)
from .singularity import (
    PAIRS,
    GenericityGenerators,
    PointClassification,
    SingularityData,
    Verdict,
    classify_point,
    compose_linear,
    derive,
    genericity_generators,
    post_compose_linear,
)
from .traceforms import (
    Analysis,
    CountReport,
    InvalidWeights,
    SignatureResult,
    SymmetricForm,
    analyze,
    build_form,
    count_in_region,
    count_swallowtails,
    exact_signature,
    trace_of,
)
from .numoracle import (
    ApproxPoint,
    NumericBreakdown,
    OracleReport,
    Tolerances,
    oracle_count,
    solve_variety,
)

__version__ = "0.1.0"
