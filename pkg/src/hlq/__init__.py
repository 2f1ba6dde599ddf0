"""Exact homotopy cardinality of finite groupoids, spans as linear maps, and
incidence coalgebras at desk scale."""

from .cardinality import (
    family_cardinality,
    groupoid_cardinality,
    kronecker_pairing,
    pairing,
    presheaf_cardinality,
    span_matrix,
    truncated_cardinality,
)
from .errors import (
    HLQError,
    LoadError,
    MismatchError,
    NotInvertibleError,
    SizeCapError,
    ValidationError,
)
from .functor import (
    FunctorGroupoid,
    GroupoidFunctor,
    check_functor,
    compose_functors,
    functor_groupoid,
    identity_functor,
    name,
)
from .groupoid import (
    FiniteGroupoid,
    SkeletalGroupoid,
    TableGroupoid,
    TruncatedSpace,
    connected,
    discrete,
    empty,
    equivalent,
    one_object,
    product,
    skeletal_groupoid,
    skeletalize,
    terminal,
    validate,
)
from .groupoid import sum as groupoid_sum
from .incidence import (
    FiniteCategory,
    FinitePoset,
    NerveLevels,
    comultiplication_span,
    convolution,
    counit_span,
    fat_nerve,
    mobius_numeric,
    zeta_span,
)
from .presheaf import FinitePresheaf, representable
from .pullback import homotopy_fibre, homotopy_pullback, loop_space
from .qbinomial import qbinomial_check
from .rational import QFunction, QMatrix, QVector, matrix_multiply
from .span import (
    Span,
    apply_span,
    compose_spans,
    homotopy_sum,
    identity_span,
    lowershriek,
    scalar_multiply,
    tensor_span,
    transpose,
    upperstar,
)

__all__ = [
    "FiniteCategory",
    "FiniteGroupoid",
    "FinitePoset",
    "FinitePresheaf",
    "FunctorGroupoid",
    "GroupoidFunctor",
    "HLQError",
    "LoadError",
    "MismatchError",
    "NerveLevels",
    "NotInvertibleError",
    "QFunction",
    "QMatrix",
    "QVector",
    "SizeCapError",
    "SkeletalGroupoid",
    "Span",
    "TableGroupoid",
    "TruncatedSpace",
    "ValidationError",
    "apply_span",
    "check_functor",
    "compose_functors",
    "compose_spans",
    "comultiplication_span",
    "connected",
    "convolution",
    "counit_span",
    "discrete",
    "empty",
    "equivalent",
    "family_cardinality",
    "fat_nerve",
    "functor_groupoid",
    "groupoid_cardinality",
    "groupoid_sum",
    "homotopy_fibre",
    "homotopy_pullback",
    "homotopy_sum",
    "identity_functor",
    "identity_span",
    "kronecker_pairing",
    "loop_space",
    "lowershriek",
    "matrix_multiply",
    "mobius_numeric",
    "name",
    "one_object",
    "pairing",
    "presheaf_cardinality",
    "product",
    "qbinomial_check",
    "representable",
    "scalar_multiply",
    "skeletal_groupoid",
    "skeletalize",
    "span_matrix",
    "tensor_span",
    "terminal",
    "transpose",
    "truncated_cardinality",
    "upperstar",
    "validate",
    "zeta_span",
]

__version__ = "0.1.0"
