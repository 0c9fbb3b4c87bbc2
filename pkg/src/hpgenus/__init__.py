"""Computations in the genus of infinite quaternionic projective space."""

from .arith import Sign, euler_criterion, is_odd_square, is_prime, lcm_of, legendre, squarefree_part
from .ktheory import (
    AdamsImageX,
    TruncatedSeries,
    adams_on_CP,
    adams_on_X,
    check_naturality,
    pullback,
    rector_congruence_sign,
)
from .maps import (
    ConstructionFamily,
    DegreeSet,
    LocalDegree,
    compute_T,
    contains,
    degree_set,
    factor_through_standard,
    glue,
    lambda_embedding_exists,
    realizes,
    standard_map,
)
from .rector import (
    HP_INFINITY,
    GenusSpace,
    RectorInvariant,
    admits_essential_map,
    equivalent,
    evaluate,
    has_maximal_torus,
    localization_agreement,
    make_invariant,
)

__version__ = "0.1.0"
