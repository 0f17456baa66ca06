"""Exact positivity checks for bivariate Bezier collocation matrices."""

from .combinatorics import (
    Composition,
    DomainPoint,
    GammaSet,
    compare_b,
    compositions,
    compositions_b,
    epsilon_set,
    zero_class,
)
from .exactla import (
    InertiaTriple,
    MinorSequence,
    bareiss_det,
    certified_min_eigenvalue,
    exact_solve,
    inertia_at_shift,
    leading_minors,
)
from .matrices import (
    BlockFactorization,
    ExactMatrix,
    block_factorize,
    build_M,
    build_N,
    line_config_reduce,
    multi_power,
    scale_det_relation,
    univariate_collocation,
)

__version__ = "0.1.0"

__all__ = [
    "BlockFactorization",
    "Composition",
    "DomainPoint",
    "ExactMatrix",
    "GammaSet",
    "InertiaTriple",
    "MinorSequence",
    "bareiss_det",
    "block_factorize",
    "build_M",
    "build_N",
    "certified_min_eigenvalue",
    "compare_b",
    "compositions",
    "compositions_b",
    "epsilon_set",
    "exact_solve",
    "inertia_at_shift",
    "leading_minors",
    "line_config_reduce",
    "multi_power",
    "scale_det_relation",
    "univariate_collocation",
    "zero_class",
]
