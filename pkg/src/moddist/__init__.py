"""Exact construction and verification of tight distance sets modulo prime ideals
of real quadratic fields."""

from .arith import QQ, QElem, QuadField, is_algebraic_integer, squarefree_part
from .constructions import (
    Sign,
    TFamilySpec,
    classify_t_family,
    example_regular_plus_two,
    graph_two_distance_parameter,
    perturb,
    regular_simplex,
    simplex_with_center,
    t_family,
)
from .geometry import Model, PointSet, distance_set, embedding_dimension, sqdist_matrix
from .ideals import PrimePlace, factor_principal, ord, place, primes_above, residue_equal
from .modular import (
    check_cardinality_bound,
    find_collapsing_prime,
    lrs_ratios,
    mod_profile_sweep,
    normalize_distances,
    obstruction_determinant,
    predict_tight_existence,
    residue_partition,
    verify_tight_one_distance,
)

__version__ = "0.1.0"
