"""Exact decision procedures for matrix semigroup reachability problems:
membership in Heisenberg sub-semigroups over the rationals, and half-space
reachability for sub-semigroups of GL(2,Z) and of the Heisenberg group."""

from .heisenberg import (
    DimensionMismatchError,
    HeisTriple,
    LieTriple,
    bch_log_product,
    heis_exp,
    heis_identity,
    heis_inv,
    heis_log,
    heis_mul,
    heis_product,
    lie_bracket,
)
from .heis_decide import (
    MembershipInstance,
    QuadPoly,
    decide_halfspace_heis,
    decide_membership,
    decide_quadratic_geq,
    purify_sequence,
    quadratic_for_permutation,
    sequence_skew,
)
from .gl2z_sets import (
    HalfSpaceQuery2,
    canonical_sign_pattern,
    decide_halfspace_gl2z,
    decide_membership_gl2z,
    entry_bound_set,
    entry_value_set,
    halfspace_set,
    nonneg_entry_set,
    normalize_query,
    semigroup_set,
)
from .oracle import bfs_oracle
from .verdict import Verdict
from .words import (
    Mat2,
    NotInGL2ZError,
    RegularSubset,
    canonical_word,
    canonicalize_nfa,
    enumerate_canonical,
    eval_word,
    is_canonical,
    regular_bool_op,
    regular_is_empty,
)

__all__ = [
    "DimensionMismatchError",
    "HalfSpaceQuery2",
    "HeisTriple",
    "LieTriple",
    "Mat2",
    "MembershipInstance",
    "NotInGL2ZError",
    "QuadPoly",
    "RegularSubset",
    "Verdict",
    "bch_log_product",
    "bfs_oracle",
    "canonical_sign_pattern",
    "canonical_word",
    "canonicalize_nfa",
    "decide_halfspace_gl2z",
    "decide_halfspace_heis",
    "decide_membership",
    "decide_membership_gl2z",
    "decide_quadratic_geq",
    "entry_bound_set",
    "entry_value_set",
    "enumerate_canonical",
    "eval_word",
    "halfspace_set",
    "heis_exp",
    "heis_identity",
    "heis_inv",
    "heis_log",
    "heis_mul",
    "heis_product",
    "is_canonical",
    "lie_bracket",
    "nonneg_entry_set",
    "normalize_query",
    "purify_sequence",
    "quadratic_for_permutation",
    "regular_bool_op",
    "regular_is_empty",
    "semigroup_set",
    "sequence_skew",
]
