"""Exact arithmetic for the K and L series families over a bordered alphabet.

The package constructs the subset-indexed families, multiplies members,
decomposes any in-span product back onto either family with integer
coefficients, expands degree-1 K products through shuffle peak sets, and
ships independent verifiers for all of it.  See the README for the CLI.
"""

from .basis import (
    Decomposition,
    NonzeroResidualError,
    NotDivisibleError,
    decompose_k,
    decompose_l,
    k_from_l,
    l_from_k,
    rational_solve,
    reconstruct,
)
from .core import (
    INF,
    Index,
    Monomial,
    Series,
    TruncationError,
    all_monomials,
    alphabet,
    relabel_check,
)
from .families import (
    SubsetSpec,
    all_subsets,
    is_l_special,
    k_series,
    k_series_q,
    l_series,
    m_generic_monomial,
    m_membership,
)
from .oracle import (
    ProblematicRelation,
    RelationKind,
    check_spreading,
    k1_coefficient,
    problematic_relations,
    resolve,
    resolve_all,
)
from .shuffle import gp, k1_product, multiset_counts, multiset_json_obj, shuffles, string_form

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Index",
    "Monomial",
    "Series",
    "TruncationError",
    "all_monomials",
    "alphabet",
    "relabel_check",
    "SubsetSpec",
    "all_subsets",
    "is_l_special",
    "k_series",
    "k_series_q",
    "l_series",
    "m_generic_monomial",
    "m_membership",
    "Decomposition",
    "NonzeroResidualError",
    "NotDivisibleError",
    "decompose_k",
    "decompose_l",
    "k_from_l",
    "l_from_k",
    "rational_solve",
    "reconstruct",
    "gp",
    "k1_product",
    "multiset_counts",
    "multiset_json_obj",
    "shuffles",
    "string_form",
    "ProblematicRelation",
    "RelationKind",
    "check_spreading",
    "k1_coefficient",
    "problematic_relations",
    "resolve",
    "resolve_all",
]
