"""Ore extensions of finite abelian groups with operators.

Finite structures are given by explicit tables; every algebraic property is
checked exhaustively and refuted with a concrete witness.
"""

from .core import (
    CyclicProductGroup,
    FiniteAbelianGroup,
    GroupWithOperators,
    OperatorSet,
    Subgroup,
    TableGroup,
    bracket,
    coset_projection,
    direct_product,
    generated,
    generated_stable_subgroup,
    hom_predicates,
    kernel_chain_analysis,
    make_group,
    quotient,
    stable_closure,
    sunitality_report,
    validate_structure,
)
from .noetherian import (
    ChainWitness,
    NotApplicable,
    SlicedStableSubgroup,
    ascending_chain_witness,
    beta_projection,
    check_horrible_lemma,
    leading_coeff_subgroup,
    slice_closure,
)
from .ore import (
    AssocTriple,
    EndoPair,
    PiTable,
    Poly,
    check_leibniz_mixed,
    check_triple_associativity,
    check_vandermonde,
    make_triple,
    ore_act,
    pi_map,
    twist_predicates,
)
from .rings import (
    FiniteRing,
    LeftModule,
    derivation_endo_predicates,
    module_property_report,
    ore_ring_module_act,
    right_ideal_chain,
    right_ideal_slice_check,
    ring_property_report,
)

__version__ = "0.1.0"

__all__ = [
    "AssocTriple",
    "ChainWitness",
    "CyclicProductGroup",
    "EndoPair",
    "FiniteAbelianGroup",
    "FiniteRing",
    "GroupWithOperators",
    "LeftModule",
    "NotApplicable",
    "OperatorSet",
    "PiTable",
    "Poly",
    "SlicedStableSubgroup",
    "Subgroup",
    "TableGroup",
    "ascending_chain_witness",
    "beta_projection",
    "bracket",
    "check_horrible_lemma",
    "check_leibniz_mixed",
    "check_triple_associativity",
    "check_vandermonde",
    "coset_projection",
    "derivation_endo_predicates",
    "direct_product",
    "generated",
    "generated_stable_subgroup",
    "hom_predicates",
    "kernel_chain_analysis",
    "leading_coeff_subgroup",
    "make_group",
    "make_triple",
    "module_property_report",
    "ore_act",
    "ore_ring_module_act",
    "pi_map",
    "quotient",
    "right_ideal_chain",
    "right_ideal_slice_check",
    "ring_property_report",
    "slice_closure",
    "stable_closure",
    "sunitality_report",
    "twist_predicates",
    "validate_structure",
]
