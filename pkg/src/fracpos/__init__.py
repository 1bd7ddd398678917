"""Exact fraction-algebra toolkit for noncommutative positivity certificates.

Three presented *-algebras (canonical pair, affine-line pair, one commuting
variable) with ordered-basis normal forms, right-fraction arithmetic over
shifted-generator denominators, Gram-matrix searches for sums of hermitian
squares, and truncated Hilbert-space numerics for the distinguished
representations.
"""

from .algebra import (
    Element,
    MultiDegree,
    Presentation,
    axb,
    commpoly,
    degree_split,
    opposite_form,
    pbw_views,
    weyl,
)
from .conditions import ConditionReport, ConditionWitness, check_preset_conditions
from .criteria import hypothesis_II_check, torsion_spectral_check
from .expr import (
    parse_element,
    parse_expression,
    parse_fraction,
    parse_word,
    print_ast,
)
from .gram import (
    GramCertificate,
    GramSystem,
    assemble_gram_system,
    extract_and_verify,
    sdp_feasible,
)
from .ore import (
    CommonDenominator,
    DenomAtom,
    DenomWord,
    MembershipResult,
    RightFraction,
    VanishResult,
    common_denominator,
    frac_add,
    frac_arith,
    frac_eq,
    frac_mul,
    frac_star,
    frac_sub,
    membership_in_x,
    multiindex_sequence,
    ore_right,
    quotient_vanishes,
)
from .reps import (
    MinEigReport,
    TruncatedRep,
    build_representation,
    finite_rep_split_and_pi_rho,
    min_eig_check,
    rep_evaluate,
    resolvent_integrability_check,
)
from .scalars import GaussianRational, gaussian
from .search import SearchResult, positivstellensatz_search
from .sturm import poly_nonneg, sturm_positive

normal_form = parse_element

__all__ = [
    "Element",
    "MultiDegree",
    "Presentation",
    "axb",
    "commpoly",
    "weyl",
    "degree_split",
    "opposite_form",
    "pbw_views",
    "normal_form",
    "parse_element",
    "parse_expression",
    "parse_fraction",
    "parse_word",
    "print_ast",
    "ConditionReport",
    "ConditionWitness",
    "check_preset_conditions",
    "hypothesis_II_check",
    "torsion_spectral_check",
    "GramCertificate",
    "GramSystem",
    "assemble_gram_system",
    "extract_and_verify",
    "sdp_feasible",
    "CommonDenominator",
    "DenomAtom",
    "DenomWord",
    "MembershipResult",
    "RightFraction",
    "VanishResult",
    "common_denominator",
    "frac_add",
    "frac_arith",
    "frac_eq",
    "frac_mul",
    "frac_star",
    "frac_sub",
    "membership_in_x",
    "multiindex_sequence",
    "ore_right",
    "quotient_vanishes",
    "MinEigReport",
    "TruncatedRep",
    "build_representation",
    "finite_rep_split_and_pi_rho",
    "min_eig_check",
    "rep_evaluate",
    "resolvent_integrability_check",
    "GaussianRational",
    "gaussian",
    "SearchResult",
    "positivstellensatz_search",
    "poly_nonneg",
    "sturm_positive",
]
