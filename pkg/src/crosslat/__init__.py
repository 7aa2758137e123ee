"""Cross section lattices of Coxeter graph node subsets.

Admissible subsets of a marked graph, ordered by inclusion, form a graded
lattice.  This package builds that lattice, decides structural properties
(distributivity, supersolvability, relative complementation, smoothness)
through closed-form criteria on the graph, and cross-checks every criterion
against brute-force computation on the finite poset itself.
"""

from .crosslattice import CrossSectionLattice, enumerate_lattice, is_admissible
from .diagram import (
    CoxeterGraph,
    build_custom_graph,
    build_cycle_diagram,
    build_path_diagram,
    connected_components,
    format_nodeset,
    is_connected_subset,
    mask_to_nodes,
    nodes_to_mask,
    parse_nodeset,
)
from .errors import (
    BasisMismatchError,
    CompositionError,
    CrossLatError,
    EmptyIntervalError,
    GradednessError,
    InvalidEdgeError,
    InvalidSizeError,
    MembershipError,
    PreconditionError,
    SizeLimitError,
    UnsupportedGraphError,
)
from .flags import (
    QuasiSymFunction,
    flag_beta,
    flag_f_vector,
    flag_qsym,
    fundamental_to_monomial,
    h_gamma,
    inner_product_fundamental,
    is_flag_symmetric,
)
from .poset_engine import (
    CharPolynomial,
    FinitePoset,
    boolean_lattice,
    chain_poset,
    chain_product_poset,
    posets_isomorphic,
)
from .theorem_suite import (
    CriterionReport,
    SCAN_FUNCTIONS,
    charpoly_formula,
    circuit_analysis,
    combinatorially_smooth_typeA,
    conjecture_expected_sizes,
    construct_m_chain,
    distributivity_criterion,
    family_graph,
    join_irreducible_criterion,
    mobius_formula,
    relcomp_criterion,
    stanley_factorization,
    supersolvability_criterion,
)

__version__ = "0.1.0"

__all__ = [
    "BasisMismatchError",
    "CharPolynomial",
    "CompositionError",
    "CoxeterGraph",
    "CrossLatError",
    "CrossSectionLattice",
    "CriterionReport",
    "EmptyIntervalError",
    "FinitePoset",
    "GradednessError",
    "InvalidEdgeError",
    "InvalidSizeError",
    "MembershipError",
    "PreconditionError",
    "QuasiSymFunction",
    "SCAN_FUNCTIONS",
    "SizeLimitError",
    "UnsupportedGraphError",
    "boolean_lattice",
    "build_custom_graph",
    "build_cycle_diagram",
    "build_path_diagram",
    "chain_poset",
    "chain_product_poset",
    "charpoly_formula",
    "circuit_analysis",
    "combinatorially_smooth_typeA",
    "conjecture_expected_sizes",
    "connected_components",
    "construct_m_chain",
    "distributivity_criterion",
    "enumerate_lattice",
    "family_graph",
    "flag_beta",
    "flag_f_vector",
    "flag_qsym",
    "format_nodeset",
    "fundamental_to_monomial",
    "h_gamma",
    "inner_product_fundamental",
    "is_admissible",
    "is_connected_subset",
    "is_flag_symmetric",
    "join_irreducible_criterion",
    "mask_to_nodes",
    "mobius_formula",
    "nodes_to_mask",
    "parse_nodeset",
    "posets_isomorphic",
    "relcomp_criterion",
    "stanley_factorization",
    "supersolvability_criterion",
]
