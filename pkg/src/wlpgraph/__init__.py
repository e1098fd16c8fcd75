"""Weak Lefschetz property of artinian monomial algebras of graphs.

``A(G)`` is the polynomial ring modulo the squares of the variables and the
edge ideal of ``G``.  Its Hilbert series is the independence polynomial of
``G``; its WLP is decided by exact, certified ranks of the level maps.
"""

from .graph import (
    Graph,
    GraphError,
    cycle,
    delete_closed_neighborhood,
    disjoint_union,
    empty_graph,
    from_edge_list,
    is_independent,
    pan,
    path,
    tadpole,
)
from .indpoly import (
    ModeReport,
    UPoly,
    brute_force_independence_polynomial,
    check_unimodal_sum,
    independence_polynomial,
    lambda_closed_form,
    mode_analysis,
    verify_decompositions,
    verify_mode_inequalities,
)
from .levels import HilbertData, LevelBasis, LevelMap, hilbert_data, level_basis, level_map
from .rank import (
    Evidence,
    RankCertificate,
    RankIndeterminate,
    RankPolicy,
    SparseIntMatrix,
    certified_rank,
    rank_exact,
    rank_mod_p,
)
from .wlp import (
    DegreeVerdict,
    FailureKind,
    Family,
    PremiseError,
    WlpReport,
    classify_family,
    tensor_failure_check,
    wlp_check,
)

__all__ = [
    "Graph",
    "GraphError",
    "cycle",
    "delete_closed_neighborhood",
    "disjoint_union",
    "empty_graph",
    "from_edge_list",
    "is_independent",
    "pan",
    "path",
    "tadpole",
    "ModeReport",
    "UPoly",
    "brute_force_independence_polynomial",
    "check_unimodal_sum",
    "independence_polynomial",
    "lambda_closed_form",
    "mode_analysis",
    "verify_decompositions",
    "verify_mode_inequalities",
    "HilbertData",
    "LevelBasis",
    "LevelMap",
    "hilbert_data",
    "level_basis",
    "level_map",
    "Evidence",
    "RankCertificate",
    "RankIndeterminate",
    "RankPolicy",
    "SparseIntMatrix",
    "certified_rank",
    "rank_exact",
    "rank_mod_p",
    "DegreeVerdict",
    "FailureKind",
    "Family",
    "PremiseError",
    "WlpReport",
    "classify_family",
    "tensor_failure_check",
    "wlp_check",
]

__version__ = "0.1.0"
