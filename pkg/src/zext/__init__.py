"""Exact combinatorics for exponential vertex-degree-based indices on trees.

The package enumerates free trees, evaluates the exponential variants of
degree-based topological indices with exact arithmetic on sums of e-powers,
implements the strict-increase tree rewrites toward the balanced double star,
and verifies extremal claims by exhaustive search.
"""

from .enumeration import (
    balanced_double_star,
    double_star,
    fig3_tree,
    free_tree_count,
    free_trees,
    free_tree_sequences,
)
from .errors import ZextError
from .indices import (
    BigExpValue,
    IndexDef,
    INDEX_REGISTRY,
    Ordering,
    approx_log,
    compare,
    exp_vdb_index,
    get_index,
    phi_value,
    vdb_index,
)
from .search import (
    Direction,
    ExtremalReport,
    closed_form_double_star,
    extremal,
    hill_climb,
    table1_report,
    verify_theorem_max,
)
from .transforms import (
    MoveReceipt,
    ShapeTag,
    balance_move,
    classify_shape,
    lemma_distance_move,
    pendant_shift_move,
)
from .trees import (
    EdgeSpectrum,
    Tree,
    build_tree,
    canonical_key,
    edge_spectrum,
    parse_tree,
    tree_from_level_sequence,
    tree_from_prufer,
)

__version__ = "0.1.0"

__all__ = [
    "Tree", "EdgeSpectrum", "build_tree", "edge_spectrum", "canonical_key",
    "parse_tree", "tree_from_level_sequence", "tree_from_prufer",
    "IndexDef", "INDEX_REGISTRY", "get_index", "phi_value", "vdb_index",
    "exp_vdb_index", "BigExpValue", "Ordering", "compare", "approx_log",
    "MoveReceipt", "ShapeTag", "lemma_distance_move", "pendant_shift_move",
    "balance_move", "classify_shape",
    "free_trees", "free_tree_sequences", "free_tree_count",
    "double_star", "balanced_double_star", "fig3_tree",
    "Direction", "ExtremalReport", "extremal", "closed_form_double_star",
    "verify_theorem_max", "table1_report", "hill_climb",
    "ZextError",
]
