"""Exact homomorphism counts into image graphs, and certificates that stars maximise them among trees."""

from .graph_core import (
    Graph,
    GraphError,
    NotATreeError,
    SkeletonInfo,
    Tree,
    as_tree,
    parse_graph,
    remove_edge,
    serialize_graph,
    skeleton_info,
    spanning_tree,
)
from .hoffman import SymmetricMatrix, hoffman_check, row_power_sum, walk_sum
from .hom_engine import (
    hom_bruteforce,
    hom_count,
    hom_tree,
    pair_distribution,
    pinned_pair,
    pinned_single,
    star_count,
    weighted_hom_tree,
)
from .order_explorer import (
    class_max_check,
    dot_export,
    empirical_order,
    enumerate_free_trees,
    filter_by_leaves,
    hasse,
    image_suite,
)
from .sidorenko import (
    amgm_bound,
    broom,
    broom_chain_check,
    holder_bound,
    phi_profile,
    reduce_to_tree,
    transform_chain,
    transform_step,
    verify_decomposition,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "SymmetricMatrix",
    "hoffman_check",
    "row_power_sum",
    "walk_sum",
    "Graph",
    "GraphError",
    "NotATreeError",
    "SkeletonInfo",
    "Tree",
    "as_tree",
    "parse_graph",
    "remove_edge",
    "serialize_graph",
    "skeleton_info",
    "spanning_tree",
    "hom_bruteforce",
    "hom_count",
    "hom_tree",
    "pair_distribution",
    "pinned_pair",
    "pinned_single",
    "star_count",
    "weighted_hom_tree",
    "class_max_check",
    "dot_export",
    "empirical_order",
    "enumerate_free_trees",
    "filter_by_leaves",
    "hasse",
    "image_suite",
    "amgm_bound",
    "broom",
    "broom_chain_check",
    "holder_bound",
    "phi_profile",
    "reduce_to_tree",
    "transform_chain",
    "transform_step",
    "verify_decomposition",
    "verify_theorem",
]
