"""Buneman graphs: construction, cut vertices, blocks, and derived trees."""

from ._core import (
    Block,
    BlockCutTree,
    BlockDecomposition,
    BunemanError,
    BunemanGraph,
    CheckItem,
    CheckReport,
    CutAnalysis,
    SplitSystem,
    XTree,
    XTreeNode,
    all_blocks,
    block_cut_tree,
    buneman_graph,
    buneman_tree_criterion,
    format_split_file,
    is_cut_vertex,
    leaf_label_bijection_test,
    load_split_file,
    make_system,
    parse_split_text,
    random_system,
    reduce_to_xtree,
    run_checks,
    run_random_checks,
    separation_test,
    sim_classes,
    to_dot,
    to_json,
    to_newick,
    xtree_canonical,
    xtree_isomorphic,
)

__all__ = [
    "Block",
    "BlockCutTree",
    "BlockDecomposition",
    "BunemanError",
    "BunemanGraph",
    "CheckItem",
    "CheckReport",
    "CutAnalysis",
    "SplitSystem",
    "XTree",
    "XTreeNode",
    "all_blocks",
    "block_cut_tree",
    "buneman_graph",
    "buneman_tree_criterion",
    "format_split_file",
    "is_cut_vertex",
    "leaf_label_bijection_test",
    "load_split_file",
    "make_system",
    "parse_split_text",
    "random_system",
    "reduce_to_xtree",
    "run_checks",
    "run_random_checks",
    "separation_test",
    "sim_classes",
    "to_dot",
    "to_json",
    "to_newick",
    "xtree_canonical",
    "xtree_isomorphic",
]

__version__ = "0.1.0"
