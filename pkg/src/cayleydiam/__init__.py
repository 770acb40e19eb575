"""Exact diameters and diameter estimators for Cayley graphs of transposition trees."""

from .bounds import (
    AlgAOutcome,
    BetaSet,
    algorithm_a,
    construction_permutation,
    enumerate_beta_set,
    f_T,
    f_upper_bound,
    star_bound,
    sum_of_distances,
)
from .cayley import AkTrace, CayleyMetrics, EdgeKind, ak_sort, bfs_metrics, distance, find_admissible_edge, replay_word
from .perm import Permutation, parse_permutation
from .tree import TranspositionTree, build_tree, enumerate_trees, named_tree, parse_tree

__version__ = "0.1.0"

__all__ = [
    "AkTrace",
    "AlgAOutcome",
    "BetaSet",
    "CayleyMetrics",
    "EdgeKind",
    "Permutation",
    "TranspositionTree",
    "ak_sort",
    "algorithm_a",
    "bfs_metrics",
    "build_tree",
    "construction_permutation",
    "distance",
    "enumerate_beta_set",
    "enumerate_trees",
    "f_T",
    "f_upper_bound",
    "find_admissible_edge",
    "named_tree",
    "parse_permutation",
    "parse_tree",
    "replay_word",
    "star_bound",
    "sum_of_distances",
]
