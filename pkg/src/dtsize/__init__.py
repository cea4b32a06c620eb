"""Exact minimum-size axis-parallel decision trees."""

from .dataset import ANY, Dataset, DatasetError, SplitRef, load_csv, parse_csv
from .dp import BoxKey, DpSolver, box_examples, dp_min_size
from .fpt import (
    Budget,
    FptSolver,
    binary_search_threshold,
    fpt_min_tree,
    smallest_decision_tree,
    solve_bounded,
    solve_min_leaf_class,
    solve_with_red_leaf_bound,
)
from .oracle import OracleLimits, brute_min_size, brute_tree
from .tree import Inner, Leaf, classify, size, stats, validate

__version__ = "0.1.0"
