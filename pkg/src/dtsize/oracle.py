"""Brute-force reference for small instances.

Plain recursion with no memo and no binary search: a subset fits budget
``s`` if it is uniform, or if some cut and some split ``j + (s - 1 - j)`` of
the remaining budget lets both sides fit.

Only cuts with at least one example on each side of the current subset are
tried. This loses nothing for minimum size: a cut with an empty side sends
every example to one child, so replacing the cut by that child's subtree
gives a tree with one node fewer that classifies the subset the same way.
Cuts inducing the same partition of the subset are interchangeable, so one
representative (right after each present value) is enough.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import Dataset, Subset
from .tree import Node, cut, leaf_for

MAX_ORACLE_SIZE = 6


@dataclass(frozen=True)
class OracleLimits:
    max_size: int
    dims_allowed: frozenset | None = None

    def __post_init__(self):
        if not 0 <= self.max_size <= MAX_ORACLE_SIZE:
            raise ValueError(f"oracle max_size must be in 0..{MAX_ORACLE_SIZE}")


class _Oracle:
    def __init__(self, ds: Dataset, dims):
        self.ds = ds
        self.dims = list(range(ds.d)) if dims is None else sorted(dims)

    def cuts(self, subset: Subset):
        ranks = self.ds.ranks
        for i in self.dims:
            values = sorted({ranks[e][i] for e in subset})
            for pos in values[:-1]:
                left = tuple(e for e in subset if ranks[e][i] <= pos)
                right = tuple(e for e in subset if ranks[e][i] > pos)
                yield i, pos, left, right

    def fits(self, subset: Subset, s: int) -> bool:
        if self.ds.is_uniform(subset) is not None:
            return True
        if s == 0:
            return False
        for _, _, left, right in self.cuts(subset):
            for j in range(s):
                if self.fits(left, j) and self.fits(right, s - 1 - j):
                    return True
        return False

    def build(self, subset: Subset, s: int) -> Node | None:
        label = self.ds.is_uniform(subset)
        if label is not None:
            return leaf_for(label)
        if s == 0:
            return None
        for i, pos, left, right in self.cuts(subset):
            for j in range(s):
                if self.fits(left, j) and self.fits(right, s - 1 - j):
                    return cut(self.ds, i, pos, self.build(left, j), self.build(right, s - 1 - j))
        return None


def brute_min_size(ds: Dataset, lim: OracleLimits) -> int | None:
    oracle = _Oracle(ds, lim.dims_allowed)
    for s in range(lim.max_size + 1):
        if oracle.fits(ds.all, s):
            return s
    return None


def brute_tree(ds: Dataset, lim: OracleLimits) -> Node | None:
    """A minimum tree within ``lim``, rebuilt by the same plain search."""
    best = brute_min_size(ds, lim)
    if best is None:
        return None
    return _Oracle(ds, lim.dims_allowed).build(ds.all, best)
