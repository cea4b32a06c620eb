"""Minimum tree size by dynamic programming over axis-aligned boxes.

A box is a pair of split-position vectors ``lo <= hi``; example ``e`` lies in
it iff ``lo[i] < rank(e, i) <= hi[i]`` for every dimension. The value of a
box is the minimum size of a decision tree for the examples inside it:
zero when they are uniform, otherwise one plus the best sum over all cuts
``lo[i] < pos < hi[i]``. Both child boxes have strictly smaller volume, so
the top-down recursion from the full box terminates.

Runs in ``O(D^(2d) * d * n)`` for ``D`` distinct values per dimension, which
is fine for ``d <= 3`` at desk scale and hopeless beyond that.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .dataset import Dataset, Subset
from .deadline import NO_DEADLINE, Deadline
from .tree import Node, cut, leaf_for


class BoxKey(NamedTuple):
    lo: tuple
    hi: tuple

    def volume(self) -> int:
        return math.prod(h - l for l, h in zip(self.lo, self.hi))

    def contains(self, ranks) -> bool:
        return all(l < r <= h for l, r, h in zip(self.lo, ranks, self.hi))

    def split(self, dim: int, pos: int) -> tuple["BoxKey", "BoxKey"]:
        hi = self.hi[:dim] + (pos,) + self.hi[dim + 1:]
        lo = self.lo[:dim] + (pos,) + self.lo[dim + 1:]
        return BoxKey(self.lo, hi), BoxKey(lo, self.hi)


def full_box(ds: Dataset) -> BoxKey:
    return BoxKey((0,) * ds.d, tuple(len(dom) for dom in ds.domains))


def box_examples(ds: Dataset, box: BoxKey, subset: Subset | None = None) -> Subset:
    if subset is None:
        subset = ds.all
    return tuple(e for e in subset if box.contains(ds.ranks[e]))


class DpResult(NamedTuple):
    size: int
    tree: Node


class DpSolver:
    """Memoized box recursion.

    ``shrink`` keys each box by the bounding box of its examples and
    ``prune`` skips cuts leaving one side empty; neither changes any value or
    witness, since an empty-sided cut is never optimal for a mixed box.
    Ties go to the lowest dimension, then the lowest split position.
    """

    def __init__(self, ds: Dataset, *, shrink=False, prune=False, deadline: Deadline | None = None):
        self.ds = ds
        self.shrink = shrink
        self.prune = prune
        self.deadline = deadline or NO_DEADLINE
        # box -> (value, (dim, pos) or None, leaf label)
        self.memo: dict[BoxKey, tuple] = {}

    def _key(self, box: BoxKey, subset: Subset) -> BoxKey:
        if not self.shrink or not subset:
            return box
        ranks = self.ds.ranks
        d = self.ds.d
        lo = tuple(min(ranks[e][i] for e in subset) - 1 for i in range(d))
        hi = tuple(max(ranks[e][i] for e in subset) for i in range(d))
        return BoxKey(lo, hi)

    def value(self, box: BoxKey, subset: Subset | None = None) -> int:
        return self._solve(box, subset)[0]

    def _solve(self, box: BoxKey, subset: Subset | None = None) -> tuple:
        ds = self.ds
        if subset is None:
            subset = box_examples(ds, box)
        box = self._key(box, subset)
        hit = self.memo.get(box)
        if hit is not None:
            return hit
        self.deadline.check()

        label = ds.is_uniform(subset)
        if label is not None:
            entry = (0, None, label)
            self.memo[box] = entry
            return entry

        ranks = ds.ranks
        best, choice = math.inf, None
        for i in range(ds.d):
            for pos in range(box.lo[i] + 1, box.hi[i]):
                left = tuple(e for e in subset if ranks[e][i] <= pos)
                right = tuple(e for e in subset if ranks[e][i] > pos)
                if self.prune and (not left or not right):
                    continue
                lbox, rbox = box.split(i, pos)
                lv = self._solve(lbox, left)[0]
                if lv + 1 >= best:
                    continue
                total = lv + self._solve(rbox, right)[0] + 1
                if total < best:
                    best, choice = total, (i, pos)
                    if best == 1:
                        break
            if best == 1:
                break
        entry = (best, choice, None)
        self.memo[box] = entry
        return entry

    def tree(self, box: BoxKey | None = None, subset: Subset | None = None) -> Node:
        if box is None:
            box = full_box(self.ds)
        if subset is None:
            subset = box_examples(self.ds, box)
        value, choice, label = self._solve(box, subset)
        if choice is None:
            return leaf_for(label)
        # choice was recorded against the (possibly shrunk) key; its split is
        # still valid for the original box because it lies inside it
        i, pos = choice
        ranks = self.ds.ranks
        left = tuple(e for e in subset if ranks[e][i] <= pos)
        right = tuple(e for e in subset if ranks[e][i] > pos)
        lbox, rbox = box.split(i, pos)
        return cut(self.ds, i, pos, self.tree(lbox, left), self.tree(rbox, right))


def dp_min_size(ds: Dataset, *, shrink=False, prune=False, deadline: Deadline | None = None) -> DpResult:
    solver = DpSolver(ds, shrink=shrink, prune=prune, deadline=deadline)
    root = full_box(ds)
    value = solver.value(root)
    return DpResult(value, solver.tree(root))
