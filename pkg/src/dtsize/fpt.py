"""Size-budgeted recursive search with threshold binary search.

:meth:`FptSolver.smallest` returns a smallest tree of size at most ``s`` for
an example subset. For every allowed dimension ``i`` and every left-subtree
budget ``j < s`` it binary-searches the largest cut in ``i`` whose left side
still admits a tree of size ``j``, then solves the right side with the
remaining ``s - j - 1`` cuts. Moving the cut further right can only shrink the
right side, so the largest feasible cut is the only one worth trying.

With ``cache=True`` results are memoized per example subset: once a subset's
minimum is known any budget is answered from it, and failed budgets give a
lower bound. Off by default; the plain recursion is the reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dataset import Dataset, SplitRef, Subset
from .deadline import NO_DEADLINE, Deadline
from .tree import Node, cut, leaf_for, size


@dataclass(frozen=True)
class Budget:
    s: int
    dims_allowed: frozenset | None = None  # None means every dimension


def _check_dims(ds: Dataset, dims) -> list[int]:
    if dims is None:
        return list(range(ds.d))
    dims = sorted(set(dims))
    if not dims:
        raise ValueError("dims_allowed must be nonempty")
    for i in dims:
        if not 0 <= i < ds.d:
            raise ValueError(f"dimension {i} out of range for d={ds.d}")
    return dims


class FptSolver:
    def __init__(self, ds: Dataset, dims_allowed=None, *, cache=False, deadline: Deadline | None = None):
        self.ds = ds
        self.dims = _check_dims(ds, dims_allowed)
        self.cache: dict | None = {} if cache else None
        self.deadline = deadline or NO_DEADLINE
        self.calls = 0

    def smallest(self, subset: Subset, s: int) -> Node | None:
        found = self._smallest(subset, s)
        return None if found is None else found[0]

    def _smallest(self, subset: Subset, s: int):
        """Return ``(tree, size)`` or ``None``."""
        self.calls += 1
        self.deadline.check()
        label = self.ds.is_uniform(subset)
        if label is not None:
            return leaf_for(label), 0
        if s <= 0:
            return None

        if self.cache is not None:
            lower, known = self.cache.get(subset, (1, None))
            if known is not None:
                return known if known[1] <= s else None
            if s < lower:
                return None

        ranks = self.ds.ranks
        best, best_size = None, math.inf
        for i in self.dims:
            for j in range(s):
                pos = self.binary_search(subset, i, j)
                left = tuple(e for e in subset if ranks[e][i] <= pos)
                right = tuple(e for e in subset if ranks[e][i] > pos)
                r = self._smallest(right, s - j - 1)
                if r is None:
                    continue
                l = self._smallest(left, j)
                if l is None:
                    continue
                total = l[1] + r[1] + 1
                if total < best_size:
                    best = cut(self.ds, i, pos, l[0], r[0])
                    best_size = total

        if self.cache is not None:
            if best is None:
                lower, _ = self.cache.get(subset, (1, None))
                self.cache[subset] = (max(lower, s + 1), None)
            else:
                # a smallest tree within budget s is a smallest tree overall
                self.cache[subset] = (best_size, (best, best_size))
        return None if best is None else (best, best_size)

    def feasible(self, subset: Subset, j: int) -> bool:
        return self._smallest(subset, j) is not None

    def binary_search(self, subset: Subset, i: int, j: int) -> int:
        """Largest split position in dimension ``i`` whose left side admits a tree of size ``j``.

        Probes only the distinct values present in ``subset`` and then widens
        the answer to the largest position inducing the same partition, so the
        result is the largest feasible position over ``0..|D_i|``.
        """
        ranks = self.ds.ranks
        values = sorted({ranks[e][i] for e in subset})
        top = len(self.ds.domains[i])
        if not values:
            return top
        lo, hi = 0, len(values) - 1
        last_ok = -1
        while lo <= hi:
            m = (lo + hi) // 2
            left = tuple(e for e in subset if ranks[e][i] <= values[m])
            if self.feasible(left, j):
                last_ok = m
                lo = m + 1
            else:
                hi = m - 1
        nxt = last_ok + 1
        return values[nxt] - 1 if nxt < len(values) else top


def smallest_decision_tree(ds: Dataset, subset: Subset, budget: Budget, *, cache=False) -> Node | None:
    return FptSolver(ds, budget.dims_allowed, cache=cache).smallest(subset, budget.s)


def binary_search_threshold(ds: Dataset, subset: Subset, i: int, j: int, budget: Budget | None = None) -> SplitRef:
    dims = None if budget is None else budget.dims_allowed
    solver = FptSolver(ds, dims)
    if i not in solver.dims:
        raise ValueError(f"dimension {i} is not allowed")
    return SplitRef(i, solver.binary_search(subset, i, j))


def solve_bounded(ds: Dataset, s: int, dims_allowed=None, *, cache=False, deadline: Deadline | None = None) -> Node | None:
    """Smallest tree of size at most ``s`` cutting only ``dims_allowed``, or ``None``.

    A negative budget admits no tree.
    """
    solver = FptSolver(ds, dims_allowed, cache=cache, deadline=deadline)
    if s < 0:
        return None
    return solver.smallest(ds.all, s)


def fpt_min_tree(ds: Dataset, max_size: int | None = None, dims_allowed=None, *, cache=False,
                 deadline: Deadline | None = None) -> Node | None:
    """Minimum over budgets: try ``s = 0, 1, ...`` until :func:`solve_bounded` succeeds.

    Without ``max_size`` the search stops at ``n - 1``, which always suffices
    when every dimension may be cut.
    """
    if max_size is None:
        max_size = ds.n - 1
    solver = FptSolver(ds, dims_allowed, cache=cache, deadline=deadline)
    for s in range(max_size + 1):
        t = solver.smallest(ds.all, s)
        if t is not None:
            return t
    return None


def _check_two_class(ds: Dataset, red: int | None = None):
    if ds.k > 2:
        raise ValueError(f"red-leaf bound needs at most two classes, dataset has {ds.k}")
    if red is not None and red not in (0, 1):
        raise ValueError(f"red class must be 0 or 1, got {red}")


def red_leaf_budget(d: int, R: int) -> int:
    return 2 * d * (2 * R - 1)


def solve_with_red_leaf_bound(ds: Dataset, R: int, red: int, *, cache=False,
                              deadline: Deadline | None = None) -> Node | None:
    """Search with budget ``2d(2R - 1)``.

    ``R`` is a promise: if some minimum tree has at most ``R`` leaves of class
    ``red``, the result is a minimum tree. The result itself may have more red
    leaves than ``R``.
    """
    _check_two_class(ds, red)
    if R < 1:
        raise ValueError("R must be at least 1")
    return solve_bounded(ds, red_leaf_budget(ds.d, R), cache=cache, deadline=deadline)


def solve_min_leaf_class(ds: Dataset, R: int, *, cache=False, deadline: Deadline | None = None) -> Node | None:
    _check_two_class(ds)
    best = None
    for red in (0, 1):
        t = solve_with_red_leaf_bound(ds, R, red, cache=cache, deadline=deadline)
        if t is not None and (best is None or size(t) < size(best)):
            best = t
    return best
