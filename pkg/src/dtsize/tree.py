"""Axis-parallel decision trees over a :class:`~dtsize.dataset.Dataset`.

Inner nodes keep both the combinatorial split position (used for exact
comparisons against dataset ranks) and the materialized numeric threshold
(used to classify arbitrary points and for serialization). The ``le`` child
receives points with ``x[dim] <= thr``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .dataset import ANY, Dataset, DatasetError, Subset, format_number, parse_number


class TreeFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Inner:
    dim: int
    pos: int
    thr: Fraction
    le: "Node"
    gt: "Node"


Node = Union[Leaf, Inner]
DecisionTree = Node


def leaf_for(label) -> Leaf:
    # empty subsets may carry any label; use class 0
    return Leaf(0 if label == ANY else label)


def cut(ds: Dataset, dim: int, pos: int, le: Node, gt: Node) -> Inner:
    return Inner(dim, pos, ds.threshold(dim, pos), le, gt)


def size(t: Node) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + size(t.le) + size(t.gt)


def classify(t: Node, x) -> int:
    while isinstance(t, Inner):
        t = t.le if Fraction(x[t.dim]) <= t.thr else t.gt
    return t.label


def leaf_sets(t: Node, ds: Dataset, subset: Subset | None = None):
    """Yield ``(leaf, examples reaching it)`` for every leaf, left to right."""
    if subset is None:
        subset = ds.all
    if isinstance(t, Leaf):
        yield t, subset
        return
    left = tuple(e for e in subset if ds.coords[e][t.dim] <= t.thr)
    right = tuple(e for e in subset if ds.coords[e][t.dim] > t.thr)
    yield from leaf_sets(t.le, ds, left)
    yield from leaf_sets(t.gt, ds, right)


def validate(t: Node, ds: Dataset) -> bool:
    return all(classify(t, x) == lab for x, lab in zip(ds.coords, ds.labels))


@dataclass(frozen=True)
class TreeStats:
    size: int
    leaf_count_per_class: dict
    essential_count: int
    max_consecutive_nonessential: int


def stats(t: Node, ds: Dataset | None = None, red: int = 0) -> TreeStats:
    """Structural statistics; ``red`` designates the class for essential nodes.

    A node is essential when both of its subtrees contain a leaf labeled
    ``red``. ``max_consecutive_nonessential`` is the longest run of
    non-essential inner nodes along any root-to-leaf path.
    """
    leaves = Counter()
    essential = 0
    longest = 0

    def walk(node, run):
        nonlocal essential, longest
        if isinstance(node, Leaf):
            leaves[node.label] += 1
            return
        if _count_red(node.le, red) and _count_red(node.gt, red):
            essential += 1
            run = 0
        else:
            run += 1
            longest = max(longest, run)
        walk(node.le, run)
        walk(node.gt, run)

    walk(t, 0)
    if ds is not None:
        per_class = {c: leaves.get(c, 0) for c in range(ds.k)}
    else:
        per_class = dict(sorted(leaves.items()))
    return TreeStats(size(t), per_class, essential, longest)


def _count_red(node: Node, red: int) -> int:
    if isinstance(node, Leaf):
        return int(node.label == red)
    return _count_red(node.le, red) + _count_red(node.gt, red)


def to_dict(t: Node, ds: Dataset) -> dict:
    if isinstance(t, Leaf):
        return {"class": ds.label_names[t.label]}
    return {
        "dim": t.dim + 1,
        "thr": format_number(t.thr),
        "le": to_dict(t.le, ds),
        "gt": to_dict(t.gt, ds),
    }


def to_json(t: Node, ds: Dataset) -> str:
    return json.dumps(to_dict(t, ds), indent=2) + "\n"


def _parse_thr(raw) -> Fraction:
    if isinstance(raw, bool):
        raise TreeFormatError(f"bad threshold {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        if "/" in raw:
            try:
                return Fraction(raw)
            except (ValueError, ZeroDivisionError):
                raise TreeFormatError(f"bad threshold {raw!r}") from None
        try:
            return parse_number(raw)
        except ValueError:
            raise TreeFormatError(f"bad threshold {raw!r}") from None
    raise TreeFormatError(f"bad threshold {raw!r}")


def from_dict(doc, ds: Dataset) -> Node:
    """Rebuild a tree against ``ds``; thresholds are mapped to split positions."""
    if not isinstance(doc, dict):
        raise TreeFormatError("tree node must be an object")
    if "class" in doc:
        try:
            return Leaf(ds.class_id(str(doc["class"])))
        except DatasetError as exc:
            raise TreeFormatError(str(exc)) from None
    try:
        dim = doc["dim"]
        raw_thr, le, gt = doc["thr"], doc["le"], doc["gt"]
    except KeyError as exc:
        raise TreeFormatError(f"inner node missing key {exc}") from None
    if not isinstance(dim, int) or isinstance(dim, bool) or not 1 <= dim <= ds.d:
        raise TreeFormatError(f"dimension {dim!r} out of range 1..{ds.d}")
    thr = _parse_thr(raw_thr)
    dim -= 1
    return Inner(dim, ds.position(dim, thr), thr, from_dict(le, ds), from_dict(gt, ds))


def from_json(text: str, ds: Dataset) -> Node:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeFormatError(f"invalid JSON: {exc}") from None
    return from_dict(doc, ds)
