"""Seeded synthetic instances: random point sets and alternating grids."""

from __future__ import annotations

import random

from .dataset import Dataset

LABELS = ("r", "b", "g", "y", "c", "m")


def random_dataset(rng: random.Random, n: int, d: int, k: int, max_coord: int = 5) -> Dataset:
    """``n`` integer points in ``[0, max_coord]^d`` using exactly ``k`` labels.

    Repeated points share one label so the result is always feasible.
    """
    if not 1 <= k <= len(LABELS):
        raise ValueError(f"k must be in 1..{len(LABELS)}")
    if n < k:
        raise ValueError("need at least k examples")
    if (max_coord + 1) ** d < k:
        raise ValueError("grid too small for k distinct points")
    while True:
        points = [tuple(rng.randint(0, max_coord) for _ in range(d)) for _ in range(n)]
        distinct = sorted(set(points))
        if len(distinct) < k:
            continue
        label_of = {p: rng.randrange(k) for p in distinct}
        if len(set(label_of.values())) == k:
            return Dataset.from_rows(points, [LABELS[label_of[p]] for p in points])


def xor_grid(g: int) -> Dataset:
    """``g x g`` grid with labels alternating like a checkerboard."""
    points = [(x, y) for x in range(g) for y in range(g)]
    return Dataset.from_rows(points, [LABELS[(x + y) % 2] for x, y in points])


def random_corpus(seed: int, count: int, *, dims=(1, 2, 3), max_n: int = 10, ks=(2, 3), max_coord: int = 5):
    """Deterministic list of ``count`` random datasets."""
    rng = random.Random(seed)
    corpus = []
    for _ in range(count):
        d = rng.choice(dims)
        k = rng.choice(ks)
        n = rng.randint(k, max_n)
        corpus.append(random_dataset(rng, n, d, k, max_coord))
    return corpus
