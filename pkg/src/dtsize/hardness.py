"""Decision-tree instances from Partitioned Subgraph Isomorphism (PSI).

A PSI instance is a host graph ``G`` with a proper coloring into ``K``
colors and a pattern graph ``H`` on the colors ``1..K``. It is a
yes-instance when some map ``phi`` picks one vertex per color such that every
H-edge ``{c, c'}`` is realized by the G-edge ``{phi(c), phi(c')}``.

:func:`build_reduction` turns a normalized instance into a labeled point set
and a size budget such that a tree within the budget exists iff the PSI
instance is a yes-instance:

* every H-edge gets a 2-D edge-selection subspace holding one red/blue pair
  per candidate G-edge, separated by dummy tuples that force cuts, plus an
  unlabeled corner point left of and above everything;
* every color gets a 1-D vertex-verification subspace holding a left
  unlabeled point, one red/blue pair per vertex of that color, and a right
  unlabeled point;
* the budget is ``(m_G + 4) * (m_G - m_H) + n_H``.

Coordinates inside a subspace are consecutive integers in layout order, the
labeled points of an edge-selection subspace sit on the diagonal.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .dataset import Dataset
from .tree import Leaf, Node, cut, leaf_for, validate

RED, BLUE = "red", "blue"


class PsiError(ValueError):
    pass


@dataclass
class PsiInstance:
    K: int
    col: dict  # vertex id -> color in 1..K
    gedges: list  # (u, v) with col[u] < col[v]
    hedges: list  # (c, c') with c < c'

    def __post_init__(self):
        self.col = {str(v): int(c) for v, c in self.col.items()}
        for v, c in self.col.items():
            if not 1 <= c <= self.K:
                raise PsiError(f"vertex {v} has color {c} outside 1..{self.K}")
        edges = set()
        for u, v in self.gedges:
            u, v = str(u), str(v)
            for w in (u, v):
                if w not in self.col:
                    raise PsiError(f"edge endpoint {w} is not a vertex")
            if self.col[u] == self.col[v]:
                raise PsiError(f"edge {{{u}, {v}}} joins two vertices of color {self.col[u]}")
            edges.add((u, v) if self.col[u] < self.col[v] else (v, u))
        self.gedges = sorted(edges)
        hedges = set()
        for a, b in self.hedges:
            a, b = int(a), int(b)
            if a == b or not (1 <= a <= self.K and 1 <= b <= self.K):
                raise PsiError(f"bad pattern edge {{{a}, {b}}}")
            hedges.add((min(a, b), max(a, b)))
        self.hedges = sorted(hedges)

    @property
    def m_G(self) -> int:
        return len(self.gedges)

    @property
    def m_H(self) -> int:
        return len(self.hedges)

    @property
    def n_H(self) -> int:
        return self.K

    def color_class(self, c: int) -> list:
        return sorted(v for v, cv in self.col.items() if cv == c)

    def candidates(self, hedge) -> list:
        """G-edges whose endpoint colors match ``hedge``, in id order."""
        return [e for e in self.gedges if (self.col[e[0]], self.col[e[1]]) == hedge]

    def class_size(self) -> int:
        return max((len(self.color_class(c)) for c in range(1, self.K + 1)), default=0)


def check_basic(p: PsiInstance) -> None:
    covered = {c for e in p.hedges for c in e}
    isolated = sorted(set(range(1, p.K + 1)) - covered)
    if isolated:
        raise PsiError(f"pattern graph has isolated vertices {isolated}")


def normalization_problems(p: PsiInstance) -> list[str]:
    problems = []
    sizes = {len(p.color_class(c)) for c in range(1, p.K + 1)}
    if len(sizes) != 1 or 0 in sizes:
        problems.append(f"color classes have unequal sizes {sorted(sizes)}")
    hset = set(p.hedges)
    stray = [e for e in p.gedges if (p.col[e[0]], p.col[e[1]]) not in hset]
    if stray:
        problems.append(f"G-edges without a matching H-edge: {stray}")
    # parity matters only where dummy tuples are laid out
    if p.m_G % 2 and any(len(p.candidates(h)) > 1 for h in p.hedges):
        problems.append("m_G is odd")
    return problems


def is_normalized(p: PsiInstance) -> bool:
    return not normalization_problems(p)


def _fresh(taken, stem: str) -> str:
    i = 0
    while f"{stem}{i}" in taken:
        i += 1
    name = f"{stem}{i}"
    taken.add(name)
    return name


def normalize_psi(p: PsiInstance) -> PsiInstance:
    """Equivalent instance with equal color classes, no stray edges and even ``m_G``.

    Parity only matters when some H-edge has two or more candidates. An odd
    edge count is fixed by a gadget: two fresh colors, one fresh vertex
    each, joined by one fresh G-edge and one fresh H-edge. That H-edge is
    realized by exactly that G-edge, so the answer does not change.
    """
    check_basic(p)
    K = p.K
    col = dict(p.col)
    hedges = list(p.hedges)
    hset = set(hedges)
    gedges = [e for e in p.gedges if (col[e[0]], col[e[1]]) in hset]
    taken = set(col)
    matched = Counter((col[u], col[v]) for u, v in gedges)
    if len(gedges) % 2 and any(n > 1 for n in matched.values()):
        a, b = _fresh(taken, f"_gadget{K + 1}_"), _fresh(taken, f"_gadget{K + 2}_")
        col[a], col[b] = K + 1, K + 2
        gedges.append((a, b))
        hedges.append((K + 1, K + 2))
        K += 2
    n = max(1, max((sum(1 for cv in col.values() if cv == c) for c in range(1, K + 1)), default=0))
    for c in range(1, K + 1):
        have = sum(1 for cv in col.values() if cv == c)
        for _ in range(n - have):
            col[_fresh(taken, f"_pad{c}_")] = c
    return PsiInstance(K, col, gedges, hedges)


def is_isomorphism(p: PsiInstance, phi: dict) -> bool:
    if set(phi) != set(range(1, p.K + 1)):
        return False
    if any(p.col.get(phi[c]) != c for c in phi):
        return False
    edges = set(p.gedges)
    return all((phi[a], phi[b]) in edges for a, b in p.hedges)


def psi_brute(p: PsiInstance, *, max_colors: int = 6, max_class: int = 4) -> dict | None:
    """Exhaustive search over color-respecting maps; ``None`` for a no-instance."""
    if p.K > max_colors or p.class_size() > max_class:
        raise PsiError(f"psi_brute limited to K <= {max_colors} and classes of size <= {max_class}")
    classes = [p.color_class(c) for c in range(1, p.K + 1)]
    edges = set(p.gedges)
    for choice in itertools.product(*classes):
        if all((choice[a - 1], choice[b - 1]) in edges for a, b in p.hedges):
            return {c + 1: v for c, v in enumerate(choice)}
    return None


# --- layout -----------------------------------------------------------------

@dataclass
class EdgeSpace:
    hedge: tuple
    xdim: int
    ydim: int
    edges: list  # candidate G-edges e_1..e_j
    pairs: list  # per candidate edge, (red coord, blue coord)
    tuples: list  # per gap between consecutive pairs, coords of its dummy points
    corner: tuple  # (x, y) of the unlabeled point

    def blocks(self) -> list[tuple]:
        """Runs of equally labeled points in order; every boundary needs a cut."""
        out = []
        for k, (r, b) in enumerate(self.pairs):
            out.append((r,))
            out.append((b,))
            if k < len(self.tuples):
                pts = self.tuples[k]
                out.extend(tuple(pts[q:q + 2]) for q in range(0, len(pts), 2))
        return out


@dataclass
class VertexSpace:
    color: int
    dim: int
    vertices: list
    pairs: dict  # vertex -> (red coord, blue coord)
    left: int
    right: int


@dataclass
class Reduction:
    instance: PsiInstance
    dataset: Dataset
    budget: int
    edge_spaces: list
    vertex_spaces: dict  # color -> VertexSpace
    roles: list = field(repr=False)  # per example, a tuple describing its origin

    @property
    def d(self) -> int:
        return self.dataset.d


def tuple_size(m_G: int) -> int:
    return 2 * (m_G + 2)


def reduction_budget(p: PsiInstance) -> int:
    return (p.m_G + 4) * (p.m_G - p.m_H) + p.n_H


def build_reduction(p: PsiInstance) -> Reduction:
    problems = normalization_problems(p)
    if problems:
        raise PsiError("instance is not normalized: " + "; ".join(problems))
    check_basic(p)
    m_G = p.m_G

    edge_spaces = []
    for h, hedge in enumerate(p.hedges):
        cands = p.candidates(hedge)
        coord = 1
        pairs, tuples = [], []
        for k in range(len(cands)):
            pairs.append((coord, coord + 1))
            coord += 2
            if k < len(cands) - 1:
                tuples.append(list(range(coord, coord + tuple_size(m_G))))
                coord += tuple_size(m_G)
        edge_spaces.append(EdgeSpace(hedge, 2 * h, 2 * h + 1, cands, pairs, tuples, (0, coord)))

    vertex_spaces = {}
    for c in range(1, p.K + 1):
        verts = p.color_class(c)
        pairs = {v: (2 * q + 1, 2 * q + 2) for q, v in enumerate(verts)}
        vertex_spaces[c] = VertexSpace(c, 2 * p.m_H + c - 1, verts, pairs, 0, 2 * len(verts) + 1)

    d = 2 * p.m_H + p.n_H
    default = [0] * d
    for es in edge_spaces:
        default[es.xdim], default[es.ydim] = es.corner
    for vs in vertex_spaces.values():
        default[vs.dim] = vs.right

    points, labels, roles = [], [], []

    def emit(vec, label, role):
        points.append(tuple(vec))
        labels.append(label)
        roles.append(role)
        return tuple(vec)

    def on_diagonal(vec, es, c):
        vec = list(vec)
        vec[es.xdim] = vec[es.ydim] = c
        return vec

    # primary examples: pairs U and V per G-edge
    primary = {}  # (edge, 'U'|'V', label) -> vector
    for h, es in enumerate(edge_spaces):
        for k, (u, v) in enumerate(es.edges):
            for which, w in (("U", u), ("V", v)):
                vs = vertex_spaces[p.col[w]]
                for label, idx in ((RED, 0), (BLUE, 1)):
                    vec = on_diagonal(default, es, es.pairs[k][idx])
                    vec[vs.dim] = vs.pairs[w][idx]
                    primary[(u, v), which, label] = emit(vec, label, ("primary", h, (u, v), which))

    # dummy pairs L_g, R_g, P per dummy tuple
    for h, es in enumerate(edge_spaces):
        for k, pts in enumerate(es.tuples):
            for g in range(m_G + 1):
                # boundary between group g and group g + 1
                a, b = pts[2 * g + 1], pts[2 * g + 2]
                red_pt, blue_pt = (a, b) if g % 2 == 0 else (b, a)
                for side in ("L", "R"):
                    base = list(default)
                    if side == "L":
                        for vs in vertex_spaces.values():
                            base[vs.dim] = vs.left
                    emit(on_diagonal(base, es, red_pt), RED, (side, h, k, g))
                    emit(on_diagonal(base, es, blue_pt), BLUE, (side, h, k, g))
            b_partner = primary[es.edges[k], "U", BLUE]
            r_partner = primary[es.edges[k + 1], "U", RED]
            emit(on_diagonal(b_partner, es, pts[0]), RED, ("P", h, k, b_partner))
            emit(on_diagonal(r_partner, es, pts[-1]), BLUE, ("P", h, k, r_partner))

    # one dummy pair per vertex-verification subspace
    for c, vs in vertex_spaces.items():
        vec = list(default)
        vec[vs.dim] = vs.left
        emit(vec, RED, ("D", c))
        emit(default, BLUE, ("D", c))

    ds = Dataset.from_rows(points, labels)
    return Reduction(p, ds, reduction_budget(p), edge_spaces, vertex_spaces, roles)


def reduce(p: PsiInstance) -> tuple[Dataset, int]:
    red = build_reduction(p)
    return red.dataset, red.budget


# --- the yes-direction witness ----------------------------------------------

def witness_cuts(red: Reduction, phi: dict) -> list[tuple]:
    """The path of cuts ``(dim, threshold, pure side)`` for isomorphism ``phi``."""
    p = red.instance
    half = Fraction(1, 2)
    cuts = []
    for es in red.edge_spaces:
        chosen = (phi[es.hedge[0]], phi[es.hedge[1]])
        i = es.edges.index(chosen)
        blocks = es.blocks()
        # each earlier candidate contributes its two pair blocks and the
        # m_G + 2 groups of the tuple after it
        first = i * (p.m_G + 4)
        last = first + 1
        for blk in blocks[:first]:
            cuts.append((es.ydim, blk[-1] + half, "le"))
        for blk in reversed(blocks[last + 1:]):
            cuts.append((es.xdim, blk[0] - half, "gt"))
    for c, vs in red.vertex_spaces.items():
        cuts.append((vs.dim, vs.pairs[phi[c]][0] + half, "le"))
    return cuts


def witness_tree(p: PsiInstance, phi: dict, red: Reduction | None = None) -> Node:
    """Path-shaped tree with exactly ``budget`` cuts built from a PSI solution."""
    if not is_isomorphism(p, phi):
        raise PsiError("phi is not a subgraph isomorphism")
    if red is None:
        red = build_reduction(p)
    ds = red.dataset
    remaining = ds.all
    steps = []
    for dim, thr, pure in witness_cuts(red, phi):
        le = tuple(e for e in remaining if ds.coords[e][dim] <= thr)
        gt = tuple(e for e in remaining if ds.coords[e][dim] > thr)
        side, rest = (le, gt) if pure == "le" else (gt, le)
        label = ds.is_uniform(side)
        if label is None or not side:
            raise AssertionError(f"witness cut at dim {dim}, thr {thr} leaves a mixed side")
        steps.append((dim, ds.position(dim, thr), pure, label))
        remaining = rest
    label = ds.is_uniform(remaining)
    if label is None:
        raise AssertionError("witness path ends in a mixed leaf")
    node: Node = leaf_for(label)
    for dim, pos, pure, lab in reversed(steps):
        node = cut(ds, dim, pos, Leaf(lab), node) if pure == "le" else cut(ds, dim, pos, node, Leaf(lab))
    assert validate(node, ds)
    return node


# --- text format ------------------------------------------------------------

def parse_psi(text: str) -> PsiInstance:
    K = None
    col, gedges, hedges = {}, [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "colors" and len(parts) == 2:
                K = int(parts[1])
            elif parts[0] == "vertex" and len(parts) == 3:
                if parts[1] in col:
                    raise PsiError(f"duplicate vertex {parts[1]}")
                col[parts[1]] = int(parts[2])
            elif parts[0] == "gedge" and len(parts) == 3:
                gedges.append((parts[1], parts[2]))
            elif parts[0] == "hedge" and len(parts) == 3:
                hedges.append((int(parts[1]), int(parts[2])))
            else:
                raise PsiError(f"unrecognized line {raw!r}")
        except (ValueError, PsiError) as exc:
            raise PsiError(f"line {lineno}: {exc}") from None
    if K is None:
        raise PsiError("missing 'colors K' line")
    return PsiInstance(K, col, gedges, hedges)


def format_psi(p: PsiInstance) -> str:
    lines = [f"colors {p.K}"]
    lines += [f"vertex {v} {c}" for v, c in sorted(p.col.items(), key=lambda vc: (vc[1], vc[0]))]
    lines += [f"gedge {u} {v}" for u, v in p.gedges]
    lines += [f"hedge {a} {b}" for a, b in p.hedges]
    return "\n".join(lines) + "\n"
