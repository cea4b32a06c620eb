"""Labeled point sets with exact coordinates and combinatorial split positions.

Coordinates are kept as :class:`fractions.Fraction` so that no solver ever
compares floats. Solvers work on ranks: ``rank[e][i]`` is the 1-based index
of example ``e``'s coordinate inside the sorted distinct values of dimension
``i``. A split position ``pos`` in ``0..len(domain)`` means "cut after the
pos-th smallest value"; an example goes left iff ``rank <= pos``.
"""

from __future__ import annotations

import csv
import io
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

# Label returned by is_uniform for an empty subset.
ANY = -1

Subset = tuple  # sorted tuple of example indices


class DatasetError(ValueError):
    """Raised for malformed or infeasible input data."""


def parse_number(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty numeric field")
    if "/" in text or text.lower().lstrip("+-") in ("nan", "inf", "infinity"):
        raise ValueError(f"not a finite decimal: {text!r}")
    return Fraction(text)


def format_number(q: Fraction) -> str:
    """Render ``q`` as an exact decimal if it terminates, else as ``p/q``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    digits = max(twos, fives)
    scaled = abs(q.numerator) * 10**digits // q.denominator
    sign = "-" if q < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0")


@dataclass(frozen=True)
class SplitRef:
    dim: int
    pos: int


@dataclass(frozen=True)
class Dataset:
    """Immutable labeled examples. Build with :meth:`from_rows` or :func:`parse_csv`."""

    coords: tuple  # per example, tuple of Fractions
    labels: tuple  # per example, ClassId in range(k)
    label_names: tuple  # ClassId -> original label token
    domains: tuple = field(repr=False)  # per dimension, strictly increasing Fractions
    ranks: tuple = field(repr=False)  # per example, 1-based rank per dimension

    @classmethod
    def from_rows(cls, coords: Iterable[Sequence], labels: Iterable, *, rows=None) -> "Dataset":
        """Build a dataset from coordinate vectors and label tokens.

        Label tokens are mapped to class ids in order of first appearance.
        ``rows`` optionally gives the source row number of each example, used
        in error messages.
        """
        coords = tuple(tuple(Fraction(c) for c in x) for x in coords)
        tokens = [str(lab) for lab in labels]
        if not coords:
            raise DatasetError("dataset has no examples")
        if len(tokens) != len(coords):
            raise DatasetError("coords and labels differ in length")
        d = len(coords[0])
        if d < 1:
            raise DatasetError("examples need at least one coordinate")
        rows = list(rows) if rows is not None else list(range(1, len(coords) + 1))

        names: dict[str, int] = {}
        label_ids = []
        for tok in tokens:
            label_ids.append(names.setdefault(tok, len(names)))

        seen: dict[tuple, int] = {}
        for e, x in enumerate(coords):
            if len(x) != d:
                raise DatasetError(f"row {rows[e]}: expected {d} coordinates, got {len(x)}")
            first = seen.setdefault(x, e)
            if label_ids[first] != label_ids[e]:
                raise DatasetError(
                    f"rows {rows[first]} and {rows[e]} have identical coordinates "
                    f"but labels {tokens[first]!r} and {tokens[e]!r}"
                )

        domains = tuple(tuple(sorted({x[i] for x in coords})) for i in range(d))
        index = [{v: r + 1 for r, v in enumerate(dom)} for dom in domains]
        ranks = tuple(tuple(index[i][x[i]] for i in range(d)) for x in coords)
        return cls(coords, tuple(label_ids), tuple(names), domains, ranks)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def d(self) -> int:
        return len(self.domains)

    @property
    def k(self) -> int:
        return len(self.label_names)

    @property
    def all(self) -> Subset:
        return tuple(range(self.n))

    def class_id(self, name: str) -> int:
        try:
            return self.label_names.index(name)
        except ValueError:
            raise DatasetError(f"unknown class label {name!r}") from None

    def split_count(self, i: int) -> int:
        """Number of combinatorially distinct cut positions in dimension ``i``."""
        return len(self.domains[i]) + 1

    def threshold(self, dim: int, pos: int) -> Fraction:
        """Numeric threshold realizing split position ``pos``."""
        dom = self.domains[dim]
        if not 0 <= pos <= len(dom):
            raise ValueError(f"split position {pos} out of range for dimension {dim}")
        if pos == 0:
            return dom[0] - 1
        if pos == len(dom):
            return dom[-1]
        return (dom[pos - 1] + dom[pos]) / 2

    def position(self, dim: int, thr) -> int:
        """Split position equivalent to the numeric threshold ``thr`` on this data."""
        return bisect_right(self.domains[dim], Fraction(thr))

    def partition(self, subset: Subset, split: SplitRef) -> tuple[Subset, Subset]:
        left, right = [], []
        dim, pos = split.dim, split.pos
        for e in subset:
            (left if self.ranks[e][dim] <= pos else right).append(e)
        return tuple(left), tuple(right)

    def is_uniform(self, subset: Subset):
        """Common label of ``subset``, :data:`ANY` if empty, ``None`` if mixed."""
        if not subset:
            return ANY
        labels = self.labels
        first = labels[subset[0]]
        for e in subset:
            if labels[e] != first:
                return None
        return first

    def to_csv(self, header: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow([f"x{i + 1}" for i in range(self.d)] + ["label"])
        for x, lab in zip(self.coords, self.labels):
            w.writerow([format_number(c) for c in x] + [self.label_names[lab]])
        return buf.getvalue()


def split_count(ds: Dataset, i: int) -> int:
    return ds.split_count(i)


def partition(ds: Dataset, subset: Subset, split: SplitRef) -> tuple[Subset, Subset]:
    return ds.partition(subset, split)


def is_uniform(ds: Dataset, subset: Subset):
    return ds.is_uniform(subset)


def parse_csv(text: str, has_header: bool = False) -> Dataset:
    """Parse ``d`` numeric columns followed by one label column per row."""
    reader = csv.reader(io.StringIO(text))
    coords, labels, rows = [], [], []
    width = None
    for lineno, row in enumerate(reader, start=1):
        if has_header and lineno == 1:
            continue
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < 2:
            raise DatasetError(f"row {lineno}: need at least one coordinate and a label")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DatasetError(f"row {lineno}: expected {width} columns, got {len(row)}")
        try:
            x = [parse_number(cell) for cell in row[:-1]]
        except (ValueError, ZeroDivisionError) as exc:
            raise DatasetError(f"row {lineno}: {exc}") from None
        coords.append(x)
        labels.append(row[-1].strip())
        rows.append(lineno)
    if not coords:
        raise DatasetError("no data rows")
    return Dataset.from_rows(coords, labels, rows=rows)


def load_csv(path, has_header: bool = False) -> Dataset:
    with open(path, encoding="utf-8", newline="") as f:
        return parse_csv(f.read(), has_header)
