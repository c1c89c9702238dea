"""Incrementally reduced echelon bases of vectors over an exact field."""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import DimensionError
from .fields import Field, Raw

Word = Tuple[int, ...]


def _sub_scaled(p, v, c, row):
    # v - c*row, skipping columns where row vanishes
    if p is None:
        return [a - c * b if b else a for a, b in zip(v, row)]
    return [(a - c * b) % p if b else a for a, b in zip(v, row)]


class SpanBasis:
    """Fully reduced row echelon basis, grown one vector at a time.

    Every row has a leading 1 at its pivot column and zeros in every other
    row's pivot column.  Each row also carries a layer tag and a witness
    word; the tags never decrease in insertion order.
    """

    __slots__ = ("field", "dim", "rows", "pivots", "layers", "words")

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self.rows: List[List[Raw]] = []
        self.pivots: List[int] = []
        self.layers: List[int] = []
        self.words: List[Word] = []

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def max_layer(self) -> Optional[int]:
        return self.layers[-1] if self.layers else None

    def _check(self, v):
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} in a {self.dim}-dimensional span")

    def reduce(self, v: Sequence[Raw]) -> List[Raw]:
        """Remainder of ``v`` after elimination against every row."""
        self._check(v)
        p = self.field.p
        v = list(v)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                v = _sub_scaled(p, v, c, row)
        return v

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def insert(self, v: Sequence[Raw], layer: int = 0, word: Word = ()) -> bool:
        """Add ``v`` to the span; False if it was already there."""
        if self.layers and layer < self.layers[-1]:
            raise ValueError(f"layer {layer} inserted after layer {self.layers[-1]}")
        r = self.reduce(v)
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            return False
        field = self.field
        lead = r[piv]
        if lead != 1:
            inv = field.inv(lead)
            r = [field.mul(x, inv) if x else x for x in r]
        p = field.p
        for i, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[i] = _sub_scaled(p, row, c, r)
        self.rows.append(r)
        self.pivots.append(piv)
        self.layers.append(layer)
        self.words.append(tuple(word))
        return True

    def extend(self, vectors, layer: int = 0) -> int:
        return sum(self.insert(v, layer) for v in vectors)

    def copy(self) -> "SpanBasis":
        other = SpanBasis(self.field, self.dim)
        other.rows = [list(r) for r in self.rows]
        other.pivots = list(self.pivots)
        other.layers = list(self.layers)
        other.words = list(self.words)
        return other

    def key(self) -> tuple:
        """Canonical hashable form of the span (the sorted reduced rows)."""
        order = sorted(range(len(self.rows)), key=self.pivots.__getitem__)
        return tuple(tuple(self.rows[i]) for i in order)

    def is_subspace_of(self, other: "SpanBasis") -> bool:
        return all(row in other for row in self.rows)


def rank(field: Field, vectors) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    basis = SpanBasis(field, len(vectors[0]))
    basis.extend(vectors)
    return len(basis)


def solve_combination(field: Field, vectors, target) -> Optional[List[Raw]]:
    """Coefficients ``c`` with ``sum(c[i] * vectors[i]) == target``, or None.

    Plain Gauss-Jordan on the augmented column system.  When the vectors are
    dependent the free coefficients are set to zero.
    """
    vectors = [list(v) for v in vectors]
    m = len(vectors)
    dim = len(target)
    # augmented rows: one per coordinate, columns are the vectors then target
    rows = [[v[k] for v in vectors] + [target[k]] for k in range(dim)]
    pivot_cols = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, dim) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        for i in range(dim):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == dim:
            break
    if any(rows[i][m] for i in range(r, dim)):
        return None
    coeffs = [0] * m
    for i, c in enumerate(pivot_cols):
        coeffs[c] = rows[i][m]
    return coeffs
