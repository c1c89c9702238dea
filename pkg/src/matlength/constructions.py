"""Matrix families built from Jordan blocks, and k-diagonal bookkeeping.

Matrix-unit and diagonal indices here are 1-based to match the usual
notation: ``elem(n, i, j)`` is E_{i,j}, and the k-diagonal of A is the set of
entries a_{i,i+k} for k in [-(n-1), n-1].
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import FrozenSet, List, Tuple

from .echelon import SpanBasis
from .errors import DimensionError
from .fields import QQ, Field
from .matrix import Matrix


def elem(n: int, i: int, j: int, field: Field = QQ) -> Matrix:
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"matrix unit E_{i},{j} out of range for n={n}")
    entries = [0] * (n * n)
    entries[(i - 1) * n + (j - 1)] = 1
    return Matrix._make(n, field, entries)


def jordan(n: int, eigenvalue=0, field: Field = QQ) -> Matrix:
    """n x n Jordan block: ``eigenvalue`` on the diagonal, 1 above it."""
    if n < 1:
        raise DimensionError(f"Jordan block size must be >= 1, got {n}")
    lam = field.coerce(eigenvalue)
    entries = [0] * (n * n)
    for i in range(n):
        entries[i * n + i] = lam
        if i + 1 < n:
            entries[i * n + i + 1] = 1
    return Matrix._make(n, field, entries)


def nilpotent_pair(n: int, field: Field = QQ) -> Tuple[Matrix, Matrix]:
    """(J_n, B_n) with B_n = E_{n-1,1} - E_{n,2}."""
    if n < 3:
        raise ValueError(f"nilpotent_pair needs n >= 3, got {n}")
    b = elem(n, n - 1, 1, field) - elem(n, n, 2, field)
    assert n == 3 or (b @ b).is_zero()
    return jordan(n, 0, field), b


def jordan_power_pair(n: int, i: int, field: Field = QQ) -> Tuple[Matrix, Matrix]:
    """(J_n^i, (J_n^T)^(n-i))."""
    if not 1 <= i < n:
        raise ValueError(f"need 1 <= i < n, got n={n}, i={i}")
    j = jordan(n, 0, field)
    return j ** i, j.transpose() ** (n - i)


@dataclass(frozen=True)
class DiagonalSupport:
    n: int
    diagonals: FrozenSet[int]

    def __contains__(self, k):
        return k in self.diagonals

    def is_empty(self) -> bool:
        return not self.diagonals


def k_diagonal_support(a: Matrix) -> DiagonalSupport:
    n = a.n
    ks = {j - i for i in range(n) for j in range(n) if a.entries[i * n + j]}
    return DiagonalSupport(n, frozenset(ks))


def diagonal_space_basis(n: int, k: int, field: Field = QQ) -> List[Matrix]:
    """Matrix units spanning the matrices supported on the k-diagonal."""
    if not -(n - 1) <= k <= n - 1:
        raise ValueError(f"diagonal {k} out of range for n={n}")
    return [elem(n, i, i + k, field) for i in range(max(1, 1 - k), min(n, n - k) + 1)]


def k_sequence(n: int, i: int, k0: int) -> List[int]:
    """Orbit of k0 under k -> k + (n - i) if k <= i else k - i.

    The list stops at the first repeated value, which is included.
    """
    if not 1 <= i < n:
        raise ValueError(f"need 1 <= i < n, got n={n}, i={i}")
    if not 1 <= k0 <= n:
        raise ValueError(f"need 1 <= k0 <= n, got {k0}")
    seq, seen = [k0], {k0}
    k = k0
    while True:
        k = k + (n - i) if k <= i else k - i
        seq.append(k)
        if k in seen:
            return seq
        seen.add(k)


@dataclass(frozen=True)
class WSpace:
    """Sum of two diagonal spaces that holds every nonzero word of length n-2
    in J_n^i and (J_n^T)^(n-i), for co-prime n and i."""

    n: int
    i: int
    diagonals: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return sum(self.n - abs(k) for k in self.diagonals)


def w_space(n: int, i: int) -> WSpace:
    if not 1 <= i < n:
        raise ValueError(f"need 1 <= i < n, got n={n}, i={i}")
    if gcd(i, n - i) != 1:
        raise ValueError(f"n={n} and i={i} are not co-prime")
    if 2 * i == n:  # only (2, 1) survives the co-prime check
        diags = (0,)
    elif 2 * i < n:
        diags = (n - 2 * i, -2 * i)
    else:
        diags = (n - 2 * i, 2 * n - 2 * i)
    w = WSpace(n, i, diags)
    assert w.dim == n
    return w


def w_space_basis(n: int, i: int, field: Field = QQ) -> SpanBasis:
    w = w_space(n, i)
    basis = SpanBasis(field, n * n)
    for k in w.diagonals:
        for m in diagonal_space_basis(n, k, field):
            basis.insert(m.vec())
    assert len(basis) == n
    return basis


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; the result is (a.n * b.n) square."""
    if a.field != b.field:
        raise ValueError("Kronecker factors over different fields")
    f, na, nb = a.field, a.n, b.n
    n = na * nb
    entries = [0] * (n * n)
    for i in range(na):
        for j in range(na):
            x = a.entries[i * na + j]
            if not x:
                continue
            for k in range(nb):
                for l in range(nb):
                    entries[(i * nb + k) * n + j * nb + l] = f.mul(x, b.entries[k * nb + l])
    return Matrix._make(n, f, entries)
