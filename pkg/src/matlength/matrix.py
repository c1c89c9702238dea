"""Dense square matrices over an exact field and their polynomial machinery."""
from __future__ import annotations

from operator import mul
from typing import List, NamedTuple, Sequence, Tuple

from .echelon import SpanBasis, rank as _rank, solve_combination
from .errors import DimensionError, FieldMismatchError
from .fields import QQ, Field, Raw, Scalar


class Matrix:
    """Immutable n x n matrix; entries are raw field elements, row-major.

    Indexing is 0-based: ``A[i, j]``.
    """

    __slots__ = ("n", "field", "entries", "_hash")

    def __init__(self, n: int, field: Field, entries):
        if n < 1:
            raise DimensionError(f"matrix dimension must be >= 1, got {n}")
        entries = tuple(field.coerce(x) for x in entries)
        if len(entries) != n * n:
            raise DimensionError(f"{len(entries)} entries for a {n}x{n} matrix")
        self._set(n, field, entries)

    def _set(self, n, field, entries):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, n, field, entries) -> "Matrix":
        # trusted constructor: entries already canonical
        m = object.__new__(cls)
        m._set(n, field, tuple(entries))
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows, field: Field = QQ) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix rows must all have length n (square matrix)")
        return cls(n, field, [x for r in rows for x in r])

    @classmethod
    def from_vec(cls, n: int, field: Field, vec) -> "Matrix":
        return cls._make(n, field, vec)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls._make(n, field, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls._make(n, field, [0] * (n * n))

    def __getitem__(self, ij) -> Raw:
        i, j = ij
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(ij)
        return self.entries[i * self.n + j]

    def scalar(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self[i, j])

    def rows(self) -> List[Tuple[Raw, ...]]:
        n = self.n
        return [self.entries[i * n:(i + 1) * n] for i in range(n)]

    def vec(self) -> Tuple[Raw, ...]:
        return self.entries

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"matrices over {self.field} and {other.field}")
        if other.n != self.n:
            raise DimensionError(f"{self.n}x{self.n} and {other.n}x{other.n} matrices")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        n, p = self.n, self.field.p
        a, b = self.entries, other.entries
        rows = [a[i * n:(i + 1) * n] for i in range(n)]
        cols = [b[j::n] for j in range(n)]
        if p is None:
            out = [sum(map(mul, r, c)) for r in rows for c in cols]
        else:
            out = [sum(map(mul, r, c)) % p for r in rows for c in cols]
        return Matrix._make(n, self.field, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        f = self.field
        return Matrix._make(self.n, f, [f.add(x, y) for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        f = self.field
        return Matrix._make(self.n, f, [f.sub(x, y) for x, y in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix._make(self.n, f, [f.neg(x) for x in self.entries])

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix._make(self.n, f, [f.mul(c, x) for x in self.entries])

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            raise ValueError("negative matrix power")
        result, base = Matrix.identity(self.n, self.field), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "Matrix":
        n = self.n
        return Matrix._make(n, self.field, [self.entries[j * n + i] for i in range(n) for j in range(n)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(self.entries)

    def trace(self) -> Raw:
        f, n = self.field, self.n
        t = 0
        for i in range(n):
            t = f.add(t, self.entries[i * n + i])
        return t

    def change_field(self, field: Field) -> "Matrix":
        return Matrix(self.n, field, self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.n, self.field, self.entries)))
        return self._hash

    def render(self) -> List[List[str]]:
        return [[str(x) for x in r] for r in self.rows()]

    def __repr__(self):
        return f"Matrix({self.field}, {self.render()})"


def identity(n: int, field: Field = QQ) -> Matrix:
    return Matrix.identity(n, field)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def scalar_mul_mat(c, a: Matrix) -> Matrix:
    return a.scale(c)


def transpose(a: Matrix) -> Matrix:
    return a.transpose()


def diag(values, field: Field = QQ) -> Matrix:
    values = list(values)
    n = len(values)
    return Matrix(n, field, [values[i] if i == j else 0 for i in range(n) for j in range(n)])


def matrix_rank(a: Matrix) -> int:
    return _rank(a.field, a.rows())


def is_invertible(a: Matrix) -> bool:
    return matrix_rank(a) == a.n


class Polynomial:
    """Univariate polynomial over a field, coefficients lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        coeffs = [field.coerce(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self) -> Raw:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, a: Matrix) -> Matrix:
        """Evaluate at a matrix by Horner's rule."""
        if a.field != self.field:
            raise FieldMismatchError(f"polynomial over {self.field}, matrix over {a.field}")
        ident = Matrix.identity(a.n, a.field)
        acc = Matrix.zero(a.n, a.field)
        for c in reversed(self.coeffs):
            acc = acc @ a + ident.scale(c)
        return acc

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = f.inv(other.leading)
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = f.mul(rem[k + dq], inv_lead)
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = f.sub(rem[k + j], f.mul(c, b))
        return Polynomial(f, quot), Polynomial(f, rem)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms)

    def __repr__(self):
        return f"Polynomial({self.field}, {list(self.coeffs)})"


def hessenberg(a: Matrix) -> List[List[Raw]]:
    """Upper Hessenberg form similar to ``a`` (Gaussian elimination similarity)."""
    f, n = a.field, a.n
    h = [list(r) for r in a.rows()]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = f.inv(h[j + 1][j])
        for r in range(j + 2, n):
            u = f.mul(h[r][j], inv)
            if not u:
                continue
            # row_r -= u * row_{j+1}, then col_{j+1} += u * col_r
            h[r] = [f.sub(x, f.mul(u, y)) for x, y in zip(h[r], h[j + 1])]
            for row in h:
                row[j + 1] = f.add(row[j + 1], f.mul(u, row[r]))
    return h


def _poly_sub_scaled(f, p, c, q):
    out = list(p) + [0] * max(len(q) - len(p), 0)
    for k, b in enumerate(q):
        out[k] = f.sub(out[k], f.mul(c, b))
    return out


def char_poly(a: Matrix) -> Polynomial:
    """Characteristic polynomial det(xI - A), monic of degree n."""
    f, n = a.field, a.n
    h = hessenberg(a)
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        # (x - h_mm) * p_{m-1}
        cur = [0] + list(prev)
        for k, c in enumerate(prev):
            cur[k] = f.sub(cur[k], f.mul(h[m - 1][m - 1], c))
        t = 1
        for i in range(m - 1, 0, -1):
            t = f.mul(t, h[i][i - 1])
            if not t:
                break
            cur = _poly_sub_scaled(f, cur, f.mul(h[i - 1][m - 1], t), polys[i - 1])
        polys.append(cur)
    return Polynomial(f, polys[n])


def min_poly(a: Matrix) -> Polynomial:
    """Minimal polynomial from the first linear dependence among I, A, A^2, ..."""
    f, n = a.field, a.n
    basis = SpanBasis(f, n * n)
    powers = []
    power = Matrix.identity(n, f)
    while basis.insert(power.vec(), len(powers)):
        powers.append(power)
        power = power @ a
    coeffs = solve_combination(f, [m.vec() for m in powers], power.vec())
    return Polynomial(f, [f.neg(c) for c in coeffs] + [1])


def is_derogatory(a: Matrix) -> bool:
    return min_poly(a).degree < a.n


class IdentityCertificate(NamedTuple):
    """``identity == sum(coefficients[k-1] * A**k for k in 1..m)``.

    ``bound`` is ``m * word_len``: the identity lies in the span of words of
    that length or less whenever A is a combination of words of length
    ``word_len`` or less.
    """

    bound: int
    coefficients: Tuple[Raw, ...]


def identity_length_bound(a: Matrix, word_len: int) -> IdentityCertificate:
    """Express the identity through positive powers of an invertible ``a``.

    With minimal polynomial x^m + q_{m-1} x^{m-1} + ... + q_0 and q_0 != 0,
    I = -(A^m + q_{m-1} A^{m-1} + ... + q_1 A) / q_0.
    """
    if word_len < 1:
        raise ValueError("word length must be positive")
    if not is_invertible(a):
        raise ValueError("identity_length_bound needs an invertible matrix")
    f = a.field
    q = min_poly(a).coeffs
    scale = f.neg(f.inv(q[0]))
    coeffs = tuple(f.mul(scale, c) for c in q[1:])
    check = Matrix.zero(a.n, f)
    power = a
    for c in coeffs:
        check = check + power.scale(c)
        power = power @ a
    assert check == Matrix.identity(a.n, f), "identity expression failed exact check"
    return IdentityCertificate(len(coeffs) * word_len, coeffs)
