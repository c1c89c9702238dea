"""Layered word spans L_k(S) and the lengths of a generating set.

A word is a tuple of generator indices; its value is the left-to-right
product of those generators, and the empty word is the identity.  The
length with identity counts the identity as a word of length 0; the length
without identity starts from the zero space, so an identity matrix placed
in S costs one letter like any other generator.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import reduce
from itertools import product
from operator import matmul
from typing import List, Optional, Sequence, Tuple

from .echelon import SpanBasis, Word
from .errors import DimensionError, FieldMismatchError, NotGeneratingError, ResourceLimitError
from .fields import Field
from .matrix import Matrix

BUDGET_ENV = "MATLENGTH_ORACLE_BUDGET"
DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class LengthProfile:
    """Dimensions d_0, d_1, ... of the word-span filtration.

    ``dims`` stops at the stabilization point, so ``length == len(dims) - 1``
    and the entries are strictly increasing.  The brute-force oracle is the
    exception: it reports every layer up to its ``max_len``, repeats included,
    and its ``length`` is None when stabilization was not observed.
    """

    n: int
    include_identity: bool
    dims: Tuple[int, ...]
    length: Optional[int]
    final_dim: int
    generates: bool
    witnesses: Tuple[Word, ...] = ()
    witness_layers: Tuple[int, ...] = ()
    notes: Tuple[str, ...] = dc_field(default=())

    def dims_through(self, k: int) -> Tuple[int, ...]:
        """d_0..d_k, padding with the stable value past stabilization."""
        dims = list(self.dims[: k + 1])
        while len(dims) < k + 1:
            if self.length is None:
                raise ValueError(f"profile does not reach layer {k}")
            dims.append(self.final_dim)
        return tuple(dims)


def _check_set(gens: Sequence[Matrix], n: Optional[int]) -> Tuple[int, Field]:
    if not gens:
        if n is None:
            raise ValueError("empty generating set needs an explicit dimension")
        return n, None
    first = gens[0]
    for g in gens:
        if not isinstance(g, Matrix):
            raise TypeError(f"generators must be Matrix, got {type(g).__name__}")
        if g.field != first.field:
            raise FieldMismatchError(f"generators over {first.field} and {g.field}")
        if g.n != first.n:
            raise DimensionError(f"generators of size {first.n} and {g.n}")
    if n is not None and n != first.n:
        raise DimensionError(f"declared n={n} but generators are {first.n}x{first.n}")
    return first.n, first.field


def evaluate_word(gens: Sequence[Matrix], word: Word, n: Optional[int] = None) -> Matrix:
    """Left-to-right product of the indexed generators; () gives the identity."""
    if not word:
        dim, field = _check_set(gens, n)
        return Matrix.identity(dim, field)
    for j in word:
        if not 0 <= j < len(gens):
            raise IndexError(f"generator index {j} out of range for {len(gens)} generators")
    return reduce(matmul, (gens[j] for j in word))


def _duplicate_notes(gens):
    seen, notes = {}, []
    for j, g in enumerate(gens):
        if g in seen:
            notes.append(f"generator {j} duplicates generator {seen[g]}")
        else:
            seen[g] = j
    return tuple(notes)


def length_profile(gens: Sequence[Matrix], include_identity: bool = True, n: Optional[int] = None) -> LengthProfile:
    """Grow L_k = L_{k-1} + S * L_{k-1} until a layer adds nothing.

    Only the rows added in the previous layer are multiplied by the
    generators: products of older rows already lie in the span.  Candidates
    are tried generator-major, then in parent insertion order, which fixes
    the witness words.
    """
    gens = list(gens)
    dim, fld = _check_set(gens, n)
    if fld is None:
        # empty set; over any field the only word is the identity
        if include_identity:
            return LengthProfile(dim, True, (1,), 0, 1, dim == 1, ((),), (0,))
        return LengthProfile(dim, False, (0,), 0, 0, False)
    ambient = dim * dim
    basis = SpanBasis(fld, ambient)
    frontier: List[Tuple[Word, Matrix]] = []
    if include_identity:
        ident = Matrix.identity(dim, fld)
        basis.insert(ident.vec(), 0, ())
        frontier.append(((), ident))
    dims = [len(basis)]
    candidates = [((j,), g) for j, g in enumerate(gens)]
    layer = 1
    while True:
        added = []
        for word, m in candidates:
            if basis.insert(m.vec(), layer, word):
                added.append((word, m))
        if not added:
            break
        dims.append(len(basis))
        if layer > ambient + 1:
            raise AssertionError(f"filtration failed to stabilize within {ambient + 1} layers")
        frontier = added
        layer += 1
        candidates = (((j,) + w, g @ m) for j, g in enumerate(gens) for w, m in frontier)
    final = len(basis)
    return LengthProfile(
        n=dim,
        include_identity=include_identity,
        dims=tuple(dims),
        length=len(dims) - 1,
        final_dim=final,
        generates=final == ambient,
        witnesses=tuple(basis.words),
        witness_layers=tuple(basis.layers),
        notes=_duplicate_notes(gens),
    )


def lengths(gens: Sequence[Matrix]) -> Tuple[int, int]:
    """(l(S), l0(S)) for a generating set."""
    with_id = length_profile(gens, True)
    without = length_profile(gens, False)
    return with_id.length, without.length


def exact_length_span(gens: Sequence[Matrix], m: int, n: Optional[int] = None) -> SpanBasis:
    """Span of the values of all words of length exactly ``m``.

    E_0 = span{I}, E_j = span{g * v : g in S, v spanning E_{j-1}}.
    """
    if m < 0:
        raise ValueError("word length must be >= 0")
    gens = list(gens)
    dim, fld = _check_set(gens, n)
    if fld is None:
        raise ValueError("exact_length_span needs at least one generator")
    ident = Matrix.identity(dim, fld)
    basis = SpanBasis(fld, dim * dim)
    basis.insert(ident.vec(), 0, ())
    current = [((), ident)]
    for step in range(1, m + 1):
        basis = SpanBasis(fld, dim * dim)
        nxt = []
        for j, g in enumerate(gens):
            for w, mat in current:
                prod_ = g @ mat
                if basis.insert(prod_.vec(), step, (j,) + w):
                    nxt.append(((j,) + w, prod_))
        current = nxt
        if not current:
            break
    return basis


def oracle_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


def word_count(num_gens: int, max_len: int) -> int:
    return sum(num_gens**k for k in range(1, max_len + 1))


def brute_force_profile(
    gens: Sequence[Matrix],
    include_identity: bool = True,
    max_len: int = 3,
    budget: Optional[int] = None,
    n: Optional[int] = None,
) -> LengthProfile:
    """Enumerate every word of length <= max_len and rank their values.

    An oracle for :func:`length_profile`: each word is evaluated from
    scratch and no frontier or reduction shortcut is taken.
    """
    gens = list(gens)
    dim, fld = _check_set(gens, n)
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    budget = oracle_budget() if budget is None else budget
    total = word_count(len(gens), max_len)
    if total > budget:
        raise ResourceLimitError(
            f"{total} word evaluations for {len(gens)} generators up to length {max_len} "
            f"exceeds the budget of {budget}"
        )
    if fld is None:
        d0 = 1 if include_identity else 0
        dims = (d0,) * (max_len + 1)
        return LengthProfile(dim, include_identity, dims, 0 if max_len else None, d0, include_identity and dim == 1)
    basis = SpanBasis(fld, dim * dim)
    if include_identity:
        basis.insert(Matrix.identity(dim, fld).vec(), 0, ())
    dims = [len(basis)]
    for k in range(1, max_len + 1):
        for word in product(range(len(gens)), repeat=k):
            basis.insert(evaluate_word(gens, word).vec(), k, word)
        dims.append(len(basis))
    length = next((k for k in range(max_len) if dims[k] == dims[k + 1]), None)
    return LengthProfile(
        n=dim,
        include_identity=include_identity,
        dims=tuple(dims),
        length=length,
        final_dim=dims[-1],
        generates=dims[-1] == dim * dim,
        witnesses=tuple(basis.words),
        witness_layers=tuple(basis.layers),
    )


def word_basis(gens: Sequence[Matrix]) -> List[Tuple[Word, Matrix]]:
    """n^2 witness words whose values form a basis of the full matrix algebra."""
    gens = list(gens)
    prof = length_profile(gens, True)
    if not prof.generates:
        raise NotGeneratingError(prof.final_dim, prof.n * prof.n)
    return [(w, evaluate_word(gens, w)) for w in prof.witnesses]
