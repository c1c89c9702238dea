"""Lengths of generating sets of matrix algebras over exact fields."""

__version__ = "0.1.0"

from .errors import (
    DimensionError,
    FieldMismatchError,
    MatLengthError,
    NotGeneratingError,
    ParseError,
    ResourceLimitError,
)
from .fields import GF, QQ, Field, Scalar, parse_field, parse_scalar
from .matrix import Matrix, Polynomial, char_poly, identity_length_bound, is_derogatory, is_invertible, min_poly
from .echelon import SpanBasis
from .span import (
    LengthProfile,
    brute_force_profile,
    evaluate_word,
    exact_length_span,
    length_profile,
    lengths,
    word_basis,
)
from .constructions import (
    elem,
    jordan,
    jordan_power_pair,
    k_diagonal_support,
    k_sequence,
    nilpotent_pair,
    w_space,
    w_space_basis,
)
