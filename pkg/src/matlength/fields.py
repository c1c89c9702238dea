"""Exact scalar fields: the rationals and prime fields GF(p).

Matrices and span bases store *raw* field elements for speed: over Q a raw
element is an ``int`` or, when not integral, a ``gmpy2.mpq`` (``Fraction``
if gmpy2 is missing); over GF(p) it is an ``int`` in ``[0, p)``.  :class:`Field` carries the arithmetic for raw elements and
:class:`Scalar` is the checked value type for public use.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import FieldMismatchError, ParseError

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction

_RationalType = type(_rational(1, 2))
_RATIONAL_TYPES = (int, Fraction, _RationalType)
Raw = Union[int, Fraction, _RationalType]

_SCALAR_RE = re.compile(r"([+-]?)(\d+)(?:/(\d+))?")
_FIELD_RE = re.compile(r"GF\((\d+)\)")
_P_LIMIT = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field GF(p)."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not 2 <= self.p < _P_LIMIT:
                raise ValueError(f"prime must satisfy 2 <= p < 2**31, got {self.p!r}")
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p is None else "PrimeField"

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})"

    def __repr__(self):
        return f"Field({self})"

    # raw element arithmetic

    def coerce(self, x) -> Raw:
        """Map an int, Fraction, string or Scalar to a canonical raw element."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatchError(f"scalar over {x.field} used over {self}")
            x = x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, _RATIONAL_TYPES):
            raise TypeError(f"cannot interpret {x!r} as an element of {self}")
        if isinstance(x, int):
            return x if self.p is None else x % self.p
        num, den = int(x.numerator), int(x.denominator)
        if self.p is None:
            return num if den == 1 else _rational(num, den)
        else:
            den %= self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes in {self}")
            return num * pow(den, -1, self.p) % self.p

    def add(self, x: Raw, y: Raw) -> Raw:
        return x + y if self.p is None else (x + y) % self.p

    def sub(self, x: Raw, y: Raw) -> Raw:
        return x - y if self.p is None else (x - y) % self.p

    def mul(self, x: Raw, y: Raw) -> Raw:
        return x * y if self.p is None else x * y % self.p

    def neg(self, x: Raw) -> Raw:
        return -x if self.p is None else -x % self.p

    def inv(self, x: Raw) -> Raw:
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.p is None:
            return _rational(1) / x
        return pow(x, -1, self.p)

    def div(self, x: Raw, y: Raw) -> Raw:
        return self.mul(x, self.inv(y))

    def parse(self, text: str) -> Raw:
        if not isinstance(text, str):
            raise ParseError(f"expected a scalar string, got {text!r}")
        m = _SCALAR_RE.fullmatch(text.strip())
        if m is None:
            raise ParseError(f"malformed scalar {text!r}")
        sign, num, den = m.groups()
        value = int(num) * (-1 if sign == "-" else 1)
        if den is None:
            return self.coerce(value)
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        try:
            return self.coerce(Fraction(value, int(den)))
        except ZeroDivisionError as exc:
            raise ParseError(str(exc)) from None

    def render(self, x: Raw) -> str:
        return str(x)


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse ``"Q"`` or ``"GF(p)"``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a field string, got {text!r}")
    t = text.strip()
    if t == "Q":
        return QQ
    m = _FIELD_RE.fullmatch(t)
    if m is None:
        raise ParseError(f"malformed field {text!r}; expected 'Q' or 'GF(p)'")
    try:
        return Field(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


class Scalar:
    """An immutable element of a :class:`Field`.

    Over Q the value is always a normalized ``Fraction``; over GF(p) it is
    the residue in ``[0, p)``.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        v = field.coerce(value)
        if field.p is None:
            v = Fraction(int(v.numerator), int(v.denominator))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", v)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def numerator(self) -> int:
        return self.value.numerator if self.field.p is None else self.value

    @property
    def denominator(self) -> int:
        return self.value.denominator if self.field.p is None else 1

    def _other(self, other) -> Raw:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, _RATIONAL_TYPES) and not isinstance(other, bool):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.div(self.raw, o))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.raw))

    @property
    def raw(self) -> Raw:
        return self.field.coerce(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, _RATIONAL_TYPES) and not isinstance(other, bool):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self.value})"


def scalar_add(x: Scalar, y: Scalar) -> Scalar:
    return x + y


def scalar_mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def scalar_neg(x: Scalar) -> Scalar:
    return -x


def scalar_inv(x: Scalar) -> Scalar:
    return x.inverse()


def parse_scalar(text: str, field: Field) -> Scalar:
    if not isinstance(field, Field):
        raise FieldMismatchError(f"not a field: {field!r}")
    return Scalar(field, field.parse(text))
