"""JSON input documents: a field, a dimension and matrices of scalar strings."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import List, Optional

from .errors import ParseError
from .fields import Field, parse_field
from .matrix import Matrix


@dataclass
class InputDocument:
    field: Field
    n: int
    matrices: List[Matrix]
    include_identity: bool = True
    max_len: Optional[int] = None

    def to_dict(self) -> dict:
        return dump_document(self.matrices, self.include_identity, self.max_len, self.field, self.n)


def dump_document(gens, include_identity=True, max_len=None, field=None, n=None) -> dict:
    gens = list(gens)
    field = field if field is not None else gens[0].field
    n = n if n is not None else gens[0].n
    doc = {
        "field": str(field),
        "n": n,
        "matrices": [g.render() for g in gens],
        "include_identity": include_identity,
    }
    if max_len is not None:
        doc["max_len"] = max_len
    return doc


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def document_hash(doc: dict) -> str:
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def _entry(field, x, where):
    if isinstance(x, bool) or isinstance(x, float) or not isinstance(x, (str, int)):
        raise ParseError(f"{where}: entries must be strings (or integers), got {x!r}")
    try:
        return field.parse(x) if isinstance(x, str) else field.coerce(x)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_document(obj, field_override: Optional[Field] = None) -> InputDocument:
    if not isinstance(obj, dict):
        raise ParseError("input document must be a JSON object")
    for key in ("field", "n", "matrices"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}")
    field = field_override if field_override is not None else parse_field(obj["field"])
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f"'n' must be a positive integer, got {n!r}")
    mats = obj["matrices"]
    if not isinstance(mats, list):
        raise ParseError("'matrices' must be a list")
    out = []
    for k, rows in enumerate(mats):
        if not isinstance(rows, list) or len(rows) != n:
            raise ParseError(f"matrices[{k}]: expected {n} rows (matrix must be {n}x{n})")
        entries = []
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise ParseError(f"matrices[{k}][{r}]: expected {n} entries (matrix must be square)")
            entries.extend(_entry(field, x, f"matrices[{k}][{r}][{c}]") for c, x in enumerate(row))
        out.append(Matrix._make(n, field, entries))
    include_identity = obj.get("include_identity", True)
    if not isinstance(include_identity, bool):
        raise ParseError("'include_identity' must be a boolean")
    max_len = obj.get("max_len")
    if max_len is not None and (isinstance(max_len, bool) or not isinstance(max_len, int) or max_len < 0):
        raise ParseError("'max_len' must be a non-negative integer")
    return InputDocument(field, n, out, include_identity, max_len)


def loads_document(text: str, field_override: Optional[Field] = None) -> InputDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return parse_document(obj, field_override)
