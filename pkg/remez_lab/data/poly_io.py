"""
JSON interchange for polynomials.

    {"K": 3, "n": 4, "d": 3, "terms": [{"alpha": [2, 1, 0, 0], "re": 1.0, "im": -0.5}, ...]}

Floats are written with their shortest round-trip repr, so a save/load
cycle is bit-exact.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import List, Union

from pydantic import BaseModel, ConfigDict, Field, StrictFloat, StrictInt, ValidationError

from remez_lab.exceptions import InvalidMultiIndexError, PolyFormatError
from remez_lab.polynomials.poly import Poly, total_degree, validate_multi_index

logger = logging.getLogger(__name__)


class TermEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    alpha: List[StrictInt]
    re: StrictFloat = Field(..., allow_inf_nan=False)
    im: StrictFloat = Field(0.0, allow_inf_nan=False)


class PolyDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    K: StrictInt = Field(..., ge=2)
    n: StrictInt = Field(..., ge=0)
    d: StrictInt = Field(..., ge=0)
    terms: List[TermEntry] = Field(default_factory=list)


def _field_path(loc) -> str:
    path = ""
    for part in loc:
        path += f"[{part}]" if isinstance(part, int) else (f".{part}" if path else str(part))
    return path or "<document>"


def to_document(f: Poly) -> PolyDocument:
    """Document form of f; NaN or infinite coefficients are rejected."""
    terms = []
    for i, (alpha, c) in enumerate(f.items()):
        try:
            terms.append(TermEntry(alpha=list(alpha), re=c.real, im=c.imag))
        except ValidationError as e:
            first = e.errors()[0]
            path = _field_path(("terms", i) + tuple(first["loc"]))
            raise PolyFormatError(f"{path}: {first['msg']}") from e
    return PolyDocument(K=f.K, n=f.n, d=f.degree, terms=terms)


def from_document(doc: PolyDocument, source: str = "<string>") -> Poly:
    seen = set()
    terms = []
    for i, term in enumerate(doc.terms):
        try:
            alpha = validate_multi_index(term.alpha, doc.n, doc.K)
        except InvalidMultiIndexError as e:
            raise PolyFormatError(f"{source}: terms[{i}].alpha: {e}") from e
        if total_degree(alpha) > doc.d:
            raise PolyFormatError(f"{source}: terms[{i}].alpha: degree {total_degree(alpha)} exceeds d={doc.d}")
        if alpha in seen:
            raise PolyFormatError(f"{source}: terms[{i}].alpha: duplicate multi-index {alpha}")
        seen.add(alpha)
        terms.append((alpha, complex(term.re, term.im)))
    return Poly(doc.n, doc.K, terms)


def serialize(f: Poly, indent: int = None) -> str:
    return to_document(f).model_dump_json(indent=indent)


def deserialize(text: str, source: str = "<string>") -> Poly:
    """Parse a JSON polynomial; errors name the line/column or the field path."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PolyFormatError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    try:
        doc = PolyDocument.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise PolyFormatError(f"{source}: {_field_path(first['loc'])}: {first['msg']}") from e
    return from_document(doc, source)


def instance_digest(f: Poly) -> str:
    """SHA-256 of the compact serialization."""
    return hashlib.sha256(serialize(f).encode("utf-8")).hexdigest()


def load_poly(path: Union[str, Path]) -> Poly:
    """Load a polynomial from a JSON file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise PolyFormatError(f"Failed to load polynomial from {path}: {e}") from e
    f = deserialize(text, source=str(path))
    logger.info("Loaded %s: n=%d, K=%d, %d terms", path, f.n, f.K, len(f))
    return f


def save_poly(f: Poly, path: Union[str, Path]) -> Path:
    """Save a polynomial as JSON, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize(f, indent=2) + "\n", encoding="utf-8")
    logger.info("Saved %s", path)
    return path
