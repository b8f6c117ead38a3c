"""JSON documents for complexes, divided complexes and collapse logs.

A complex document lists maximal simplices only::

    {"simplices": [[0, 1, 2], [2, 3]], "singular_vertices": [0]}

``singular_vertices`` turns it into a divided complex. Optional keys:
``coordinates`` (row ``i`` = position of vertex ``i``), ``singular_simplices``
(an explicit, possibly non-full, singular subcomplex) and ``meta``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .complex import SimplicialComplex, order_key
from .errors import ParseError, StratSpineError
from .layered import DividedComplex, LayeredComplex


@dataclass
class ComplexDocument:
    K: SimplicialComplex
    singular_vertices: list[int] | None = None
    singular_simplices: list[tuple[int, ...]] | None = None
    coordinates: list[list[float]] | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def divided(self) -> DividedComplex:
        return DividedComplex(self.K, frozenset(self.singular_vertices or ()))

    @property
    def layered(self) -> LayeredComplex:
        return LayeredComplex(self.K, self.singular_vertices or ())

    def singular_subcomplex(self) -> SimplicialComplex:
        if self.singular_simplices is not None:
            return SimplicialComplex(self.singular_simplices)
        return self.K.spanned_by(self.singular_vertices or ())


def maximal_sorted(K: SimplicialComplex) -> list[list[int]]:
    """Maximal simplices by descending dimension, then lexicographically."""
    return [list(s) for s in sorted(K.maximal(), key=lambda s: (-len(s), s))]


def to_doc(
    K: SimplicialComplex,
    singular_vertices=None,
    coordinates=None,
    meta: dict | None = None,
    singular_simplices=None,
) -> dict[str, Any]:
    doc: dict[str, Any] = {"simplices": maximal_sorted(K)}
    if singular_vertices is not None:
        doc["singular_vertices"] = sorted(int(v) for v in singular_vertices)
    if singular_simplices is not None:
        doc["singular_simplices"] = [list(s) for s in sorted(singular_simplices, key=order_key)]
    if coordinates is not None:
        doc["coordinates"] = [[float(x) for x in row] for row in coordinates]
    if meta:
        doc["meta"] = meta
    return doc


def from_doc(doc: Any, source: str = "<json>") -> ComplexDocument:
    if not isinstance(doc, dict) or "simplices" not in doc:
        raise ParseError('expected an object with a "simplices" list', source=source)
    try:
        K = SimplicialComplex(doc["simplices"])
    except (StratSpineError, TypeError) as exc:
        raise ParseError(f"bad simplex list: {exc}", source=source) from exc
    if not len(K):
        raise ParseError("complex is empty", source=source)
    sv = doc.get("singular_vertices")
    ss = doc.get("singular_simplices")
    if sv is not None:
        sv = [int(v) for v in sv]
        unknown = set(sv) - K.vertices
        if unknown:
            raise ParseError(f"singular vertices {sorted(unknown)} are not in the complex", source=source)
    if ss is not None:
        ss = [tuple(sorted(int(v) for v in s)) for s in ss]
    return ComplexDocument(K, sv, ss, doc.get("coordinates"), doc.get("meta", {}))


def read_complex(path: str | Path) -> ComplexDocument:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source=str(path), line=exc.lineno) from None
    return from_doc(doc, str(path))


def dumps(doc: Any) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def write_json(doc: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
