"""Abstract simplicial complexes, elementary collapses and ordinary spines.

A simplex is a strictly increasing tuple of non-negative vertex ids. A
:class:`SimplicialComplex` stores a face-closed set of such tuples together
with two incidence indexes: vertex -> simplices containing it, and
simplex -> codimension-one cofaces. The latter is what the collapse loops
query; freeness of ``s`` reduces to "exactly one cofacet, and that cofacet
has none".
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Iterator
from itertools import combinations

from .errors import (
    EmptyComplexError,
    IllegalCollapseError,
    MalformedSimplexError,
    MissingSimplexError,
    NotASubcomplexError,
)

Simplex = tuple[int, ...]

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "simplex",
    "facets",
    "faces",
    "order_key",
    "from_maximal",
    "proper_cofaces",
    "is_principal",
    "free_face_principal",
    "elementary_collapse",
    "ordinary_spine",
    "is_pseudomanifold",
    "pseudomanifold_violation",
    "is_full_subcomplex",
    "fullness_violation",
]


def simplex(vertices: Iterable[int]) -> Simplex:
    """Return the canonical (sorted) form of ``vertices``.

    Raises MalformedSimplexError for empty input, repeated vertices or ids
    that are not non-negative integers.
    """
    vs = list(vertices)
    if not vs:
        raise MalformedSimplexError("empty simplex")
    for v in vs:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise MalformedSimplexError(f"vertex id {v!r} is not a non-negative integer")
    out = tuple(sorted(vs))
    if len(set(out)) != len(out):
        raise MalformedSimplexError(f"repeated vertex in {vs}")
    return out


def facets(s: Simplex) -> tuple[Simplex, ...]:
    """Codimension-one faces, ordered by the position of the omitted vertex."""
    if len(s) < 2:
        return ()
    return tuple(s[:i] + s[i + 1 :] for i in range(len(s)))


def faces(s: Simplex, proper: bool = True) -> Iterator[Simplex]:
    top = len(s) - 1 if proper else len(s)
    for k in range(1, top + 1):
        yield from combinations(s, k)


def order_key(s: Simplex) -> tuple[int, Simplex]:
    """Deterministic scan order: ascending dimension, then lexicographic."""
    return (len(s), s)


class SimplicialComplex:
    """Finite abstract simplicial complex.

    Instances behave as values: the public API never mutates them. Methods
    whose name starts with an underscore mutate in place and are reserved for
    the collapse engines, which always work on a private :meth:`copy`.
    """

    __slots__ = ("_cofacets", "_star")

    def __init__(self, simplices: Iterable[Iterable[int]] = ()):
        self._cofacets: dict[Simplex, set[Simplex]] = {}
        self._star: dict[int, set[Simplex]] = {}
        for s in simplices:
            self._add_closed(simplex(s))

    # construction -----------------------------------------------------
    def _add_closed(self, s: Simplex) -> None:
        if s in self._cofacets:
            return
        stack = [s]
        while stack:
            t = stack.pop()
            if t in self._cofacets:
                continue
            self._cofacets[t] = set()
            for v in t:
                self._star.setdefault(v, set()).add(t)
            for f in facets(t):
                if f not in self._cofacets:
                    stack.append(f)
        # second pass wires cofacets for everything reachable from s
        for t in faces(s, proper=False):
            for f in facets(t):
                self._cofacets[f].add(t)

    def copy(self) -> SimplicialComplex:
        new = SimplicialComplex.__new__(SimplicialComplex)
        new._cofacets = {s: set(c) for s, c in self._cofacets.items()}
        new._star = {v: set(c) for v, c in self._star.items()}
        return new

    def _remove_pair(self, s: Simplex, p: Simplex) -> None:
        """Delete a free face and its principal coface. No checks."""
        for t in (p, s):
            for f in facets(t):
                self._cofacets[f].discard(t)
            del self._cofacets[t]
            for v in t:
                self._star[v].discard(t)
                if not self._star[v]:
                    del self._star[v]

    # queries ----------------------------------------------------------
    def __contains__(self, s: object) -> bool:
        return s in self._cofacets

    def __len__(self) -> int:
        return len(self._cofacets)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self._cofacets, key=order_key))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._cofacets.keys() == other._cofacets.keys()

    def __hash__(self) -> int:
        return hash(frozenset(self._cofacets))

    def __repr__(self) -> str:
        return f"SimplicialComplex(counts={self.counts()})"

    @property
    def dim(self) -> int:
        return max((len(s) for s in self._cofacets), default=0) - 1

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._star)

    def simplex_set(self) -> frozenset[Simplex]:
        return frozenset(self._cofacets)

    def simplices(self, dim: int | None = None) -> list[Simplex]:
        if dim is None:
            return list(self)
        return sorted(s for s in self._cofacets if len(s) == dim + 1)

    def counts(self) -> list[int]:
        """Number of simplices per dimension, index 0 = vertices."""
        out = [0] * (self.dim + 1)
        for s in self._cofacets:
            out[len(s) - 1] += 1
        return out

    def _require(self, s: Simplex) -> None:
        if s not in self._cofacets:
            raise MissingSimplexError(f"{s} is not a simplex of the complex")

    def cofacets(self, s: Simplex) -> frozenset[Simplex]:
        self._require(s)
        return frozenset(self._cofacets[s])

    def proper_cofaces(self, s: Simplex) -> list[Simplex]:
        self._require(s)
        stars = sorted((self._star[v] for v in s), key=len)
        found = set(stars[0]).intersection(*stars[1:])
        found.discard(s)
        return sorted(found, key=order_key)

    def is_principal(self, s: Simplex) -> bool:
        self._require(s)
        return not self._cofacets[s]

    def free_face_principal(self, s: Simplex) -> Simplex | None:
        """Return ``Princ(s)`` if ``s`` is free, otherwise ``None``."""
        self._require(s)
        return self._principal_if_free(s)

    def _principal_if_free(self, s: Simplex) -> Simplex | None:
        up = self._cofacets[s]
        if len(up) != 1:
            return None
        (p,) = up
        if self._cofacets[p]:
            return None
        return p

    def principal_simplices(self) -> list[Simplex]:
        return sorted((s for s, up in self._cofacets.items() if not up), key=order_key)

    maximal = principal_simplices

    def subcomplex(self, keep: Callable[[Simplex], bool]) -> SimplicialComplex:
        """Simplices satisfying ``keep``; the predicate must be face-closed."""
        return SimplicialComplex(s for s in self._cofacets if keep(s))

    def spanned_by(self, vertices: Iterable[int]) -> SimplicialComplex:
        """Full subcomplex on ``vertices``."""
        vs = frozenset(vertices)
        return self.subcomplex(lambda s: vs.issuperset(s))


# module-level operations -----------------------------------------------------


def from_maximal(simplices: Iterable[Iterable[int]]) -> SimplicialComplex:
    return SimplicialComplex(simplices)


def proper_cofaces(K: SimplicialComplex, s: Simplex) -> list[Simplex]:
    return K.proper_cofaces(s)


def is_principal(K: SimplicialComplex, s: Simplex) -> bool:
    return K.is_principal(s)


def free_face_principal(K: SimplicialComplex, s: Simplex) -> Simplex | None:
    p = K.free_face_principal(s)
    if p is not None:
        assert len(p) == len(s) + 1, "free face must have codimension one"
    return p


def elementary_collapse(K: SimplicialComplex, s: Simplex) -> SimplicialComplex:
    p = K.free_face_principal(s)
    if p is None:
        raise IllegalCollapseError(f"{s} is not free")
    out = K.copy()
    out._remove_pair(s, p)
    return out


Accept = Callable[[Simplex, Simplex], bool]


def _collapse_pass(
    K: SimplicialComplex,
    candidates: Iterable[Simplex],
    accept: Accept | None = None,
    rng: random.Random | None = None,
) -> list[tuple[Simplex, Simplex]]:
    """One scan over candidate principal simplices, collapsing in place.

    Each candidate ``p`` that is still principal is tried against its facets
    in omitted-vertex order; the first free facet passing ``accept`` is
    collapsed away with ``p``. Returns the (free, principal) pairs removed.
    """
    order = sorted(candidates, key=order_key)
    if rng is not None:
        rng.shuffle(order)
    cof = K._cofacets
    done = []
    for p in order:
        if cof.get(p, True):  # gone, or no longer principal
            continue
        fs = list(facets(p))
        if rng is not None:
            rng.shuffle(fs)
        for f in fs:
            if len(cof[f]) == 1 and (accept is None or accept(f, p)):
                K._remove_pair(f, p)
                done.append((f, p))
                break
    return done


def collapse_exhaustively(
    K: SimplicialComplex,
    eligible: Callable[[Simplex], bool] = lambda p: True,
    accept: Accept | None = None,
    rng: random.Random | None = None,
) -> list[tuple[Simplex, Simplex]]:
    """Repeat :func:`_collapse_pass` over eligible principals until stuck."""
    removed: list[tuple[Simplex, Simplex]] = []
    while True:
        cands = [p for p, up in K._cofacets.items() if not up and len(p) > 1 and eligible(p)]
        batch = _collapse_pass(K, cands, accept, rng)
        if not batch:
            return removed
        removed.extend(batch)


def ordinary_spine(K: SimplicialComplex, seed: int | None = None) -> SimplicialComplex:
    if not len(K):
        raise EmptyComplexError("cannot take the spine of an empty complex")
    out = K.copy()
    collapse_exhaustively(out, rng=None if seed is None else random.Random(seed))
    return out


def pseudomanifold_violation(K: SimplicialComplex, n: int) -> Simplex | None:
    """First simplex witnessing that ``K`` is not an n-pseudomanifold."""
    if not len(K):
        raise EmptyComplexError("empty complex")
    for s in K:
        up = K._cofacets[s]
        if not up and len(s) != n + 1:
            return s  # principal but not top-dimensional
        if len(s) == n and len(up) != 2:
            return s
    return None


def is_pseudomanifold(K: SimplicialComplex, n: int) -> bool:
    return pseudomanifold_violation(K, n) is None


def fullness_violation(K: SimplicialComplex, L: SimplicialComplex) -> Simplex | None:
    """First simplex of ``K`` spanned by vertices of ``L`` but missing from it."""
    missing = next((s for s in L if s not in K), None)
    if missing is not None:
        raise NotASubcomplexError(f"{missing} belongs to L but not to K")
    lv = L.vertices
    for s in K:
        if lv.issuperset(s) and s not in L:
            return s
    return None


def is_full_subcomplex(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    return fullness_violation(K, L) is None
