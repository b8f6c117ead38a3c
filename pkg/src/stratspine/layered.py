"""Divided and layered complexes, stratified collapses and layered spines.

Every layered complex handled here is *associated* to a vertex partition:
``S`` is the full subcomplex on the singular vertices ``S0`` and ``C`` the
full subcomplex on the rest. Membership is therefore decided per simplex by
looking at its vertices, and stays correct through any sequence of layered
collapses (an S-collapse may delete a singular vertex, which simply drops out
of every later query).
"""

from __future__ import annotations

import json
import random
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Literal

from .complex import (
    Simplex,
    SimplicialComplex,
    _collapse_pass,
    collapse_exhaustively,
    facets,
    faces,
    order_key,
    simplex,
)
from .errors import (
    EmptyComplexError,
    IllegalCollapseError,
    InvariantViolation,
    NonAssociatedError,
    StratSpineError,
)

Kind = Literal["S", "C", "intermediate", "ordinary"]
KINDS: tuple[Kind, ...] = ("S", "C", "intermediate")
LOG_KINDS: tuple[Kind, ...] = KINDS + ("ordinary",)  # "ordinary" = unrestricted collapse


@dataclass(frozen=True)
class DividedComplex:
    K: SimplicialComplex
    S0: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "S0", frozenset(self.S0))
        unknown = self.S0 - self.K.vertices
        if unknown:
            raise StratSpineError(f"singular vertices {sorted(unknown)} are not vertices of K")


@dataclass(frozen=True)
class LogEntry:
    kind: Kind
    free: Simplex
    principal: Simplex

    def to_json(self) -> dict:
        return {"kind": self.kind, "free": list(self.free), "principal": list(self.principal)}

    @classmethod
    def from_json(cls, doc: dict) -> LogEntry:
        if doc.get("kind") not in LOG_KINDS:
            raise StratSpineError(f"unknown collapse kind {doc.get('kind')!r}")
        return cls(doc["kind"], simplex(doc["free"]), simplex(doc["principal"]))


@dataclass
class CollapseLog:
    entries: list[LogEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def counts(self) -> dict[str, int]:
        c = Counter(e.kind for e in self.entries)
        out = {k: c.get(k, 0) for k in KINDS}
        if c.get("ordinary"):
            out["ordinary"] = c["ordinary"]
        return out

    def extend(self, kind: Kind, pairs: Iterable[tuple[Simplex, Simplex]]) -> None:
        self.entries.extend(LogEntry(kind, f, p) for f, p in pairs)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_json()) + "\n" for e in self.entries)

    @classmethod
    def from_jsonl(cls, text: str) -> CollapseLog:
        out = []
        for n, line in enumerate(text.splitlines(), 1):
            if line.strip():
                try:
                    out.append(LogEntry.from_json(json.loads(line)))
                except (ValueError, KeyError, TypeError) as exc:
                    raise StratSpineError(f"collapse log line {n}: {exc}") from exc
        return cls(out)


class LayeredComplex:
    """Layered complex ``(K, C, S)`` associated to the partition ``S0``.

    ``im`` is the cached set of intermediate simplices; it is only filled in
    once the intermediate phase of :func:`layered_spine` starts.
    """

    __slots__ = ("K", "S0", "im")

    def __init__(self, K: SimplicialComplex, S0: Iterable[int], im: Iterable[Simplex] | None = None):
        self.K = K
        self.S0 = frozenset(S0)
        self.im = None if im is None else set(im)

    @classmethod
    def from_subcomplexes(
        cls, K: SimplicialComplex, C: SimplicialComplex, S: SimplicialComplex
    ) -> LayeredComplex:
        """Accept ``(K, C, S)`` only if it is associated to a vertex partition."""
        S0 = S.vertices
        if S != K.spanned_by(S0) or C != K.spanned_by(K.vertices - S0):
            raise NonAssociatedError("(K, C, S) is not associated to a divided complex")
        return cls(K, S0)

    def copy(self) -> LayeredComplex:
        return LayeredComplex(self.K.copy(), self.S0, self.im)

    def kind_of(self, s: Simplex) -> Kind:
        inside = sum(v in self.S0 for v in s)
        if inside == len(s):
            return "S"
        if inside == 0:
            return "C"
        return "intermediate"

    @property
    def S(self) -> SimplicialComplex:
        return self.K.subcomplex(lambda s: self.S0.issuperset(s))

    @property
    def C(self) -> SimplicialComplex:
        return self.K.subcomplex(self.S0.isdisjoint)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LayeredComplex):
            return NotImplemented
        return self.K == other.K and self.S0 & self.K.vertices == other.S0 & other.K.vertices

    def __repr__(self) -> str:
        return f"LayeredComplex(counts={self.K.counts()}, S0={sorted(self.S0)})"


def associate(D: DividedComplex) -> LayeredComplex:
    return LayeredComplex(D.K, D.S0)


def intermediate_simplices(L: LayeredComplex) -> set[Simplex]:
    S0 = L.S0
    return {s for s in L.K._cofacets if not S0.isdisjoint(s) and not S0.issuperset(s)}


def is_admissible(S, s: Simplex, p: Simplex) -> bool:
    """True when each simplex of ``S`` that is a proper face of ``p`` is also
    a proper face of ``s``. ``S`` is anything supporting ``in``."""
    ss = set(s)
    for t in faces(p):
        if t in S and not (set(t) < ss):
            return False
    return True


def _vertexwise_admissible(S0: frozenset[int]):
    # For associated complexes the S-faces of p are the nonempty subsets of
    # p & S0, so the test reduces to: p & S0 is a proper subset of s.
    def accept(s: Simplex, p: Simplex) -> bool:
        sing = S0.intersection(p)
        return sing.issubset(s) and len(sing) < len(s)

    return accept


def _eligible(L: LayeredComplex, kind: Kind):
    S0 = L.S0
    if kind == "S":
        return S0.issuperset
    if kind == "C":
        return S0.isdisjoint
    return lambda p: not S0.isdisjoint(p) and not S0.issuperset(p)


def _candidates(L: LayeredComplex, kind: Kind) -> list[Simplex]:
    cof = L.K._cofacets
    pool = L.im if (kind == "intermediate" and L.im is not None) else cof.keys()
    ok = _eligible(L, kind)
    return [p for p in pool if len(p) > 1 and not cof[p] and ok(p)]


def _accept(L: LayeredComplex, kind: Kind):
    return _vertexwise_admissible(L.S0) if kind == "intermediate" else None


def find_collapse(L: LayeredComplex, kind: Kind) -> tuple[Simplex, Simplex] | None:
    """First (free, principal) pair of the given kind in scan order."""
    cof = L.K._cofacets
    accept = _accept(L, kind)
    for p in sorted(_candidates(L, kind), key=order_key):
        for f in facets(p):
            if len(cof[f]) == 1 and (accept is None or accept(f, p)):
                return f, p
    return None


def _step(L: LayeredComplex, kind: Kind) -> tuple[LayeredComplex, LogEntry] | None:
    pair = find_collapse(L, kind)
    if pair is None:
        return None
    out = L.copy()
    out.K._remove_pair(*pair)
    if out.im is not None and kind == "intermediate":
        out.im.difference_update(pair)
    return out, LogEntry(kind, *pair)


def s_collapse_step(L: LayeredComplex):
    return _step(L, "S")


def c_collapse_step(L: LayeredComplex):
    return _step(L, "C")


def intermediate_collapse_step(L: LayeredComplex):
    if L.im is None:
        L = LayeredComplex(L.K, L.S0, intermediate_simplices(L))
    return _step(L, "intermediate")


def _exhaust(L: LayeredComplex, kind: Kind, log: CollapseLog, rng: random.Random | None) -> int:
    """Run collapse passes of one kind in place until none applies."""
    accept = _accept(L, kind)
    total = 0
    while True:
        pairs = _collapse_pass(L.K, _candidates(L, kind), accept, rng)
        if not pairs:
            return total
        if kind == "intermediate" and L.im is not None:
            for f, p in pairs:
                L.im.discard(f)
                L.im.discard(p)
        log.extend(kind, pairs)
        total += len(pairs)


def ordinary_spine_logged(
    K: SimplicialComplex, seed: int | None = None
) -> tuple[SimplicialComplex, CollapseLog]:
    """Unrestricted spine of ``K`` together with its collapse log."""
    if not len(K):
        raise EmptyComplexError("cannot take the spine of an empty complex")
    out = K.copy()
    log = CollapseLog()
    log.extend("ordinary", collapse_exhaustively(out, rng=None if seed is None else random.Random(seed)))
    return out, log


def layered_spine(
    L: LayeredComplex,
    seed: int | None = None,
    check_invariants: bool = True,
) -> tuple[LayeredComplex, CollapseLog]:
    """Compute a layered spine by exhausting S-, C-, intermediate and again
    C-collapses, in that order.

    ``seed`` switches from the deterministic scan order to a seeded random
    order. With ``check_invariants`` the run asserts that intermediate
    collapses never re-enable S-collapses and that the final C phase leaves
    no intermediate collapse behind.
    """
    rng = None if seed is None else random.Random(seed)
    work = LayeredComplex(L.K.copy(), L.S0)
    log = CollapseLog()

    _exhaust(work, "S", log, rng)
    _exhaust(work, "C", log, rng)
    work.im = intermediate_simplices(work)
    _exhaust(work, "intermediate", log, rng)
    if check_invariants and find_collapse(work, "S") is not None:
        raise InvariantViolation("an intermediate collapse enabled an S-collapse")
    _exhaust(work, "C", log, rng)
    if check_invariants:
        if find_collapse(work, "intermediate") is not None:
            raise InvariantViolation("a C-collapse enabled an intermediate collapse")
        if not verify_no_layered_collapse(work):
            raise InvariantViolation("result still admits a layered collapse")
    return work, log


def verify_no_layered_collapse(L: LayeredComplex) -> bool:
    probe = LayeredComplex(L.K, L.S0)
    return all(find_collapse(probe, kind) is None for kind in KINDS)


def check_step(L: LayeredComplex, entry: LogEntry) -> None:
    """Raise IllegalCollapseError unless ``entry`` is a legal elementary
    layered collapse of ``L``."""
    f, p = entry.free, entry.principal
    if f not in L.K or L.K.free_face_principal(f) != p:
        raise IllegalCollapseError(f"{f} is not a free face of {p}")
    if entry.kind == "ordinary":
        return
    if L.kind_of(p) != entry.kind:
        raise IllegalCollapseError(f"{p} is not a {entry.kind} simplex")
    if entry.kind == "intermediate" and not _vertexwise_admissible(L.S0)(f, p):
        raise IllegalCollapseError(f"{f} does not contain every singular face of {p}")


def replay(L: LayeredComplex, log: CollapseLog | Iterable[LogEntry]) -> LayeredComplex:
    """Apply a collapse log to ``L``, validating every step."""
    out = LayeredComplex(L.K.copy(), L.S0)
    for e in log:
        check_step(out, e)
        out.K._remove_pair(e.free, e.principal)
    return out


def expand(L: LayeredComplex, log: CollapseLog | Iterable[LogEntry]) -> LayeredComplex:
    """Undo a collapse log by elementary expansions in reverse order."""
    out = LayeredComplex(L.K.copy(), L.S0)
    for e in reversed(list(log)):
        f, p = e.free, e.principal
        if f in out.K or p in out.K:
            raise IllegalCollapseError(f"cannot expand {p}: already present")
        missing = [g for g in facets(p) if g != f and g not in out.K]
        missing += [g for g in facets(f) if g not in out.K]
        if missing:
            raise IllegalCollapseError(f"cannot expand {p}: faces {missing} are absent")
        out.K._add_closed(p)
    return out
