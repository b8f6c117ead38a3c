"""Simplicial intersection homology with Z/2 coefficients.

Filtrations have two strata: a singular subcomplex ``S`` of caller-assigned
formal codimension ``codim`` and its complement. A simplex is allowable for a
perversity ``p`` when the dimension of its intersection with ``|S|`` is at
most ``dim - codim + p(codim)``; chains are intersection chains when they and
their boundaries are supported on allowable simplices.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field, replace

import numpy as np

from . import gf2
from .complex import Simplex, SimplicialComplex, facets, faces, fullness_violation, order_key
from .errors import NonFullSubcomplexError, OracleRefusedError, StratSpineError

log = logging.getLogger(__name__)

DENSE_BUDGET = 1 << 26  # bits per degree matrix before falling back to sparse columns


class Perversity:
    """Integer-valued function of codimension, zero at codimension zero."""

    def __init__(
        self,
        values: Mapping[int, int] | None = None,
        default: int = 0,
        rule: Callable[[int], int] | None = None,
        name: str | None = None,
    ):
        self.values = dict(values or {})
        if self.values.get(0, 0) != 0:
            raise StratSpineError("a perversity must vanish in codimension 0")
        if any(k < 0 for k in self.values):
            raise StratSpineError("codimensions are non-negative")
        self.default = default
        self.rule = rule
        self.name = name

    def __call__(self, k: int) -> int:
        if k == 0:
            return 0
        if k in self.values:
            return self.values[k]
        if self.rule is not None:
            return self.rule(k)
        return self.default

    def __str__(self) -> str:
        if self.name:
            return self.name
        pairs = ",".join(f"{k}:{v}" for k, v in sorted(self.values.items()))
        return f"{pairs},default={self.default}" if pairs else f"default={self.default}"

    def __repr__(self) -> str:
        return f"Perversity({self})"

    @classmethod
    def zero(cls) -> Perversity:
        return cls(default=0, name="zero")

    @classmethod
    def minus_one(cls) -> Perversity:
        return cls(default=-1, name="minus-one")

    @classmethod
    def plus_one(cls) -> Perversity:
        return cls(default=1, name="plus-one")

    @classmethod
    def lower_middle(cls) -> Perversity:
        return cls(rule=lambda k: (k - 2) // 2, name="gm-lower-middle")

    @classmethod
    def upper_middle(cls) -> Perversity:
        return cls(rule=lambda k: (k - 1) // 2, name="gm-upper-middle")

    @classmethod
    def top(cls) -> Perversity:
        return cls(rule=lambda k: k - 2, name="top")


NAMED_PERVERSITIES: dict[str, Callable[[], Perversity]] = {
    "zero": Perversity.zero,
    "minus-one": Perversity.minus_one,
    "plus-one": Perversity.plus_one,
    "gm-lower-middle": Perversity.lower_middle,
    "gm-upper-middle": Perversity.upper_middle,
    "top": Perversity.top,
}
NAMED_PERVERSITIES["lower-middle"] = Perversity.lower_middle
NAMED_PERVERSITIES["upper-middle"] = Perversity.upper_middle


def parse_perversity(text: str) -> Perversity:
    """Parse a named perversity or ``"k:v,k:v,...[,default=v]"``."""
    text = text.strip()
    if text in NAMED_PERVERSITIES:
        return NAMED_PERVERSITIES[text]()
    values: dict[int, int] = {}
    default = 0
    try:
        for tok in filter(None, (t.strip() for t in text.split(","))):
            if tok.startswith("default"):
                default = int(tok.split("=", 1)[1] if "=" in tok else tok.split(":", 1)[1])
            elif tok.startswith("*:"):
                default = int(tok[2:])
            else:
                k, v = tok.split(":")
                values[int(k)] = int(v)
    except (ValueError, IndexError) as exc:
        raise StratSpineError(f"cannot parse perversity {text!r}") from exc
    if not values and "default" not in text and "*" not in text:
        raise StratSpineError(f"cannot parse perversity {text!r}")
    return Perversity(values, default)


class FilteredComplex:
    """Complex ``K`` with singular subcomplex ``S`` of formal codimension
    ``codim`` inside a space of formal dimension ``n``.

    Allowability is evaluated by counting singular vertices, which is exact
    when ``S`` is full in ``K``. A non-full ``S`` is refused unless
    ``allow_nonfull`` is set, in which case :attr:`approximate` is true.
    """

    def __init__(
        self,
        K: SimplicialComplex,
        S: SimplicialComplex | None = None,
        codim: int | None = None,
        n: int | None = None,
        allow_nonfull: bool = False,
    ):
        self.K = K
        self.S = S if S is not None else SimplicialComplex()
        self.n = K.dim if n is None else n
        if self.n < K.dim:
            raise StratSpineError(f"formal dimension {self.n} is below dim K = {K.dim}")
        if len(self.S) and codim is None:
            raise StratSpineError("a nonempty singular set needs a formal codimension")
        if len(self.S) and codim < 1:
            raise StratSpineError("the singular set must have positive codimension")
        self.codim = codim if codim is not None else 0
        witness = fullness_violation(K, self.S)  # also rejects S not inside K
        self.approximate = witness is not None
        if witness is not None and not allow_nonfull:
            raise NonFullSubcomplexError(
                f"singular subcomplex is not full: {witness} has all vertices singular"
            )
        self.singular_vertices = self.S.vertices

    @classmethod
    def from_vertices(
        cls, K: SimplicialComplex, singular: Iterable[int], codim: int | None = None, n: int | None = None
    ) -> FilteredComplex:
        return cls(K, K.spanned_by(singular), codim, n)

    @staticmethod
    def geometric_codim(K: SimplicialComplex, S: SimplicialComplex) -> int:
        return K.dim - S.dim


def allowable_bound(sigma: Simplex, F: FilteredComplex, p: Perversity) -> int:
    return len(sigma) - 1 - F.codim + p(F.codim)


def is_allowable(sigma: Simplex, F: FilteredComplex, p: Perversity) -> bool:
    d = sum(v in F.singular_vertices for v in sigma) - 1
    if d < 0:
        return True
    return d <= allowable_bound(sigma, F, p)


@dataclass
class BoundaryMatrix:
    """Incidence matrix of one degree, columns = allowable simplices, rows =
    faces ordered allowable-first; rows ``0..r`` are allowable."""

    degree: int
    columns: list[Simplex]
    rows: list[Simplex]
    r: int
    cols: list[gf2.Column]
    ops: list[tuple[int, int]] = field(default_factory=list)
    reduced: bool = False

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def low(self, j: int) -> int:
        return gf2.low(self.cols[j])

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for j, c in enumerate(self.cols):
            out[gf2.entries(c), j] = 1
        return out

    def surviving(self) -> list[int]:
        return [j for j in range(len(self.cols)) if self.low(j) <= self.r]

    def trimmed(self) -> list[gf2.Column]:
        """Surviving columns restricted to the allowable rows."""
        return [gf2.truncate(self.cols[j], self.r) for j in self.surviving()]

    def basis_chains(self) -> list[list[int]]:
        """Surviving columns as chains: indices into :attr:`columns`."""
        combos = [{j} for j in range(len(self.columns))]
        for i, j in self.ops:
            combos[j] ^= combos[i]
        return [sorted(combos[j]) for j in self.surviving()]


def incidence_matrix(
    F: FilteredComplex, p: Perversity, k: int, dense_budget: int = DENSE_BUDGET
) -> BoundaryMatrix:
    cols_s = sorted((s for s in F.K._cofacets if len(s) == k + 1 and is_allowable(s, F, p)), key=order_key)
    if k == 0:
        return BoundaryMatrix(0, cols_s, [], -1, [0] * len(cols_s))
    faces_all = sorted((s for s in F.K._cofacets if len(s) == k), key=order_key)
    good = [s for s in faces_all if is_allowable(s, F, p)]
    bad = [s for s in faces_all if not is_allowable(s, F, p)]
    rows = good + bad
    index = {s: i for i, s in enumerate(rows)}
    dense = len(rows) * len(cols_s) <= dense_budget
    cols = [gf2.column((index[f] for f in facets(s)), dense) for s in cols_s]
    return BoundaryMatrix(k, cols_s, rows, len(good) - 1, cols)


def matrix_reduction(M: BoundaryMatrix) -> BoundaryMatrix:
    """Clear non-allowable lows by adding earlier columns to later ones.

    Columns are visited from last to first; column ``j`` absorbs any earlier
    column sharing its low while that low lies below row ``r``. The sweep is
    repeated until no two columns share a low below ``r``; a single sweep can
    leave such pairs when an earlier column changes after a later one was
    finished.
    """
    cols = list(M.cols)
    ops = list(M.ops)
    lows = [gf2.low(c) for c in cols]
    r = M.r
    changed = True
    while changed:
        changed = False
        for j in range(len(cols) - 1, 0, -1):
            while lows[j] > r:
                i = next((i for i in range(j) if lows[i] == lows[j]), None)
                if i is None:
                    break
                cols[j] = cols[j] ^ cols[i]
                lows[j] = gf2.low(cols[j])
                ops.append((i, j))
                changed = True
    return replace(M, cols=cols, ops=ops, reduced=True)


def reduced_matrices(F: FilteredComplex, p: Perversity, dense_budget: int = DENSE_BUDGET) -> list[BoundaryMatrix]:
    return [matrix_reduction(incidence_matrix(F, p, k, dense_budget)) for k in range(F.K.dim + 1)]


def intersection_betti(F: FilteredComplex, p: Perversity, dense_budget: int = DENSE_BUDGET) -> list[int]:
    mats = reduced_matrices(F, p, dense_budget)
    dims = [len(M.surviving()) for M in mats]
    ranks = [0 if M.degree == 0 else gf2.rank(M.trimmed()) for M in mats] + [0]
    return [dims[k] - ranks[k] - ranks[k + 1] for k in range(len(mats))]


def ordinary_betti(K: SimplicialComplex) -> list[int]:
    return intersection_betti(FilteredComplex(K), Perversity.zero())


# independent check ---------------------------------------------------------


def _rref_gf2(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = (A.copy() & 1).astype(np.uint8)
    pivots = []
    row = 0
    for col in range(A.shape[1]):
        if row == A.shape[0]:
            break
        hits = np.nonzero(A[row:, col])[0]
        if hits.size == 0:
            continue
        piv = row + hits[0]
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        mask = A[:, col].astype(bool)
        mask[row] = False
        A[mask] ^= A[row]
        pivots.append(col)
        row += 1
    return A, pivots


def _nullspace_gf2(A: np.ndarray) -> np.ndarray:
    """Basis of the kernel as columns of the returned array."""
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    R, pivots = _rref_gf2(A)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((n, len(free)), dtype=np.uint8)
    for t, fc in enumerate(free):
        basis[fc, t] = 1
        for i, pc in enumerate(pivots):
            basis[pc, t] = R[i, fc]
    return basis


def _rank_gf2(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(_rref_gf2(A)[1])


def _singular_dim(sigma: Simplex, S: SimplicialComplex) -> int:
    """Dimension of the intersection of ``|sigma|`` with ``|S|``."""
    return max((len(t) - 1 for t in faces(sigma, proper=False) if t in S), default=-1)


def brute_force_ic_oracle(F: FilteredComplex, p: Perversity, max_simplices: int = 200) -> list[int]:
    """Betti numbers from explicit kernels of the allowability constraints.

    Shares nothing with :func:`intersection_betti` beyond the input: the
    singular dimension of a simplex is measured against ``S`` itself, and all
    linear algebra is dense row reduction on numpy arrays.
    """
    if len(F.K) > max_simplices:
        raise OracleRefusedError(f"{len(F.K)} simplices exceed the oracle cap of {max_simplices}")
    top = F.K.dim
    by_dim = [F.K.simplices(k) for k in range(top + 1)]
    def allowed(s: Simplex) -> bool:
        d = _singular_dim(s, F.S)
        return d < 0 or d <= len(s) - 1 - F.codim + p(F.codim)

    ok = [[allowed(s) for s in level] for level in by_dim]
    bases: list[np.ndarray] = []
    images: list[np.ndarray] = []
    for k in range(top + 1):
        chains = [s for s, a in zip(by_dim[k], ok[k]) if a]
        if k == 0:
            bases.append(np.eye(len(chains), dtype=np.uint8))
            images.append(np.zeros((0, len(chains)), dtype=np.uint8))
            continue
        pos = {s: i for i, s in enumerate(by_dim[k - 1])}
        D = np.zeros((len(by_dim[k - 1]), len(chains)), dtype=np.uint8)
        for j, s in enumerate(chains):
            for f in facets(s):
                D[pos[f], j] = 1
        bad_rows = [i for i, a in enumerate(ok[k - 1]) if not a]
        N = _nullspace_gf2(D[bad_rows])
        bases.append(N)
        images.append((D.astype(np.int64) @ N.astype(np.int64) % 2).astype(np.uint8))
    ranks = [_rank_gf2(images[k]) for k in range(top + 1)] + [0]
    return [bases[k].shape[1] - ranks[k] - ranks[k + 1] for k in range(top + 1)]
