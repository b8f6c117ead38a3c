"""Point clouds and Vietoris-Rips complexes."""

from __future__ import annotations

import io
import math
import re
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .complex import Simplex, SimplicialComplex
from .errors import ParseError, StratSpineError
from .layered import DividedComplex

_SPLIT = re.compile(r"[,\s;]+")


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray  # shape (m, d); point i has vertex id i

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise StratSpineError("a point cloud needs at least one point of dimension >= 1")
        if not np.all(np.isfinite(pts)):
            raise StratSpineError("point coordinates must be finite")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class RipsParams:
    epsilon: float
    max_dim: int

    def __post_init__(self) -> None:
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise StratSpineError(f"epsilon must be a positive number, got {self.epsilon}")
        if self.max_dim < 0:
            raise StratSpineError(f"max_dim must be non-negative, got {self.max_dim}")


def read_points(source: str | Path | io.TextIOBase) -> PointCloud:
    """Parse one point per line, coordinates separated by commas or blanks.

    Blank lines and lines starting with ``#`` are skipped.
    """
    if isinstance(source, (str, Path)):
        name = str(source)
        text = Path(source).read_text(encoding="utf-8")
    else:
        name = getattr(source, "name", "<stream>")
        text = source.read()
    rows: list[list[float]] = []
    width = None
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        toks = [t for t in _SPLIT.split(line) if t]
        try:
            row = [float(t) for t in toks]
        except ValueError:
            raise ParseError(f"non-numeric token in {line!r}", source=name, line=n) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"expected {width} coordinates, found {len(row)}", source=name, line=n)
        if not all(map(math.isfinite, row)):
            raise ParseError("coordinates must be finite", source=name, line=n)
        rows.append(row)
    if not rows:
        raise ParseError("no points found", source=name)
    return PointCloud(np.array(rows))


def neighbor_graph(P: PointCloud, epsilon: float) -> list[list[int]]:
    """For each vertex, the higher-numbered vertices within ``epsilon``."""
    if len(P) == 1:
        return [[]]
    close = squareform(pdist(P.points)) <= epsilon
    return [[int(j) for j in np.nonzero(close[i, i + 1 :])[0] + i + 1] for i in range(len(P))]


def vietoris_rips(P: PointCloud, params: RipsParams) -> SimplicialComplex:
    """All vertex sets of size <= max_dim + 1 with pairwise distances <= epsilon."""
    up = neighbor_graph(P, params.epsilon)
    upset = [set(n) for n in up]
    cliques: list[Simplex] = []

    def grow(clique: Simplex, cands: list[int]) -> None:
        cliques.append(clique)
        if len(clique) > params.max_dim:
            return
        for idx, v in enumerate(cands):
            grow(clique + (v,), [w for w in cands[idx + 1 :] if w in upset[v]])

    for v in range(len(P)):
        grow((v,), up[v])
    return SimplicialComplex(cliques)


def to_divided(K: SimplicialComplex, singular_ids: Iterable[int]) -> DividedComplex:
    ids = frozenset(singular_ids)
    unknown = ids - K.vertices
    if unknown:
        raise StratSpineError(f"unknown singular vertex ids {sorted(unknown)}")
    return DividedComplex(K, ids)


def read_singular_ids(source: str | Path) -> list[int]:
    out = []
    for n, line in enumerate(Path(source).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(int(line))
        except ValueError:
            raise ParseError(f"not an integer vertex id: {line!r}", source=str(source), line=n) from None
    return out
