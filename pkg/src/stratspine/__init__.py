"""Stratified spines of divided simplicial complexes and their intersection homology."""

from __future__ import annotations

from .complex import (
    Simplex,
    SimplicialComplex,
    elementary_collapse,
    free_face_principal,
    from_maximal,
    is_full_subcomplex,
    is_principal,
    is_pseudomanifold,
    ordinary_spine,
    proper_cofaces,
    simplex,
)
from .errors import InvariantViolation, ParseError, StratSpineError
from .ihomology import (
    FilteredComplex,
    Perversity,
    brute_force_ic_oracle,
    incidence_matrix,
    intersection_betti,
    is_allowable,
    matrix_reduction,
    ordinary_betti,
    parse_perversity,
)
from .layered import (
    CollapseLog,
    DividedComplex,
    LayeredComplex,
    LogEntry,
    associate,
    c_collapse_step,
    intermediate_collapse_step,
    layered_spine,
    replay,
    s_collapse_step,
    verify_no_layered_collapse,
)
from .rips import PointCloud, RipsParams, read_points, to_divided, vietoris_rips

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
