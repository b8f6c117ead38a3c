"""Regenerate the JSON fixtures shipped in ``src/stratspine/data``.

Usage::

    python3 tools/make_fixtures.py [--out DIR]

Every fixture is deterministic. The pinched torus is assembled by hand: a
triangulated pinched torus plus two fins at the pinch point, thickened by
small collapsible gadgets whose number is chosen to hit prescribed simplex
and collapse counts.
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path

import numpy as np

from stratspine.complex import SimplicialComplex
from stratspine.io import to_doc, write_json

DATA = Path(__file__).resolve().parents[1] / "src" / "stratspine" / "data"

# ---------------------------------------------------------------- pinched torus

N_MERIDIAN = 8
N_ROWS = 68  # row 0 is pinched to the singular vertex
N_FLIP = 485
APEX_UNITS = [("x", j) for j in range(5)]
FINS = [(4, 6), (5, 7)]  # chords on the last row coned to s


def _pt_id(i: int, j: int) -> int:
    return 1 + (i - 1) * N_MERIDIAN + (j % N_MERIDIAN)


def _pt_coords(i: int, j: int, R: float = 3.0, r0: float = 1.0) -> list[float]:
    theta = 2 * math.pi * i / N_ROWS
    phi = 2 * math.pi * j / N_MERIDIAN
    r = r0 * math.sin(theta / 2)
    return [(R + r * math.cos(phi)) * math.cos(theta), (R + r * math.cos(phi)) * math.sin(theta), r * math.sin(phi)]


def pinched_torus() -> dict:
    s = 0
    last = N_ROWS - 1
    tris: list[tuple[int, ...]] = []
    quads = []  # (a, b, c, d) = (i,j), (i,j+1), (i+1,j), (i+1,j+1); diagonal a-d
    for i in range(1, last):
        for j in range(N_MERIDIAN):
            a, b, c, d = _pt_id(i, j), _pt_id(i, j + 1), _pt_id(i + 1, j), _pt_id(i + 1, j + 1)
            tris += [(a, b, d), (a, c, d)]
            quads.append((i, j, a, b, c, d))
    for j in range(N_MERIDIAN):
        tris.append((s, _pt_id(1, j), _pt_id(1, j + 1)))
        tris.append((s, _pt_id(last, j), _pt_id(last, j + 1)))
    for u, v in FINS:
        tris.append((s, _pt_id(last, u), _pt_id(last, v)))

    tets: list[tuple[int, ...]] = []
    extra: list[tuple[int, ...]] = []
    used_quads = set()
    # Apex gadgets: a tetrahedron on s and a band triangle touching a link
    # circle, removed by two intermediate collapses.
    for side, j in APEX_UNITS:
        if side == "x":
            a, b, c = _pt_id(1, j), _pt_id(1, j + 1), _pt_id(2, j + 1)
            used_quads.add((1, j))
        else:
            a, b, c = _pt_id(last, j), _pt_id(last, j + 1), _pt_id(last - 1, j)
            used_quads.add((last - 1, j))
        tets.append((s, a, b, c))
    # Flip gadgets: the second diagonal of a band quad plus the tetrahedron
    # on its four corners, removed by two C-collapses.
    free_quads = [q for q in quads if (q[0], q[1]) not in used_quads]
    for i, j, a, b, c, d in free_quads[:N_FLIP]:
        tets.append((a, b, c, d))
    spare = free_quads[N_FLIP:]

    coords = [[0.0, 0.0, 0.0]]
    for i in range(1, N_ROWS):
        for j in range(N_MERIDIAN):
            coords.append(_pt_coords(i, j))

    # Whiskers: new vertices hanging off the surface.
    w = len(coords)
    x7 = _pt_id(1, 7)
    extra.append((s, x7, w))  # intermediate triangle: one intermediate, one C collapse
    coords.append(_offset(coords, [s, x7]))
    for _, _, a, b, _, _ in spare[:2]:
        w += 1
        extra.append((a, b, w))
        coords.append(_offset(coords, [a, b]))
    for _, _, a, _, _, _ in spare[2:5]:
        w += 1
        extra.append((a, w))
        coords.append(_offset(coords, [a]))

    K = SimplicialComplex(tris + tets + extra)
    return to_doc(
        K,
        singular_vertices=[s],
        coordinates=coords,
        meta={
            "name": "pinched-torus",
            "codim": 2,
            "expected": {
                "counts": [543, 2109, 2057, 490],
                "collapses": {"S": 0, "C": 978, "intermediate": 11},
                "spine_counts": [537, 1610, 1074],
                "spine_betti": {"zero": [1, 0, 1]},
            },
        },
    )


def _offset(coords, ids, h: float = 0.15) -> list[float]:
    c = np.mean([coords[i] for i in ids], axis=0)
    return [float(x) for x in c + h * np.array([0.3, 0.5, 0.8])]


# ---------------------------------------------------------------- small fixtures


def example_412() -> dict:
    # s0 = 0, s1 = 1, c0 = 2, c1 = 3
    K = SimplicialComplex([(0, 1, 2, 3)])
    return to_doc(K, singular_vertices=[0, 1], meta={
        "name": "tetrahedron-two-singular",
        "expected": {
            "spine": [[0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]],
            "collapses": {"S": 0, "C": 1, "intermediate": 3},
        },
    })


def cone_hexagon() -> dict:
    tris = [(0, i, i % 6 + 1) for i in range(1, 7)]
    coords = [[0.0, 0.0, 1.0]] + [
        [3 * math.cos(2 * math.pi * k / 6), 3 * math.sin(2 * math.pi * k / 6), 0.0] for k in range(6)
    ]
    return to_doc(SimplicialComplex(tris), singular_vertices=[0], coordinates=coords, meta={
        "name": "cone-hexagon",
        "codim": 2,
        "expected": {"betti": {"zero": [1, 0, 0], "minus-one": [1, 1, 0]}},
    })


def figure_eight_spine() -> dict:
    edges = [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]
    coords = [[0, 0], [1, 1], [2, 0], [-1, 1], [-2, 0]]
    return to_doc(SimplicialComplex(edges), singular_vertices=[0], coordinates=coords, meta={
        "name": "figure-eight-spine",
        "codim": 1,
        "expected": {"betti": {"zero": [1, 2], "minus-one": [2, 0]}},
    })


_FIG8_RIGHT = [(0.672, -0.672), (1.4, -1.0), (2.2, -0.7), (2.5, 0.0), (2.2, 0.7), (1.4, 1.0), (0.672, 0.672)]
FIG8_POINTS = np.array(
    [(0.0, 0.0)]  # wedge point
    + _FIG8_RIGHT
    + [(-x, y) for x, y in _FIG8_RIGHT]
    + [(2.63, -0.45), (0.42, -0.36), (-0.42, 0.36)]  # one triangle far from s, two at s
)
FIG8_EPSILON = 1.0


def figure_eight_points() -> tuple[str, dict]:
    from stratspine.rips import PointCloud, RipsParams, vietoris_rips

    K = vietoris_rips(PointCloud(FIG8_POINTS), RipsParams(FIG8_EPSILON, 2))
    text = "# figure-eight sample, wedge point first\n" + "".join(
        f"{x:.4f} {y:.4f}\n" for x, y in FIG8_POINTS
    )
    doc = to_doc(K, singular_vertices=[0], coordinates=FIG8_POINTS.tolist(), meta={
        "name": "figure-eight-rips",
        "epsilon": FIG8_EPSILON,
        "max_dim": 2,
        "expected": {"betti_codim2": {"zero": [2, 0, 0], "minus-one": [2, 0, 0]}},
    })
    return text, doc


# ---------------------------------------------------------------- cone sample

CONE_C = 3.0
CONE_TOL = 1e-3


def sample_cone(n: int, rng: np.random.Generator, batch: int = 1 << 20) -> np.ndarray:
    """Rejection sampling of ``x^2 + y^2 = c^2 (z - 1)^2`` on the unit box."""
    out = []
    while len(out) < n:
        x = rng.uniform(-1, 1, batch)
        y = rng.uniform(-1, 1, batch)
        z = rng.uniform(0, 1, batch)
        ok = np.abs(x * x + y * y - CONE_C**2 * (z - 1) ** 2) <= CONE_TOL
        out.extend(np.stack([x[ok], y[ok], z[ok]], axis=1).tolist())
    return np.array([[0.0, 0.0, 1.0]] + out[:n])


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    write_json(pinched_torus(), args.out / "pinched_torus.json")
    write_json(example_412(), args.out / "tetra_two_singular.json")
    write_json(cone_hexagon(), args.out / "cone_hexagon.json")
    write_json(figure_eight_spine(), args.out / "figure_eight_spine.json")
    text, doc = figure_eight_points()
    (args.out / "figure_eight_points.txt").write_text(text, encoding="utf-8")
    write_json(doc, args.out / "figure_eight_rips.json")
    print(f"wrote fixtures to {args.out}")


if __name__ == "__main__":
    main()
