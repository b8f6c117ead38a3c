from __future__ import annotations

import io
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratspine.complex import SimplicialComplex
from stratspine.errors import ParseError, StratSpineError
from stratspine.fixtures import fixture_path
from stratspine.rips import PointCloud, RipsParams, read_points, read_singular_ids, to_divided, vietoris_rips

TRIANGLE = PointCloud(np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]]))
SQUARE = PointCloud(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


def test_read_points_text():
    P = read_points(io.StringIO("0 0\n1 0\n0 1\n"))
    assert len(P) == 3 and P.dim == 2


def test_read_points_mixed_separators_and_comments():
    P = read_points(io.StringIO("# header\n0,0, 1\n\n1;0 2\n"))
    assert P.points.tolist() == [[0, 0, 1], [1, 0, 2]]


@pytest.mark.parametrize(
    "text, line",
    [("0 0\n1\n", 2), ("0 0\n1 x\n", 2), ("0 0\nnan 1\n", 2)],
)
def test_read_points_errors_carry_line(text, line):
    with pytest.raises(ParseError) as err:
        read_points(io.StringIO(text))
    assert err.value.line == line


def test_read_points_empty():
    with pytest.raises(ParseError):
        read_points(io.StringIO(""))


def test_figure_eight_points_fixture():
    P = read_points(fixture_path("figure_eight_points.txt"))
    assert len(P) == 18 and P.dim == 2


def test_params_validation():
    with pytest.raises(StratSpineError):
        RipsParams(0.0, 2)
    with pytest.raises(StratSpineError):
        RipsParams(float("inf"), 2)
    with pytest.raises(StratSpineError):
        RipsParams(1.0, -1)


def test_point_cloud_validation():
    with pytest.raises(StratSpineError):
        PointCloud(np.zeros((0, 2)))
    with pytest.raises(StratSpineError):
        PointCloud(np.array([[0.0, np.inf]]))


def test_rips_triangle():
    assert len(vietoris_rips(TRIANGLE, RipsParams(1.5, 2))) == 7
    assert vietoris_rips(TRIANGLE, RipsParams(0.5, 2)).counts() == [3]
    assert vietoris_rips(TRIANGLE, RipsParams(1.5, 1)).counts() == [3, 3]


def test_rips_square_has_no_diagonal():
    K = vietoris_rips(SQUARE, RipsParams(1.0, 3))
    assert K.counts() == [4, 4]
    assert (0, 2) not in K and (1, 3) not in K


def test_rips_closed_threshold():
    P = PointCloud(np.array([[0.0], [1.0]]))
    assert (0, 1) in vietoris_rips(P, RipsParams(1.0, 1))


def test_rips_single_point():
    assert vietoris_rips(PointCloud(np.array([[3.0, 4.0]])), RipsParams(1.0, 2)).counts() == [1]


def test_to_divided():
    K = vietoris_rips(TRIANGLE, RipsParams(1.5, 2))
    assert to_divided(K, [0]).S0 == {0}
    assert to_divided(K, []).S0 == frozenset()
    assert to_divided(K, [1, 1, 2]).S0 == {1, 2}
    with pytest.raises(StratSpineError):
        to_divided(K, [7])


def test_read_singular_ids(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("0\n# comment\n5  # trailing\n\n")
    assert read_singular_ids(f) == [0, 5]
    f.write_text("0\nx\n")
    with pytest.raises(ParseError):
        read_singular_ids(f)


# ---------------------------------------------------------------- properties


def brute_rips(points: np.ndarray, eps: float, max_dim: int) -> SimplicialComplex:
    n = len(points)
    close = {(i, j) for i, j in itertools.combinations(range(n), 2) if np.linalg.norm(points[i] - points[j]) <= eps}
    simplices = [
        c
        for k in range(1, min(max_dim + 1, n) + 1)
        for c in itertools.combinations(range(n), k)
        if all(e in close for e in itertools.combinations(c, 2))
    ]
    return SimplicialComplex(simplices)


clouds = st.integers(1, 14).flatmap(
    lambda n: st.lists(
        st.lists(st.floats(-2, 2, allow_nan=False), min_size=2, max_size=2), min_size=n, max_size=n
    )
)


@settings(max_examples=60, deadline=None)
@given(clouds, st.floats(0.05, 3.0), st.integers(0, 3))
def test_rips_matches_pairwise_oracle(pts, eps, max_dim):
    P = PointCloud(np.array(pts))
    assert vietoris_rips(P, RipsParams(eps, max_dim)) == brute_rips(P.points, eps, max_dim)


def test_rips_matches_oracle_on_25_points():
    rng = np.random.default_rng(0)
    pts = rng.uniform(0, 1, (25, 3))
    for eps in (0.2, 0.35, 0.5):
        assert vietoris_rips(PointCloud(pts), RipsParams(eps, 3)) == brute_rips(pts, eps, 3)


@settings(max_examples=60, deadline=None)
@given(clouds, st.floats(0.05, 2.0), st.floats(0.0, 2.0), st.integers(0, 3))
def test_rips_is_monotone_in_epsilon(pts, eps, extra, max_dim):
    P = PointCloud(np.array(pts))
    small = vietoris_rips(P, RipsParams(eps, max_dim)).simplex_set()
    big = vietoris_rips(P, RipsParams(eps + extra, max_dim)).simplex_set()
    assert small <= big
