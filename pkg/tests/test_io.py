from __future__ import annotations

import json

import pytest

from stratspine.complex import from_maximal
from stratspine.errors import ParseError
from stratspine.fixtures import available, fixture_path, load
from stratspine.io import dumps, from_doc, maximal_sorted, read_complex, to_doc


def test_maximal_sorted_order():
    K = from_maximal([(3, 4), (0, 1, 2), (5,), (1, 3)])
    assert maximal_sorted(K) == [[0, 1, 2], [1, 3], [3, 4], [5]]


def test_roundtrip():
    K = from_maximal([(0, 1, 2), (2, 3)])
    doc = json.loads(dumps(to_doc(K, singular_vertices=[2], coordinates=[[0, 0]] * 4, meta={"codim": 2})))
    back = from_doc(doc)
    assert back.K == K and back.singular_vertices == [2]
    assert back.meta == {"codim": 2}
    assert back.singular_subcomplex() == from_maximal([(2,)])


@pytest.mark.parametrize(
    "doc",
    [[], {"simplex": []}, {"simplices": []}, {"simplices": [[0, 0]]}, {"simplices": [[0, 1]], "singular_vertices": [4]}],
)
def test_bad_documents(doc):
    with pytest.raises(ParseError):
        from_doc(doc)


def test_invalid_json_reports_line(tmp_path):
    f = tmp_path / "x.json"
    f.write_text('{"simplices":\n [[0, 1],\n oops]}')
    with pytest.raises(ParseError) as err:
        read_complex(f)
    assert err.value.line == 3


def test_shipped_fixtures_load():
    names = available()
    for name in ["pinched_torus.json", "cone_hexagon.json", "figure_eight_rips.json", "figure_eight_spine.json",
                 "tetra_two_singular.json"]:
        assert name in names
    assert load("pinched_torus").K.counts() == [543, 2109, 2057, 490]
    with pytest.raises(FileNotFoundError):
        fixture_path("missing.json")
