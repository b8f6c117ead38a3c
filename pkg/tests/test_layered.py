from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stratspine.complex import SimplicialComplex, from_maximal, is_full_subcomplex, ordinary_spine
from stratspine.errors import IllegalCollapseError, NonAssociatedError, StratSpineError
from stratspine.layered import (
    CollapseLog,
    DividedComplex,
    LayeredComplex,
    LogEntry,
    _vertexwise_admissible,
    associate,
    c_collapse_step,
    check_step,
    expand,
    find_collapse,
    intermediate_collapse_step,
    intermediate_simplices,
    is_admissible,
    layered_spine,
    ordinary_spine_logged,
    replay,
    s_collapse_step,
    verify_no_layered_collapse,
)

from gen import random_divided

S0_, S1_, C0_, C1_ = 0, 1, 2, 3
TET = from_maximal([(0, 1, 2, 3)])
L412 = LayeredComplex(TET, {S0_, S1_})
GOLDEN = SimplicialComplex([(0, 1, 2)])


def minus(K: SimplicialComplex, *pairs) -> SimplicialComplex:
    out = K.copy()
    for f, p in pairs:
        out._remove_pair(f, p)
    return out


K1 = minus(TET, ((0, 1, 3), (0, 1, 2, 3)))
K2 = minus(K1, ((1, 3), (1, 2, 3)))
K3 = minus(K2, ((0, 3), (0, 2, 3)))


# ---------------------------------------------------------------- construction


def test_divided_complex_validates_vertices():
    DividedComplex(TET, frozenset({0}))
    with pytest.raises(StratSpineError):
        DividedComplex(TET, frozenset({9}))


def test_associate_example():
    L = associate(DividedComplex(TET, frozenset({0, 1})))
    assert L.S == from_maximal([(0, 1)])
    assert L.C == from_maximal([(2, 3)])
    assert is_full_subcomplex(L.K, L.S)


def test_associate_extremes():
    L = associate(DividedComplex(TET, frozenset()))
    assert len(L.S) == 0 and L.C == TET and not intermediate_simplices(L)
    L = associate(DividedComplex(TET, frozenset(range(4))))
    assert L.S == TET and len(L.C) == 0 and not intermediate_simplices(L)


def test_intermediate_simplices_example():
    im = intermediate_simplices(L412)
    assert len(im) == 9
    assert all(len(s) >= 2 for s in im)
    assert (0, 1, 2, 3) in im and (0, 1) not in im and (2, 3) not in im


def test_from_subcomplexes_rejects_non_associated():
    with pytest.raises(NonAssociatedError):
        LayeredComplex.from_subcomplexes(TET, from_maximal([(2, 3)]), SimplicialComplex([(0,), (1,)]))
    L = LayeredComplex.from_subcomplexes(TET, from_maximal([(2, 3)]), from_maximal([(0, 1)]))
    assert L == L412


def test_kind_of():
    assert L412.kind_of((0, 1)) == "S"
    assert L412.kind_of((2,)) == "C"
    assert L412.kind_of((1, 2)) == "intermediate"


# ---------------------------------------------------------------- admissibility


def test_is_admissible_examples():
    S = L412.S
    assert is_admissible(S, (0, 1, 3), (0, 1, 2, 3))
    assert is_admissible(S, (1, 3), (1, 2, 3))
    assert not is_admissible(S, (0, 2), (0, 1, 2))


def test_vertexwise_admissibility_matches_definition():
    rng = random.Random(7)
    for _ in range(200):
        K, S0 = random_divided(rng)
        L = LayeredComplex(K, S0)
        S = L.S
        fast = _vertexwise_admissible(frozenset(S0))
        for p in K:
            if len(p) < 2:
                continue
            for i in range(len(p)):
                s = p[:i] + p[i + 1 :]
                assert fast(s, p) == is_admissible(S, s, p)


# ---------------------------------------------------------------- single steps


def test_no_s_or_c_collapse_initially():
    assert s_collapse_step(L412) is None
    assert c_collapse_step(L412) is None


def test_s_collapse_on_edge():
    L = LayeredComplex(from_maximal([(0, 1)]), {0, 1})
    out, entry = s_collapse_step(L)
    assert entry == LogEntry("S", (1,), (0, 1))
    assert out.K == SimplicialComplex([(0,)])


def test_intermediate_steps_follow_example():
    out, entry = intermediate_collapse_step(L412)
    assert entry == LogEntry("intermediate", (0, 1, 3), (0, 1, 2, 3))
    assert out.K == K1
    out, entry = intermediate_collapse_step(LayeredComplex(K2, {0, 1}))
    assert entry == LogEntry("intermediate", (0, 3), (0, 2, 3))
    assert out.K == K3
    assert intermediate_collapse_step(LayeredComplex(K3, {0, 1})) is None


def test_c_collapse_on_k3():
    out, entry = c_collapse_step(LayeredComplex(K3, {0, 1}))
    assert entry == LogEntry("C", (3,), (2, 3))
    assert out.K == GOLDEN


def test_c_step_without_singular_set_is_ordinary_step():
    K = from_maximal([(0, 1, 2), (2, 3)])
    out, entry = c_collapse_step(LayeredComplex(K, ()))
    assert entry.kind == "C"
    assert len(out.K) == len(K) - 2


def test_steps_do_not_mutate_input():
    before = L412.K.copy()
    intermediate_collapse_step(L412)
    assert L412.K == before


# ---------------------------------------------------------------- spine


def test_layered_spine_example():
    L, log = layered_spine(L412)
    assert L.K == GOLDEN
    assert log.counts() == {"S": 0, "C": 1, "intermediate": 3}
    assert verify_no_layered_collapse(L)
    assert not verify_no_layered_collapse(L412)
    assert ordinary_spine(L.K).counts() == [1]  # still collapsible without strata


def test_layered_spine_without_singular_set_is_ordinary_spine():
    rng = random.Random(11)
    for _ in range(100):
        K, _ = random_divided(rng)
        L, log = layered_spine(LayeredComplex(K, ()))
        assert L.K == ordinary_spine(K)
        assert log.counts()["S"] == log.counts()["intermediate"] == 0


def test_layered_spine_seeded_is_deterministic():
    rng = random.Random(12)
    K, S0 = random_divided(rng)
    a = layered_spine(LayeredComplex(K, S0), seed=5)
    b = layered_spine(LayeredComplex(K, S0), seed=5)
    assert a[0] == b[0] and a[1] == b[1]


def test_ordinary_spine_logged_matches_ordinary_spine():
    K = from_maximal([(0, 1, 2, 3), (3, 4)])
    out, log = ordinary_spine_logged(K)
    assert out == ordinary_spine(K)
    assert len(log) * 2 == len(K) - len(out)
    assert replay(LayeredComplex(K, ()), log).K == out


# ---------------------------------------------------------------- logs


def test_log_roundtrip_and_replay():
    L, log = layered_spine(L412)
    text = log.to_jsonl()
    again = CollapseLog.from_jsonl(text)
    assert again == log
    assert replay(L412, again).K == L.K
    assert expand(L, log).K == L412.K


def test_replay_rejects_illegal_entries():
    with pytest.raises(IllegalCollapseError):
        replay(L412, [LogEntry("intermediate", (1, 2, 3), (0, 1, 2, 3))])  # misses singular vertex 0
    with pytest.raises(IllegalCollapseError):
        replay(L412, [LogEntry("C", (0, 1, 3), (0, 1, 2, 3))])  # wrong kind
    with pytest.raises(IllegalCollapseError):
        check_step(L412, LogEntry("C", (2,), (2, 3)))  # not free


def test_log_parse_errors():
    with pytest.raises(StratSpineError):
        CollapseLog.from_jsonl('{"kind": "Q", "free": [0], "principal": [0, 1]}\n')
    with pytest.raises(StratSpineError):
        CollapseLog.from_jsonl("not json\n")


# ---------------------------------------------------------------- properties


@st.composite
def divided(draw, max_simplices=200):
    seed = draw(st.integers(0, 2**32 - 1))
    K, S0 = random_divided(random.Random(seed), max_simplices=max_simplices)
    return LayeredComplex(K, S0)


def _strata(L: LayeredComplex):
    return L.S, L.C, intermediate_simplices(L)


@settings(max_examples=150, deadline=None)
@given(divided())
def test_s_and_c_steps_keep_intermediate_set(L):
    for step in (s_collapse_step, c_collapse_step):
        res = step(L)
        if res is None:
            continue
        out, entry = res
        assert intermediate_simplices(out) == intermediate_simplices(L)
        S, C, _ = _strata(L)
        S2, C2, _ = _strata(out)
        if entry.kind == "S":
            assert C2 == C and S2.simplex_set() == S.simplex_set() - {entry.free, entry.principal}
        else:
            assert S2 == S and C2.simplex_set() == C.simplex_set() - {entry.free, entry.principal}


@settings(max_examples=150, deadline=None)
@given(divided())
def test_intermediate_step_keeps_strata(L):
    res = intermediate_collapse_step(L)
    if res is None:
        return
    out, entry = res
    S, C, im = _strata(L)
    S2, C2, im2 = _strata(out)
    assert S2 == S and C2 == C
    assert im2 == im & out.K.simplex_set()
    assert not set(S.vertices) & set(C.vertices)


@settings(max_examples=150, deadline=None)
@given(divided(max_simplices=60))
def test_s_and_c_collapses_commute(L):
    S0 = frozenset(L.S0)
    for a in _all_pairs(L, "S"):
        for b in _all_pairs(L, "C"):
            ab = LayeredComplex(L.K.copy(), S0)
            ab.K._remove_pair(*a)
            ab.K._remove_pair(*b)
            ba = LayeredComplex(L.K.copy(), S0)
            ba.K._remove_pair(*b)
            ba.K._remove_pair(*a)
            assert ab.K == ba.K


def _all_pairs(L: LayeredComplex, kind: str):
    out = []
    for p in L.K:
        if len(p) > 1 and L.K.is_principal(p) and L.kind_of(p) == kind:
            out += [(f, p) for f in (p[:i] + p[i + 1 :] for i in range(len(p))) if L.K.free_face_principal(f) == p]
    return out


@settings(max_examples=150, deadline=None)
@given(divided(), st.integers(0, 2**16))
def test_layered_spine_log_replays_and_is_stuck(L, seed):
    for s in (None, seed):
        out, log = layered_spine(L, seed=s)  # asserts the phase invariants internally
        assert verify_no_layered_collapse(out)
        assert replay(L, log).K == out.K
        assert expand(out, log).K == L.K
        assert find_collapse(LayeredComplex(out.K, out.S0), "S") is None
