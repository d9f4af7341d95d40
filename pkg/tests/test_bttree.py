import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from alab import bttree
from alab.bttree import (BASE, INFINITY, End, TreeError, TreeVertex, act, ball, busemann,
                         busemann_auto, canonical_form, horofunction_transform_check, neighbors,
                         parse_matrix, random_vertex, stabilization_bound, vertex_distance)
from alab.cutproject import mat, mat_mul

F = Fraction
PRIMES = [2, 3, 5]


def diag(a):
    return mat(a, 0, 0, F(1) / a)


def test_act_examples():
    for p in PRIMES:
        assert act(mat(1, 0, 0, 1), BASE, p) == BASE
        v = act(mat(p, 0, 0, 1), BASE, p)
        assert vertex_distance(BASE, v, p) == 1 and v == TreeVertex(1, F(0))
        assert act(mat(1, 3, 0, 1), BASE, p) == BASE
        assert act(mat(1, F(p + 1, 7), 0, 1), BASE, p) == BASE  # |x|_p <= 1
        assert act(mat(1, F(1, p), 0, 1), BASE, p) != BASE


def test_distance_examples():
    for p in PRIMES:
        assert vertex_distance(BASE, BASE, p) == 0
        assert vertex_distance(BASE, act(mat(p, 0, 0, 1), BASE, p), p) == 1
        assert vertex_distance(BASE, act(mat(p * p, 0, 0, 1), BASE, p), p) == 2


@pytest.mark.parametrize("p", PRIMES)
def test_distance_matches_graph_bfs(p):
    level = {BASE: 0}
    frontier = [BASE]
    for d in range(1, 4):
        nxt = []
        for v in frontier:
            for w in neighbors(v, p):
                if w not in level:
                    level[w] = d
                    nxt.append(w)
        frontier = nxt
    for v, d in level.items():
        assert vertex_distance(BASE, v, p) == d
    assert len(level) == 1 + (p + 1) * sum(p ** k for k in range(3))


@pytest.mark.parametrize("p", PRIMES)
def test_regular(p):
    nb = neighbors(BASE, p)
    assert len(nb) == p + 1 and all(vertex_distance(BASE, w, p) == 1 for w in nb)
    rng = random.Random(p)
    for _ in range(10):
        v = random_vertex(rng, p, 5)
        nb = neighbors(v, p)
        assert len(nb) == p + 1 and all(vertex_distance(v, w, p) == 1 for w in nb)


@given(st.sampled_from(PRIMES), st.integers(0, 10 ** 6), st.integers(-3, 3),
       st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_canonical_form_is_class_invariant(p, seed, k, a, b, c, d):
    # changing basis by GL2(Z_p) and scaling by p^k must not move the vertex
    if (a * d - b * c) % p == 0:
        return
    v = random_vertex(random.Random(seed), p, 5)
    M = bttree.vertex_matrix(v, p)
    U = mat(a, b, c, d)
    s = F(p) ** k
    assert canonical_form(tuple(s * x for x in mat_mul(M, U)), p) == v


def _random_sl2(rng, p):
    g = mat(1, 0, 0, 1)
    for _ in range(rng.randint(1, 3)):
        x = F(rng.randint(-p * p, p * p), p ** rng.randint(0, 2))
        g = mat_mul(g, rng.choice([mat(1, x, 0, 1), mat(1, 0, x, 1), diag(F(p) ** rng.choice([-1, 1]))]))
    return g


def test_action_is_isometry():
    rng = random.Random(11)
    for _ in range(120):
        p = rng.choice(PRIMES)
        g = _random_sl2(rng, p)
        v, w = random_vertex(rng, p, 3), random_vertex(rng, p, 3)
        gv, gw = act(g, v, p, depth=None), act(g, w, p, depth=None)
        assert vertex_distance(gv, gw, p) == vertex_distance(v, w, p)


def test_busemann_examples():
    for p in PRIMES:
        assert busemann_auto(INFINITY, BASE, p) == 0
        assert busemann(INFINITY, act(mat(p, 0, 0, 1), BASE, p), 5, p) == -1
        assert busemann(INFINITY, act(mat(F(1, p), 0, 0, 1), BASE, p), 5, p) == 1
        x = act(mat(p, 1, 0, 1), BASE, p)
        u = mat(1, 1, 0, 1)
        assert busemann_auto(INFINITY, act(u, x, p), p) == busemann_auto(INFINITY, x, p)


def test_busemann_stabilizes():
    rng = random.Random(5)
    for _ in range(100):
        p = rng.choice(PRIMES)
        x = random_vertex(rng, p, 5)
        end = rng.choice([INFINITY, End(mat(0, -1, 1, 0), "0")])
        T = stabilization_bound(end, x, p) + 1
        assert busemann(end, x, T, p) == busemann(end, x, T + 1, p) == busemann(end, x, T + 2, p)


def test_busemann_truncation_error():
    x = act(mat(4, 0, 0, 1), BASE, 2)
    with pytest.raises(TreeError, match="need T >"):
        busemann(INFINITY, x, 3, 2)


def test_errors():
    with pytest.raises(TreeError, match="increase depth"):
        act(mat(2 ** 9, 0, 0, 1), BASE, 2, depth=8)
    with pytest.raises(TreeError):
        act(mat(1, 1, 1, 1), BASE, 2)
    with pytest.raises(TreeError):
        horofunction_transform_check(mat(1, 0, 1, 1), 2, [BASE])
    with pytest.raises(TreeError):
        parse_matrix("1,2,3", 2)


@pytest.mark.parametrize("p", PRIMES)
def test_transform_law(p):
    sample = ball(3, p)
    ident = horofunction_transform_check(mat(1, 0, 0, 1), p, sample)
    assert ident.consistent and set(ident.shifts) == {0}
    d = horofunction_transform_check(diag(p), p, sample)
    assert d.consistent and abs(d.shift) == 2 and d.log_chi == -2 and d.constant == 1
    u = horofunction_transform_check(mat(1, F(1, p), 0, 1), p, sample)
    assert u.consistent and set(u.shifts) == {0}


def test_transform_cocycle():
    p = 3
    sample = ball(2, p)
    gens = [diag(3), diag(F(1, 9)), mat(1, F(2, 3), 0, 1), mat_mul(diag(3), mat(1, 5, 0, 1))]

    def shift(g):
        rep = horofunction_transform_check(g, p, sample)
        assert rep.consistent
        return rep.shifts[0]
    for g in gens:
        for h in gens:
            assert shift(mat_mul(g, h)) == shift(g) + shift(h)


def test_transform_towards_opposite_end():
    rep = horofunction_transform_check(diag(2), 2, ball(2, 2), end=End(mat(0, -1, 1, 0), "0"))
    assert rep.consistent and rep.shift == 2


def test_transform_reports_inconsistency_with_witness():
    # diag(2, 1/2) does not fix the end 1 = (1 0; 1 1).inf, so the shift varies
    rep = horofunction_transform_check(diag(2), 2, ball(3, 2), end=End(mat(1, 0, 1, 1), "1"))
    assert not rep.consistent and rep.verdict == "fail"
    assert rep.witness is not None and rep.to_json()["witness"] is not None


def test_parse_matrix():
    assert parse_matrix("p,0;0,1/p", 3) == diag(3)
    assert parse_matrix("1, 1/2; 0, 1", 2) == mat(1, F(1, 2), 0, 1)


def test_horofunction_sample_positive():
    vals = bttree.horofunction_sample([diag(2), mat(1, 1, 0, 1)], 2)
    assert all(v > 0 for v in vals.values())
    assert vals[diag(2)] == F(1, 4)
