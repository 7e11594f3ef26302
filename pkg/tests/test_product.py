from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphprod import oracles
from graphprod.graph import UnknownVertex, build_graph
from graphprod.groups import cyclic, symmetric
from graphprod.product import (
    ElementOutOfRange,
    GraphOfGroups,
    Syllable,
    TrivialVertexGroup,
    conjugate,
    format_word,
    in_parabolic,
    invert,
    multiply,
    normal_form,
    parse_word,
    random_word,
    retraction,
    support,
    words_equal,
)
from graphprod.sampling import random_complete_subset, random_gog, random_subset, rng_for

Z2, Z3 = cyclic(2), cyclic(3)
P3 = GraphOfGroups(build_graph("abc", [("a", "b"), ("b", "c")]), {v: Z2 for v in "abc"})


def w(text: str, gog=P3):
    return parse_word(gog, text)


def nf(text: str, gog=P3) -> str:
    return format_word(normal_form(gog, w(text, gog)))


def test_normal_form_examples():
    assert nf("a b a") == "b"
    assert nf("a c a") == "a c a"
    assert nf("") == ""
    assert nf("b a") == "a b"


def test_examples_agree_with_rewrite_search():
    for text in ["a b a", "a c a", "", "b a", "c a", "c b a b c"]:
        word = [(s.vertex, s.element) for s in w(text)]
        assert tuple(normal_form(P3, word)) == oracles.oracle_normal_form(P3, word)


def test_arithmetic_examples():
    assert multiply(P3, w("a"), w("a")) == ()
    assert format_word(invert(P3, w("a c"))) == "c a"
    assert format_word(conjugate(P3, w("b"), w("a"))) == "a"
    assert words_equal(P3, w("a b a"), w("b"))
    assert words_equal(P3, w("a a"), ())
    assert not words_equal(P3, w("a c"), w("c a"))


def test_retraction_examples():
    assert format_word(retraction(P3, {"a", "b"}, w("a c b"))) == "a b"
    word = w("c a b c a")
    assert retraction(P3, set("abc"), word) == normal_form(P3, word)
    assert retraction(P3, set(), word) == ()
    with pytest.raises(UnknownVertex):
        retraction(P3, {"z"}, word)


def test_support_and_membership_examples():
    assert support(P3, w("a b a")) == {"b"}
    assert support(P3, ()) == frozenset()
    assert support(P3, w("a c a")) == {"a", "c"}
    assert in_parabolic(P3, w("b"), {"a", "b"})
    assert not in_parabolic(P3, w("a c a"), {"a", "b"})
    assert in_parabolic(P3, (), set())


def test_random_word_examples():
    assert random_word(P3, 7, 0) == ()
    assert random_word(P3, 7, 6) == random_word(P3, 7, 6)
    assert all(len(random_word(P3, s, 5)) <= 5 for s in range(50))
    assert len({random_word(P3, 3, 8, trial=t) for t in range(10)}) > 1
    assert set(support(P3, random_word(P3, 5, 9, vertices=["a", "c"]))) <= {"a", "c"}
    with pytest.raises(ValueError):
        random_word(P3, 0, -1)


def test_word_literals():
    gog = GraphOfGroups(build_graph(["x", "y"], []), {"x": Z3, "y": Z2})
    assert w("x^2 y x", gog) == (Syllable("x", 2), Syllable("y", 1), Syllable("x", 1))
    assert format_word(w("x^2 y^1", gog)) == "x^2 y"
    assert w("", gog) == ()
    with pytest.raises(UnknownVertex):
        w("z", gog)
    with pytest.raises(ElementOutOfRange):
        w("y^2", gog)


def test_invalid_input():
    with pytest.raises(UnknownVertex):
        normal_form(P3, [("z", 1)])
    with pytest.raises(ElementOutOfRange):
        normal_form(P3, [("a", 2)])
    with pytest.raises(TrivialVertexGroup):
        GraphOfGroups(build_graph(["a"], []), {"a": cyclic(1)})
    with pytest.raises(ValueError):
        GraphOfGroups(build_graph(["a", "b"], []), {"a": Z2})


def test_identity_syllables_vanish():
    assert normal_form(P3, [("a", 0), ("b", 1), ("a", 0)]) == w("b")


def test_nonabelian_vertex_group():
    s3 = symmetric(3)
    gog = GraphOfGroups(build_graph(["s", "t"], [("s", "t")]), {"s": s3, "t": Z2})
    x, y = 1, 2
    assert normal_form(gog, [("s", x), ("t", 1), ("s", y)]) == (Syllable("s", s3.mul(x, y)), Syllable("t", 1))


def test_exhaustive_small_graphs_match_rewrite_classes():
    # every 3-vertex graph with every Z2/Z3 assignment, words up to length 4
    vs = "abc"
    pairs = list(itertools.combinations(vs, 2))
    for mask in range(1 << 3):
        g = build_graph(vs, [p for i, p in enumerate(pairs) if mask >> i & 1])
        for groups in itertools.product((Z2, Z3), repeat=3):
            gog = GraphOfGroups(g, dict(zip(vs, groups)))
            words, comps = oracles.exhaustive_classes(gog, 4)
            by_comp, by_nf = {}, {}
            for word, c in zip(words, comps.tolist()):
                form = normal_form(gog, word)
                assert by_comp.setdefault(c, form) == form
                assert by_nf.setdefault(form, c) == c


def test_vectorized_classes_match_union_find():
    gog = GraphOfGroups(build_graph("abc", [("a", "b")]), {"a": Z3, "b": Z2, "c": Z2})
    words, comps = oracles.exhaustive_classes(gog, 4)
    uf = oracles.oracle_classes(gog, words)
    pairs = {(c, uf.find(x)) for x, c in zip(words, comps.tolist())}
    assert len(pairs) == len(set(comps.tolist())) == len({uf.find(x) for x in words})


gog_seeds = st.integers(0, 2**32 - 1)


def _sample(seed):
    rng = rng_for(seed, "product")
    gog = random_gog(rng, int(rng.integers(1, 6)))
    return rng, gog


@settings(max_examples=120, deadline=None)
@given(gog_seeds)
def test_normal_form_laws(seed):
    rng, gog = _sample(seed)
    u = random_word(gog, seed, 10, trial=0)
    v = random_word(gog, seed, 10, trial=1)
    assert normal_form(gog, u) == u
    raw = list(u) + list(v)
    assert words_equal(gog, raw, normal_form(gog, raw))
    assert multiply(gog, u, v) == normal_form(gog, raw)
    assert multiply(gog, u, invert(gog, u)) == ()
    assert len(multiply(gog, u, v)) <= len(u) + len(v)


@settings(max_examples=120, deadline=None)
@given(gog_seeds)
def test_retraction_laws(seed):
    rng, gog = _sample(seed)
    vs = gog.vertices
    u = random_word(gog, seed, 10, trial=0)
    v = random_word(gog, seed, 10, trial=1)
    a, b = random_subset(rng, vs), random_subset(rng, vs)
    assert retraction(gog, a, multiply(gog, u, v)) == multiply(gog, retraction(gog, a, u), retraction(gog, a, v))
    assert retraction(gog, a, retraction(gog, b, u)) == retraction(gog, a & b, u)
    x = random_word(gog, seed, 10, trial=2, vertices=gog.graph.sorted(a))
    assert retraction(gog, a, x) == x
    assert in_parabolic(gog, u, a) == (retraction(gog, a, u) == u)


@settings(max_examples=120, deadline=None)
@given(gog_seeds)
def test_parabolic_intersection_and_generation(seed):
    rng, gog = _sample(seed)
    vs = gog.vertices
    a, b = random_subset(rng, vs), random_subset(rng, vs)
    x = random_word(gog, seed, 10, trial=3, vertices=gog.graph.sorted(a & b))
    assert in_parabolic(gog, x, a) and in_parabolic(gog, x, b) and in_parabolic(gog, x, a & b)
    y = random_word(gog, seed, 10, trial=4, vertices=gog.graph.sorted(a | b))
    if in_parabolic(gog, y, a) and in_parabolic(gog, y, b):
        assert in_parabolic(gog, y, a & b)
    # split y into alternating runs from G(a) and G(b) and multiply back
    runs, side = [], None
    for s in y:
        here = s.vertex in a
        if here != side:
            runs.append([])
            side = here
        runs[-1].append(s)
    prod = ()
    for r in runs:
        assert in_parabolic(gog, r, a) or in_parabolic(gog, r, b)
        prod = multiply(gog, prod, r)
    assert prod == y


@settings(max_examples=120, deadline=None)
@given(gog_seeds)
def test_conjugates_into_complete_parabolics(seed):
    rng, gog = _sample(seed)
    a, b = random_complete_subset(rng, gog.graph), random_complete_subset(rng, gog.graph)
    y = random_word(gog, seed, 6, trial=5, vertices=gog.graph.sorted(b))
    g = random_word(gog, seed, 6, trial=6, vertices=gog.graph.sorted(a | b) if rng.random() < 0.5 else None)
    x = conjugate(gog, g, y)
    if in_parabolic(gog, x, a):
        assert in_parabolic(gog, x, a & b)


@settings(max_examples=80, deadline=None)
@given(gog_seeds)
def test_complete_and_discrete_extremes(seed):
    rng = rng_for(seed, "extremes")
    n = int(rng.integers(1, 5))
    full = random_gog(rng, n, p=1.0)
    u = random_word(full, seed, 12)
    idx = [full.graph.index(s.vertex) for s in u]
    assert idx == sorted(set(idx))
    empty = random_gog(rng, n, p=0.0)
    v = random_word(empty, seed, 12)
    assert all(x.vertex != y.vertex for x, y in zip(v, v[1:]))
