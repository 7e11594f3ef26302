"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""
from __future__ import annotations

import itertools
import time
from collections import Counter

import numpy as np
import pytest

from graphprod import oracles
from graphprod.graph import build_graph, cliques
from graphprod.groups import canonical_table, cyclic, remak_decomposition
from graphprod.lattice import all_classes, class_join, class_leq, class_meet
from graphprod.product import (
    GraphOfGroups,
    conjugate,
    in_parabolic,
    multiply,
    normal_form,
    random_word,
    retraction,
    words_equal,
)
from graphprod.rigidity import canonicalize, gog_isomorphic, obfuscate
from graphprod.sampling import (
    group_corpus,
    random_complete_subset,
    random_gog,
    random_relabeling,
    random_subset,
    rng_for,
    small_groups,
)

SEED = 20240611
Z2, Z3 = cyclic(2), cyclic(3)


def labeled_graphs(n: int):
    vs = [chr(ord("a") + i) for i in range(n)]
    pairs = list(itertools.combinations(vs, 2))
    for mask in range(1 << len(pairs)):
        yield build_graph(vs, [p for i, p in enumerate(pairs) if mask >> i & 1])


def same_partition(a: np.ndarray, b: np.ndarray) -> bool:
    pairs = len(set(zip(a.tolist(), b.tolist())))
    return pairs == len(set(a.tolist())) == len(set(b.tolist()))


def test_word_problem_matches_rewrite_oracle(acceptance_report):
    start = time.perf_counter()
    configs = words = 0
    bad = []
    for n in range(5):
        for g in labeled_graphs(n):
            for groups in itertools.product((Z2, Z3), repeat=n):
                gog = GraphOfGroups(g, dict(zip(g.vertices, groups)))
                ws, comps = oracles.exhaustive_classes(gog, 5)
                ids: dict = {}
                nf = np.fromiter((ids.setdefault(normal_form(gog, w), len(ids)) for w in ws), np.int64, len(ws))
                if not same_partition(comps, nf):
                    bad.append((g.edge_list(), [x.order for x in groups]))
                configs += 1
                words += len(ws)
    exhaustive_time = time.perf_counter() - start

    # random words up to length 8, each against a disguised or independent partner
    rng = rng_for(SEED, "criterion-1")
    random_bad = 0
    for t in range(1000):
        n = int(rng.integers(1, 5))
        gog = random_gog(rng, n, pool=[Z2, Z3])
        vs = gog.vertices
        length = int(rng.integers(0, 9))
        w = [(vs[int(rng.integers(n))], 0) for _ in range(length)]
        w = [(v, int(rng.integers(1, gog.groups[v].order))) for v, _ in w]
        if rng.random() < 0.5 and w:
            partner = list(w)
            i = int(rng.integers(len(partner) + 1))
            v = vs[int(rng.integers(n))]
            e = int(rng.integers(1, gog.groups[v].order))
            partner[i:i] = [(v, e), (v, gog.groups[v].inverses[e])]
            partner = partner[:8]
        else:
            partner = [(vs[int(rng.integers(n))], 0) for _ in range(int(rng.integers(0, 9)))]
            partner = [(v, int(rng.integers(1, gog.groups[v].order))) for v, _ in partner]
        ok = tuple(normal_form(gog, w)) == oracles.oracle_normal_form(gog, w)
        ok &= words_equal(gog, w, partner) == oracles.oracle_equal(gog, w, partner)
        random_bad += not ok
    elapsed = time.perf_counter() - start
    passed = not bad and random_bad == 0 and elapsed < 60
    acceptance_report(
        1, "word problem vs rewrite oracle", passed,
        f"{configs} graphs of groups, {words} words of length <= 5, {len(bad)} mismatching configurations; "
        f"1000 random words, {random_bad} mismatches; {exhaustive_time:.1f}s exhaustive, {elapsed:.1f}s total (target < 60s)",
    )
    assert not bad and random_bad == 0
    assert elapsed < 60


def test_parabolic_intersection(acceptance_report):
    rng = rng_for(SEED, "criterion-2")
    failures = nonvacuous = 0
    for t in range(5000):
        gog = random_gog(rng, int(rng.integers(1, 7)))
        vs = gog.vertices
        a, b = random_subset(rng, vs), random_subset(rng, vs)
        pool = [a & b, a, b, a | b, frozenset(vs)][int(rng.integers(5))]
        w = random_word(gog, SEED, 8, trial=t, vertices=gog.graph.sorted(pool))
        if in_parabolic(gog, w, a) and in_parabolic(gog, w, b):
            nonvacuous += 1
            failures += not in_parabolic(gog, w, a & b)
    acceptance_report(2, "G(A) and G(B) meet in G(A & B)", failures == 0,
                      f"5000 instances, {nonvacuous} with w in both, {failures} failures")
    assert failures == 0


def test_retraction_homomorphism_and_composition(acceptance_report):
    rng = rng_for(SEED, "criterion-3")
    failures = 0
    for t in range(2000):
        gog = random_gog(rng, int(rng.integers(1, 7)))
        vs = gog.vertices
        u = random_word(gog, SEED, 10, trial=2 * t)
        v = random_word(gog, SEED, 10, trial=2 * t + 1)
        a, b = random_subset(rng, vs), random_subset(rng, vs)
        hom = retraction(gog, a, multiply(gog, u, v)) == multiply(gog, retraction(gog, a, u), retraction(gog, a, v))
        comp = retraction(gog, a, retraction(gog, b, u)) == retraction(gog, a & b, u)
        fixes = retraction(gog, a, retraction(gog, a, v)) == retraction(gog, a, v)
        failures += not (hom and comp and fixes)
    acceptance_report(3, "retractions are homomorphisms and compose by intersection", failures == 0,
                      f"2000 word pairs, {failures} failures")
    assert failures == 0


def test_conjugates_into_complete_parabolics(acceptance_report):
    rng = rng_for(SEED, "criterion-4")
    failures = hits = 0
    for t in range(2000):
        gog = random_gog(rng, int(rng.integers(1, 7)))
        g_ = gog.graph
        # draw A and B from one clique half the time so that hits are common
        if rng.random() < 0.5:
            cs = cliques(g_)
            c = g_.sorted(cs[int(rng.integers(len(cs)))])
            a, b = random_subset(rng, c), random_subset(rng, c)
        else:
            a, b = random_complete_subset(rng, g_), random_complete_subset(rng, g_)
        y = random_word(gog, SEED, 6, trial=2 * t, vertices=g_.sorted(b))
        pool = [None, g_.sorted(a | b), g_.sorted(a)][int(rng.integers(3))]
        g = random_word(gog, SEED, 6, trial=2 * t + 1, vertices=pool)
        x = conjugate(gog, g, y)
        if in_parabolic(gog, x, a):
            hits += 1
            failures += not in_parabolic(gog, x, a & b)
    acceptance_report(4, "conjugates landing in complete G(A) lie in G(A & B)", failures == 0,
                      f"2000 probes, {hits} landed in G(A), {failures} failures")
    assert failures == 0


def test_spherical_class_lattice(acceptance_report):
    failures = graphs = 0
    for n in range(6):
        for g in labeled_graphs(n):
            graphs += 1
            cls = all_classes(g)
            k = len(cls)
            leq = np.array([[class_leq(c, d) for d in cls] for c in cls])
            idx = {c.carrier: i for i, c in enumerate(cls)}
            ok = bool(leq.diagonal().all())
            ok &= not (leq & leq.T & ~np.eye(k, dtype=bool)).any()
            ok &= not ((leq.astype(int) @ leq.astype(int) > 0) & ~leq).any()
            for i, j in itertools.product(range(k), repeat=2):
                m = idx[class_meet(cls[i], cls[j]).carrier]
                lower = leq[:, i] & leq[:, j]
                ok &= bool(lower[m]) and bool(leq[lower, m].all())
                upper = leq[i, :] & leq[j, :]
                jn = class_join(cls[i], cls[j])
                complete = g.is_complete(cls[i].carrier | cls[j].carrier)
                if jn is None:
                    ok &= not upper.any() and not complete
                else:
                    u = idx[jn.carrier]
                    ok &= complete and bool(upper[u]) and bool(leq[u, upper].all())
            failures += not ok
    acceptance_report(5, "spherical classes form a poset with meets and partial joins", failures == 0,
                      f"{graphs} labeled graphs on <= 5 vertices, {failures} failures")
    assert failures == 0


def test_remak_factors_are_unique(acceptance_report):
    rng = rng_for(SEED, "criterion-6")
    corpus = group_corpus(16)
    failures = []
    for g in corpus:
        factors = remak_decomposition(g)
        if not _rebuilds(g, [f.elements for f in factors]):
            failures.append(f"{g.name}: factors do not rebuild the group")
        keys = Counter(canonical_table(f.as_group()) for f in factors)
        for _ in range(10):
            h = random_relabeling(rng, g)
            hf = remak_decomposition(h)
            if Counter(canonical_table(f.as_group()) for f in hf) != keys or not _rebuilds(h, [f.elements for f in hf]):
                failures.append(f"{g.name}: factor classes change under relabeling")
                break
    acceptance_report(6, "Remak factors rebuild the group and are labeling invariant", not failures,
                      f"{len(corpus)} groups x 10 relabelings, {len(failures)} failures")
    assert not failures, failures


def _rebuilds(g, factors) -> bool:
    commute = all(g.table[x][y] == g.table[y][x] for a, b in itertools.combinations(factors, 2) for x in a for y in b)
    products = set()
    for combo in itertools.product(*factors):
        x = 0
        for y in combo:
            x = g.table[x][y]
        products.add(x)
    return commute and len(products) == g.order == int(np.prod([len(f) for f in factors]))


def test_obfuscation_round_trip(acceptance_report):
    rng = rng_for(SEED, "criterion-7")
    start = time.perf_counter()
    failures = merged = 0
    for t in range(200):
        gog = random_gog(rng, int(rng.integers(1, 7)), pool=small_groups(), max_refined=12)
        other = obfuscate(gog, SEED + t)
        merged += len(other.vertices) < len(gog.vertices)
        failures += canonicalize(other) != canonicalize(gog)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 120
    acceptance_report(7, "certificates survive obfuscation", ok,
                      f"200 round trips ({merged} with merged vertices), {failures} failures, {elapsed:.1f}s (target < 120s)")
    assert failures == 0
    assert elapsed < 120


def _gog(vs, es, groups):
    return GraphOfGroups(build_graph(vs, es), dict(zip(vs, groups)))


def test_negative_controls(acceptance_report):
    p3 = _gog("abc", [("a", "b"), ("b", "c")], [Z2] * 3)
    k3 = _gog("abc", [("a", "b"), ("b", "c"), ("a", "c")], [Z2] * 3)
    d3 = _gog("abc", [], [Z2] * 3)
    certs = {canonicalize(x) for x in (p3, k3, d3)}
    x = _gog("abc", [("a", "b"), ("b", "c")], [Z2, Z3, Z2])
    y = _gog("abc", [("a", "b"), ("b", "c")], [Z3, Z2, Z2])
    absent = gog_isomorphic(x, y) is None
    ok = len(certs) == 3 and absent
    acceptance_report(8, "negative controls", ok,
                      f"P3/K3/discrete certificates distinct: {len(certs) == 3}; P3(Z2,Z3,Z2) vs P3(Z3,Z2,Z2) absent: {absent}")
    assert ok


def _closure_size(gog, verts) -> int:
    letters = [(v, e) for v in verts for e in range(1, gog.groups[v].order)]
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for l in letters:
                x = multiply(gog, w, [l])
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return len(seen)


def test_complete_graph_products(acceptance_report):
    rng = rng_for(SEED, "criterion-9")
    pool = [g for g in small_groups() if g.order <= 12]
    failures = checked = 0
    for t in range(60):
        n = int(rng.integers(1, 5))
        gog = random_gog(rng, n, pool=pool, p=1.0)
        for s in range(20):
            w = random_word(gog, SEED, 12, trial=t * 100 + s)
            verts = [x.vertex for x in w]
            idx = [gog.graph.index(v) for v in verts]
            failures += not (len(set(verts)) == len(verts) and idx == sorted(idx))
        # clique orders, on the complete graph and on the cliques of a random graph
        other = random_gog(rng, n, pool=pool)
        cases = [(gog, list(gog.vertices))] + [(other, other.graph.sorted(c)) for c in cliques(other.graph)]
        for x, c in cases:
            if x.order_of(c) <= 36:
                checked += 1
                failures += _closure_size(x, c) != x.order_of(c)
    acceptance_report(9, "complete-graph products are direct products", failures == 0,
                      f"1200 normal forms on complete graphs and {checked} clique order counts, {failures} failures")
    assert failures == 0
