"""Seeded invariant suites, one per module, runnable from the command line.

Every suite draws from its own random stream keyed by (seed, suite name), so
a report depends only on the seed and the trial count.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

from . import oracles
from .graph import (
    build_graph,
    clique_signatures,
    cliques,
    co_components,
    components,
    identity_partition,
    is_module,
    is_t0,
    is_t1,
    quotient_graph,
    t0_quotient,
)
from .groups import are_isomorphic, canonical_table, cyclic, remak_decomposition
from .lattice import all_classes, class_join, class_leq, class_meet
from .product import (
    conjugate,
    in_parabolic,
    multiply,
    normal_form,
    random_word,
    retraction,
    support,
    words_equal,
)
from .rigidity import canonicalize, gog_isomorphic, obfuscate, remak_refine
from .sampling import group_corpus, random_complete_subset, random_gog, random_graph, random_relabeling, random_subset, rng_for


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def expect(self, cond: bool, what: str):
        self.checks += 1
        if not cond:
            self.failures.append(what)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name}: {self.checks} checks, {len(self.failures)} failures{tail}"


def check_graphs(res: SuiteResult, trials: int, seed: int):
    rng = rng_for(seed, res.name)
    for t in range(trials):
        g = random_graph(rng, int(rng.integers(0, 9)), float(rng.random()))
        tag = f"trial {t}"
        res.expect(set(cliques(g)) == oracles.brute_cliques(g), f"{tag}: cliques differ from brute force")
        sig = clique_signatures(g)
        res.expect(is_t0(g) == (len(set(sig.values())) == len(g)), f"{tag}: T0 vs signature injectivity")
        cs = cliques(g)
        t1_by_cliques = all(frozenset.intersection(*[c for c in cs if v in c]) == {v} for v in g.vertices)
        res.expect(is_t1(g) == t1_by_cliques, f"{tag}: T1 vs clique intersections")
        res.expect(not is_t1(g) or is_t0(g), f"{tag}: T1 without T0")
        part, q = t0_quotient(g)
        res.expect(is_t0(q), f"{tag}: T0 quotient is not T0")
        res.expect(all(is_module(g, b) and g.is_complete(b) for b in part), f"{tag}: T0 block not a complete module")
        for p in (components(g), co_components(g)):
            res.expect(all(is_module(g, b) for b in p), f"{tag}: component block not a module")
        res.expect(quotient_graph(g, identity_partition(g)) == g, f"{tag}: identity quotient changed the graph")


def check_groups(res: SuiteResult, trials: int, seed: int):
    rng = rng_for(seed, res.name)
    corpus = group_corpus(12)
    picks = [corpus[int(rng.integers(len(corpus)))] for _ in range(trials)]
    for t, g in enumerate(picks):
        tag = f"trial {t} ({g.name})"
        h = random_relabeling(rng, g)
        phi = are_isomorphic(g, h)
        res.expect(phi is not None, f"{tag}: relabeled copy not isomorphic")
        if phi is not None:
            res.expect(
                all(phi[g.table[a][b]] == h.table[phi[a]][phi[b]] for a in range(g.order) for b in range(g.order)),
                f"{tag}: returned map is not multiplicative",
            )
        res.expect(canonical_table(g) == canonical_table(h), f"{tag}: canonical table not relabeling invariant")
        other = corpus[int(rng.integers(len(corpus)))]
        iso = are_isomorphic(g, other) is not None
        res.expect(iso == (are_isomorphic(other, g) is not None), f"{tag}: isomorphism not symmetric")
        res.expect(iso == (canonical_table(g) == canonical_table(other)), f"{tag}: canonical table disagrees with isomorphism")
        factors = remak_decomposition(g)
        res.expect(_reconstructs(g, [f.elements for f in factors]), f"{tag}: Remak factors do not rebuild the group")
        res.expect(
            all(len(remak_decomposition(f.as_group())) == 1 for f in factors),
            f"{tag}: a Remak factor decomposes further",
        )
        keys = sorted(canonical_table(f.as_group()) for f in factors)
        keys_h = sorted(canonical_table(f.as_group()) for f in remak_decomposition(h))
        res.expect(keys == keys_h, f"{tag}: Remak factor classes depend on labeling")


def _reconstructs(g, factors) -> bool:
    """Every element is exactly one ordered product of factor elements, and factors commute."""
    for a, b in itertools.combinations(factors, 2):
        if any(g.table[x][y] != g.table[y][x] for x in a for y in b):
            return False
    seen = set()
    for combo in itertools.product(*factors):
        x = 0
        for y in combo:
            x = g.table[x][y]
        seen.add(x)
    total = 1
    for f in factors:
        total *= len(f)
    return total == g.order and len(seen) == g.order


def check_words(res: SuiteResult, trials: int, seed: int):
    rng = rng_for(seed, res.name)
    for t in range(trials):
        gog = random_gog(rng, int(rng.integers(1, 6)))
        vs = gog.vertices
        tag = f"trial {t}"
        u, v = (random_word(gog, seed, 10, trial=2 * t + k, vertices=None) for k in (0, 1))
        raw = [(s.vertex, s.element) for s in u] + [(s.vertex, s.element) for s in v]
        res.expect(normal_form(gog, u) == u, f"{tag}: normal form not idempotent")
        res.expect(words_equal(gog, raw, multiply(gog, u, v)), f"{tag}: word not equal to its normal form")
        res.expect(normal_form(gog, raw) == multiply(gog, normal_form(gog, u), normal_form(gog, v)), f"{tag}: multiply is not a homomorphism")
        a, b = random_subset(rng, vs), random_subset(rng, vs)
        res.expect(
            retraction(gog, a, multiply(gog, u, v)) == multiply(gog, retraction(gog, a, u), retraction(gog, a, v)),
            f"{tag}: retraction is not a homomorphism",
        )
        res.expect(retraction(gog, a, retraction(gog, b, u)) == retraction(gog, a & b, u), f"{tag}: retractions do not compose")
        w = random_word(gog, seed, 10, trial=10_000 + t, vertices=gog.graph.sorted(a | b))
        if in_parabolic(gog, w, a) and in_parabolic(gog, w, b):
            res.expect(in_parabolic(gog, w, a & b), f"{tag}: intersection of parabolics too large")
        res.expect(_alternating_product_ok(gog, w, a, b), f"{tag}: word not generated by the two parabolics")
        c, d = random_complete_subset(rng, gog.graph), random_complete_subset(rng, gog.graph)
        y = random_word(gog, seed, 6, trial=20_000 + t, vertices=gog.graph.sorted(d))
        x = conjugate(gog, u, y)
        if in_parabolic(gog, x, c):
            res.expect(in_parabolic(gog, x, c & d), f"{tag}: conjugate lands in a parabolic outside the intersection")


def _alternating_product_ok(gog, w, a, b) -> bool:
    # split the normal form into maximal runs inside a, then inside b, ...
    if not support(gog, w) <= (a | b):
        return True
    pieces: list[list] = []
    side = None
    for s in w:
        here = "a" if s.vertex in a else "b"
        if here != side:
            pieces.append([])
            side = here
        pieces[-1].append(s)
    prod: tuple = ()
    for p in pieces:
        prod = multiply(gog, prod, p)
    return prod == tuple(w)


def check_word_oracle(res: SuiteResult, trials: int, seed: int):
    rng = rng_for(seed, res.name)
    for t in range(trials):
        n = int(rng.integers(1, 4))
        gog = random_gog(rng, n, pool=[cyclic(2), cyclic(3)])
        u = random_word(gog, seed, 5, trial=2 * t)
        raw = [(s.vertex, s.element) for s in u]
        # a shuffled, unreduced spelling of the same word
        raw2 = list(raw)
        if raw2:
            i = int(rng.integers(len(raw2)))
            v, e = raw2[i]
            inv = gog.groups[v].inverses[e]
            raw2[i:i + 1] = [(v, inv), (v, e), (v, e)]
        v_word = random_word(gog, seed, 5, trial=2 * t + 1)
        for x, y in ((raw, raw2), (raw, list(v_word))):
            res.expect(
                words_equal(gog, x, y) == oracles.oracle_equal(gog, x, y),
                f"trial {t}: words_equal disagrees with rewrite search on {x} vs {y}",
            )


def check_lattice(res: SuiteResult, trials: int, seed: int):
    rng = rng_for(seed, res.name)
    for t in range(trials):
        gog = random_gog(rng, int(rng.integers(0, 6)))
        g = gog.graph
        classes = all_classes(g)
        tag = f"trial {t}"
        for c, d in itertools.product(classes, repeat=2):
            m = class_meet(c, d)
            res.expect(class_leq(m, c) and class_leq(m, d), f"{tag}: meet not a lower bound")
            res.expect(all(class_leq(x, m) for x in classes if class_leq(x, c) and class_leq(x, d)), f"{tag}: meet not greatest")
            j = class_join(c, d)
            uppers = [x for x in classes if class_leq(c, x) and class_leq(d, x)]
            if j is None:
                res.expect(not uppers and not g.is_complete(c.carrier | d.carrier), f"{tag}: join missing")
            else:
                res.expect(all(class_leq(j, x) for x in uppers) and j in uppers, f"{tag}: join not least upper bound")
            if class_leq(c, d) and class_leq(d, c):
                res.expect(c == d, f"{tag}: antisymmetry fails")
            res.expect(
                math.gcd(gog.order_of(c.carrier), gog.order_of(d.carrier)) % gog.order_of(m.carrier) == 0,
                f"{tag}: meet order does not divide",
            )


def check_rigidity(res: SuiteResult, trials: int, seed: int):
    rng = rng_for(seed, res.name)
    for t in range(trials):
        gog = random_gog(rng, int(rng.integers(1, 7)), max_refined=12)
        tag = f"trial {t}"
        cert = canonicalize(gog)
        disguised = obfuscate(gog, seed * 7919 + t)
        res.expect(canonicalize(disguised) == cert, f"{tag}: obfuscated presentation changed the certificate")
        refined, part = remak_refine(gog)
        res.expect(all(len(remak_decomposition(x)) == 1 for x in refined.groups.values()), f"{tag}: refined group decomposes")
        res.expect(gog_isomorphic(refined, remak_refine(disguised)[0]) is not None, f"{tag}: refinements of two presentations differ")
        res.expect(all(is_module(refined.graph, b) and refined.graph.is_complete(b) for b in part), f"{tag}: back-map block not a complete module")
        order = list(gog.vertices)
        rng.shuffle(order)
        reordered = type(gog)(build_graph(order, gog.graph.edge_list()), gog.groups)
        res.expect(canonicalize(reordered) == cert, f"{tag}: certificate depends on vertex order")
        other = random_gog(rng, len(gog.vertices), max_refined=12)
        r2, _ = remak_refine(other)
        same = canonicalize(other) == cert
        res.expect(same == (gog_isomorphic(refined, r2) is not None), f"{tag}: certificate disagrees with direct isomorphism search")


SUITES: list[tuple[str, Callable[[SuiteResult, int, int], None]]] = [
    ("graph_core", check_graphs),
    ("finite_group", check_groups),
    ("graph_product", check_words),
    ("word_oracle", check_word_oracle),
    ("parabolic_lattice", check_lattice),
    ("rigidity", check_rigidity),
]


def run_selfcheck(trials: int = 20, seed: int = 0) -> list[SuiteResult]:
    out = []
    for name, fn in SUITES:
        res = SuiteResult(name)
        try:
            fn(res, trials, seed)
        except Exception as e:  # report, don't abort the remaining suites
            res.failures.append(f"raised {type(e).__name__}: {e}")
        out.append(res)
    return out
