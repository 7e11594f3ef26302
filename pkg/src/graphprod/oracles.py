"""Brute-force reference implementations.

These share nothing with the fast paths they check: they work straight from
the definitions and are only usable at toy sizes.
"""
from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph
from .groups import FiniteGroup
from .product import GraphOfGroups


def brute_cliques(g: Graph) -> set[frozenset[str]]:
    vs = g.vertices

    def complete(xs):
        return all(frozenset((u, v)) in g.edges for u, v in itertools.combinations(xs, 2))

    comp = [frozenset(xs) for r in range(1, len(vs) + 1) for xs in itertools.combinations(vs, r) if complete(xs)]
    return {c for c in comp if not any(c < d for d in comp)}


# --- word problem ------------------------------------------------------------

Raw = tuple[tuple[str, int], ...]


def rewrite_moves(gog: GraphOfGroups, w: Raw) -> Iterable[Raw]:
    """Single non-lengthening moves: swap commuting neighbours, merge equal neighbours, drop identities."""
    g = gog.graph
    for i, (v, e) in enumerate(w):
        if e == 0:
            yield w[:i] + w[i + 1:]
    for i in range(len(w) - 1):
        (u, a), (v, b) = w[i], w[i + 1]
        if u == v:
            c = gog.groups[u].table[a][b]
            yield w[:i] + ((u, c),) + w[i + 2:]
        elif frozenset((u, v)) in g.edges:
            yield w[:i] + ((v, b), (u, a)) + w[i + 2:]


def reachable(gog: GraphOfGroups, w: Sequence) -> set[Raw]:
    start = tuple((v, e) for v, e in w)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in rewrite_moves(gog, x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def oracle_normal_form(gog: GraphOfGroups, w: Sequence) -> Raw:
    """Least (by vertex order) among the shortest words reachable from w."""
    pos = {v: i for i, v in enumerate(gog.vertices)}
    words = reachable(gog, w)
    short = min(len(x) for x in words)
    return min((x for x in words if len(x) == short), key=lambda x: [(pos[v], e) for v, e in x])


def oracle_equal(gog: GraphOfGroups, u: Sequence, v: Sequence) -> bool:
    return not reachable(gog, u).isdisjoint(reachable(gog, v))


class UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            gp = self.parent[p]
            self.parent[x] = gp
            x, p = p, gp
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def oracle_classes(gog: GraphOfGroups, words: Iterable[Raw]) -> UnionFind:
    """Connected components of the rewrite graph generated by a set of words.

    Moves never lengthen a word, so the closure is finite; two words are
    equal in the group iff they share a component.
    """
    uf = UnionFind()
    stack = list(words)
    while stack:
        w = stack.pop()
        uf.find(w)
        for x in rewrite_moves(gog, w):
            if x not in uf.parent:
                stack.append(x)
            uf.union(w, x)
    return uf


def all_words(gog: GraphOfGroups, max_len: int) -> Iterable[Raw]:
    letters = [(v, e) for v in gog.vertices for e in range(1, gog.groups[v].order)]
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)


def _components(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Connected components by repeated hooking and pointer jumping; label = least member."""
    label = np.arange(n)
    while True:
        a, b = label[src], label[dst]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        moved = lo != hi
        if not moved.any():
            return label
        np.minimum.at(label, hi[moved], lo[moved])
        while True:
            nxt = label[label]
            if np.array_equal(nxt, label):
                break
            label = nxt


def exhaustive_classes(gog: GraphOfGroups, max_len: int) -> tuple[list[Raw], np.ndarray]:
    """Every word of length <= max_len over nonidentity letters, with its rewrite component.

    Same rewrite graph as oracle_classes, built with array arithmetic: words
    of length n are the base-k numerals of n digits, and an adjacent letter
    pair either swaps (distinct adjacent vertices), merges into one letter,
    or cancels (merge to the identity followed by deletion).
    """
    letters = [(v, e) for v in gog.vertices for e in range(1, gog.groups[v].order)]
    code = {l: i for i, l in enumerate(letters)}
    k = len(letters)
    SWAP, KEEP, CANCEL = -2, -3, -1
    act = np.full((k, k), KEEP, dtype=np.int64)
    for i, (u, a) in enumerate(letters):
        for j, (v, b) in enumerate(letters):
            if u == v:
                c = gog.groups[u].table[a][b]
                act[i, j] = code[(u, c)] if c else CANCEL
            elif frozenset((u, v)) in gog.graph.edges:
                act[i, j] = SWAP
    offset = [0]
    for n in range(max_len + 1):
        offset.append(offset[-1] + k ** n)
    digits = {}
    for n in range(max_len + 1):
        idx = np.arange(k ** n)
        digits[n] = np.stack([idx // k ** (n - 1 - i) % k for i in range(n)], axis=1) if n else np.zeros((1, 0), np.int64)

    def index_of(d: np.ndarray) -> np.ndarray:
        n = d.shape[1]
        weights = k ** np.arange(n - 1, -1, -1)
        return offset[n] + d @ weights if n else np.full(len(d), offset[0])

    src, dst = [], []
    for n in range(2, max_len + 1):
        d = digits[n]
        here = offset[n] + np.arange(len(d))
        for i in range(n - 1):
            a = act[d[:, i], d[:, i + 1]]
            sw = a == SWAP
            if sw.any():
                t = d[sw].copy()
                t[:, [i, i + 1]] = t[:, [i + 1, i]]
                src.append(here[sw])
                dst.append(index_of(t))
            mg = a >= 0
            if mg.any():
                t = np.concatenate([d[mg, :i], a[mg, None], d[mg, i + 2:]], axis=1)
                src.append(here[mg])
                dst.append(index_of(t))
            cn = a == CANCEL
            if cn.any():
                t = np.concatenate([d[cn, :i], d[cn, i + 2:]], axis=1)
                src.append(here[cn])
                dst.append(index_of(t))
    total = offset[-1]
    if src:
        comps = _components(total, np.concatenate(src), np.concatenate(dst))
    else:
        comps = np.arange(total)
    # itertools.product enumerates in the same order as the numerals above
    words = [w for n in range(max_len + 1) for w in itertools.product(letters, repeat=n)]
    return words, comps


# --- groups --------------------------------------------------------------------


def brute_canonical_table(g: FiniteGroup) -> bytes:
    n = g.order
    best = None
    for rest in itertools.permutations(range(1, n)):
        perm = (0,) + rest
        flat = [0] * (n * n)
        for a in range(n):
            for b in range(n):
                flat[perm[a] * n + perm[b]] = perm[g.table[a][b]]
        if best is None or flat < best:
            best = flat
    return bytes(best)


def brute_subgroups(g: FiniteGroup) -> list[frozenset[int]]:
    """All subgroups, as closures of every subset of elements (order <= 8 or so)."""
    out = set()
    n = g.order
    for r in range(n + 1):
        for xs in itertools.combinations(range(1, n), r):
            s = set(xs) | {0}
            if all(g.table[a][b] in s for a in s for b in s):
                out.add(frozenset(s))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def brute_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    if g.order != h.order:
        return False
    n = g.order
    for rest in itertools.permutations(range(1, n)):
        phi = (0,) + rest
        if all(phi[g.table[a][b]] == h.table[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            return True
    return False


def internal_direct_pairs(g: FiniteGroup, normals: Sequence[frozenset[int]]) -> list[tuple[frozenset, frozenset]]:
    """Pairs (N, M) of proper nontrivial normal subgroups with N M = g and N & M = {e}."""
    out = []
    for a, b in itertools.combinations(normals, 2):
        if len(a) in (1, g.order) or len(b) in (1, g.order):
            continue
        if a & b == {0} and len(a) * len(b) == g.order:
            out.append((a, b))
    return out
