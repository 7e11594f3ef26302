"""Seeded random instances for the invariant suites and tests."""
from __future__ import annotations

import itertools
import zlib
from typing import Sequence

import numpy as np

from .graph import Graph, build_graph, cliques
from .groups import FiniteGroup, cyclic, dihedral, direct_product, quaternion8, remak_decomposition, symmetric
from .product import GraphOfGroups


def rng_for(seed: int, *keys: int | str) -> np.random.Generator:
    """Independent Philox stream per (seed, keys); string keys are hashed stably."""
    words = [seed] + [zlib.crc32(k.encode()) if isinstance(k, str) else k for k in keys]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(words)))


def small_groups() -> list[FiniteGroup]:
    """Vertex groups of order <= 12, some decomposable, some not."""
    z = cyclic
    return [
        z(2), z(3), z(4), z(5), z(6), z(7), z(8), z(9), z(10), z(12),
        direct_product(z(2), z(2)),
        direct_product(z(2), z(4)),
        direct_product(z(2), z(6)),
        direct_product(z(3), z(3)),
        symmetric(3),
        dihedral(4),
        dihedral(5),
        dihedral(6),
        quaternion8(),
    ]


def group_corpus(max_order: int = 16) -> list[FiniteGroup]:
    """Cyclic, dihedral, quaternion and symmetric groups, and every direct product of them within max_order."""
    base = [cyclic(n) for n in range(1, max_order + 1)]
    base += [dihedral(n) for n in range(2, max_order // 2 + 1)]
    base += [quaternion8()]
    base += [symmetric(n) for n in (3, 4) if symmetric(n).order <= max_order]
    out = list(base)
    nontrivial = [g for g in base if g.order > 1]
    r = 2
    while 2 ** r <= max_order:
        for combo in itertools.combinations_with_replacement(nontrivial, r):
            size = 1
            for g in combo:
                size *= g.order
            if size <= max_order:
                prod = combo[0]
                for g in combo[1:]:
                    prod = direct_product(prod, g)
                out.append(prod)
        r += 1
    return out


def random_graph(rng: np.random.Generator, n: int, p: float = 0.5, prefix: str = "v") -> Graph:
    vs = [f"{prefix}{i}" for i in range(n)]
    es = [(u, v) for u, v in itertools.combinations(vs, 2) if rng.random() < p]
    return build_graph(vs, es)


def random_gog(
    rng: np.random.Generator,
    n: int,
    pool: Sequence[FiniteGroup] | None = None,
    p: float = 0.5,
    max_refined: int | None = None,
) -> GraphOfGroups:
    """Random graph with groups drawn from `pool`; `max_refined` bounds the Remak factor count."""
    pool = list(pool) if pool is not None else small_groups()
    g = random_graph(rng, n, p)
    while True:
        groups = [pool[int(rng.integers(len(pool)))] for _ in range(n)]
        if max_refined is None or sum(len(remak_decomposition(x)) for x in groups) <= max_refined:
            return GraphOfGroups(g, dict(zip(g.vertices, groups)))


def random_subset(rng: np.random.Generator, xs: Sequence[str]) -> frozenset[str]:
    return frozenset(x for x in xs if rng.random() < 0.5)


def random_complete_subset(rng: np.random.Generator, g: Graph) -> frozenset[str]:
    """A random subset of a random clique (possibly empty)."""
    cs = cliques(g)
    if not cs:
        return frozenset()
    c = g.sorted(cs[int(rng.integers(len(cs)))])
    return random_subset(rng, c)


def random_relabeling(rng: np.random.Generator, g: FiniteGroup) -> FiniteGroup:
    """The same group with its non-identity elements shuffled."""
    perm = [0] + [int(i) + 1 for i in rng.permutation(g.order - 1)]
    return g.relabel(perm)
