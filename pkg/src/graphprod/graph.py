"""Finite simple graphs: cliques, modules, modular partitions, T0/T1 tests.

Vertices are opaque strings kept in the order they were given.  Every
set-valued result is emitted sorted by that order, so all functions here are
deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ValidationError


class SelfLoop(ValidationError):
    pass


class DuplicateEdge(ValidationError):
    pass


class DuplicateVertex(ValidationError):
    pass


class UnknownEndpoint(ValidationError):
    pass


class UnknownVertex(ValidationError):
    pass


class NotModular(ValidationError):
    pass


class InvalidPartition(ValidationError):
    pass


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)
    _adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.vertices)}
        adj = [0] * len(self.vertices)
        for e in self.edges:
            u, v = tuple(e)
            adj[index[u]] |= 1 << index[v]
            adj[index[v]] |= 1 << index[u]
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adj", tuple(adj))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self._adj[self.index(u)] >> self.index(v) & 1)

    def neighbors(self, v: str) -> list[str]:
        return self.from_mask(self._adj[self.index(v)])

    def degree(self, v: str) -> int:
        return self._adj[self.index(v)].bit_count()

    # bitmask helpers; bit i stands for self.vertices[i]
    def mask(self, xs: Iterable[str]) -> int:
        m = 0
        for v in xs:
            m |= 1 << self.index(v)
        return m

    def from_mask(self, m: int) -> list[str]:
        return [v for i, v in enumerate(self.vertices) if m >> i & 1]

    def adjacency_mask(self, v: str) -> int:
        return self._adj[self.index(v)]

    def sorted(self, xs: Iterable[str]) -> list[str]:
        return sorted(xs, key=self.index)

    def edge_list(self) -> list[tuple[str, str]]:
        out = []
        for i, u in enumerate(self.vertices):
            for j in range(i + 1, len(self.vertices)):
                if self._adj[i] >> j & 1:
                    out.append((u, self.vertices[j]))
        return out

    def is_complete(self, xs: Iterable[str]) -> bool:
        m = self.mask(xs)
        for i in _bits(m):
            if (m & ~(1 << i)) & ~self._adj[i]:
                return False
        return True

    def induced(self, xs: Iterable[str]) -> Graph:
        keep = set(xs)
        for v in keep:
            self.index(v)
        verts = [v for v in self.vertices if v in keep]
        return Graph(tuple(verts), frozenset(e for e in self.edges if e <= keep))

    def complement(self) -> Graph:
        vs = self.vertices
        edges = frozenset(
            frozenset((vs[i], vs[j]))
            for i in range(len(vs))
            for j in range(i + 1, len(vs))
            if not self._adj[i] >> j & 1
        )
        return Graph(vs, edges)

    def relabel(self, mapping: dict[str, str], order: Sequence[str] | None = None) -> Graph:
        """Rename vertices; `order` optionally gives the new vertex order."""
        verts = tuple(order) if order is not None else tuple(mapping[v] for v in self.vertices)
        return build_graph(verts, [(mapping[u], mapping[v]) for u, v in self.edge_list()])


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def build_graph(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> Graph:
    verts = tuple(vertices)
    seen: set[str] = set()
    for v in verts:
        if v in seen:
            raise DuplicateVertex(f"vertex {v!r} listed twice")
        seen.add(v)
    es: set[frozenset[str]] = set()
    for e in edges:
        u, v = e
        if u == v:
            raise SelfLoop(f"self-loop at {u!r}")
        for x in (u, v):
            if x not in seen:
                raise UnknownEndpoint(f"edge {{{u}, {v}}} uses unlisted vertex {x!r}")
        key = frozenset((u, v))
        if key in es:
            raise DuplicateEdge(f"edge {{{u}, {v}}} given twice")
        es.add(key)
    return Graph(verts, frozenset(es))


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[str], ...]

    def block_of(self, v: str) -> frozenset[str]:
        for b in self.blocks:
            if v in b:
                return b
        raise UnknownVertex(f"unknown vertex {v!r}")

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


def make_partition(g: Graph, blocks: Iterable[Iterable[str]]) -> Partition:
    """Validate blocks against g and return them in canonical order."""
    bs = [frozenset(b) for b in blocks]
    covered: set[str] = set()
    for b in bs:
        if not b:
            raise InvalidPartition("empty block")
        for v in b:
            g.index(v)
        if covered & b:
            raise InvalidPartition("blocks overlap")
        covered |= b
    if len(covered) != len(g):
        raise InvalidPartition("blocks do not cover the vertex set")
    bs.sort(key=lambda b: min(g.index(v) for v in b))
    return Partition(tuple(bs))


def identity_partition(g: Graph) -> Partition:
    return Partition(tuple(frozenset((v,)) for v in g.vertices))


def cliques(g: Graph) -> list[frozenset[str]]:
    """All maximal complete vertex sets, sorted by their members' positions."""
    adj = g._adj
    found: list[int] = []

    def expand(r: int, p: int, x: int):
        if not p and not x:
            found.append(r)
            return
        # pivot: vertex of P|X with the most neighbours in P
        pivot = max(_bits(p | x), key=lambda u: (adj[u] & p).bit_count())
        for v in _bits(p & ~adj[pivot]):
            expand(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if len(g):
        expand(0, (1 << len(g)) - 1, 0)
    found.sort(key=lambda m: list(_bits(m)))
    return [frozenset(g.from_mask(m)) for m in found]


def is_module(g: Graph, x: Iterable[str]) -> bool:
    m = g.mask(x)
    full = (1 << len(g)) - 1
    for i in _bits(full & ~m):
        hit = g._adj[i] & m
        if hit and hit != m:
            return False
    return True


def quotient_graph(g: Graph, p: Partition) -> Graph:
    """Quotient by a modular partition; each block is named by its least member."""
    p = make_partition(g, p.blocks)
    for b in p.blocks:
        if not is_module(g, b):
            raise NotModular(f"block {g.sorted(b)} is not a module")
    names = [min(b) for b in p.blocks]
    masks = [g.mask(b) for b in p.blocks]
    edges = []
    for i in range(len(masks)):
        rep = g._adj[(masks[i] & -masks[i]).bit_length() - 1]
        for j in range(i + 1, len(masks)):
            if rep & masks[j]:
                edges.append((names[i], names[j]))
    return build_graph(names, edges)


def _edge_is_module(g: Graph, i: int, j: int) -> bool:
    # {u,v} is a module iff u and v have the same neighbours outside the pair
    pair = 1 << i | 1 << j
    return (g._adj[i] & ~pair) == (g._adj[j] & ~pair)


def is_t0(g: Graph) -> bool:
    n = len(g)
    return not any(
        g._adj[i] >> j & 1 and _edge_is_module(g, i, j) for i in range(n) for j in range(i + 1, n)
    )


def is_t1(g: Graph) -> bool:
    # both orderings of every edge need a vertex adjacent to one end only
    adj = g._adj
    n = len(g)
    for i in range(n):
        for j in range(n):
            if i != j and adj[i] >> j & 1:
                if not adj[i] & ~adj[j] & ~(1 << j):
                    return False
    return True


def clique_signatures(g: Graph) -> dict[str, frozenset[int]]:
    """Map each vertex to the indices of the cliques containing it."""
    cs = cliques(g)
    return {v: frozenset(k for k, c in enumerate(cs) if v in c) for v in g.vertices}


def t0_quotient(g: Graph) -> tuple[Partition, Graph]:
    sig = clique_signatures(g)
    classes: dict[frozenset[int], list[str]] = {}
    for v in g.vertices:
        classes.setdefault(sig[v], []).append(v)
    p = make_partition(g, classes.values())
    return p, quotient_graph(g, p)


def _component_masks(adj: Sequence[int], n: int) -> list[int]:
    seen = 0
    out = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= adj[i]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def components(g: Graph) -> Partition:
    return Partition(tuple(frozenset(g.from_mask(m)) for m in _component_masks(g._adj, len(g))))


def co_components(g: Graph) -> Partition:
    full = (1 << len(g)) - 1
    co_adj = [full & ~a & ~(1 << i) for i, a in enumerate(g._adj)]
    return Partition(tuple(frozenset(g.from_mask(m)) for m in _component_masks(co_adj, len(g))))
