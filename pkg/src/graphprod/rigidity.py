"""Canonical forms for graph products of finite groups.

A graph of finite groups is first refined so that every vertex group is
directly indecomposable: each vertex becomes a complete module holding its
Remak factors.  Such a representation of the product is unique, so a
canonical labeling of the refined colored graph is a complete isomorphism
invariant of the graph product itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from .errors import GraphProductError, OrderCapExceeded
from .graph import Graph, NotModular, Partition, build_graph, is_module, make_partition, t0_quotient
from .groups import (
    CANONICAL_CAP,
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    are_isomorphic,
    canonical_table,
    direct_product,
    remak_decomposition,
)
from .lattice import NotComplete
from .product import GraphOfGroups, make_rng

MAX_CANONICAL_VERTICES = 12
CERT_MAGIC = b"GPRC1"


class TooManyVertices(GraphProductError):
    pass


def refined_id(v: str, k: int) -> str:
    return f"{v}.{k}"


def remak_refine(gog: GraphOfGroups, cap: int = DEFAULT_ORDER_CAP) -> tuple[GraphOfGroups, Partition]:
    """Split every vertex into a clique of its directly indecomposable factors.

    Returns the refined graph of groups and the partition of its vertices by
    original vertex (a modular partition into complete blocks).
    """
    g = gog.graph
    ids: dict[str, list[str]] = {}
    groups: dict[str, FiniteGroup] = {}
    order: list[str] = []
    for v in g.vertices:
        factors = remak_decomposition(gog.groups[v], cap)
        ids[v] = []
        for k, f in enumerate(factors, 1):
            w = refined_id(v, k)
            ids[v].append(w)
            order.append(w)
            grp = f.as_group()
            groups[w] = FiniteGroup(grp.table, f"{v}:{k}/{len(factors)}")
    edges = []
    for v in g.vertices:
        vs = ids[v]
        edges += [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]
    for u, v in g.edge_list():
        edges += [(a, b) for a in ids[u] for b in ids[v]]
    refined = build_graph(order, edges)
    part = make_partition(refined, [ids[v] for v in g.vertices])
    return GraphOfGroups(refined, groups), part


# ---------------------------------------------------------------------------
# canonical labeling of a vertex-colored graph


def _bits_between(adj: list[int], placed: list[int], v: int) -> list[int]:
    return [adj[u] >> v & 1 for u in placed]


def canonical_order(adj: list[int], colors: list[bytes]) -> list[int]:
    """Vertex order minimizing (color sequence, adjacency bits column by column).

    Bits are read as adj(p0,p1), adj(p0,p2), adj(p1,p2), adj(p0,p3), ... so
    each placed vertex extends the encoding.  Sibling candidates are pruned
    when they are twins of an explored one or lie in its orbit under an
    automorphism already found that fixes every placed vertex.
    """
    n = len(adj)
    targets = sorted(colors)
    best: dict = {"bits": None, "order": None}
    autos: list[tuple[int, ...]] = []

    def twins(u: int, w: int) -> bool:
        pair = 1 << u | 1 << w
        return colors[u] == colors[w] and (adj[u] & ~pair) == (adj[w] & ~pair)

    def pruned(c: int, explored: list[int], placed: list[int]) -> bool:
        if any(twins(c, e) for e in explored):
            return True
        if not autos or not explored:
            return False
        fixing = [a for a in autos if all(a[p] == p for p in placed)]
        orbit = {c}
        frontier = [c]
        while frontier:
            u = frontier.pop()
            for a in fixing:
                x = a[u]
                if x not in orbit:
                    orbit.add(x)
                    frontier.append(x)
        return not orbit.isdisjoint(explored)

    def search(placed: list[int], bits: list[int], state: int):
        k = len(placed)
        if k == n:
            if best["bits"] is None or bits < best["bits"]:
                best["bits"], best["order"] = list(bits), list(placed)
            elif bits == best["bits"]:
                a = [0] * n
                for cur, ref in zip(placed, best["order"]):
                    a[cur] = ref
                a = tuple(a)
                if a not in autos:
                    autos.append(a)
            return
        used = set(placed)
        explored: list[int] = []
        for c in range(n):
            if c in used or colors[c] != targets[k] or pruned(c, explored, placed):
                continue
            explored.append(c)
            new = _bits_between(adj, placed, c)
            st = state
            bb = best["bits"]
            if st == 0 and bb is not None:
                off = k * (k - 1) // 2
                ref = bb[off:off + k]
                if new > ref:
                    continue
                if new < ref:
                    st = -1
            search(placed + [c], bits + new, st)

    search([], [], 0)
    return best["order"]


def _pack_bits(bits: list[int]) -> bytes:
    out = bytearray((len(bits) + 7) // 8)
    for i, b in enumerate(bits):
        if b:
            out[i // 8] |= 0x80 >> (i % 8)
    return bytes(out)


def canonicalize(
    gog: GraphOfGroups,
    max_vertices: int = MAX_CANONICAL_VERTICES,
    order_cap: int = DEFAULT_ORDER_CAP,
    canonical_cap: int = CANONICAL_CAP,
) -> bytes:
    """Certificate of the graph product: equal iff the products are isomorphic.

    Layout: b"GPRC1", refined vertex count (2 bytes, big-endian), then per
    canonical vertex its group order (1 byte) and canonical table (order^2
    bytes), then the adjacency bits in column order, packed MSB first.
    """
    refined, _ = remak_refine(gog, order_cap)
    g = refined.graph
    n = len(g)
    if n > max_vertices:
        raise TooManyVertices(f"refined graph has {n} vertices, cap is {max_vertices}")
    colors = []
    for v in g.vertices:
        grp = refined.groups[v]
        if grp.order > min(canonical_cap, 255):
            raise OrderCapExceeded(grp.order, canonical_cap, "indecomposable vertex group")
        colors.append(bytes([grp.order]) + canonical_table(grp, canonical_cap))
    adj = list(g._adj)
    perm = canonical_order(adj, colors)
    bits = []
    for j in range(1, n):
        bits += _bits_between(adj, perm[:j], perm[j])
    out = bytearray(CERT_MAGIC)
    out += n.to_bytes(2, "big")
    for v in perm:
        out += colors[v]
    out += _pack_bits(bits)
    return bytes(out)


def certificate_hex(cert: bytes) -> str:
    return cert.hex().upper()


def decide_graph_product_isomorphism(x: GraphOfGroups, y: GraphOfGroups, **caps) -> bool:
    return canonicalize(x, **caps) == canonicalize(y, **caps)


# ---------------------------------------------------------------------------
# isomorphism of graphs of groups, with witnesses


@dataclass(frozen=True)
class GogIsomorphism:
    vertex_map: dict[str, str]
    group_maps: dict[str, tuple[int, ...]]

    def check(self, x: GraphOfGroups, y: GraphOfGroups) -> bool:
        phi = self.vertex_map
        if sorted(phi) != sorted(x.vertices) or sorted(phi.values()) != sorted(y.vertices):
            return False
        for u in x.vertices:
            for v in x.vertices:
                if u != v and x.graph.adjacent(u, v) != y.graph.adjacent(phi[u], phi[v]):
                    return False
        for v in x.vertices:
            m = self.group_maps[v]
            gx, gy = x.groups[v], y.groups[phi[v]]
            if gx.order != gy.order or sorted(m) != list(range(gy.order)):
                return False
            if any(m[gx.table[a][b]] != gy.table[m[a]][m[b]] for a in range(gx.order) for b in range(gx.order)):
                return False
        return True


def gog_isomorphic(x: GraphOfGroups, y: GraphOfGroups) -> GogIsomorphism | None:
    """A graph isomorphism carrying each vertex group onto an isomorphic one, if any."""
    gx, gy = x.graph, y.graph
    if len(gx) != len(gy) or len(gx.edges) != len(gy.edges):
        return None
    cache: dict[tuple[str, str], tuple[int, ...] | None] = {}

    def group_iso(u: str, v: str):
        if (u, v) not in cache:
            cache[u, v] = are_isomorphic(x.groups[u], y.groups[v])
        return cache[u, v]

    xs = list(gx.vertices)
    ys = list(gy.vertices)
    deg_y = {v: gy.degree(v) for v in ys}
    if sorted(gx.degree(v) for v in xs) != sorted(deg_y.values()):
        return None

    def search(k: int, phi: dict[str, str], used: set[str]):
        if k == len(xs):
            return dict(phi)
        u = xs[k]
        for v in ys:
            if v in used or deg_y[v] != gx.degree(u) or x.groups[u].order != y.groups[v].order:
                continue
            if any(gx.adjacent(u, w) != gy.adjacent(v, phi[w]) for w in xs[:k]):
                continue
            if group_iso(u, v) is None:
                continue
            phi[u] = v
            used.add(v)
            found = search(k + 1, phi, used)
            if found is not None:
                return found
            del phi[u]
            used.discard(v)
        return None

    phi = search(0, {}, set())
    if phi is None:
        return None
    return GogIsomorphism(phi, {u: group_iso(u, phi[u]) for u in xs})


# ---------------------------------------------------------------------------
# alternative presentations of the same group


def merge_module(gog: GraphOfGroups, module: Iterable[str], new_id: str | None = None,
                 cap: int = DEFAULT_ORDER_CAP) -> GraphOfGroups:
    """Collapse a complete module into one vertex carrying the direct product of its groups."""
    g = gog.graph
    mod = g.sorted(set(module))
    if not g.is_complete(mod):
        raise NotComplete(f"{mod} is not complete")
    if not is_module(g, mod):
        raise NotModular(f"{mod} is not a module")
    prod = reduce(lambda a, b: direct_product(a, b, cap), (gog.groups[v] for v in mod))
    name = new_id if new_id is not None else "+".join(mod)
    inside = set(mod)
    first = mod[0]
    verts = [name if v == first else v for v in g.vertices if v == first or v not in inside]
    outside = [v for v in g.vertices if v not in inside and g.adjacent(first, v)]
    edges = [(u, v) for u, v in g.edge_list() if u not in inside and v not in inside]
    edges += [(name, v) for v in outside]
    groups = {v: gog.groups[v] for v in verts if v != name}
    groups[name] = prod
    return GraphOfGroups(build_graph(verts, edges), groups)


def obfuscate(gog: GraphOfGroups, seed: int, cap: int = DEFAULT_ORDER_CAP, max_merges: int = 3) -> GraphOfGroups:
    """Another presentation of the same graph product, chosen by seed.

    Merges a few complete modules (sets of pairwise true twins) into
    direct-product vertices, then renames and reorders the vertices and
    relabels every group's elements.  A merge whose product would exceed the
    order cap is skipped.
    """
    rng = make_rng(seed, 0)
    cur = gog
    for step in range(int(rng.integers(0, max_merges + 1))):
        part, _ = t0_quotient(cur.graph)
        blocks = [cur.graph.sorted(b) for b in part.blocks if len(b) > 1]
        if not blocks:
            break
        block = blocks[int(rng.integers(len(blocks)))]
        size = int(rng.integers(2, len(block) + 1))
        pick = sorted(int(i) for i in rng.choice(len(block), size=size, replace=False))
        module = [block[i] for i in pick]
        try:
            cur = merge_module(cur, module, new_id=f"__m{step}", cap=cap)
        except OrderCapExceeded:
            continue
    g = cur.graph
    n = len(g)
    names = [f"v{i}" for i in rng.permutation(n)]
    rename = dict(zip(g.vertices, names))
    new_order = [g.vertices[int(i)] for i in rng.permutation(n)]
    graph = g.relabel(rename, [rename[v] for v in new_order])
    groups = {}
    for v in g.vertices:
        grp = cur.groups[v]
        perm = [0] + [int(i) + 1 for i in rng.permutation(grp.order - 1)]
        groups[rename[v]] = grp.relabel(perm)
    return GraphOfGroups(graph, groups)
