"""Graph products of finite groups, with elements as syllable words.

A word is a tuple of Syllable(vertex, element); element indexes the vertex's
own group table.  The canonical representative of an element is the reduced
word (no identity syllables, nothing left to merge) that is least, under the
graph's vertex order, among all its reorderings by commuting adjacent
syllables.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import ValidationError
from .graph import Graph, UnknownVertex
from .groups import FiniteGroup


class TrivialVertexGroup(ValidationError):
    pass


class ElementOutOfRange(ValidationError):
    pass


class Syllable(NamedTuple):
    vertex: str
    element: int


Word = tuple[Syllable, ...]


@dataclass(frozen=True)
class GraphOfGroups:
    graph: Graph
    groups: Mapping[str, FiniteGroup]

    def __post_init__(self):
        g = self.graph
        missing = [v for v in g.vertices if v not in self.groups]
        if missing:
            raise ValidationError(f"no group given for vertices {missing}")
        extra = [v for v in self.groups if v not in g]
        if extra:
            raise UnknownVertex(f"groups given for unknown vertices {extra}")
        for v in g.vertices:
            if self.groups[v].order < 2:
                raise TrivialVertexGroup(f"vertex {v!r} carries the trivial group")
        object.__setattr__(self, "groups", {v: self.groups[v] for v in g.vertices})
        # per-vertex lookups for the word routines, indexed like graph.vertices
        object.__setattr__(self, "_tables", [self.groups[v].table for v in g.vertices])
        object.__setattr__(self, "_orders", [self.groups[v].order for v in g.vertices])
        object.__setattr__(self, "_syllables", [
            [Syllable(v, e) for e in range(self.groups[v].order)] for v in g.vertices
        ])
        # (index, order, commutes-with flags, table, interned (index, element) cells)
        n = len(g)
        object.__setattr__(self, "_info", {
            v: (i, self.groups[v].order, [bool(g._adj[i] >> u & 1) for u in range(n)], self.groups[v].table,
                [(i, e) for e in range(self.groups[v].order)])
            for i, v in enumerate(g.vertices)
        })

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    def group(self, v: str) -> FiniteGroup:
        try:
            return self.groups[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def order_of(self, xs: Iterable[str]) -> int:
        """Product of vertex-group orders; |G(C)| when C is complete."""
        out = 1
        for v in xs:
            out *= self.group(v).order
        return out


def _encode(gog: GraphOfGroups, w: Iterable) -> list[tuple[int, int]]:
    index = gog.graph._index
    orders = gog._orders
    out = []
    for v, e in w:
        i = index.get(v)
        if i is None:
            raise UnknownVertex(f"unknown vertex {v!r}")
        if e < 0 or e >= orders[i]:
            raise ElementOutOfRange(f"element {e} not in group of {v!r} (order {orders[i]})")
        out.append((i, e))
    return out


def normal_form(gog: GraphOfGroups, w: Iterable) -> Word:
    """The canonical representative of the element spelled by w."""
    # Feed syllables left to right, keeping `out` in normal form.  A new
    # syllable merges with the last same-vertex syllable when everything after
    # that one commutes with it.  Otherwise it is a new maximal element of the
    # trace, and the greedy least linear extension picks it at the first
    # position past its last non-commuting predecessor whose vertex sorts
    # above it.  Dropping a syllable that merged to the identity keeps the
    # rest in normal form, since nothing after it depends on it.
    info = gog._info
    out: list[tuple[int, int]] = []
    size = 0
    for v, e in w:
        try:
            vi, order, comm, table, cells = info[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None
        if not 0 <= e < order:
            raise ElementOutOfRange(f"element {e} not in group of {v!r} (order {order})")
        if not e:
            continue
        k = size
        while k:
            u, f = out[k - 1]
            if u == vi:
                c = table[f][e]
                if c:
                    out[k - 1] = cells[c]
                else:
                    del out[k - 1]
                    size -= 1
                break
            if not comm[u]:
                # insertion is spelled out twice to keep this loop call-free
                while k < size and out[k][0] < vi:
                    k += 1
                out.insert(k, cells[e])
                size += 1
                break
            k -= 1
        else:
            while k < size and out[k][0] < vi:
                k += 1
            out.insert(k, cells[e])
            size += 1
    made = gog._syllables
    return tuple([made[i][e] for i, e in out])


def multiply(gog: GraphOfGroups, u: Iterable, v: Iterable) -> Word:
    return normal_form(gog, list(u) + list(v))


def invert(gog: GraphOfGroups, u: Iterable) -> Word:
    syls = _encode(gog, u)
    vs = gog.graph.vertices
    return normal_form(gog, [(vs[i], gog.groups[vs[i]].inverses[e]) for i, e in reversed(syls)])


def conjugate(gog: GraphOfGroups, g: Iterable, x: Iterable) -> Word:
    """g x g^-1."""
    g = list(g)
    return normal_form(gog, g + list(x) + list(invert(gog, g)))


def words_equal(gog: GraphOfGroups, u: Iterable, v: Iterable) -> bool:
    return normal_form(gog, u) == normal_form(gog, v)


def _vertex_set(gog: GraphOfGroups, a: Iterable[str]) -> frozenset[str]:
    a = frozenset(a)
    for v in a:
        gog.graph.index(v)
    return a


def retraction(gog: GraphOfGroups, a: Iterable[str], w: Iterable) -> Word:
    """Image of w under the retraction onto G(a): drop syllables outside a."""
    keep = _vertex_set(gog, a)
    syls = _encode(gog, w)
    vs = gog.graph.vertices
    return normal_form(gog, [(vs[i], e) for i, e in syls if vs[i] in keep])


def support(gog: GraphOfGroups, w: Iterable) -> frozenset[str]:
    return frozenset(s.vertex for s in normal_form(gog, w))


def in_parabolic(gog: GraphOfGroups, w: Iterable, a: Iterable[str]) -> bool:
    return support(gog, w) <= _vertex_set(gog, a)


def make_rng(seed: int, trial: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by (seed, trial); trials are independent streams."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def random_word(
    gog: GraphOfGroups,
    seed: int,
    max_len: int,
    trial: int = 0,
    vertices: Sequence[str] | None = None,
) -> Word:
    """Normal form of a uniformly drawn word of length at most max_len.

    `vertices` restricts the syllables to a subset of the graph.
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    pool = list(vertices) if vertices is not None else list(gog.vertices)
    rng = make_rng(seed, trial)
    length = int(rng.integers(0, max_len + 1))
    if not pool:
        return ()
    syls = []
    for _ in range(length):
        v = pool[int(rng.integers(len(pool)))]
        syls.append((v, int(rng.integers(1, gog.groups[v].order))))
    return normal_form(gog, syls)


# word literals: "a^1 b^2 a", ^1 may be omitted, empty string is the identity


def parse_word(gog: GraphOfGroups, text: str) -> Word:
    out = []
    for tok in text.split():
        head, sep, tail = tok.rpartition("^")
        if sep and tail.isdigit() and head:
            v, k = head, int(tail)
        else:
            v, k = tok, 1
        if v not in gog.graph:
            raise UnknownVertex(f"unknown vertex {v!r} in word {text!r}")
        out.append(Syllable(v, k))
    _encode(gog, out)
    return tuple(out)


def format_word(w: Iterable) -> str:
    return " ".join(v if e == 1 else f"{v}^{e}" for v, e in w)
