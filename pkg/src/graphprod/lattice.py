"""Conjugacy classes of spherical parabolic subgroups G(C), C complete.

Conjugate standard subgroups G(C), G(D) over complete sets force C = D, so a
class is named by its carrier and the subgroup order becomes set inclusion:
meet is intersection, join is union when the union is still complete.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import ValidationError
from .graph import Graph, cliques
from .product import GraphOfGroups


class NotComplete(ValidationError):
    pass


class GraphMismatch(ValidationError):
    pass


@dataclass(frozen=True)
class SphericalClass:
    graph: Graph
    carrier: frozenset[str]

    def __repr__(self) -> str:
        return "[G({" + ",".join(self.graph.sorted(self.carrier)) + "})]"

    def sorted_carrier(self) -> list[str]:
        return self.graph.sorted(self.carrier)


def spherical_class(graph: Graph, carrier: Iterable[str]) -> SphericalClass:
    c = frozenset(carrier)
    if not graph.is_complete(c):
        raise NotComplete(f"{graph.sorted(c)} is not complete")
    return SphericalClass(graph, c)


def _same_graph(c: SphericalClass, d: SphericalClass) -> Graph:
    if c.graph != d.graph:
        raise GraphMismatch("classes live in different graphs")
    for x in (c, d):
        if not x.graph.is_complete(x.carrier):
            raise NotComplete(f"{x.graph.sorted(x.carrier)} is not complete")
    return c.graph


def class_leq(c: SphericalClass, d: SphericalClass) -> bool:
    _same_graph(c, d)
    return c.carrier <= d.carrier


def class_meet(c: SphericalClass, d: SphericalClass) -> SphericalClass:
    g = _same_graph(c, d)
    return SphericalClass(g, c.carrier & d.carrier)


def class_join(c: SphericalClass, d: SphericalClass) -> SphericalClass | None:
    """Least upper bound, or None when the classes have no common upper bound."""
    g = _same_graph(c, d)
    u = c.carrier | d.carrier
    return SphericalClass(g, u) if g.is_complete(u) else None


def maximal_finite_classes(gog: GraphOfGroups) -> list[SphericalClass]:
    """One class per clique: the conjugacy classes of maximal finite subgroups."""
    return [SphericalClass(gog.graph, c) for c in cliques(gog.graph)]


def all_classes(graph: Graph) -> list[SphericalClass]:
    """Every spherical class, bottom (empty carrier) first, by size then vertex order."""
    out = []
    for r in range(len(graph) + 1):
        for xs in itertools.combinations(graph.vertices, r):
            if graph.is_complete(xs):
                out.append(SphericalClass(graph, frozenset(xs)))
    return out


def hasse_edges(graph: Graph) -> list[tuple[SphericalClass, SphericalClass]]:
    """Covering pairs (lower, upper): the upper carrier adds exactly one vertex."""
    classes = all_classes(graph)
    return [(c, d) for c in classes for d in classes if c.carrier < d.carrier and len(d.carrier) == len(c.carrier) + 1]
