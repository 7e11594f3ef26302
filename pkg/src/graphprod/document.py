"""The .gog document format: a JSON object describing a graph of groups.

    {
      "vertices": [{"id": "a", "group": {"kind": "cyclic", "n": 2}}, ...],
      "edges": [["a", "b"], ...]
    }

Group descriptors: cyclic/dihedral/symmetric take "n"; quaternion8 takes
nothing; product takes "factors" (a list of descriptors); table takes
"table" (rows of element indices, identity at 0).  Unknown keys are errors.
"""
from __future__ import annotations

import json
from functools import reduce
from typing import Any

from .errors import GraphProductError
from .graph import build_graph
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, cyclic, dihedral, direct_product, group_from_table, quaternion8, symmetric
from .product import GraphOfGroups, TrivialVertexGroup


class ParseError(GraphProductError):
    """Malformed document; the message names the offending position."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


_DESCRIPTOR_KEYS = {
    "cyclic": {"kind", "n"},
    "dihedral": {"kind", "n"},
    "symmetric": {"kind", "n"},
    "quaternion8": {"kind"},
    "product": {"kind", "factors"},
    "table": {"kind", "table"},
}


def _expect(obj: Any, typ, where: str, what: str):
    if not isinstance(obj, typ) or (typ is int and isinstance(obj, bool)):
        raise ParseError(where, f"expected {what}")
    return obj


def _keys(obj: dict, allowed: set[str], required: set[str], where: str):
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ParseError(where, f"unknown field {extra[0]!r}")
    missing = sorted(required - set(obj))
    if missing:
        raise ParseError(where, f"missing field {missing[0]!r}")


def parse_group(desc: Any, where: str = "group", cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    _expect(desc, dict, where, "a group descriptor object")
    kind = _expect(desc.get("kind"), str, f"{where}.kind", "a string")
    if kind not in _DESCRIPTOR_KEYS:
        raise ParseError(f"{where}.kind", f"unknown group kind {kind!r}")
    _keys(desc, _DESCRIPTOR_KEYS[kind], _DESCRIPTOR_KEYS[kind], where)
    if kind == "quaternion8":
        return quaternion8()
    if kind == "product":
        factors = _expect(desc["factors"], list, f"{where}.factors", "a list")
        if not factors:
            raise ParseError(f"{where}.factors", "empty product")
        groups = [parse_group(f, f"{where}.factors[{i}]", cap) for i, f in enumerate(factors)]
        return reduce(lambda a, b: direct_product(a, b, cap), groups)
    if kind == "table":
        rows = _expect(desc["table"], list, f"{where}.table", "a list of rows")
        for i, row in enumerate(rows):
            _expect(row, list, f"{where}.table[{i}]", "a list")
            for j, x in enumerate(row):
                _expect(x, int, f"{where}.table[{i}][{j}]", "an integer")
        if not rows:
            raise ParseError(f"{where}.table", "empty table")
        return group_from_table(rows)
    n = _expect(desc["n"], int, f"{where}.n", "an integer")
    lo = {"cyclic": 1, "dihedral": 1, "symmetric": 1}[kind]
    if n < lo:
        raise ParseError(f"{where}.n", f"must be >= {lo}")
    return {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}[kind](n, cap)


def parse_gog(text: str, cap: int = DEFAULT_ORDER_CAP) -> GraphOfGroups:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}", e.msg) from None
    _expect(doc, dict, "document", "a JSON object")
    _keys(doc, {"vertices", "edges"}, {"vertices"}, "document")
    verts = _expect(doc["vertices"], list, "vertices", "a list")
    ids, groups = [], {}
    for i, entry in enumerate(verts):
        where = f"vertices[{i}]"
        _expect(entry, dict, where, "an object")
        _keys(entry, {"id", "group"}, {"id", "group"}, where)
        v = _expect(entry["id"], str, f"{where}.id", "a string")
        grp = parse_group(entry["group"], f"{where}.group", cap)
        if grp.order < 2:
            raise TrivialVertexGroup(f"{where}: vertex {v!r} carries the trivial group")
        ids.append(v)
        groups[v] = grp
    edges = []
    for i, e in enumerate(_expect(doc.get("edges", []), list, "edges", "a list")):
        _expect(e, list, f"edges[{i}]", "a pair of vertex ids")
        if len(e) != 2:
            raise ParseError(f"edges[{i}]", "expected a pair of vertex ids")
        edges.append((_expect(e[0], str, f"edges[{i}][0]", "a string"), _expect(e[1], str, f"edges[{i}][1]", "a string")))
    return GraphOfGroups(build_graph(ids, edges), groups)


def gog_to_dict(gog: GraphOfGroups) -> dict:
    """Tables are written out in full so that parsing gives back identical groups."""
    return {
        "vertices": [
            {"id": v, "group": {"kind": "table", "table": [list(r) for r in gog.groups[v].table]}}
            for v in gog.vertices
        ],
        "edges": [list(e) for e in gog.graph.edge_list()],
    }


def serialize_gog(gog: GraphOfGroups) -> str:
    d = gog_to_dict(gog)
    lines = ["{", '  "vertices": [']
    for i, entry in enumerate(d["vertices"]):
        sep = "," if i + 1 < len(d["vertices"]) else ""
        lines.append(f"    {json.dumps(entry)}{sep}")
    lines.append("  ],")
    lines.append(f'  "edges": {json.dumps(d["edges"])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_gog(path: str, cap: int = DEFAULT_ORDER_CAP) -> GraphOfGroups:
    with open(path, encoding="utf-8") as f:
        return parse_gog(f.read(), cap)
