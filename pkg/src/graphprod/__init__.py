"""Graph products of finite groups: normal forms, parabolic subgroups and isomorphism certificates."""
from __future__ import annotations

from .document import ParseError, load_gog, parse_gog, serialize_gog
from .errors import GraphProductError, OrderCapExceeded, ValidationError
from .graph import Graph, Partition, build_graph, cliques, is_module, is_t0, is_t1, quotient_graph, t0_quotient
from .groups import FiniteGroup, are_isomorphic, canonical_table, group_from_table, normal_subgroups, remak_decomposition
from .product import GraphOfGroups, Syllable, normal_form, random_word, retraction, words_equal
from .rigidity import canonicalize, decide_graph_product_isomorphism, gog_isomorphic, obfuscate, remak_refine

__all__ = [
    "FiniteGroup", "Graph", "GraphOfGroups", "GraphProductError", "OrderCapExceeded", "ParseError",
    "Partition", "Syllable", "ValidationError", "are_isomorphic", "build_graph", "canonical_table",
    "canonicalize", "cliques", "decide_graph_product_isomorphism", "gog_isomorphic", "group_from_table",
    "is_module", "is_t0", "is_t1", "load_gog", "normal_form", "normal_subgroups", "obfuscate",
    "parse_gog", "quotient_graph", "random_word", "remak_decomposition", "remak_refine", "retraction",
    "serialize_gog", "t0_quotient", "words_equal",
]
