"""graphprod command line.

Exit codes: 0 success (or "yes"), 1 "no", 2 error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .document import load_gog, serialize_gog
from .errors import GraphProductError
from .graph import co_components, components, is_t0, is_t1, t0_quotient
from .graph import cliques as graph_cliques
from .groups import remak_decomposition
from .lattice import all_classes, hasse_edges, maximal_finite_classes
from .product import format_word, normal_form, parse_word, retraction, words_equal
from .rigidity import canonicalize, certificate_hex, obfuscate, remak_refine
from .selfcheck import run_selfcheck

YES, NO, ERROR = 0, 1, 2


def _set(g, xs) -> str:
    return "{" + ",".join(g.sorted(xs)) + "}"


def _blocks(g, part) -> str:
    return " ".join(_set(g, b) for b in part)


def _group_label(grp) -> str:
    return f"{grp.name} (order {grp.order})" if grp.name else f"order {grp.order}"


def _show_word(w, raw: bool) -> str:
    text = format_word(w)
    return text if raw or text else "1"


def _vertex_list(text: str) -> list[str]:
    return [x for x in text.replace(",", " ").split() if x]


def cmd_info(args, out):
    gog = load_gog(args.file)
    g = gog.graph
    out(f"vertices: {len(g)}")
    out(f"edges: {len(g.edges)}")
    for v in g.vertices:
        out(f"  {v}: {_group_label(gog.groups[v])}")
    out("cliques: " + " ".join(f"{_set(g, c)}[{gog.order_of(c)}]" for c in graph_cliques(g)))
    out(f"T0: {'yes' if is_t0(g) else 'no'}")
    out(f"T1: {'yes' if is_t1(g) else 'no'}")
    part, _ = t0_quotient(g)
    out("T0 classes: " + _blocks(g, part))
    out("components: " + _blocks(g, components(g)))
    out("co-components: " + _blocks(g, co_components(g)))
    return YES


def cmd_cliques(args, out):
    gog = load_gog(args.file)
    for c in graph_cliques(gog.graph):
        out(" ".join(gog.graph.sorted(c)))
    return YES


def cmd_t0_quotient(args, out):
    g = load_gog(args.file).graph
    part, q = t0_quotient(g)
    for name, b in zip(q.vertices, part):
        out(f"{name} = {_set(g, b)}")
    out("edges: " + " ".join(f"{u}-{v}" for u, v in q.edge_list()))
    return YES


def cmd_normal_form(args, out):
    gog = load_gog(args.file)
    out(_show_word(normal_form(gog, parse_word(gog, args.word)), args.format == "raw"))
    return YES


def cmd_equal(args, out):
    gog = load_gog(args.file)
    same = words_equal(gog, parse_word(gog, args.left), parse_word(gog, args.right))
    if args.format != "raw":
        out("equal" if same else "not equal")
    return YES if same else NO


def cmd_retract(args, out):
    gog = load_gog(args.file)
    out(_show_word(retraction(gog, _vertex_list(args.subset), parse_word(gog, args.word)), args.format == "raw"))
    return YES


def cmd_lattice(args, out):
    gog = load_gog(args.file)
    g = gog.graph
    out("classes:")
    for c in all_classes(g):
        out(f"  {_set(g, c.carrier)} order {gog.order_of(c.carrier)}")
    out("covers:")
    for lo, hi in hasse_edges(g):
        out(f"  {_set(g, lo.carrier)} < {_set(g, hi.carrier)}")
    out("maximal finite: " + " ".join(_set(g, c.carrier) for c in maximal_finite_classes(gog)))
    return YES


def cmd_remak(args, out):
    gog = load_gog(args.file)
    for v in gog.vertices:
        grp = gog.groups[v]
        factors = remak_decomposition(grp)
        out(f"{v}: {_group_label(grp)} = " + " x ".join(f"[{f.order}]" for f in factors))
        for k, f in enumerate(factors, 1):
            out(f"  factor {k}: order {f.order}, elements {list(f.elements)}")
    return YES


def cmd_refine(args, out):
    refined, _ = remak_refine(load_gog(args.file))
    out(serialize_gog(refined).rstrip("\n"))
    return YES


def cmd_canonicalize(args, out):
    cert = certificate_hex(canonicalize(load_gog(args.file)))
    out(cert if args.format == "raw" else f"certificate: {cert}")
    return YES


def cmd_iso(args, out):
    a = canonicalize(load_gog(args.first))
    b = canonicalize(load_gog(args.second))
    if args.format != "raw":
        out("isomorphic" if a == b else "not isomorphic")
    return YES if a == b else NO


def cmd_obfuscate(args, out):
    out(serialize_gog(obfuscate(load_gog(args.file), args.seed)).rstrip("\n"))
    return YES


def cmd_selfcheck(args, out):
    results = run_selfcheck(args.trials, args.seed)
    for r in results:
        out(r.line())
    return YES if all(r.passed for r in results) else NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphprod", description="Graph products of finite groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "raw"], default="text",
                        help="raw: bare words and certificates; equal and iso answer by exit code only")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *files, help=None):
        s = sub.add_parser(name, help=help, parents=[common])
        for f in files:
            s.add_argument(f)
        s.set_defaults(func=fn)
        return s

    add("info", cmd_info, "file", help="orders, cliques, T0/T1 and module report")
    add("cliques", cmd_cliques, "file", help="maximal complete vertex sets")
    add("t0-quotient", cmd_t0_quotient, "file", help="true-twin classes and the quotient graph")
    add("normal-form", cmd_normal_form, "file", "word", help="canonical form of a word")
    add("equal", cmd_equal, "file", "left", "right", help="exit 0 if the words are equal, 1 if not")
    add("retract", cmd_retract, "file", "subset", "word", help="image under the retraction onto G(subset)")
    add("lattice", cmd_lattice, "file", help="spherical classes and their covering relation")
    add("remak", cmd_remak, "file", help="direct factorization of each vertex group")
    add("refine", cmd_refine, "file", help="graph of groups with indecomposable vertex groups")
    add("canonicalize", cmd_canonicalize, "file", help="isomorphism certificate (hex)")
    add("iso", cmd_iso, "first", "second", help="exit 0 if the graph products are isomorphic, 1 if not")
    s = add("obfuscate", cmd_obfuscate, "file", help="another presentation of the same group")
    s.add_argument("--seed", type=int, required=True)
    s = add("selfcheck", cmd_selfcheck, help="run the invariant suites")
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, print)
    except (GraphProductError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
