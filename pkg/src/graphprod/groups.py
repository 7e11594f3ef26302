"""Finite groups given by multiplication tables.

Element 0 is always the identity.  Besides validation and a few standard
families, this module provides isomorphism search, normal subgroup
enumeration, Remak (direct indecomposable) factorization and a canonical
form of the multiplication table.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import OrderCapExceeded, ValidationError

DEFAULT_ORDER_CAP = 64
CANONICAL_CAP = 24


class NotClosed(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


@dataclass(frozen=True, eq=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def is_abelian(self) -> bool:
        t = np.asarray(self.table)
        return bool((t == t.T).all())

    def center(self) -> list[int]:
        t = np.asarray(self.table)
        return [a for a in range(self.order) if (t[a] == t[:, a]).all()]

    def conjugacy_classes(self) -> list[list[int]]:
        seen = set()
        out = []
        inv = self.inverses
        for a in range(self.order):
            if a in seen:
                continue
            cls = sorted({self.table[self.table[g][a]][inv[g]] for g in range(self.order)})
            seen.update(cls)
            out.append(cls)
        return out

    def generate(self, gens: Iterable[int]) -> list[int]:
        """Sorted elements of the subgroup generated by gens."""
        gens = [x for x in gens if x]
        elems = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = self.table[a][s]
                    if b not in elems:
                        elems.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(elems)

    def relabel(self, perm: Sequence[int], name: str | None = None) -> FiniteGroup:
        """Isomorphic copy in which old element a is called perm[a]; perm[0] must be 0."""
        if perm[0] != 0 or sorted(perm) != list(range(self.order)):
            raise ValidationError("relabeling must be a permutation fixing 0")
        n = self.order
        new = [[0] * n for _ in range(n)]
        for a in range(n):
            row = self.table[a]
            pa = perm[a]
            for b in range(n):
                new[pa][perm[b]] = perm[row[b]]
        return FiniteGroup(tuple(map(tuple, new)), name if name is not None else self.name)


def group_from_table(table: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise NotClosed("empty table")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise NotClosed(f"row {i} has length {len(r)}, expected {n}")
        for x in r:
            if not isinstance(x, (int, np.integer)) or isinstance(x, bool) or not 0 <= x < n:
                raise NotClosed(f"row {i} holds entry {x!r} outside 0..{n - 1}")
    t = np.asarray(rows, dtype=np.int64)
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            raise NotClosed(f"row {i} is not a permutation")
        if not np.array_equal(np.sort(t[:, i]), full):
            raise NotClosed(f"column {i} is not a permutation")
    if not (np.array_equal(t[0], full) and np.array_equal(t[:, 0], full)):
        raise NoIdentity("element 0 is not a two-sided identity")
    # (ab)c == a(bc) for every triple
    if not np.array_equal(t[t], t[full[:, None, None], t[None, :, :]]):
        raise NotAssociative("table is not associative")
    return FiniteGroup(tuple(tuple(int(x) for x in r) for r in rows), name)


# ---------------------------------------------------------------------------
# standard families


def _check_cap(order: int, cap: int):
    if order > cap:
        raise OrderCapExceeded(order, cap)


def cyclic(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group needs n >= 1")
    _check_cap(n, cap)
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"C{n}")


def dihedral(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; r^i s^j is element i + n*j."""
    if n < 1:
        raise ValidationError("dihedral group needs n >= 1")
    _check_cap(2 * n, cap)
    rows = []
    for x in range(2 * n):
        a, b = x % n, x // n
        row = []
        for y in range(2 * n):
            c, d = y % n, y // n
            row.append((a + (-c if b else c)) % n + n * ((b + d) % 2))
        rows.append(tuple(row))
    return FiniteGroup(tuple(rows), f"D{n}")


def symmetric(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ValidationError("symmetric group needs n >= 1")
    order = 1
    for k in range(2, n + 1):
        order *= k
    _check_cap(order, cap)
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    rows = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    return FiniteGroup(rows, f"S{n}")


# unit quaternions 1, i, j, k as 0..3; signed element (u, s) has index 2u + s
_QUNIT = {
    (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
    (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
    (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
    (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
}


def quaternion8() -> FiniteGroup:
    rows = []
    for x in range(8):
        row = []
        for y in range(8):
            u, s = _QUNIT[x // 2, y // 2]
            row.append(2 * u + (s + x % 2 + y % 2) % 2)
        rows.append(tuple(row))
    return FiniteGroup(tuple(rows), "Q8")


def direct_product(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Componentwise product; the pair (a, b) is element a*|h| + b."""
    m = h.order
    _check_cap(g.order * m, cap)
    rows = []
    for x in range(g.order * m):
        a, b = divmod(x, m)
        ga, hb = g.table[a], h.table[b]
        rows.append(tuple(ga[y // m] * m + hb[y % m] for y in range(g.order * m)))
    name = f"{g.name or '?'}x{h.name or '?'}"
    return FiniteGroup(tuple(rows), name)


def preset(kind: str, n: int | None = None, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if kind == "cyclic":
        return cyclic(n, cap)
    if kind == "dihedral":
        return dihedral(n, cap)
    if kind == "symmetric":
        return symmetric(n, cap)
    if kind == "quaternion8":
        return quaternion8()
    raise ValidationError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in set(self.elements)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone table, elements renumbered in sorted order."""
        pos = {a: i for i, a in enumerate(self.elements)}
        t = self.parent.table
        rows = tuple(tuple(pos[t[a][b]] for b in self.elements) for a in self.elements)
        return FiniteGroup(rows, None)


def _mask(elems: Iterable[int]) -> int:
    m = 0
    for a in elems:
        m |= 1 << a
    return m


def _elems(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _normal_masks(g: FiniteGroup) -> list[int]:
    t = g.table
    # normal closure of each conjugacy class; every normal subgroup is a join of these
    basics = set()
    for cls in g.conjugacy_classes():
        if cls[0] == 0:
            continue
        basics.add(_mask(g.generate(cls)))
    basics = sorted(basics)

    def join(a: int, b: int) -> int:
        # for normal subgroups the join is the product set
        ea, eb = _elems(a), _elems(b)
        return _mask(t[x][y] for x in ea for y in eb)

    found = {1} | set(basics)
    frontier = list(basics)
    while frontier:
        nxt = []
        for a in frontier:
            for b in basics:
                if b & ~a:
                    c = join(a, b)
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        frontier = nxt
    return sorted(found, key=lambda m: (m.bit_count(), _elems(m)))


def normal_subgroups(g: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> list[Subgroup]:
    """Every normal subgroup, sorted by (size, element list)."""
    _check_cap(g.order, cap)
    return [Subgroup(g, tuple(_elems(m))) for m in _normal_masks(g)]


def _factor_sort_key(s: Subgroup):
    grp = s.as_group()
    key = canonical_table(grp) if grp.order <= CANONICAL_CAP else b""
    return (s.order, key, s.elements)


def remak_decomposition(g: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> list[Subgroup]:
    """Internal direct factors N1..Nk of g, each directly indecomposable.

    Searches normal subgroups by increasing size for one with a normal
    complement; the smallest such factor cannot split further, and the
    complement is decomposed recursively.  Normal subgroups of a direct
    factor are exactly the normal subgroups of g lying inside it, so the
    lattice is computed once.
    """
    _check_cap(g.order, cap)
    normals = _normal_masks(g)
    by_size: dict[int, list[int]] = {}
    for m in normals:
        by_size.setdefault(m.bit_count(), []).append(m)

    def split(whole: int) -> list[int]:
        size = whole.bit_count()
        for n in normals:
            k = n.bit_count()
            if k == 1 or k >= size or size % k or n & ~whole:
                continue
            for c in by_size.get(size // k, ()):
                if c & ~whole or (c & n) != 1:
                    continue
                return [n] + split(c)
        return [whole]

    full = (1 << g.order) - 1
    factors = [Subgroup(g, tuple(_elems(m))) for m in split(full)]
    return sorted(factors, key=_factor_sort_key)


def is_directly_indecomposable(g: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> bool:
    return len(remak_decomposition(g, cap)) == 1


# ---------------------------------------------------------------------------
# isomorphism


def _generators(g: FiniteGroup) -> list[int]:
    """Greedy generating set: repeatedly add the highest-order element not yet reached."""
    orders = g.element_orders
    gens: list[int] = []
    reached = {0}
    while len(reached) < g.order:
        s = min((a for a in range(g.order) if a not in reached), key=lambda a: (-orders[a], a))
        gens.append(s)
        reached = set(g.generate(gens))
    return gens


def _extend(g: FiniteGroup, h: FiniteGroup, gens: list[int], imgs: list[int]) -> dict[int, int] | None:
    """Extend gens -> imgs to a homomorphism on <gens>; None when inconsistent or not injective."""
    gt, ht = g.table, h.table
    phi = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            pa = phi[a]
            for s, t in zip(gens, imgs):
                b = gt[s][a]
                pb = ht[t][pa]
                if b in phi:
                    if phi[b] != pb:
                        return None
                else:
                    phi[b] = pb
                    nxt.append(b)
        frontier = nxt
    if len(set(phi.values())) != len(phi):
        return None
    return phi


def _profile(g: FiniteGroup):
    return (g.order, sorted(g.element_orders), len(g.center()), len(g.conjugacy_classes()))


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> tuple[int, ...] | None:
    """An isomorphism g -> h as a tuple phi with phi[a] the image of a, or None."""
    if _profile(g) != _profile(h):
        return None
    gens = _generators(g)
    gord, hord = g.element_orders, h.element_orders

    def search(k: int, imgs: list[int], image: set[int]):
        if k == len(gens):
            return _extend(g, h, gens, imgs)
        for t in range(h.order):
            if hord[t] != gord[gens[k]] or t in image:
                continue
            phi = _extend(g, h, gens[: k + 1], imgs + [t])
            if phi is None:
                continue
            found = search(k + 1, imgs + [t], set(phi.values()))
            if found is not None:
                return found
        return None

    phi = search(0, [], {0})
    if phi is None or len(phi) != g.order:
        return None
    return tuple(phi[a] for a in range(g.order))


# ---------------------------------------------------------------------------
# canonical form


def canonical_table(g: FiniteGroup, cap: int = CANONICAL_CAP) -> bytes:
    """Lexicographically least multiplication table over all relabelings fixing 0.

    Serialized row-major, one byte per entry.

    The search grows a chain of subgroups H occupying labels 0..|H|-1.  Once
    H is labelled, every row of H is fixed no matter how the rest is chosen,
    provided each right coset Hd is laid out as a translate of H (which the
    least table forces).  The next row belongs to a free choice c outside H;
    reading that row left to right places each new product at the start of
    the next free coset, until the labelled set closes up into <H, c> and the
    search recurses.  Siblings are pruned against the best table so far and
    by orbits of automorphisms found from tied leaves.
    """
    n = g.order
    _check_cap(n, cap)
    if n == 1:
        return b"\x00"
    t = g.table
    inv = g.inverses
    orders = g.element_orders

    best: dict = {"table": None, "pre": None}
    autos: list[tuple[int, ...]] = []

    def pruned(c: int, explored: list[int], lab: list[int]) -> bool:
        # skip c if an automorphism fixing all labelled elements maps an explored sibling to it
        if not explored or not autos:
            return False
        fixed = [e for e in range(n) if lab[e] >= 0]
        fixing = [a for a in autos if all(a[e] == e for e in fixed)]
        orbit = {c}
        frontier = [c]
        while frontier:
            u = frontier.pop()
            for a in fixing:
                v = a[u]
                if v not in orbit:
                    orbit.add(v)
                    frontier.append(v)
        return not orbit.isdisjoint(explored)

    def place(lab, pre, s, d, a):
        # coset H d laid out as a translate of H = pre[:s], starting at label a
        for i in range(s):
            e = t[pre[i]][d]
            lab[e] = a + i
            pre[a + i] = e
        return a + s

    def leaf(lab, pre):
        tbl = [lab[t[pre[i]][pre[j]]] for i in range(n) for j in range(n)]
        if best["table"] is None or tbl < best["table"]:
            best["table"], best["pre"] = tbl, list(pre)
        elif tbl == best["table"]:
            bp = best["pre"]
            auto = tuple(bp[lab[e]] for e in range(n))
            if auto not in autos:
                autos.append(auto)

    def compare_rows(lab, pre, lo, hi, state):
        # rows lo..hi-1 of a labelled subgroup of size hi; columns past hi follow by translation
        bt = best["table"]
        if bt is None or state < 0:
            return state
        for i in range(lo, hi):
            ti = t[pre[i]]
            base = [lab[ti[pre[r]]] for r in range(hi)]
            for j in range(n):
                q, r = divmod(j, hi)
                v = q * hi + base[r]
                bv = bt[i * n + j]
                if v != bv:
                    return None if v > bv else -1
        return state

    def level(lab, pre, s, state):
        if s == n:
            leaf(lab, pre)
            return
        free = sorted((e for e in range(n) if lab[e] < 0), key=lambda e: (orders[e], e))
        explored: list[int] = []
        for c in free:
            if pruned(c, explored, lab):
                continue
            explored.append(c)
            lab2, pre2 = list(lab), list(pre)
            a = place(lab2, pre2, s, c, s)
            read_row(lab2, pre2, s, a, c, state)

    def read_row(lab, pre, s, a, c, state):
        # state 0: equal to the best table so far; -1: already smaller
        cinv = inv[c]
        j = 0
        while j < n:
            if j == a:
                d = None
                for lbl in range(a):
                    cand = t[cinv][pre[lbl]]
                    if lab[cand] < 0:
                        d = cand
                        break
                if d is None:
                    # labels 0..a-1 now form the subgroup <H, c>
                    state = compare_rows(lab, pre, s, a, state)
                    if state is not None:
                        level(lab, pre, a, state)
                    return
                a = place(lab, pre, s, d, a)
            p = t[c][pre[j]]
            if lab[p] < 0:
                a = place(lab, pre, s, p, a)
            if state == 0 and best["table"] is not None:
                bv = best["table"][s * n + j]
                if lab[p] > bv:
                    return
                if lab[p] < bv:
                    state = -1
            j += 1
        leaf(lab, pre)

    lab = [-1] * n
    pre = [-1] * n
    lab[0] = pre[0] = 0
    level(lab, pre, 1, 0)
    return bytes(best["table"])
