"""Isomorphism testing and identification against a small reference catalog.

Abelian groups are classified completely by their invariant factors.  For
nonabelian pairs the test maps a short generating sequence of one group onto
candidate tuples in the other; a partial assignment survives only while the
subgroup of the direct product generated by the matched pairs stays the same
size as the subgroup generated on the source side (a subgroup of G x H is the
graph of a homomorphism exactly when projecting to G is injective).  The
first generator only ranges over conjugacy class representatives, since any
isomorphism can be composed with an inner automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .groups import PermGroup, derived_subgroup, group_from_generators
from .perms import Permutation
from .tables import ElementTable, element_table

ISO_CAP = 20_000


# -- fingerprints ------------------------------------------------------------

def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def fingerprint(G: PermGroup) -> tuple:
    """Cheap iso-invariant: order statistics, class sizes, center, derived."""
    cached = G._cache.get("fingerprint")
    if cached is not None:
        return cached
    et = element_table(G, ISO_CAP)
    order_counts: dict[int, int] = {}
    for i in range(et.n):
        o = et.element_order(i)
        order_counts[o] = order_counts.get(o, 0) + 1
    class_sizes = tuple(sorted(len(c) for c in et.conjugacy_classes()))
    gens = et.generator_indices
    center = sum(1 for i in range(et.n)
                 if all(et.mul(i, g) == et.mul(g, i) for g in gens))
    fp = (G.order, tuple(sorted(order_counts.items())), class_sizes,
          center, derived_subgroup(G).order)
    G._cache["fingerprint"] = fp
    return fp


def abelian_invariants(G: PermGroup) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... | d_k of an abelian group."""
    if not G.is_abelian():
        raise ValueError("abelian_invariants needs an abelian group")
    if G.order == 1:
        return ()
    et = element_table(G, ISO_CAP)
    orders = [et.element_order(i) for i in range(et.n)]
    primary: dict[int, list[int]] = {}
    for p in _prime_factors(G.order):
        # s_k = log_p #{x : x^(p^k) = 1}; the differences give the conjugate
        # partition of the exponent partition of the p-component.
        s = [0]
        k = 1
        while True:
            pk = p ** k
            f = sum(1 for o in orders if pk % o == 0)
            e = 0
            while p ** e < f:
                e += 1
            if p ** e != f:
                raise RuntimeError("element order counts are not a prime power")
            s.append(e)
            if f == sum(1 for o in orders if _is_p_power(o, p)):
                break
            k += 1
        m = [s[i] - s[i - 1] for i in range(1, len(s))]  # m_k = #exponents >= k
        lam = []
        i = 1
        while True:
            cnt = sum(1 for x in m if x >= i)
            if cnt == 0:
                break
            lam.append(cnt)
            i += 1
        primary[p] = sorted((p ** e for e in lam), reverse=True)
    width = max(len(v) for v in primary.values())
    factors = []
    for j in range(width):
        d = 1
        for p, lst in primary.items():
            if j < len(lst):
                d *= lst[j]
        factors.append(d)
    factors.reverse()
    total = 1
    for d in factors:
        total *= d
    if total != G.order:
        raise RuntimeError("invariant factors do not multiply to the group order")
    return tuple(factors)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# -- the backtracking isomorphism test ---------------------------------------

def _generating_sequence(et: ElementTable) -> list[int]:
    """Short generating sequence, preferring elements of high order."""
    idxs = sorted(range(1, et.n), key=lambda i: (-et.element_order(i), i))
    gens: list[int] = []
    current: frozenset[int] = frozenset([0])
    for i in idxs:
        if i in current:
            continue
        grown = et.closure(current, gens, [i])
        assert grown is not None
        gens.append(i)
        current = grown
        if len(current) == et.n:
            break
    return gens


def _diagonal_order(gG: Sequence[Permutation], gH: Sequence[Permutation],
                    dG: int, dH: int) -> int:
    pairs = []
    for a, b in zip(gG, gH):
        images = tuple(a.images) + tuple(dG + x for x in b.images)
        pairs.append(Permutation._unsafe(images))
    return PermGroup(dG + dH, pairs).order


def is_isomorphic(G: PermGroup, H: PermGroup) -> bool:
    if G is H:
        return True
    if G.order != H.order:
        return False
    if G.order == 1:
        return True
    a_ab, b_ab = G.is_abelian(), H.is_abelian()
    if a_ab != b_ab:
        return False
    if a_ab:
        return abelian_invariants(G) == abelian_invariants(H)
    if fingerprint(G) != fingerprint(H):
        return False
    return _backtrack_iso(G, H)


def _backtrack_iso(G: PermGroup, H: PermGroup) -> bool:
    etG = element_table(G, ISO_CAP)
    etH = element_table(H, ISO_CAP)
    src = _generating_sequence(etG)
    k = len(src)

    # source prefix subgroup orders, for the graph-size prune
    prefix_orders = []
    current: frozenset[int] = frozenset([0])
    for i, g in enumerate(src):
        grown = etG.closure(current, src[:i], [g])
        assert grown is not None
        current = grown
        prefix_orders.append(len(current))

    classesH = etH.conjugacy_classes()
    classesG = etG.conjugacy_classes()

    def h_stats(i: int) -> tuple[int, int]:
        return (etH.element_order(i), len(classesH[etH.class_of(i)]))

    def g_stats(i: int) -> tuple[int, int]:
        return (etG.element_order(i), len(classesG[etG.class_of(i)]))

    buckets: dict[tuple[int, int], list[int]] = {}
    for i in range(1, etH.n):
        buckets.setdefault(h_stats(i), []).append(i)
    first_reps = [c[0] for c in classesH]

    gperms = [etG.permutation(i) for i in src]
    dG, dH = G.degree, H.degree

    def extend(depth: int, images: list[int]) -> bool:
        if depth == k:
            hperms = [etH.permutation(i) for i in images]
            if PermGroup(dH, hperms).order != H.order:
                return False
            return _diagonal_order(gperms, hperms, dG, dH) == G.order
        want = g_stats(src[depth])
        if depth == 0:
            cands = [r for r in first_reps if r and h_stats(r) == want]
        else:
            cands = buckets.get(want, [])
        for cand in cands:
            ok = True
            for j in range(depth):
                a = etG.element_order(etG.mul(src[j], src[depth]))
                b = etH.element_order(etH.mul(images[j], cand))
                if a != b:
                    ok = False
                    break
            if not ok:
                continue
            if depth >= 1:
                hperms = [etH.permutation(i) for i in images + [cand]]
                if _diagonal_order(gperms[:depth + 1], hperms, dG, dH) != prefix_orders[depth]:
                    continue
            images.append(cand)
            if extend(depth + 1, images):
                return True
            images.pop()
        return False

    return extend(0, [])


# -- identification ----------------------------------------------------------

@dataclass(frozen=True)
class GroupId:
    """Canonical label for a group's isomorphism class."""

    kind: str
    params: tuple
    order: int

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "trivial":
            return "1"
        if k == "cyclic":
            return f"C{p[0]}"
        if k == "elementary_abelian":
            return f"E{p[0]}^{p[1]}"
        if k == "abelian":
            return "Ab(" + "x".join(f"C{d}" for d in p) + ")"
        if k == "dihedral":
            return f"D{2 * p[0]}"
        if k == "alternating":
            return f"A{p[0]}"
        if k == "symmetric":
            return f"S{p[0]}"
        if k == "psl2":
            return f"L2({p[0]})"
        if k == "unknown_simple":
            return f"Simple({self.order})"
        return f"G({self.order})"


_REFERENCES: dict[str, PermGroup] = {}


def _reference(name: str) -> PermGroup:
    g = _REFERENCES.get(name)
    if g is not None:
        return g
    kind, _, arg = name.partition(":")
    if kind == "alt":
        n = int(arg)
        gens = [Permutation.from_cycles(n, [(0, 1, 2)])]
        if n > 3:
            if n % 2:
                gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
            else:
                gens.append(Permutation.from_cycles(n, [tuple(range(1, n))]))
        g = PermGroup(n, gens)
    elif kind == "sym":
        n = int(arg)
        g = PermGroup(n, [Permutation.from_cycles(n, [(0, 1)]),
                          Permutation.from_cycles(n, [tuple(range(n))])])
    elif kind == "psl2":
        from .gf import field_make
        from .matgroups import psl_group
        q = int(arg)
        fac = _prime_factors(q)
        p = fac[0]
        f = 0
        m = q
        while m > 1:
            m //= p
            f += 1
        g = psl_group(2, field_make(p, f))
    else:
        raise ValueError(f"unknown reference {name!r}")
    _REFERENCES[name] = g
    return g


_ALT_ORDERS = {4: 12, 5: 60, 6: 360, 7: 2520}
_SYM_ORDERS = {4: 24, 5: 120, 6: 720, 7: 5040}
_PSL2_ORDERS = {7: 168, 8: 504, 11: 660, 13: 1092}


def _try_dihedral(G: PermGroup) -> Optional[int]:
    """Return m when G is dihedral of order 2m with m >= 3, else None."""
    if G.order % 2 or G.order < 6 or G.is_abelian():
        return None
    m = G.order // 2
    et = element_table(G, ISO_CAP)
    r = next((i for i in range(1, et.n) if et.element_order(i) == m), None)
    if r is None:
        return None
    C = et.cyclic_subgroup(r)
    s = next(i for i in range(1, et.n) if i not in C)
    if et.element_order(s) != 2:
        return None
    rinv = et.inverse[r]
    if et.mul(et.mul(et.inverse[s], r), s) != rinv:
        return None
    return m


def identify(G: PermGroup) -> GroupId:
    cached = G._cache.get("group_id")
    if cached is not None:
        return cached
    gid = _identify(G)
    G._cache["group_id"] = gid
    return gid


def _identify(G: PermGroup) -> GroupId:
    n = G.order
    if n == 1:
        return GroupId("trivial", (), 1)
    if G.is_abelian():
        invs = abelian_invariants(G)
        if len(invs) == 1:
            return GroupId("cyclic", (invs[0],), n)
        if all(d == invs[0] for d in invs) and _prime_factors(invs[0]) == [invs[0]]:
            return GroupId("elementary_abelian", (invs[0], len(invs)), n)
        return GroupId("abelian", invs, n)
    m = _try_dihedral(G)
    if m is not None:
        return GroupId("dihedral", (m,), n)
    for k, want in _ALT_ORDERS.items():
        if n == want and is_isomorphic(G, _reference(f"alt:{k}")):
            return GroupId("alternating", (k,), n)
    for k, want in _SYM_ORDERS.items():
        if n == want and is_isomorphic(G, _reference(f"sym:{k}")):
            return GroupId("symmetric", (k,), n)
    for q in (7, 8, 11, 13):
        if n == _PSL2_ORDERS[q] and is_isomorphic(G, _reference(f"psl2:{q}")):
            return GroupId("psl2", (q,), n)
    from .lattice import NORMAL_CAP
    from .series import is_simple
    if n <= NORMAL_CAP and is_simple(G):
        return GroupId("unknown_simple", (n,), n)
    return GroupId("opaque", (n,), n)


def l2_parameters(gid: GroupId) -> frozenset[int]:
    """Field sizes q with the identified group isomorphic to L2(q)."""
    if gid.kind == "alternating" and gid.params == (5,):
        return frozenset({4, 5})
    if gid.kind == "alternating" and gid.params == (6,):
        return frozenset({9})
    if gid.kind == "psl2":
        return frozenset({gid.params[0]})
    if gid.kind == "symmetric" and gid.params == (3,):
        return frozenset({2})
    if gid.kind == "dihedral" and gid.params == (3,):
        return frozenset({2})  # L2(2) is the symmetric group on 3 points
    if gid.kind == "alternating" and gid.params == (4,):
        return frozenset({3})
    return frozenset()


def same_class(G: PermGroup, H: PermGroup) -> bool:
    """Isomorphism test routed through identification when conclusive."""
    a, b = identify(G), identify(H)
    informative = {"trivial", "cyclic", "elementary_abelian", "abelian", "dihedral",
                   "alternating", "symmetric", "psl2"}
    if a.kind in informative or b.kind in informative:
        return a == b
    return is_isomorphic(G, H)
