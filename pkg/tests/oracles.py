"""Independent brute-force reference implementations for the tests.

Everything here works on plain image tuples (or small-int indices backed by a
locally built multiplication table) with its own composition function.  No
code is shared with the package under test, so any disagreement points at a
real bug on one side or the other.
"""

from __future__ import annotations

import itertools
from math import gcd


def compose(a, b):
    """Left-to-right product: apply a first, then b."""
    return tuple(b[x] for x in a)


def invert(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def identity(d):
    return tuple(range(d))


def element_order(a):
    x = a
    k = 1
    ident = identity(len(a))
    while x != ident:
        x = compose(x, a)
        k += 1
    return k


def generated(degree, gens):
    """All products of the given permutations, by plain word BFS."""
    ident = identity(degree)
    seen = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens if tuple(g) != ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                p = compose(w, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return frozenset(seen)


class NaiveTable:
    """Full multiplication table over an explicit element list."""

    def __init__(self, elements):
        self.elems = sorted(tuple(e) for e in elements)
        self.n = len(self.elems)
        self.index = {t: i for i, t in enumerate(self.elems)}
        assert self.elems[0] == identity(len(self.elems[0]))
        self.mul = [[self.index[compose(a, b)] for b in self.elems] for a in self.elems]
        self.inv = [self.index[invert(a)] for a in self.elems]
        self.order_of = [element_order(a) for a in self.elems]

    def conj(self, x, g):
        return self.mul[self.mul[self.inv[g]][x]][g]

    def span(self, seed):
        """Subgroup generated by the seed indices, word BFS over the table."""
        gens = sorted(set(seed) - {0})
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                row = self.mul[w]
                for g in gens:
                    p = row[g]
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        return frozenset(seen)

    def conjugacy_classes(self):
        seen = set()
        out = []
        for x in range(self.n):
            if x in seen:
                continue
            cls = {self.conj(x, g) for g in range(self.n)}
            seen |= cls
            out.append(frozenset(cls))
        return out

    def normal_closure(self, seed):
        current = self.span(seed)
        while True:
            extra = {self.conj(x, g) for x in current for g in range(self.n)} - current
            if not extra:
                return current
            current = self.span(current | extra)

    def is_normal(self, subset):
        return all(self.conj(x, g) in subset for x in subset for g in range(self.n))


def all_subgroups_naive(table: NaiveTable):
    """Every subgroup, as a frozenset of indices.

    One-element extensions from the trivial group reach everything: any chain
    1 < <x1> < <x1,x2> < ... realizes its endpoint.  Extension candidates are
    deduplicated by coset, since <H, x> = <H, hx>.
    """
    triv = frozenset({0})
    found = {triv}
    frontier = [triv]
    while frontier:
        H = frontier.pop()
        covered = set(H)
        for x in range(table.n):
            if x in covered:
                continue
            M = table.span(H | {x})
            covered |= {table.mul[h][x] for h in H}
            if M not in found:
                found.add(M)
                frontier.append(M)
    return found


def all_subgroups_powerset(table: NaiveTable):
    """Subgroups by exhaustive subset filtering; only sane for tiny orders."""
    assert table.n <= 12
    out = set()
    for r in range(1, table.n + 1):
        if table.n % r:
            continue
        for combo in itertools.combinations(range(table.n), r):
            s = set(combo)
            if 0 not in s:
                continue
            if all(table.mul[a][b] in s for a in s for b in s):
                out.add(frozenset(s))
    return out


def normal_subgroups_naive(table: NaiveTable):
    """All normal subgroups, by normal-closure extensions over class reps."""
    reps = [min(c) for c in table.conjugacy_classes()]
    triv = frozenset({0})
    found = {triv}
    frontier = [triv]
    while frontier:
        N = frontier.pop()
        for g in reps:
            if g in N:
                continue
            M = table.normal_closure(N | {g})
            if M not in found:
                found.add(M)
                frontier.append(M)
    return found


def is_supersolvable_naive(table: NaiveTable):
    """Search for an ascending chain of G-normal subgroups with cyclic steps.

    From a normal term N, any candidate next term is <N, x> for some x, and
    the step factor is automatically cyclic (generated by the image of x);
    the chain is valid when every term is normal in the whole group.
    """
    normals = normal_subgroups_naive(table)
    full = frozenset(range(table.n))
    memo = {}

    def reach(N):
        if N == full:
            return True
        got = memo.get(N)
        if got is not None:
            return got
        memo[N] = False
        covered = set(N)
        for x in range(table.n):
            if x in covered:
                continue
            M = table.span(N | {x})
            covered |= {table.mul[nn][x] for nn in N}
            if M in normals and reach(M):
                memo[N] = True
                return True
        return False

    return reach(frozenset({0}))


def normalizer_naive(table: NaiveTable, subset):
    subset = frozenset(subset)
    return frozenset(g for g in range(table.n)
                     if all(table.conj(x, g) in subset for x in subset))


def centralizer_naive(table: NaiveTable, subset):
    return frozenset(g for g in range(table.n)
                     if all(table.mul[x][g] == table.mul[g][x] for x in subset))


def brute_isomorphic(elems_a, elems_b, *, map_budget=2_000_000):
    """Bijection search constrained only by element orders.

    Order profiles must match (isomorphisms preserve element order); within
    that constraint every bijection is tried and checked as a homomorphism
    on all pairs.  Refuses to run past `map_budget` candidate maps.
    """
    if len(elems_a) != len(elems_b):
        return False
    ta, tb = NaiveTable(elems_a), NaiveTable(elems_b)
    buckets_a: dict[int, list[int]] = {}
    buckets_b: dict[int, list[int]] = {}
    for i in range(ta.n):
        buckets_a.setdefault(ta.order_of[i], []).append(i)
    for i in range(tb.n):
        buckets_b.setdefault(tb.order_of[i], []).append(i)
    if {k: len(v) for k, v in buckets_a.items()} != {k: len(v) for k, v in buckets_b.items()}:
        return False
    total = 1
    for v in buckets_a.values():
        for m in range(2, len(v) + 1):
            total *= m
    if total > map_budget:
        raise RuntimeError(f"bijection count {total} exceeds the oracle budget")
    orders = sorted(buckets_a)
    source = [i for o in orders for i in buckets_a[o]]
    for parts in itertools.product(*(itertools.permutations(buckets_b[o]) for o in orders)):
        img = [i for part in parts for i in part]
        phi = {s: t for s, t in zip(source, img)}
        if all(phi[ta.mul[x][y]] == tb.mul[phi[x]][phi[y]]
               for x in range(ta.n) for y in range(ta.n)):
            return True
    return False


def abelian_order_counts_match(elems, dims):
    """Order statistics of an abelian group against a product of cyclics.

    In a direct product of cyclic groups of sizes d_i, the number of elements
    x with x^m = 1 is the product of gcd(d_i, m); for finite abelian groups
    these counts pin down the isomorphism class.
    """
    n = len(elems)
    orders = [element_order(e) for e in elems]
    for m in range(1, n + 1):
        if n % m:
            continue
        have = sum(1 for o in orders if m % o == 0)
        want = 1
        for d in dims:
            want *= gcd(d, m)
        if have != want:
            return False
    return True


def det_cofactor(F, rows):
    """Determinant by cofactor expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        term = F.mul(rows[0][j], det_cofactor(F, minor))
        total = F.add(total, term) if j % 2 == 0 else F.sub(total, term)
    return total
