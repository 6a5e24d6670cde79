"""Subgroup lattice enumeration up to conjugacy, with certified completeness.

The enumerator works bottom-up in index space: cyclic subgroups first, then
closures of known class representatives with cyclic subgroups until no new
class appears.  Every chain of subgroups realizes its target through such
steps, and conjugate results come from conjugate inputs, so the class list is
complete whenever the whole group fits in its element table.  Targeted
searches prune by Lagrange: intermediate subgroups of an order-m subgroup
have order dividing m.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .groups import PermGroup, Subgroup
from .tables import ElementTable, element_table

DEFAULT_ORDER_CAP = 5_000
NORMAL_CAP = 10_000


@dataclass
class SubgroupClass:
    """A conjugacy class of subgroups, held by one representative."""

    representative: Subgroup
    class_size: int
    verified_complete: bool
    indices: frozenset[int] = field(repr=False, default=frozenset())

    @property
    def order(self) -> int:
        return self.representative.order

    def normalizer_order(self) -> int:
        """Orbit-stabilizer: |G| = class size * |normalizer|."""
        return self.representative.ambient.order // self.class_size


class _Registry:
    """Dedup store: every conjugate of every registered subgroup is indexed."""

    def __init__(self, et: ElementTable):
        self.et = et
        self.seen: dict[frozenset[int], int] = {}
        self.reps: list[frozenset[int]] = []
        self.sizes: list[int] = []
        self.gens: list[list[int]] = []

    def register(self, subset: frozenset[int]) -> tuple[int, bool]:
        found = self.seen.get(subset)
        if found is not None:
            return found, False
        et = self.et
        orbit = [subset]
        self.seen[subset] = -1
        queue = deque([subset])
        while queue:
            s = queue.popleft()
            for g in et.generator_indices:
                t = et.conj_set(s, g)
                if t not in self.seen:
                    self.seen[t] = -1
                    orbit.append(t)
                    queue.append(t)
        cid = len(self.reps)
        canonical = min(orbit, key=sorted)
        for s in orbit:
            self.seen[s] = cid
        self.reps.append(canonical)
        self.sizes.append(len(orbit))
        self.gens.append(et.extract_generators(canonical))
        return cid, True


def _cyclic_subgroups(et: ElementTable, target: int) -> list[tuple[frozenset[int], int]]:
    """Distinct cyclic subgroups with order dividing target, with a generator."""
    seen: dict[frozenset[int], int] = {}
    for i in range(1, et.n):
        if target % et.element_order(i):
            continue
        s = et.cyclic_subgroup(i)
        if s not in seen:
            seen[s] = i
    return sorted(seen.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def _enumerate_classes(G: PermGroup, *, divisor_target: Optional[int] = None,
                       order_cap: int = DEFAULT_ORDER_CAP) -> tuple[list[int], _Registry]:
    et = element_table(G, order_cap)
    n = et.n
    target = divisor_target if divisor_target is not None else n
    registry = _Registry(et)
    cyclics = _cyclic_subgroups(et, target)

    queue: deque[int] = deque()
    cid, _ = registry.register(frozenset([0]))
    order_of_class = {cid: 1}
    queue.append(cid)
    for s, _gen in cyclics:
        cid, new = registry.register(s)
        if new:
            order_of_class[cid] = len(s)
            queue.append(cid)

    found = set(order_of_class)
    while queue:
        rid = queue.popleft()
        rep = registry.reps[rid]
        rep_order = len(rep)
        if rep_order == target:
            continue  # nothing above the target order can matter
        rep_gens = registry.gens[rid]
        # Candidates up to conjugacy under the representative itself:
        # <R, c^r> = <R, c>^r, so one cyclic per R-orbit suffices.
        skip: set[frozenset[int]] = set()
        for cset, cgen in cyclics:
            if cset <= rep or cset in skip:
                continue
            skip.add(cset)
            oq = deque([cset])
            while oq:
                s = oq.popleft()
                for g in rep_gens:
                    t = et.conj_set(s, g)
                    if t not in skip:
                        skip.add(t)
                        oq.append(t)
            grown = et.closure(rep, rep_gens, [cgen], abort_above=target)
            if grown is None or target % len(grown):
                continue
            cid, new = registry.register(grown)
            if new:
                order_of_class[cid] = len(grown)
                found.add(cid)
                queue.append(cid)
    return sorted(found), registry


def _class_from_registry(G: PermGroup, registry: _Registry, cid: int,
                         verified_complete: bool) -> SubgroupClass:
    et = registry.et
    gens = [et.permutation(i) for i in registry.gens[cid]]
    rep = Subgroup(G, gens, check=False)
    if rep.order != len(registry.reps[cid]):
        raise RuntimeError("extracted generators do not span their subgroup")
    rep._cache["ambient_indices"] = registry.reps[cid]
    return SubgroupClass(representative=rep, class_size=registry.sizes[cid],
                         verified_complete=verified_complete,
                         indices=registry.reps[cid])


def all_subgroups(G: PermGroup, *, order_cap: int = DEFAULT_ORDER_CAP) -> list[SubgroupClass]:
    """All conjugacy classes of subgroups, sorted by order then lexicographically."""
    cached = G._cache.get("all_subgroups")
    if cached is not None:
        return cached
    ids, registry = _enumerate_classes(G, order_cap=order_cap)
    classes = [_class_from_registry(G, registry, cid, True) for cid in ids]
    classes.sort(key=lambda c: (c.order, sorted(c.indices)))
    G._cache["all_subgroups"] = classes
    return classes


def subgroup_count(G: PermGroup, **kw) -> int:
    """Total number of subgroups (all conjugates counted)."""
    return sum(c.class_size for c in all_subgroups(G, **kw))


def subgroups_of_index(G: PermGroup, k: int, *, order_cap: int = DEFAULT_ORDER_CAP) -> list[SubgroupClass]:
    """Classes of subgroups of index k; complete by the divisor-pruned search."""
    if k < 1:
        raise ValueError("index must be positive")
    if G.order % k:
        return []
    m = G.order // k
    ids, registry = _enumerate_classes(G, divisor_target=m, order_cap=order_cap)
    classes = [_class_from_registry(G, registry, cid, True)
               for cid in ids if len(registry.reps[cid]) == m]
    classes.sort(key=lambda c: (c.order, sorted(c.indices)))
    return classes


def _largest_proper_divisor(n: int) -> int:
    for d in range(2, n + 1):
        if n % d == 0:
            return n // d
    return 1


def certify_maximal(G: PermGroup, subset: frozenset[int], gens: Sequence[int],
                    et: Optional[ElementTable] = None) -> bool:
    """Direct maximality certificate: closure with anything outside is all of G."""
    if et is None:
        et = element_table(G, NORMAL_CAP)
    n = et.n
    if len(subset) == n:
        return False
    bound = _largest_proper_divisor(n)
    covered = [False] * n
    for x in subset:
        covered[x] = True
    for x in range(n):
        if covered[x]:
            continue
        grown = et.closure(subset, list(gens), [x], abort_above=bound)
        if grown is not None:
            return False  # a proper subgroup strictly above
        # mark the whole coset subset*x: closure(subset, x) = G for them all
        for h in subset:
            covered[et.mul(h, x)] = True
    return True


def maximal_subgroups(G: PermGroup, *, order_cap: int = DEFAULT_ORDER_CAP) -> list[SubgroupClass]:
    """Maximal subgroup classes, sorted by descending order.

    Candidates come from the complete lattice, then each is re-certified
    directly rather than trusted from lattice position.
    """
    cached = G._cache.get("maximal_subgroups")
    if cached is not None:
        return cached
    classes = all_subgroups(G, order_cap=order_cap)
    et = element_table(G)
    full = G.order
    proper = [c for c in classes if c.order < full]
    # Lattice-position filter first: drop classes below some other proper class.
    # A conjugate of c lies in a conjugate of other iff c's representative does.
    orbits = {id(c): _conjugates(et, c.indices) for c in proper}
    candidates = []
    for c in proper:
        dominated = False
        for other in proper:
            if other.order <= c.order or other.order % c.order:
                continue
            if any(c.indices <= s for s in orbits[id(other)]):
                dominated = True
                break
        if not dominated:
            candidates.append(c)
    out = []
    for c in candidates:
        gens = et.extract_generators(c.indices)
        if not certify_maximal(G, c.indices, gens, et):
            raise RuntimeError("lattice-maximal candidate failed direct certification")
        c.representative._cache["certified_maximal"] = True
        out.append(c)
    out.sort(key=lambda c: (-c.order, sorted(c.indices)))
    G._cache["maximal_subgroups"] = out
    return out


def _conjugates(et: ElementTable, subset: frozenset[int]) -> list[frozenset[int]]:
    orbit = {subset}
    queue = deque([subset])
    while queue:
        s = queue.popleft()
        for g in et.generator_indices:
            t = et.conj_set(s, g)
            if t not in orbit:
                orbit.add(t)
                queue.append(t)
    return list(orbit)


def random_maximal_subgroups(G: PermGroup, *, seed: int = 0, attempts: int = 8,
                             element_cap: int = NORMAL_CAP) -> list[SubgroupClass]:
    """Seeded random search for maximal subgroups; found classes are certified
    maximal individually but the list is not certified complete."""
    import random
    rng = random.Random(seed)
    et = element_table(G, element_cap)
    n = et.n
    bound = _largest_proper_divisor(n)
    reps: list[frozenset[int]] = []
    for _ in range(attempts):
        a = rng.randrange(1, n)
        b = rng.randrange(1, n)
        current = et.closure(None, [], [a, b], abort_above=bound)
        if current is None:
            current = et.cyclic_subgroup(a)
        gens = et.extract_generators(current)
        # Climb: absorb any element whose closure stays proper.
        while True:
            extended = None
            for x in range(1, n):
                if x in current:
                    continue
                grown = et.closure(current, gens, [x], abort_above=bound)
                if grown is not None:
                    extended = grown
                    break
            if extended is None:
                break
            current = extended
            gens = et.extract_generators(current)
        if not any(current in _conjugates(et, r) for r in reps):
            reps.append(current)
    out = []
    for r in reps:
        conj = _conjugates(et, r)
        canon = min(conj, key=sorted)
        gens = et.extract_generators(canon)
        if not certify_maximal(G, canon, gens, et):
            raise RuntimeError("climbed subgroup failed its maximality certificate")
        sub = Subgroup(G, [et.permutation(i) for i in gens], check=False)
        sub._cache["ambient_indices"] = canon
        sub._cache["certified_maximal"] = True
        out.append(SubgroupClass(representative=sub, class_size=len(conj),
                                 verified_complete=False, indices=canon))
    out.sort(key=lambda c: (-c.order, sorted(c.indices)))
    return out


def normal_subgroups(G: PermGroup, *, cap: int = NORMAL_CAP) -> list[Subgroup]:
    """All normal subgroups, as joins of element conjugacy classes."""
    cached = G._cache.get("normal_subgroups")
    if cached is not None:
        return cached
    et = element_table(G, cap)
    classes = et.conjugacy_classes()
    reps = [c[0] for c in classes]
    trivial = frozenset([0])
    found: dict[frozenset[int], list[int]] = {trivial: []}
    queue = deque([trivial])
    while queue:
        s = queue.popleft()
        sgens = found[s]
        for rep in reps:
            if rep in s or rep == 0:
                continue
            class_members = list(classes[et.class_of(rep)])
            grown = et.closure(s, sgens, class_members)
            assert grown is not None
            if grown not in found:
                found[grown] = et.extract_generators(grown)
                queue.append(grown)
    subs = []
    for s in sorted(found, key=lambda s: (len(s), sorted(s))):
        subs.append(Subgroup(G, [et.permutation(i) for i in found[s]], check=False))
        subs[-1]._cache["indices"] = s
    G._cache["normal_subgroups"] = subs
    return subs


def minimal_normal_subgroups(G: PermGroup, *, cap: int = NORMAL_CAP) -> list[Subgroup]:
    """Atoms of the normal subgroup lattice (G itself counts when simple)."""
    normals = normal_subgroups(G, cap=cap)
    sets = [n._cache["indices"] for n in normals]
    out = []
    for i, n in enumerate(normals):
        s = sets[i]
        if len(s) == 1:
            continue
        if any(1 < len(t) < len(s) and t < s for t in sets):
            continue
        out.append(n)
    return out


@dataclass
class KleinFourClass:
    """A conjugacy class of Klein four-subgroups with its normalizer order."""

    representative: Subgroup
    class_size: int
    normalizer_order: int
    indices: frozenset[int] = field(repr=False, default=frozenset())


def klein_four_classes(G: PermGroup, *, cap: int = NORMAL_CAP) -> list[KleinFourClass]:
    """Conjugacy classes of Klein four-subgroups (pairs of commuting involutions)."""
    et = element_table(G, cap)
    n = et.n
    involutions = [i for i in range(1, n) if et.element_order(i) == 2]
    seen: set[frozenset[int]] = set()
    classes = []
    for idx, a in enumerate(involutions):
        for b in involutions[idx + 1:]:
            ab = et.mul(a, b)
            if ab != et.mul(b, a):
                continue
            s = frozenset([0, a, b, ab])
            if len(s) != 4 or s in seen:
                continue
            orbit = _conjugates(et, s)
            seen.update(orbit)
            canonical = min(orbit, key=sorted)
            norm_order = n // len(orbit)
            gens = et.extract_generators(canonical)
            sub = Subgroup(G, [et.permutation(i) for i in gens], check=False)
            classes.append(KleinFourClass(representative=sub, class_size=len(orbit),
                                          normalizer_order=norm_order, indices=canonical))
    classes.sort(key=lambda c: sorted(c.indices))
    return classes


def fuse_subgroup_classes(G: PermGroup, reps: Sequence[frozenset[tuple[int, ...]]]) -> list[list[int]]:
    """Partition subgroup element-sets (image tuples) by conjugacy in G.

    Useful when the subgroups were found inside a smaller ambient group and
    the question is how the classes fuse in the bigger one.
    """
    remaining = list(range(len(reps)))
    blocks: list[list[int]] = []
    while remaining:
        first = remaining.pop(0)
        block = [first]
        orbit = {reps[first]}
        queue = deque([reps[first]])
        while queue:
            s = queue.popleft()
            for g in G.generators:
                ginv = g.inverse().images
                gim = g.images
                t = frozenset(tuple(gim[x[ginv[i]]] for i in range(len(x))) for x in s)
                if t not in orbit:
                    orbit.add(t)
                    queue.append(t)
        still = []
        for j in remaining:
            if reps[j] in orbit:
                block.append(j)
            else:
                still.append(j)
        remaining = still
        blocks.append(block)
    return blocks
