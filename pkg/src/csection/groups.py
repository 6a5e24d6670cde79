"""Permutation groups with deterministic stabilizer chains, subgroups, and the
standard operations built on sifting: membership, closures, normalizers,
centralizers, coset actions, and quotients."""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Optional, Sequence

from .perms import Permutation

DEFAULT_ELEMENT_CAP = 10_000
DEFAULT_DEGREE_CAP = 5_000


class DegreeMismatchError(ValueError):
    """Raised when permutations of different degrees are mixed."""


class CapExceededError(RuntimeError):
    """Raised when an operation would exceed its configured size cap."""


class NotASubgroupError(ValueError):
    """Raised when a claimed subgroup element fails membership."""


class NotNormalError(ValueError):
    """Raised when an operation requires a normal subgroup."""


class _Level:
    """One level of a stabilizer chain: a base point with its transversal."""

    __slots__ = ("point", "gens", "transversal", "inverse_reps")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []  # generators first appearing at this level
        self.transversal: dict[int, Permutation] = {}
        self.inverse_reps: dict[int, Permutation] = {}


def _choose_base_point(g: Permutation) -> int:
    # Greedy heuristic: take a point from the longest cycle of g, ties to the
    # smallest point, so transversals start as large as possible.
    best_key = None
    best_pt = -1
    for cyc in g.cycles():
        key = (-len(cyc), cyc[0])
        if best_key is None or key < best_key:
            best_key = key
            best_pt = cyc[0]
    if best_pt < 0:
        raise ValueError("identity permutation has no base point")
    return best_pt


class PermGroup:
    """A finite permutation group with a verified stabilizer chain.

    Instances are immutable once constructed; the `_cache` dict only memoizes
    derived data (element tables, fingerprints) and never changes group
    identity.
    """

    __slots__ = ("degree", "generators", "base", "strong_generators", "transversals",
                 "order", "_levels", "_cache")

    def __init__(self, degree: int, generators: Iterable[Permutation]):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                raise TypeError(f"expected Permutation, got {type(g).__name__}")
            if g.degree != degree:
                raise DegreeMismatchError(f"generator degree {g.degree} != group degree {degree}")
            if not g.is_identity():
                gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        levels = _schreier_sims(degree, gens)
        self._levels = levels
        self.base = tuple(lv.point for lv in levels)
        self.strong_generators = tuple(itertools.chain.from_iterable(lv.gens for lv in levels))
        self.transversals = tuple(dict(lv.transversal) for lv in levels)
        order = 1
        for lv in levels:
            order *= len(lv.transversal)
        self.order = order
        self._cache: dict = {}
        # Certification: every input generator must sift to the identity.
        for g in gens:
            if not self._sift(g).is_identity():
                raise RuntimeError("stabilizer chain failed to absorb its own generator")

    # -- membership ---------------------------------------------------------

    def _sift(self, g: Permutation) -> Permutation:
        h = g
        for lv in self._levels:
            pt = h.images[lv.point]
            rep_inv = lv.inverse_reps.get(pt)
            if rep_inv is None:
                return h
            h = h * rep_inv
        return h

    def contains(self, g: Permutation) -> bool:
        """Membership test by sifting through the stabilizer chain."""
        if g.degree != self.degree:
            return False
        return self._sift(g).is_identity()

    __contains__ = contains

    # -- basic accessors ----------------------------------------------------

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def orbit(self, point: int) -> list[int]:
        """Orbit of a point under the group, in BFS discovery order."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        seen = {point}
        queue = deque([point])
        out = [point]
        while queue:
            p = queue.popleft()
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    out.append(q)
                    queue.append(q)
        return out

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for p in range(self.degree):
            if p not in seen:
                orb = self.orbit(p)
                seen.update(orb)
                out.append(orb)
        return out

    def random_element(self, rng) -> Permutation:
        """Uniformly random element drawn via the transversal factorization."""
        g = self.identity()
        for lv in reversed(self._levels):
            pts = sorted(lv.transversal)
            g = g * lv.transversal[pts[rng.randrange(len(pts))]]
        return g

    def elements(self) -> Iterable[Permutation]:
        """All elements via transversal products, deepest level first."""
        levels = self._levels
        if not levels:
            yield self.identity()
            return
        rep_lists = [[lv.transversal[pt] for pt in sorted(lv.transversal)] for lv in levels]
        for combo in itertools.product(*reversed(rep_lists)):
            g = combo[0]
            for u in combo[1:]:
                g = g * u
            yield g

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _schreier_sims(degree: int, gens: Sequence[Permutation]) -> list[_Level]:
    """Deterministic Schreier-Sims: returns a complete stabilizer chain."""
    levels: list[_Level] = []

    def strip(g: Permutation, start: int) -> tuple[Permutation, int]:
        h = g
        idx = start
        while idx < len(levels):
            lv = levels[idx]
            pt = h.images[lv.point]
            rep_inv = lv.inverse_reps.get(pt)
            if rep_inv is None:
                return h, idx
            h = h * rep_inv
            idx += 1
        return h, idx

    def effective_gens(i: int) -> list[Permutation]:
        return list(itertools.chain.from_iterable(lv.gens for lv in levels[i:]))

    def rebuild_orbit(i: int) -> None:
        lv = levels[i]
        gens_i = effective_gens(i)
        ident = Permutation.identity(degree)
        lv.transversal = {lv.point: ident}
        lv.inverse_reps = {lv.point: ident}
        queue = deque([lv.point])
        while queue:
            pt = queue.popleft()
            rep = lv.transversal[pt]
            for s in gens_i:
                q = s.images[pt]
                if q not in lv.transversal:
                    u = rep * s
                    lv.transversal[q] = u
                    lv.inverse_reps[q] = u.inverse()
                    queue.append(q)

    def add_generator(g: Permutation, level_idx: int) -> None:
        if level_idx == len(levels):
            levels.append(_Level(_choose_base_point(g)))
        levels[level_idx].gens.append(g)

    for g in gens:
        if g.is_identity():
            continue
        idx = 0
        while idx < len(levels) and g.images[levels[idx].point] == levels[idx].point:
            idx += 1
        add_generator(g, idx)

    for i in range(len(levels)):
        rebuild_orbit(i)

    i = len(levels) - 1
    while i >= 0:
        rebuild_orbit(i)
        lv = levels[i]
        gens_i = effective_gens(i)
        restart_at = None
        # Orbit points in discovery-deterministic sorted order.
        for pt in sorted(lv.transversal):
            u = lv.transversal[pt]
            for s in gens_i:
                target = s.images[pt]
                schreier = u * s * lv.inverse_reps[target]
                if schreier.is_identity():
                    continue
                residue, at = strip(schreier, i + 1)
                if not residue.is_identity():
                    add_generator(residue, at)
                    restart_at = at
                    break
            if restart_at is not None:
                break
        if restart_at is not None:
            i = restart_at
        else:
            i -= 1
    return levels


def group_from_generators(degree: int, generators: Iterable[Permutation]) -> PermGroup:
    """Build a group with an exact order from a verified stabilizer chain."""
    return PermGroup(degree, generators)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [])


class Subgroup:
    """A subgroup of an ambient group, carrying its own stabilizer chain."""

    __slots__ = ("ambient", "generators", "group", "_cache")

    def __init__(self, ambient: PermGroup, generators: Iterable[Permutation], *,
                 check: bool = True):
        gens = tuple(g for g in generators if not g.is_identity())
        for g in gens:
            if g.degree != ambient.degree:
                raise DegreeMismatchError(
                    f"generator degree {g.degree} does not match ambient degree {ambient.degree}")
        if check:
            for g in gens:
                if not ambient.contains(g):
                    raise NotASubgroupError(f"generator {g!r} lies outside the ambient group")
        self.ambient = ambient
        self.generators = gens
        self.group = PermGroup(ambient.degree, gens)
        if ambient.order % self.group.order:
            raise RuntimeError("subgroup order fails Lagrange against its ambient group")
        self._cache: dict = {}

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def degree(self) -> int:
        return self.group.degree

    def contains(self, g: Permutation) -> bool:
        return self.group.contains(g)

    __contains__ = contains

    def index(self) -> int:
        return self.ambient.order // self.order

    def elements(self) -> Iterable[Permutation]:
        return self.group.elements()

    def element_set(self, cap: int = 1_000_000) -> frozenset[tuple[int, ...]]:
        """All elements as image tuples; memoized."""
        cached = self._cache.get("element_set")
        if cached is None:
            if self.order > cap:
                raise CapExceededError(f"subgroup order {self.order} exceeds element cap {cap}")
            cached = frozenset(g.images for g in self.group.elements())
            self._cache["element_set"] = cached
        return cached

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, index={self.index()})"


def closure(H: Subgroup, g: Permutation) -> Subgroup:
    """The subgroup generated by H and one further element of its ambient group."""
    return Subgroup(H.ambient, H.generators + (g,))


def conjugate_subgroup(H: Subgroup, g: Permutation) -> Subgroup:
    """The conjugate H^g inside the same ambient group."""
    if not H.ambient.contains(g):
        raise NotASubgroupError("conjugating element lies outside the ambient group")
    return Subgroup(H.ambient, [h.conjugated_by(g) for h in H.generators], check=False)


def is_normal(G: PermGroup, H: Subgroup) -> bool:
    """True when H is normalized by every generator of G."""
    for g in G.generators:
        for h in H.generators:
            if not H.contains(h.conjugated_by(g)):
                return False
    return True


def normal_closure(G: PermGroup, seed: Subgroup | Sequence[Permutation]) -> Subgroup:
    """Smallest normal subgroup of G containing the seed elements."""
    gens = list(seed.generators if isinstance(seed, Subgroup) else seed)
    gens = [g for g in gens if not g.is_identity()]
    current = PermGroup(G.degree, gens)
    queue = deque(gens)
    while queue:
        h = queue.popleft()
        for g in G.generators:
            c = h.conjugated_by(g)
            if not current.contains(c):
                gens.append(c)
                current = PermGroup(G.degree, gens)
                queue.append(c)
    return Subgroup(G, gens, check=False)


def derived_subgroup(G: PermGroup) -> Subgroup:
    """Commutator subgroup: normal closure of the generator commutators."""
    comms = []
    gens = G.generators
    for i, a in enumerate(gens):
        for b in gens[i:]:
            c = a.inverse() * b.inverse() * a * b
            if not c.is_identity():
                comms.append(c)
    return normal_closure(G, comms)


def _scan_elements(G: PermGroup, cap: int) -> list[Permutation]:
    if G.order > cap:
        raise CapExceededError(f"group order {G.order} exceeds scan cap {cap}")
    return list(G.elements())


def centralizer(G: PermGroup, H: Subgroup, *, scan_cap: int = DEFAULT_ELEMENT_CAP) -> Subgroup:
    """Centralizer of H in G; full scan at small orders, orbit-stabilizer above."""
    targets = [h for h in H.generators if not h.is_identity()]
    if not targets:
        return Subgroup(G, G.generators, check=False)
    if G.order <= scan_cap:
        elems = _scan_elements(G, scan_cap)
        cent = [g for g in elems
                if all((h * g).images == (g * h).images for h in targets)]
        return Subgroup(G, _reduce_generating_set(G.degree, cent), check=False)
    # Intersect element centralizers: C_G(h1), then centralize h2 within it, etc.
    current_gens = list(G.generators)
    for h in targets:
        current_gens = _element_centralizer_gens(G.degree, current_gens, h)
    return Subgroup(G, current_gens, check=False)


def _element_centralizer_gens(degree: int, gens: list[Permutation], h: Permutation) -> list[Permutation]:
    # Orbit of h under conjugation; Schreier generators of the stabilizer.
    start = h.images
    transversal: dict[tuple[int, ...], Permutation] = {start: Permutation.identity(degree)}
    queue = deque([h])
    stab: list[Permutation] = []
    seen_stab: set[tuple[int, ...]] = set()
    while queue:
        x = queue.popleft()
        u = transversal[x.images]
        for g in gens:
            y = x.conjugated_by(g)
            rep = transversal.get(y.images)
            if rep is None:
                transversal[y.images] = u * g
                queue.append(y)
            else:
                s = u * g * rep.inverse()
                if not s.is_identity() and s.images not in seen_stab:
                    seen_stab.add(s.images)
                    stab.append(s)
    return _reduce_generating_set(degree, stab)


def normalizer(G: PermGroup, H: Subgroup, *, scan_cap: int = DEFAULT_ELEMENT_CAP,
               orbit_cap: int = 500_000) -> Subgroup:
    """Normalizer of H in G.

    Small groups get a certified full element scan.  Larger groups use the
    conjugation orbit of H with Schreier generators for the stabilizer, which
    is exact whenever the orbit fits under `orbit_cap`.
    """
    if G.order <= scan_cap:
        hset = H.element_set()
        found = []
        for g in _scan_elements(G, scan_cap):
            if all(h.conjugated_by(g).images in hset for h in H.generators):
                found.append(g)
        return Subgroup(G, _reduce_generating_set(G.degree, found), check=False)

    hset = H.element_set()
    ident = Permutation.identity(G.degree)
    transversal: dict[frozenset, Permutation] = {hset: ident}
    queue = deque([hset])
    stab: list[Permutation] = []
    seen_stab: set[tuple[int, ...]] = set()
    while queue:
        s = queue.popleft()
        u = transversal[s]
        for g in G.generators:
            ginv = g.inverse().images
            gim = g.images
            t = frozenset(tuple(gim[x[ginv[i]]] for i in range(len(x))) for x in s)
            rep = transversal.get(t)
            if rep is None:
                if len(transversal) >= orbit_cap:
                    raise CapExceededError("conjugation orbit exceeded the normalizer cap")
                transversal[t] = u * g
                queue.append(t)
            else:
                sg = u * g * rep.inverse()
                if not sg.is_identity() and sg.images not in seen_stab:
                    seen_stab.add(sg.images)
                    stab.append(sg)
    result = Subgroup(G, _reduce_generating_set(G.degree, stab), check=False)
    if result.order * len(transversal) != G.order:
        raise RuntimeError("orbit-stabilizer bookkeeping failed in normalizer")
    return result


def center(G: PermGroup, *, scan_cap: int = DEFAULT_ELEMENT_CAP) -> Subgroup:
    """Center of G."""
    return centralizer(G, Subgroup(G, G.generators, check=False), scan_cap=scan_cap)


def _reduce_generating_set(degree: int, elems: Sequence[Permutation]) -> list[Permutation]:
    """Pick a small generating subset of the given elements, deterministically."""
    gens: list[Permutation] = []
    current = PermGroup(degree, [])
    for g in sorted(set(elems)):
        if g.is_identity():
            continue
        if not current.contains(g):
            gens.append(g)
            current = PermGroup(degree, gens)
    return gens


class CosetAction:
    """The permutation action of G on the right cosets of a subgroup."""

    __slots__ = ("source", "subgroup", "image", "generator_images", "coset_reps")

    def __init__(self, source: PermGroup, subgroup: Subgroup, image: PermGroup,
                 generator_images: list[Permutation], coset_reps: list[Permutation]):
        self.source = source
        self.subgroup = subgroup
        self.image = image
        self.generator_images = generator_images
        self.coset_reps = coset_reps

    @property
    def kernel_order(self) -> int:
        return self.source.order // self.image.order


def coset_action(G: PermGroup, H: Subgroup, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> CosetAction:
    """Action of G on the right cosets of H; the image degree is the index."""
    index = G.order // H.order
    if index > degree_cap:
        raise CapExceededError(f"coset degree {index} exceeds cap {degree_cap}")
    helems = [Permutation._unsafe(t) for t in sorted(H.element_set())]

    def coset_key(rep: Permutation) -> tuple[int, ...]:
        return min((h * rep).images for h in helems)

    ident = G.identity()
    first = coset_key(ident)
    keys = {first: 0}
    reps = [ident]
    queue = deque([0])
    adjacency: dict[int, list[int]] = {}
    while queue:
        i = queue.popleft()
        row = []
        for g in G.generators:
            rep = reps[i] * g
            key = coset_key(rep)
            j = keys.get(key)
            if j is None:
                j = len(reps)
                keys[key] = j
                reps.append(rep)
                queue.append(j)
            row.append(j)
        adjacency[i] = row
    if len(reps) != index:
        raise RuntimeError("coset enumeration found the wrong number of cosets")
    gen_images = []
    for k in range(len(G.generators)):
        gen_images.append(Permutation(tuple(adjacency[i][k] for i in range(index))))
    image = PermGroup(max(index, 1), gen_images)
    return CosetAction(G, H, image, gen_images, reps)


def quotient_group(G: PermGroup, N: Subgroup, *, degree_cap: int = DEFAULT_DEGREE_CAP) -> PermGroup:
    """G/N as a permutation group on the cosets of N; N must be normal."""
    if not is_normal(G, N):
        raise NotNormalError("quotient requires a normal subgroup")
    action = coset_action(G, N, degree_cap=degree_cap)
    if action.image.order != G.order // N.order:
        raise RuntimeError("quotient image order disagrees with the index")
    return action.image


def whole_subgroup(G: PermGroup) -> Subgroup:
    """G viewed as a subgroup of itself."""
    return Subgroup(G, G.generators, check=False)
