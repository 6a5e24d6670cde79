"""Indexed element tables for groups small enough to enumerate.

Most desk-scale computations (subgroup lattices, conjugacy classes, normal
subgroup enumeration) run in index space: elements become integers, subgroups
become frozensets of integers, and multiplication is either a numpy table
lookup or a direct tuple composition, whichever is cheaper for the degree.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional, Sequence

import numpy as np

from .groups import CapExceededError, PermGroup
from .perms import Permutation

# A lookup table pays off when composing tuples is expensive (high degree)
# and the table itself stays small.
_TABLE_MAX_ORDER = 2_600
_TABLE_MIN_DEGREE = 16


class ElementTable:
    """All elements of a group, indexed, with fast multiplication helpers.

    Index 0 is always the identity; elements are sorted by image tuple, so
    indices are stable across runs.
    """

    def __init__(self, group: PermGroup, cap: int = 10_000):
        if group.order > cap:
            raise CapExceededError(
                f"group order {group.order} exceeds element cap {cap}; use a targeted search")
        self.group = group
        tuples = sorted(g.images for g in group.elements())
        if len(tuples) != group.order:
            raise RuntimeError("element enumeration disagrees with the group order")
        self.tuples: list[tuple[int, ...]] = tuples
        self.index: dict[tuple[int, ...], int] = {t: i for i, t in enumerate(tuples)}
        self.n = len(tuples)
        ident = tuple(range(group.degree))
        if self.index[ident] != 0:
            raise RuntimeError("identity did not sort first in the element table")
        self.inverse: list[int] = [0] * self.n
        for i, t in enumerate(tuples):
            inv = [0] * len(t)
            for a, b in enumerate(t):
                inv[b] = a
            self.inverse[i] = self.index[tuple(inv)]
        self.generator_indices: list[int] = [self.index[g.images] for g in group.generators]
        self._mul_table: Optional[np.ndarray] = None
        if group.degree > _TABLE_MIN_DEGREE and self.n <= _TABLE_MAX_ORDER:
            self._build_table()
        self._orders: Optional[list[int]] = None
        self._classes: Optional[list[tuple[int, ...]]] = None
        self._class_of: Optional[list[int]] = None

    def _build_table(self) -> None:
        arr = np.array(self.tuples, dtype=np.int32)
        n = self.n
        table = np.empty((n, n), dtype=np.int32)
        key_of = {arr[i].tobytes(): i for i in range(n)}
        for j in range(n):
            prod = arr[j][arr]  # row i becomes images of (element_i * element_j)
            for i in range(n):
                table[i, j] = key_of[prod[i].tobytes()]
        self._mul_table = table

    def mul(self, i: int, j: int) -> int:
        table = self._mul_table
        if table is not None:
            return int(table[i, j])
        a = self.tuples[i]
        b = self.tuples[j]
        return self.index[tuple(b[x] for x in a)]

    def conj(self, i: int, g: int) -> int:
        """Index of g^-1 * element_i * g."""
        return self.mul(self.mul(self.inverse[g], i), g)

    def conj_set(self, subset: Iterable[int], g: int) -> frozenset[int]:
        mul = self.mul
        ginv = self.inverse[g]
        return frozenset(mul(mul(ginv, x), g) for x in subset)

    def element_order(self, i: int) -> int:
        orders = self._orders
        if orders is None:
            orders = [Permutation._unsafe(t).order() for t in self.tuples]
            self._orders = orders
        return orders[i]

    def cyclic_subgroup(self, i: int) -> frozenset[int]:
        out = [0]
        x = i
        while x != 0:
            out.append(x)
            x = self.mul(x, i)
        return frozenset(out)

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Element conjugacy classes, each a sorted tuple, ordered by least member."""
        if self._classes is None:
            class_of = [-1] * self.n
            classes = []
            gens = self.generator_indices
            for start in range(self.n):
                if class_of[start] >= 0:
                    continue
                cid = len(classes)
                orbit = [start]
                class_of[start] = cid
                queue = deque([start])
                while queue:
                    x = queue.popleft()
                    for g in gens:
                        y = self.conj(x, g)
                        if class_of[y] < 0:
                            class_of[y] = cid
                            orbit.append(y)
                            queue.append(y)
                classes.append(tuple(sorted(orbit)))
            self._classes = classes
            self._class_of = class_of
        return self._classes

    def class_of(self, i: int) -> int:
        self.conjugacy_classes()
        assert self._class_of is not None
        return self._class_of[i]

    def closure(self, base_set: Optional[Iterable[int]], base_gens: Sequence[int],
                new_gens: Sequence[int], *, abort_above: Optional[int] = None) -> Optional[frozenset[int]]:
        """Subgroup generated by a known subgroup and extra elements.

        `base_set` must be closed (a subgroup) and `base_gens` must generate it;
        the closure walks right cosets of the base, so its cost is linear in the
        result size.  Returns None when the result would exceed `abort_above`.
        """
        mul = self.mul
        if base_set is None:
            block = [0]
            S = {0}
        else:
            S = set(base_set)
            block = sorted(S)
        gens: list[int] = []
        for g in list(base_gens) + list(new_gens):
            if g and g not in gens:
                gens.append(g)
        queue = deque([0])
        while queue:
            t = queue.popleft()
            for g in gens:
                u = mul(t, g)
                if u not in S:
                    fresh = [mul(h, u) for h in block]
                    S.update(fresh)
                    if abort_above is not None and len(S) > abort_above:
                        return None
                    queue.append(u)
        return frozenset(S)

    def extract_generators(self, subset: Iterable[int]) -> list[int]:
        """Small deterministic generating sequence for a closed subset."""
        gens: list[int] = []
        current: frozenset[int] = frozenset([0])
        for e in sorted(subset):
            if e and e not in current:
                gens.append(e)
                grown = self.closure(current, gens[:-1], [e])
                assert grown is not None
                current = grown
        return gens

    def permutation(self, i: int) -> Permutation:
        return Permutation._unsafe(self.tuples[i])

    def subset_to_perms(self, subset: Iterable[int]) -> list[Permutation]:
        return [Permutation._unsafe(self.tuples[i]) for i in sorted(subset)]


def element_table(group: PermGroup, cap: int = 10_000) -> ElementTable:
    """Memoized element table for a group."""
    cached = group._cache.get("element_table")
    if cached is not None and cached.n == group.order:
        return cached
    table = ElementTable(group, cap)
    group._cache["element_table"] = table
    return table
