"""Stabilizer chains, subgroups, and the orbit machinery, cross-checked
against word-BFS closures and full-scan oracles."""

import random

import pytest

from csection.groups import (CapExceededError, DegreeMismatchError, NotASubgroupError,
                             NotNormalError, PermGroup, Subgroup, center, centralizer,
                             closure, conjugate_subgroup, coset_action, derived_subgroup,
                             group_from_generators, is_normal, normal_closure, normalizer,
                             quotient_group, trivial_group, whole_subgroup)
from csection.perms import Permutation
from gtools import elements_of, named, product, quaternion
from oracles import (NaiveTable, centralizer_naive, compose, generated, invert,
                     normalizer_naive)


def perm(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


ORDER_CASES = [
    ("Sym", (3,), 6), ("Sym", (4,), 24), ("Alt", (4,), 12), ("Alt", (5,), 60),
    ("Dihedral", (4,), 8), ("Cyclic", (12,), 12), ("SL", (2, 3), 24),
    ("PGL2", (7,), 336), ("PSL2", (7,), 168),
]


@pytest.mark.parametrize("name,params,order", ORDER_CASES)
def test_bsgs_order_matches_word_closure(name, params, order):
    G = named(name, *params)
    assert G.order == order
    spanned = generated(G.degree, [g.images for g in G.generators])
    assert len(spanned) == order
    assert frozenset(elements_of(G)) == spanned


def test_quaternion_order():
    Q = quaternion()
    assert Q.order == 8
    assert len(generated(8, [g.images for g in Q.generators])) == 8


def test_elements_are_distinct_and_contained():
    G = named("Sym", 4)
    els = list(G.elements())
    assert len(els) == 24 and len(set(els)) == 24
    assert all(G.contains(g) for g in els)
    assert all(g in G for g in els)


def test_contains_negative():
    A4 = named("Alt", 4)
    assert not A4.contains(perm(4, (0, 1)))
    # degree mismatch is simply non-membership
    assert not A4.contains(perm(5, (0, 1, 2)))


def test_membership_of_random_words():
    G = named("PSL2", 7)
    rng = random.Random(2)
    gens = G.generators
    for _ in range(40):
        w = G.identity()
        for _ in range(rng.randrange(1, 12)):
            w = w * gens[rng.randrange(len(gens))]
        assert G.contains(w)


def test_random_element_is_seeded_and_uniform_support():
    G = named("Sym", 4)
    a = G.random_element(random.Random(5))
    b = G.random_element(random.Random(5))
    assert a == b and G.contains(a)
    seen = {G.random_element(random.Random(s)) for s in range(200)}
    assert len(seen) > 12  # hits a decent spread of the 24 elements


def test_orbits():
    G = named("Alt", 4)
    assert sorted(G.orbit(0)) == [0, 1, 2, 3]
    P = product("Cyclic", (2,), "Alt", (5,))
    assert P.orbits() == [[0, 1], [2, 3, 4, 5, 6]]
    with pytest.raises(ValueError):
        G.orbit(9)


def test_constructor_errors():
    with pytest.raises(DegreeMismatchError):
        PermGroup(4, [perm(5, (0, 1))])
    with pytest.raises(TypeError):
        PermGroup(4, [(0, 1, 2, 3)])
    assert group_from_generators(3, []).order == 1
    assert trivial_group(6).order == 1


def test_subgroup_checks():
    S4 = named("Sym", 4)
    A4 = Subgroup(S4, [perm(4, (0, 1, 2)), perm(4, (1, 2, 3))])
    assert A4.order == 12 and A4.index() == 2
    assert A4.contains(perm(4, (0, 1), (2, 3)))
    with pytest.raises(NotASubgroupError):
        Subgroup(named("Alt", 4), [perm(4, (0, 1))])
    with pytest.raises(DegreeMismatchError):
        Subgroup(S4, [perm(5, (0, 1))])


def test_element_set_and_cap():
    S4 = named("Sym", 4)
    V = Subgroup(S4, [perm(4, (0, 1), (2, 3)), perm(4, (0, 2), (1, 3))])
    assert len(V.element_set()) == 4
    A5 = whole_subgroup(named("Alt", 5))
    with pytest.raises(CapExceededError):
        A5.element_set(cap=10)


def test_closure_and_conjugate():
    S4 = named("Sym", 4)
    V = Subgroup(S4, [perm(4, (0, 1), (2, 3)), perm(4, (0, 2), (1, 3))])
    grown = closure(V, perm(4, (0, 1, 2)))
    assert grown.order == 12
    g = perm(4, (0, 3))
    conj = conjugate_subgroup(V, g)
    assert conj.order == 4
    point_stab = Subgroup(S4, [perm(4, (0, 1)), perm(4, (0, 1, 2))])  # fixes 3
    moved = conjugate_subgroup(point_stab, g)
    assert all(h(0) == 0 for h in moved.generators)  # now fixes 0
    with pytest.raises(NotASubgroupError):
        conjugate_subgroup(V, perm(5, (0, 1)))


def test_is_normal():
    S4 = named("Sym", 4)
    V = Subgroup(S4, [perm(4, (0, 1), (2, 3)), perm(4, (0, 2), (1, 3))])
    assert is_normal(S4, V)
    assert not is_normal(S4, Subgroup(S4, [perm(4, (0, 1))]))
    assert not is_normal(S4, Subgroup(S4, [perm(4, (0, 1)), perm(4, (0, 1, 2))]))


@pytest.mark.parametrize("seed_cycles,expect_order", [
    ([(0, 1), (2, 3)], 4),   # closes to the Klein four
    ([(0, 1)], 24),          # transpositions generate everything
    ([(0, 1, 2)], 12),       # 3-cycles generate the alternating part
])
def test_normal_closure_matches_oracle(seed_cycles, expect_order):
    S4 = named("Sym", 4)
    seed = Permutation.from_cycles(4, seed_cycles)
    N = normal_closure(S4, [seed])
    assert N.order == expect_order
    table = NaiveTable(elements_of(S4))
    want = table.normal_closure({table.index[seed.images]})
    got = {table.index[t] for t in N.element_set()}
    assert got == want
    assert is_normal(S4, N)


def _naive_derived(elems):
    d = len(elems[0])
    comms = {compose(compose(invert(a), invert(b)), compose(a, b))
             for a in elems for b in elems}
    return generated(d, comms)


@pytest.mark.parametrize("name,params,order", [
    ("Sym", (4,), 12), ("Alt", (4,), 4), ("Dihedral", (4,), 2),
    ("Alt", (5,), 60), ("Cyclic", (12,), 1),
])
def test_derived_subgroup(name, params, order):
    G = named(name, *params)
    D = derived_subgroup(G)
    assert D.order == order
    assert frozenset(t for t in D.element_set()) == _naive_derived(elements_of(G))


def _compare_with_scan(G, gens, kind):
    H = Subgroup(G, gens)
    table = NaiveTable(elements_of(G))
    hidx = {table.index[t] for t in H.element_set()}
    if kind == "normalizer":
        got = normalizer(G, H)
        want = normalizer_naive(table, hidx)
        forced = normalizer(G, H, scan_cap=1)  # exercise the orbit-stabilizer path
        assert {table.index[t] for t in forced.element_set()} == want
    else:
        got = centralizer(G, H)
        want = centralizer_naive(table, hidx)
        forced = centralizer(G, H, scan_cap=1)
        assert {table.index[t] for t in forced.element_set()} == want
    assert {table.index[t] for t in got.element_set()} == want
    return got


def test_normalizer_against_oracle():
    S4 = named("Sym", 4)
    got = _compare_with_scan(S4, [perm(4, (0, 1, 2, 3))], "normalizer")
    assert got.order == 8
    _compare_with_scan(S4, [perm(4, (0, 1, 2))], "normalizer")
    A5 = named("Alt", 5)
    syl5 = Subgroup(A5, [perm(5, (0, 1, 2, 3, 4))])
    assert normalizer(A5, syl5).order == 10
    V = Subgroup(A5, [perm(5, (0, 1), (2, 3)), perm(5, (0, 2), (1, 3))])
    assert normalizer(A5, V).order == 12


def test_centralizer_against_oracle():
    S4 = named("Sym", 4)
    got = _compare_with_scan(S4, [perm(4, (0, 1, 2, 3))], "centralizer")
    assert got.order == 4
    _compare_with_scan(S4, [perm(4, (0, 1), (2, 3))], "centralizer")
    _compare_with_scan(named("Dihedral", 4), [perm(4, (0, 1, 2, 3))], "centralizer")
    A5 = named("Alt", 5)
    c = centralizer(A5, Subgroup(A5, [perm(5, (0, 1, 2, 3, 4))]))
    assert c.order == 5


@pytest.mark.parametrize("build,expect", [
    (lambda: named("Sym", 4), 1),
    (lambda: named("Dihedral", 4), 2),
    (lambda: quaternion(), 2),
    (lambda: named("Cyclic", 12), 12),
    (lambda: named("SL", 2, 3), 2),
])
def test_center(build, expect):
    G = build()
    Z = center(G)
    assert Z.order == expect
    table = NaiveTable(elements_of(G))
    want = centralizer_naive(table, range(table.n))
    assert {table.index[t] for t in Z.element_set()} == want


def test_coset_action_faithful():
    S4 = named("Sym", 4)
    S3 = Subgroup(S4, [perm(4, (0, 1)), perm(4, (0, 1, 2))])
    act = coset_action(S4, S3)
    assert act.image.degree == 4
    assert act.image.order == 24
    assert act.kernel_order == 1


def test_coset_action_sign_map():
    S4 = named("Sym", 4)
    A4 = Subgroup(S4, [perm(4, (0, 1, 2)), perm(4, (1, 2, 3))])
    act = coset_action(S4, A4)
    assert act.image.degree == 2
    assert act.image.order == 2
    assert act.kernel_order == 12


def test_coset_action_degree_cap():
    A5 = named("Alt", 5)
    with pytest.raises(CapExceededError):
        coset_action(A5, Subgroup(A5, []), degree_cap=10)


def test_quotients():
    S4 = named("Sym", 4)
    V = Subgroup(S4, [perm(4, (0, 1), (2, 3)), perm(4, (0, 2), (1, 3))])
    Q = quotient_group(S4, V)
    assert Q.order == 6 and not Q.is_abelian()
    SL23 = named("SL", 2, 3)
    Z = center(SL23)
    assert quotient_group(SL23, Z).order == 12
    Q8 = quaternion()
    over_center = quotient_group(Q8, center(Q8))
    assert over_center.order == 4 and over_center.is_abelian()
    with pytest.raises(NotNormalError):
        quotient_group(S4, Subgroup(S4, [perm(4, (0, 1))]))
