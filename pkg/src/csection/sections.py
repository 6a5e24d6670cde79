"""Sections cut out of maximal subgroups by chief factors, and the verdict
machinery built on them.

For a maximal subgroup M of G and a chief factor K/L with L inside M but K
not, the section is (M cap K)/L.  All such choices give isomorphic groups,
which verify_lemma1 certifies instead of assuming.  The remaining verifiers
package concrete statements (supersolvability of all sections, composition
factor membership, the alternating-group index facts, the Sylow normalizer
construction, and the projective example family) into pass/fail/inconclusive
reports whose pass verdicts always rest on complete enumerations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .groups import PermGroup, Subgroup, is_normal, normalizer, quotient_group
from .iso import GroupId, identify, is_isomorphic, _prime_factors, _reference
from .lattice import (SubgroupClass, all_subgroups, certify_maximal, fuse_subgroup_classes,
                      klein_four_classes, maximal_subgroups, minimal_normal_subgroups,
                      normal_subgroups, random_maximal_subgroups, subgroups_of_index)
from .perms import Permutation
from .series import composition_factors, is_supersolvable
from .tables import element_table


class NoChiefPairError(ValueError):
    """No chief factor K/L with L inside the maximal subgroup and K outside."""


class NotMaximalError(ValueError):
    pass


@dataclass
class ChiefPair:
    """Adjacent normal pair (K, L) of G with L <= M and K not inside M."""

    K: Subgroup
    L: Subgroup
    k_indices: frozenset[int] = field(repr=False, default=frozenset())
    l_indices: frozenset[int] = field(repr=False, default=frozenset())


@dataclass
class CSection:
    """The section (M cap K)/L as a concrete permutation group."""

    group: PermGroup
    source_pair: ChiefPair
    supersolvable: bool
    identified: GroupId

    @property
    def order(self) -> int:
        return self.group.order


_STATUS_RANK = {"pass": 0, "inconclusive": 1, "fail": 2}


@dataclass
class VerdictReport:
    subject: str
    check: str
    status: str                  # pass | fail | inconclusive
    evidence: dict
    completeness: bool

    def __post_init__(self):
        if self.status not in _STATUS_RANK:
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "pass" and not self.completeness:
            raise ValueError("pass verdicts require a complete enumeration")


def make_report(subject: str, check: str, ok: Optional[bool], complete: bool,
                evidence: dict) -> VerdictReport:
    """ok=False is definitive regardless of completeness; ok=True passes only
    when the supporting enumeration was complete."""
    if ok is False:
        status = "fail"
    elif ok is True and complete:
        status = "pass"
    else:
        status = "inconclusive"
    return VerdictReport(subject=subject, check=check, status=status,
                         evidence=evidence, completeness=complete)


def _subject(G: PermGroup) -> str:
    return f"group(order={G.order},degree={G.degree})"


# -- chief pairs and sections -------------------------------------------------

def _indices_of(G: PermGroup, H: Subgroup) -> frozenset[int]:
    cached = H._cache.get("ambient_indices")
    if cached is None:
        et = element_table(G)
        cached = frozenset(et.index[g.images] for g in H.elements())
        H._cache["ambient_indices"] = cached
    return cached


def _ensure_maximal(G: PermGroup, M: Subgroup) -> frozenset[int]:
    m_set = _indices_of(G, M)
    if not M._cache.get("certified_maximal"):
        et = element_table(G)
        gens = [et.index[g.images] for g in M.generators]
        if not certify_maximal(G, m_set, gens, et):
            raise NotMaximalError(f"subgroup of order {M.order} is not maximal")
        M._cache["certified_maximal"] = True
    return m_set


def chief_pairs_for_maximal(G: PermGroup, M: Subgroup) -> list[ChiefPair]:
    """All chief factors K/L of G with L <= M and K not inside M."""
    m_set = _ensure_maximal(G, M)
    normals = normal_subgroups(G)
    sets = [n._cache["indices"] for n in normals]
    pairs = []
    for i, L in enumerate(normals):
        ls = sets[i]
        if not ls <= m_set:
            continue
        for j, K in enumerate(normals):
            ks = sets[j]
            if not ls < ks or ks <= m_set:
                continue
            if any(ls < t < ks for t in sets):
                continue  # not adjacent, so K/L is not a chief factor
            pairs.append(ChiefPair(K=K, L=L, k_indices=ks, l_indices=ls))
    pairs.sort(key=lambda p: (len(p.l_indices), sorted(p.l_indices),
                              len(p.k_indices), sorted(p.k_indices)))
    if not pairs:
        raise NoChiefPairError(
            f"no chief factor separates the maximal subgroup of order {M.order}")
    return pairs


def _section_group(G: PermGroup, m_set: frozenset[int], pair: ChiefPair) -> PermGroup:
    et = element_table(G)
    d_set = m_set & pair.k_indices
    gens = [et.permutation(i) for i in et.extract_generators(d_set)]
    D = PermGroup(G.degree, gens)
    if D.order != len(d_set):
        raise RuntimeError("intersection generators do not span the intersection")
    if D.order % pair.L.order:
        raise RuntimeError("chief pair's lower term does not divide the intersection")
    if pair.L.order == 1:
        return D
    inner = Subgroup(D, pair.L.generators, check=False)
    return quotient_group(D, inner)


def sec(G: PermGroup, M: Subgroup, *, pair: Optional[ChiefPair] = None,
        verify: bool = False) -> CSection:
    """The section of M, from the first chief pair in canonical order.

    verify=True recomputes the section for every other pair and insists on
    pairwise isomorphism before returning.
    """
    pairs = chief_pairs_for_maximal(G, M)
    chosen = pair if pair is not None else pairs[0]
    m_set = _indices_of(G, M)
    grp = _section_group(G, m_set, chosen)
    expected = len(m_set & chosen.k_indices) // chosen.L.order
    if grp.order != expected:
        raise RuntimeError("section order disagrees with |M meet K| / |L|")
    if verify:
        for other in pairs:
            if other is chosen:
                continue
            alt = _section_group(G, m_set, other)
            if not is_isomorphic(grp, alt):
                raise RuntimeError("sections from two chief pairs are not isomorphic")
    return CSection(group=grp, source_pair=chosen,
                    supersolvable=is_supersolvable(grp), identified=identify(grp))


# -- the lemma/theorem verifiers ----------------------------------------------

def verify_lemma1(G: PermGroup, *, subject: Optional[str] = None) -> VerdictReport:
    """Every maximal subgroup's sections agree across all chief pairs."""
    maximals = maximal_subgroups(G)
    rows = []
    agree_all = True
    for cls in maximals:
        M = cls.representative
        pairs = chief_pairs_for_maximal(G, M)
        m_set = _indices_of(G, M)
        groups = [_section_group(G, m_set, p) for p in pairs]
        agree = all(is_isomorphic(groups[0], h) for h in groups[1:])
        agree_all = agree_all and agree
        rows.append({"maximal_order": cls.order, "pair_count": len(pairs),
                     "section_orders": sorted(g.order for g in groups),
                     "agree": agree})
    complete = all(c.verified_complete for c in maximals) if maximals else True
    return make_report(subject or _subject(G), "lemma1", agree_all, complete,
                       {"maximal_classes": len(maximals), "rows": rows})


def check_hypothesis(G: PermGroup, *, subject: Optional[str] = None,
                     maximal_classes: Optional[Sequence[SubgroupClass]] = None) -> VerdictReport:
    """Sec(M) supersolvable for every maximal subgroup class of G."""
    if maximal_classes is None:
        maximal_classes = maximal_subgroups(G)
    complete = all(c.verified_complete for c in maximal_classes) if maximal_classes else True
    rows = []
    witnesses = []
    for cls in maximal_classes:
        s = sec(G, cls.representative)
        rows.append({"maximal_order": cls.order, "section_order": s.order,
                     "section_id": str(s.identified), "supersolvable": s.supersolvable})
        if not s.supersolvable:
            witnesses.append({"maximal_order": cls.order, "section_id": str(s.identified)})
    ok: Optional[bool] = True if not witnesses else False
    return make_report(subject or _subject(G), "hypothesis", ok, complete,
                       {"maximal_classes": len(maximal_classes), "rows": rows,
                        "witnesses": witnesses})


_ALLOWED_L2_RESIDUES = {1, 7}


def _conclusion_factor_ok(gid: GroupId) -> Optional[bool]:
    """None marks an unidentified simple factor (inconclusive)."""
    if gid.kind == "cyclic":
        return _prime_factors(gid.params[0]) == [gid.params[0]]
    from .iso import l2_parameters
    qs = l2_parameters(gid)
    if any(_prime_factors(q) == [q] and q % 8 in _ALLOWED_L2_RESIDUES for q in qs):
        return True
    if gid.kind == "unknown_simple":
        return None
    return False


def check_conclusion(G: PermGroup, *, subject: Optional[str] = None) -> VerdictReport:
    """Every composition factor is cyclic of prime order, or a projective
    special linear group over a prime field with that prime +-1 mod 8."""
    factors = composition_factors(G)
    ids = [identify(f) for f in factors]
    verdicts = [_conclusion_factor_ok(g) for g in ids]
    witnesses = [str(g) for g, v in zip(ids, verdicts) if v is False]
    if witnesses:
        ok: Optional[bool] = False
    elif any(v is None for v in verdicts):
        ok = None
    else:
        ok = True
    return make_report(subject or _subject(G), "conclusion", ok, True,
                       {"factor_ids": [str(g) for g in ids],
                        "factor_orders": [f.order for f in factors],
                        "witnesses": witnesses})


def verify_theorem_instance(G: PermGroup, *, subject: Optional[str] = None,
                            maximal_classes: Optional[Sequence[SubgroupClass]] = None) -> VerdictReport:
    """The implication: hypothesis (all sections supersolvable) implies the
    composition factor conclusion.  A definitive hypothesis failure passes
    vacuously."""
    sub = subject or _subject(G)
    hyp = check_hypothesis(G, subject=sub, maximal_classes=maximal_classes)
    conc = check_conclusion(G, subject=sub)
    evidence = {"hypothesis": {"status": hyp.status, **hyp.evidence},
                "conclusion": {"status": conc.status, **conc.evidence}}
    if hyp.status == "fail":
        evidence["vacuous"] = True
        return make_report(sub, "theorem", True, True, evidence)
    evidence["vacuous"] = False
    if conc.status == "pass":
        return make_report(sub, "theorem", True, True, evidence)
    if conc.status == "fail":
        if hyp.status == "pass":
            return make_report(sub, "theorem", False, True, evidence)
        return make_report(sub, "theorem", None, False, evidence)
    return make_report(sub, "theorem", None, False, evidence)


def _alternating(n: int) -> PermGroup:
    return _reference(f"alt:{n}")


def verify_lemma2a(n: int, *, subject: Optional[str] = None) -> VerdictReport:
    """A_n has no subgroup of index strictly between 1 and n, except the
    documented index-3 subgroup of A_4."""
    if n not in (4, 5, 6):
        raise ValueError("supported degrees: 4, 5, 6")
    A = _alternating(n)
    rows = []
    ok = True
    for k in range(2, n):
        classes = subgroups_of_index(A, k)
        expected = 1 if (n == 4 and k == 3) else 0
        rows.append({"index": k, "class_count": len(classes),
                     "orders": [c.order for c in classes], "expected": expected})
        if len(classes) != expected:
            ok = False
    return make_report(subject or f"A{n}", "lemma2a", ok, True,
                       {"degree": n, "rows": rows,
                        "exception": "A4 has an index-3 subgroup" if n == 4 else None})


def verify_lemma3(n: int, *, subject: Optional[str] = None) -> VerdictReport:
    """Index-n subgroups of A_n form one conjugacy class, except two for n=6;
    representatives are point stabilizers up to isomorphism."""
    if n not in (5, 6, 7):
        raise ValueError("supported degrees: 5, 6, 7")
    A = _alternating(n)
    classes = subgroups_of_index(A, n)
    expected = 2 if n == 6 else 1
    iso_ok = all(is_isomorphic(c.representative.group, _alternating(n - 1))
                 for c in classes)
    ok = len(classes) == expected and iso_ok
    return make_report(subject or f"A{n}", "lemma3", ok, True,
                       {"degree": n, "class_count": len(classes), "expected": expected,
                        "class_sizes": [c.class_size for c in classes],
                        "stabilizer_isomorphic": iso_ok})


_LEMMA4_ORDERS = {(2, 4): (12, 12), (2, 8): (56, 56), (2, 9): (72, 36), (3, 4): (576, 192)}


def _certify_minimal_normal(N: PermGroup, corner_gens: Sequence[Permutation]) -> bool:
    corner = Subgroup(N, corner_gens)
    if not is_normal(N, corner):
        return False
    et = element_table(N)
    c_set = frozenset(et.index[g.images] for g in corner.elements())
    for nn in normal_subgroups(N):
        s = nn._cache["indices"]
        if 1 < len(s) < len(c_set) and s < c_set:
            return False
    return True


def verify_lemma4(n: int, q: int, *, trials: int = 100, seed: int = 0,
                  subject: Optional[str] = None) -> VerdictReport:
    """Sylow normalizers of the special linear group over a proper prime-power
    field, and their projective images, are not supersolvable; the bottom-row
    subgroup is a minimal normal subgroup of both."""
    if (n, q) not in _LEMMA4_ORDERS:
        raise ValueError("supported (dimension, field size): (2,4), (2,8), (2,9), (3,4)")
    from .gf import field_make
    from .matgroups import conjugation_check, triangular_instance

    p = _prime_factors(q)[0]
    f = 0
    m = q
    while m > 1:
        m //= p
        f += 1
    fieldq = field_make(p, f)
    ti = triangular_instance(n, fieldq)
    conj = conjugation_check(n, fieldq, trials=trials, seed=seed)

    want_vec, want_proj = _LEMMA4_ORDERS[(n, q)]
    evidence: dict = {"trials": conj["trials"], "failures": conj["failures"],
                      "multiplier_census": conj["multiplier_census"],
                      "orders": {"vec": ti.vec_normalizer.order,
                                 "proj": ti.proj_normalizer.order},
                      "expected_orders": {"vec": want_vec, "proj": want_proj}}
    ok = conj["failures"] == 0
    ok = ok and ti.vec_normalizer.order == want_vec
    ok = ok and ti.proj_normalizer.order == want_proj

    sides = {}
    for side, norm, sylow, corner, ambient in (
            ("vec", ti.vec_normalizer, ti.vec_sylow, ti.vec_corner, ti.vec_group),
            ("proj", ti.proj_normalizer, ti.proj_sylow, ti.proj_corner, ti.proj_group)):
        N = norm.group
        minimal = _certify_minimal_normal(N, list(corner.generators))
        nonss = not is_supersolvable(N)
        recomputed = normalizer(ambient, sylow)
        agrees = (recomputed.order == norm.order
                  and all(recomputed.contains(g) for g in norm.generators))
        sides[side] = {"minimal_normal": minimal, "non_supersolvable": nonss,
                       "normalizer_crosscheck": agrees, "corner_order": corner.order}
        ok = ok and minimal and nonss and agrees
    evidence["sides"] = sides
    return make_report(subject or f"SL({n},{q})", "lemma4", ok, True, evidence)


# -- the worked example family -------------------------------------------------

def _is_prime(p: int) -> bool:
    return p > 1 and _prime_factors(p) == [p]


def verify_example(p: int = 7, *, allow_large: bool = False, seed: int = 0,
                   subject: Optional[str] = None) -> VerdictReport:
    """The projective family check: G the full projective group over the prime
    field, K its simple index-2 subgroup.

    Five sub-checks: unique chief series G > K > 1; exactly two classes of
    Klein four subgroups in K with normalizer order 24; those classes fused
    into one inside G; all sections of maximal subgroups of G supersolvable;
    every maximal class of K isomorphic to S4, A5, or supersolvable.  Only
    p = 7 runs the complete lattice; larger p needs allow_large and uses the
    seeded random maximal search, capping the verdict at inconclusive.
    """
    if not _is_prime(p) or p % 8 not in (1, 7):
        raise ValueError("p must be a prime congruent to +-1 mod 8")
    small = p == 7
    if not small and not allow_large:
        raise ValueError("p > 7 requires allow_large=True (seeded random maximal search)")
    from .gf import field_make
    from .matgroups import pgl_group, psl_order

    fld = field_make(p)
    G = pgl_group(fld)
    subs: list[dict] = []
    ok = True
    complete = True

    # 1: normal structure is exactly 1 < K < G
    normals = normal_subgroups(G)
    orders = [nn.order for nn in normals]
    chain_ok = (len(normals) == 3 and orders == sorted(orders)
                and orders[1] == psl_order(2, fld) and orders[2] == G.order)
    K = normals[1] if len(normals) == 3 else None
    subs.append({"name": "unique_chief_series", "status": "pass" if chain_ok else "fail",
                 "normal_orders": orders})
    ok = ok and chain_ok
    if K is None:
        return make_report(subject or f"PGL2({p})", "example", False, True,
                           {"p": p, "sub_checks": subs})

    Kg = K.group
    # 2: Klein four classes inside K
    kleins = klein_four_classes(Kg)
    klein_ok = len(kleins) == 2 and all(c.normalizer_order == 24 for c in kleins)
    subs.append({"name": "klein_classes_in_K", "status": "pass" if klein_ok else "fail",
                 "class_count": len(kleins),
                 "normalizer_orders": [c.normalizer_order for c in kleins]})
    ok = ok and klein_ok

    # 3: the two classes fuse under G
    fused_ok = False
    if len(kleins) == 2:
        reps = [frozenset(g.images for g in c.representative.elements()) for c in kleins]
        blocks = fuse_subgroup_classes(G, reps)
        fused_ok = len(blocks) == 1
    subs.append({"name": "fusion_in_G", "status": "pass" if fused_ok else "fail"})
    ok = ok and fused_ok

    # 4: all sections of maximal subgroups of G supersolvable
    if small:
        g_classes: Sequence[SubgroupClass] = maximal_subgroups(G)
    else:
        g_classes = random_maximal_subgroups(G, seed=seed)
        complete = False
    hyp = check_hypothesis(G, maximal_classes=g_classes)
    subs.append({"name": "sections_supersolvable", "status": hyp.status,
                 "maximal_orders": [c.order for c in g_classes],
                 "rows": hyp.evidence["rows"]})
    ok = ok and hyp.status != "fail"

    # 5: maximal subgroups of K are S4, A5, or supersolvable
    if small:
        k_classes: Sequence[SubgroupClass] = maximal_subgroups(Kg)
    else:
        k_classes = random_maximal_subgroups(Kg, seed=seed)
        complete = False
    k_rows = []
    k_ok = True
    for cls in k_classes:
        gid = identify(cls.representative.group)
        ss = is_supersolvable(cls.representative.group)
        fits = gid in (GroupId("symmetric", (4,), 24), GroupId("alternating", (5,), 60)) or ss
        k_rows.append({"order": cls.order, "id": str(gid), "supersolvable": ss, "fits": fits})
        k_ok = k_ok and fits
    k_status = "fail" if not k_ok else ("pass" if small else "inconclusive")
    subs.append({"name": "maximals_of_K", "status": k_status, "rows": k_rows})
    ok = ok and k_ok

    return make_report(subject or f"PGL2({p})", "example", ok, complete,
                       {"p": p, "sub_checks": subs})


def unique_class_check(G: PermGroup, H: Subgroup, *,
                       subject: Optional[str] = None) -> VerdictReport:
    """Are all subgroups of G isomorphic to H conjugate to H?

    When they are and every maximal subgroup of G has a supersolvable
    section, H itself is expected to be supersolvable; that cross-check
    rides along in the evidence and a violation fails the report.
    """
    classes = all_subgroups(G)
    matching = [c for c in classes
                if c.order == H.order and is_isomorphic(c.representative.group, H.group)]
    if not matching:
        raise RuntimeError("the lattice lost the input subgroup's class")
    unique = len(matching) == 1
    evidence: dict = {"iso_class_count": len(matching),
                      "class_sizes": [c.class_size for c in matching],
                      "subgroup_order": H.order}
    ok: Optional[bool] = unique
    if unique:
        hyp = check_hypothesis(G)
        evidence["hypothesis_status"] = hyp.status
        if hyp.status == "pass":
            ss = is_supersolvable(H.group)
            evidence["supersolvable_under_hypothesis"] = ss
            if not ss:
                ok = False
    return make_report(subject or _subject(G), "unique_class", ok, True, evidence)
