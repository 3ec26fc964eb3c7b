"""Group core: construction, Sylow theory, lattices, conjugacy, tags."""

import itertools

import pytest

from qdp.errors import CompositeP, SizeGuard
from qdp.groups import (
    QuotientTag,
    Subgroup,
    center,
    conjugate_subgroup,
    construct_qdp,
    cyclic,
    cyclic_subgroups,
    dihedral,
    direct_product,
    elementary_abelian,
    from_elements,
    generalized_quaternion,
    group_from_json,
    heisenberg,
    is_conjugate,
    is_subgroup,
    modular_p3,
    normal_pairs_with_tag,
    p_subgroups,
    quotient_group,
    subgroup_closure,
    subgroups_of_p_group,
    sylow_p_subgroup,
    whole_group,
)


# ---------------------------------------------------------------------------
# independent oracles

def s4_permutation_group():
    perms = list(itertools.permutations(range(4)))
    compose = lambda a, b: tuple(a[b[i]] for i in range(4))
    return from_elements(perms, compose, name="S4")


def brute_force_p_subgroups(G, p):
    """Closures of all <=2-element sets of p-power-order elements, filtered
    to p-groups.  Complete for the groups used here: every p-subgroup of
    order up to p^3 with cyclic or rank-two Frattini quotient is
    2-generated."""
    pel = [a for a in G.elements() if _is_ppower(G.element_order(a), p)]
    found = {(G.identity,)}
    for g in pel:
        found.add(subgroup_closure(G, [g]))
    for g, h in itertools.combinations(pel, 2):
        cl = subgroup_closure(G, [g, h])
        if _is_ppower(len(cl), p):
            found.add(cl)
    return found


def _is_ppower(n, p):
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------

def test_qdp_orders():
    assert construct_qdp(2).order == 24
    assert construct_qdp(3).order == 216  # 9 * |SL2(3)| = 9 * 24
    assert construct_qdp(5).order == 3000


def test_qdp_rejects_composite():
    with pytest.raises(CompositeP):
        construct_qdp(1)
    with pytest.raises(CompositeP):
        construct_qdp(4)


def test_qdp_size_guard():
    with pytest.raises(SizeGuard):
        construct_qdp(7)  # order 16464
    assert construct_qdp(7, max_order=20000).order == 16464


def test_qd2_is_symmetric_group_s4():
    G = construct_qdp(2)
    s4 = s4_permutation_group()
    stats = lambda g: sorted(g.element_order(a) for a in g.elements())
    assert stats(G) == stats(s4)
    # a surjection from the (2,4,3) presentation of S4 pins the type:
    # find a, b with a^2 = b^4 = (ab)^3 = e generating G
    found = False
    for a in G.elements():
        if G.element_order(a) != 2:
            continue
        for b in G.elements():
            if G.element_order(b) != 4 or G.element_order(G.mul(a, b)) != 3:
                continue
            if len(subgroup_closure(G, [a, b])) == 24:
                found = True
                break
        if found:
            break
    assert found


def test_group_axioms_exhaustive():
    for G in (construct_qdp(2), cyclic(9), heisenberg(3), dihedral(4),
              generalized_quaternion(8)):
        G.check_axioms(max_order=200)


def test_qdp_multiplication_rule():
    # (v, A)(w, B) = (v + Aw, AB)
    G = construct_qdp(3)
    a = G.element((1, 0), (1, 1, 0, 1))
    b = G.element((0, 1), (1, 0, 1, 1))
    v, m = G.parts(G.mul(a, b))
    # A w = [[1,1],[0,1]] (0,1) = (1,1); v + Aw = (2,1); AB = [[2,1],[1,1]]
    assert v == (2, 1)
    assert m == (2, 1, 1, 1)


def test_json_round_trip():
    G = construct_qdp(3)
    assert group_from_json(G.to_json()).order == 216
    H = cyclic(6)
    K = group_from_json(H.to_json())
    assert K.order == 6 and K.mul(1, 5) == H.mul(1, 5)


def test_sylow_subgroup_orders():
    assert sylow_p_subgroup(construct_qdp(3), 3).order == 27
    assert sylow_p_subgroup(construct_qdp(2), 2).order == 8
    G = cyclic(5)
    assert sylow_p_subgroup(G, 5).members == tuple(range(5))
    mixed = direct_product(cyclic(4), cyclic(3))
    assert sylow_p_subgroup(mixed, 2).order == 4
    assert sylow_p_subgroup(mixed, 3).order == 3


def test_sylow_is_a_subgroup():
    for p in (2, 3, 5):
        G = construct_qdp(p)
        P = sylow_p_subgroup(G, p)
        assert is_subgroup(G, P.members)


def test_center_of_sylow():
    for p in (3, 5):
        G = construct_qdp(p)
        P = sylow_p_subgroup(G, p)
        Z = center(P)
        assert Z.order == p
        # exhaustive commutation oracle
        manual = [z for z in P.members
                  if all(G.mul(z, x) == G.mul(x, z) for x in P.members)]
        assert tuple(manual) == Z.members


def test_center_of_abelian_group_is_itself():
    G = elementary_abelian(3, 2)
    H = whole_group(G)
    assert center(H).members == H.members


def test_sylow_of_qdp_is_extraspecial():
    # order p^3, exponent p, center of order p
    for p in (3, 5):
        G = construct_qdp(p)
        P = sylow_p_subgroup(G, p)
        assert P.order == p ** 3
        assert all(G.power(g, p) == G.identity for g in P.members)
        assert center(P).order == p


def test_elementary_abelian_subgroup_count():
    G = elementary_abelian(3, 2)
    subs = subgroups_of_p_group(whole_group(G))
    by_order = sorted(s.order for s in subs)
    assert by_order == [1] + [3] * 4 + [9]  # 1 + (p+1) + 1


def test_heisenberg_subgroup_census():
    P = whole_group(heisenberg(3))
    subs = subgroups_of_p_group(P)
    counts = {}
    for s in subs:
        counts[s.order] = counts.get(s.order, 0) + 1
    # (p^3 - 1)/(p - 1) = 13 cyclic of order p, p+1 = 4 of order p^2
    assert counts == {1: 1, 3: 13, 9: 4, 27: 1}


def test_cyclic_subgroups():
    assert len(cyclic_subgroups(whole_group(cyclic(3)))) == 2
    assert len(cyclic_subgroups(whole_group(cyclic(1)))) == 1
    subs = cyclic_subgroups(whole_group(heisenberg(3)))
    assert len(subs) == 1 + 13


def test_p_subgroups_against_brute_force():
    for G, p in ((elementary_abelian(3, 2), 3),
                 (construct_qdp(3), 3),
                 (construct_qdp(2), 2)):
        lat = p_subgroups(G, p)
        ours = {s.members for s in lat.all_subgroups()}
        oracle = brute_force_p_subgroups(G, p)
        assert ours == oracle


def test_p_subgroups_matches_s4_enumeration():
    lat = p_subgroups(construct_qdp(2), 2)
    s4 = s4_permutation_group()
    oracle = brute_force_p_subgroups(s4, 2)
    ours_sizes = sorted(len(s.members) for s in lat.all_subgroups())
    oracle_sizes = sorted(len(t) for t in oracle)
    assert ours_sizes == oracle_sizes
    # class sizes as multisets must agree as well
    lat4 = p_subgroups(s4, 2)
    assert sorted(len(c) for c in lat.classes) == sorted(len(c) for c in lat4.classes)


def test_p_subgroups_closure_properties():
    G = construct_qdp(3)
    lat = p_subgroups(G, 3)
    all_members = {s.members for s in lat.all_subgroups()}
    gens = [1, G.order // 2, G.order - 1]
    for cls in lat.classes:
        S = cls[0]
        for g in gens:
            assert conjugate_subgroup(G, g, S).members in all_members
        for T in subgroups_of_p_group(S):
            assert T.members in all_members


def test_is_conjugate_witness_and_symmetry():
    G = construct_qdp(3)
    P = sylow_p_subgroup(G, 3)
    Z = center(P)
    assert is_conjugate(G, Z, Z) == G.identity
    others = [C for C in cyclic_subgroups(P) if C.order == 3 and C != Z]
    hits = [(C, is_conjugate(G, Z, C)) for C in others]
    hits = [(C, g) for C, g in hits if g is not None]
    assert hits, "the Sylow center must fuse to a non-central cyclic subgroup"
    C, g = hits[0]
    assert conjugate_subgroup(G, g, Z) == C
    back = is_conjugate(G, C, Z)
    assert back is not None and conjugate_subgroup(G, back, C) == Z


def test_is_conjugate_orders_differ():
    G = cyclic(9)
    H = Subgroup(G, (0, 3, 6))
    K = whole_group(G)
    assert is_conjugate(G, H, K) is None


def test_quotient_tags_elementary_and_cyclic():
    V = whole_group(elementary_abelian(3, 2))
    pairs = normal_pairs_with_tag(V)
    tags = {(h.order, k.order): t.kind for h, k, t in pairs}
    assert tags[(1, 9)] == QuotientTag.ELEMENTARY_ABELIAN_RANK2
    assert tags[(1, 3)] == QuotientTag.CYCLIC_P
    assert tags[(3, 9)] == QuotientTag.CYCLIC_P

    Z9 = whole_group(cyclic(9))
    tags9 = {(h.order, k.order): t.kind for h, k, t in normal_pairs_with_tag(Z9)}
    assert tags9[(1, 9)] == QuotientTag.OTHER  # cyclic of order p^2
    assert tags9[(1, 3)] == QuotientTag.CYCLIC_P


def test_quotient_tag_quaternion():
    Q8 = whole_group(generalized_quaternion(8))
    pairs = normal_pairs_with_tag(Q8)
    tag = next(t for h, k, t in pairs if h.order == 1 and k.order == 8)
    assert tag.kind == QuotientTag.GENERALIZED_QUATERNION and tag.order == 8
    # oracle: exactly one involution
    G = generalized_quaternion(8)
    assert sum(1 for a in G.elements() if G.element_order(a) == 2) == 1

    Q16 = whole_group(generalized_quaternion(16))
    kinds = {t.kind for h, k, t in normal_pairs_with_tag(Q16)
             if h.order == 1 and k.order == 16}
    assert kinds == {QuotientTag.GENERALIZED_QUATERNION}

    D8 = whole_group(dihedral(4))
    kinds = {t.kind for h, k, t in normal_pairs_with_tag(D8)
             if h.order == 1 and k.order == 8}
    assert kinds == {QuotientTag.OTHER}


def test_cyclic4_tag():
    Z4 = whole_group(cyclic(4))
    tags = {(h.order, k.order): t.kind for h, k, t in normal_pairs_with_tag(Z4)}
    assert tags[(1, 4)] == QuotientTag.CYCLIC4
    V4 = whole_group(elementary_abelian(2, 2))
    tags = {(h.order, k.order): t.kind for h, k, t in normal_pairs_with_tag(V4)}
    assert tags[(1, 4)] == QuotientTag.ELEMENTARY_ABELIAN_RANK2


def test_conjugation_preserves_tags():
    G = construct_qdp(3)
    P = sylow_p_subgroup(G, 3)
    pairs = normal_pairs_with_tag(P)
    g = 17  # arbitrary element
    Pg = conjugate_subgroup(G, g, P)
    pairs_g = normal_pairs_with_tag(Pg)
    mine = sorted((h.order, k.order, t.kind) for h, k, t in pairs)
    theirs = sorted((h.order, k.order, t.kind) for h, k, t in pairs_g)
    assert mine == theirs


def test_quotient_group_of_heisenberg_center():
    G = heisenberg(3)
    P = whole_group(G)
    Z = center(P)
    Q, coset_of = quotient_group(P, Z)
    assert Q.order == 9
    assert all(Q.mul(a, b) == Q.mul(b, a) for a in Q.elements() for b in Q.elements())
    assert all(Q.element_order(a) in (1, 3) for a in Q.elements())


def test_modular_p3_has_exponent_p_squared():
    G = modular_p3(3)
    assert G.order == 27
    assert max(G.element_order(a) for a in G.elements()) == 9
    assert center(whole_group(G)).order == 3
