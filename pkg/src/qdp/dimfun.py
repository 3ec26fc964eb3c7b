"""Super class functions on p-subgroups and the Borel-Smith machinery.

A super class function assigns an integer to every conjugacy class of
p-subgroups.  The checker tests the three Borel-Smith conditions on the
normal pairs of a Sylow subgroup (checking inside one Sylow covers every
pair of p-subgroups up to conjugacy, and the values are class functions).
The realization solver writes a monotone Borel-Smith function as a
nonnegative integer combination of fixed-point dimension functions of
real irreducible representations, by bounded exhaustive search.

This module also holds the group-theoretic non-existence driver for
Qd(p): p-effectiveness forces the dimension function to vanish exactly at
the center of a Sylow p-subgroup among cyclic subgroups, while fusion in
the full group makes that vanishing pattern impossible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .characters import RealBasisEntry
from .errors import (
    DomainMismatch,
    EvenPrime,
    MalformedInput,
    NotBorelSmith,
    NotMonotone,
    ShapeMismatch,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    PSubgroupClasses,
    QuotientTag,
    Subgroup,
    center,
    conjugate_subgroup,
    construct_qdp,
    cyclic_subgroups,
    generating_set,
    group_from_json,
    is_conjugate,
    normal_pairs_with_tag,
    order_p_subgroups_of_quotient,
    p_subgroups,
    quotient_group,
    subgroup_closure,
    subgroups_of_p_group,
    sylow_p_subgroup,
)
from .reports import REFUTED, UNSAT, VERIFIED, Certificate, Leg


@dataclass
class SuperClassFunction:
    """Integer values per p-subgroup class; `scale` makes rationals exact.

    The function of record is values[i] / scale; all arithmetic stays in
    integers.  scale == 1 for ordinary integer-valued functions.
    """

    lattice: PSubgroupClasses
    values: tuple[int, ...]
    scale: int = 1

    def __post_init__(self):
        if len(self.values) != self.lattice.n_classes:
            raise DomainMismatch(
                f"{len(self.values)} values for {self.lattice.n_classes} classes")
        if self.scale < 1:
            raise MalformedInput("scale must be a positive integer")
        self.values = tuple(int(v) for v in self.values)

    def value_of(self, H: Subgroup) -> int:
        return self.values[self.lattice.class_of(H)]

    def __add__(self, other: "SuperClassFunction") -> "SuperClassFunction":
        assert self.lattice is other.lattice and self.scale == other.scale
        return SuperClassFunction(
            self.lattice, tuple(a + b for a, b in zip(self.values, other.values)),
            self.scale)

    def scaled(self, c: int) -> "SuperClassFunction":
        return SuperClassFunction(self.lattice, tuple(c * v for v in self.values),
                                  self.scale)

    def to_json(self) -> dict:
        return {
            "schema": "1",
            "group": self.lattice.group.to_json(),
            "p": self.lattice.prime,
            "scale": self.scale,
            "values": [
                {"class_rep": list(cls[0].members), "value": v}
                for cls, v in zip(self.lattice.classes, self.values)
            ],
        }


def superclassfunction_from_json(obj: dict,
                                 lattice: Optional[PSubgroupClasses] = None,
                                 max_order: int = DEFAULT_MAX_ORDER) -> SuperClassFunction:
    try:
        p = int(obj["p"])
        scale = int(obj.get("scale", 1))
        entries = obj["values"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad super class function JSON: {exc}")
    if lattice is None:
        group = group_from_json(obj["group"], max_order=max_order)
        lattice = p_subgroups(group, p, max_order=max_order)
    values = [None] * lattice.n_classes
    for ent in entries:
        H = Subgroup(lattice.group, tuple(ent["class_rep"]))
        values[lattice.class_of(H)] = int(ent["value"])
    if any(v is None for v in values):
        raise DomainMismatch("input does not cover every p-subgroup class")
    return SuperClassFunction(lattice, tuple(values), scale)


# ---------------------------------------------------------------------------
# Borel-Smith conditions

@dataclass
class Violation:
    condition: str  # "i" | "ii" | "iii"
    pair: tuple
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {"condition": self.condition,
                "pair": [list(s.members) for s in self.pair],
                "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class BorelSmithReport:
    monotone: bool
    violations: list[Violation] = field(default_factory=list)
    monotone_witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"monotone": self.monotone,
                "violations": [v.to_json() for v in self.violations]}


def _cached_normal_pairs(lattice: PSubgroupClasses):
    pairs = getattr(lattice, "_normal_pairs", None)
    if pairs is None:
        pairs = normal_pairs_with_tag(lattice.sylow)
        lattice._normal_pairs = pairs
    return pairs


def _preimage(K: Subgroup, coset_of: dict[int, int], coset_members: set[int]) -> Subgroup:
    return Subgroup(K.group,
                    tuple(k for k in K.members if coset_of[k] in coset_members))


def check_borel_smith(tau: SuperClassFunction) -> BorelSmithReport:
    """Conditions on normal pairs inside the Sylow subgroup:

    (i)   K/H elementary abelian of rank two: the differences over the p+1
          intermediate subgroups sum to the total difference;
    (ii)  K/H of order p, p odd: the difference is even;
    (iii) K/H cyclic of order 4 or generalized quaternion, L/H the order-2
          subgroup: the H-to-L difference is even, resp. divisible by 4.
    """
    lat = tau.lattice
    p = lat.prime
    violations: list[Violation] = []
    for H, K, tag in _cached_normal_pairs(lat):
        if tag.kind == QuotientTag.ELEMENTARY_ABELIAN_RANK2:
            Q, coset_of = quotient_group(K, H)
            lines = order_p_subgroups_of_quotient(Q, p)
            assert len(lines) == p + 1
            tk = tau.value_of(K)
            lhs = tau.value_of(H) - tk
            rhs = sum(tau.value_of(_preimage(K, coset_of, set(line))) - tk
                      for line in lines)
            if lhs != rhs:
                violations.append(Violation("i", (H, K), lhs, rhs))
        elif tag.kind == QuotientTag.CYCLIC_P and p > 2:
            d = tau.value_of(H) - tau.value_of(K)
            if d % 2:
                violations.append(Violation("ii", (H, K), d, 0))
        elif tag.kind in (QuotientTag.CYCLIC4, QuotientTag.GENERALIZED_QUATERNION):
            Q, coset_of = quotient_group(K, H)
            involutions = [a for a in Q.elements() if Q.element_order(a) == 2]
            assert len(involutions) == 1
            L = _preimage(K, coset_of, {Q.identity, involutions[0]})
            d = tau.value_of(H) - tau.value_of(L)
            modulus = 2 if tag.kind == QuotientTag.CYCLIC4 else 4
            if d % modulus:
                violations.append(Violation("iii", (H, L, K), d, modulus))
    mono, wit = is_monotone(tau)
    return BorelSmithReport(monotone=mono, violations=violations,
                            monotone_witness=wit)


def is_monotone(tau: SuperClassFunction) -> tuple[bool, Optional[tuple]]:
    """tau(K) <= tau(H) whenever H <= K; returns a violating pair if any."""
    lat = tau.lattice
    cache = getattr(lat, "_rep_subgroups", None)
    if cache is None:
        cache = {rep.members: subgroups_of_p_group(rep) for rep in lat.reps()}
        lat._rep_subgroups = cache
    for rep in lat.reps():
        tk = tau.value_of(rep)
        for S in cache[rep.members]:
            if tau.value_of(S) < tk:
                return False, (S, rep)
    return True, None


def real_dimension_function(entry: RealBasisEntry,
                            lattice: PSubgroupClasses) -> SuperClassFunction:
    return SuperClassFunction(lattice, entry.fixed_dimension_vector(lattice), 1)


def join_dimension_function(tau: SuperClassFunction, m: int) -> SuperClassFunction:
    """Dimension function of the m-fold fiber join: values and scale both
    multiply by m (sphere ranks compose as r -> m(r+1) - 1)."""
    if m < 1:
        raise MalformedInput("join multiplicity must be >= 1")
    return SuperClassFunction(tau.lattice, tuple(m * v for v in tau.values),
                              tau.scale * m)


def smallest_join_multiplier(tau: SuperClassFunction,
                             limit: Optional[int] = None) -> Optional[int]:
    """Least m <= limit with m*tau passing all Borel-Smith conditions."""
    p = tau.lattice.prime
    if limit is None:
        limit = 2 * p * (p + 1)
    for m in range(1, limit + 1):
        if check_borel_smith(join_dimension_function(tau, m)).ok:
            return m
    return None


# ---------------------------------------------------------------------------
# codimension-one sum rule on a rank-two elementary abelian subgroup

@dataclass
class EulerDatum:
    degree: int
    factor_degrees: dict[tuple[int, ...], int]

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "factor_degrees": [
                    {"line": list(k), "degree": v}
                    for k, v in sorted(self.factor_degrees.items())]}


def check_codim_one_sum(tau: SuperClassFunction,
                        V: Subgroup) -> tuple[bool, EulerDatum, int, int]:
    """On V of rank two: total drop equals the sum of the drops over the
    p+1 index-p subgroups.  Also records the factor degrees of the Euler
    class: each line W contributes tau(W) - tau(V)."""
    p = tau.lattice.prime
    if V.order != p * p or any(V.group.power(g, p) != V.group.identity
                               for g in V.members):
        raise MalformedInput("V must be elementary abelian of rank two")
    subs = subgroups_of_p_group(V)
    ones = [S for S in subs if S.order == 1][0]
    lines = [S for S in subs if S.order == p]
    assert len(lines) == p + 1
    tv = tau.value_of(V)
    lhs = tau.value_of(ones) - tv
    factors = {W.members: tau.value_of(W) - tv for W in lines}
    rhs = sum(factors.values())
    return lhs == rhs, EulerDatum(lhs, factors), lhs, rhs


# ---------------------------------------------------------------------------
# realization by real representations

def realize_as_representation(tau: SuperClassFunction,
                              basis: Sequence[RealBasisEntry]) -> Optional[dict[int, int]]:
    """Nonnegative multiplicities over `basis` with exact sum tau, or None.

    Refuses inputs outside the theorem's hypotheses.  The search is a
    complete DFS: every dimension-function vector is nonnegative and has
    positive value at the trivial subgroup, so multiplicities are bounded
    and pointwise-nonnegative residuals prune exactly.
    """
    if tau.scale != 1:
        raise MalformedInput("realization needs an integer-valued function")
    lat = tau.lattice
    mono, wit = is_monotone(tau)
    if not mono:
        raise NotMonotone(f"violating pair {wit}")
    if any(v < 0 for v in tau.values):
        raise NotMonotone("dimension functions of representations are nonnegative")
    report = check_borel_smith(tau)
    if not report.ok:
        raise NotBorelSmith(f"{len(report.violations)} violations")

    vectors = [entry.fixed_dimension_vector(lat) for entry in basis]
    triv = lat.class_of(Subgroup(lat.group, (lat.group.identity,)))
    order = sorted(range(len(basis)), key=lambda i: -vectors[i][triv])

    result: dict[int, int] = {}

    def dfs(k: int, residual: tuple[int, ...]) -> bool:
        if all(v == 0 for v in residual):
            return True
        if k == len(order):
            return False
        idx = order[k]
        vec = vectors[idx]
        cap = residual[triv] // vec[triv]
        for c in range(cap, -1, -1):
            nxt = tuple(r - c * vec[i] for i, r in enumerate(residual))
            if any(v < 0 for v in nxt):
                continue
            if c:
                result[idx] = c
            if dfs(k + 1, nxt):
                return True
            result.pop(idx, None)
        return False

    if dfs(0, tau.values):
        return dict(sorted(result.items()))
    return None


# ---------------------------------------------------------------------------
# Lefschetz numbers and generation by order-p elements

def lefschetz_number(h0: list[list[int]], hn: list[list[int]],
                     h2n: list[list[int]], n: int) -> int:
    """Alternating trace sum for a self-map of a space with cohomology in
    degrees 0, n, 2n of ranks 1, 2, 1."""
    shapes = (len(h0), len(hn), len(h2n))
    if shapes != (1, 2, 1) or any(len(r) != len(m) for m in (h0, hn, h2n) for r in m):
        raise ShapeMismatch(f"expected square blocks of sizes (1, 2, 1), got {shapes}")
    tr = lambda m: sum(m[i][i] for i in range(len(m)))
    sign = -1 if n % 2 else 1
    return tr(h0) + sign * tr(hn) + tr(h2n)


def generation_by_order_p(G: FiniteGroup, p: int) -> tuple[bool, list[int]]:
    """Does the closure of the order-p elements give all of G?"""
    witnesses = [a for a in G.elements() if G.element_order(a) == p]
    closure = subgroup_closure(G, witnesses)
    return len(closure) == G.order, witnesses


# ---------------------------------------------------------------------------
# the Qd(p) spherical-fibration obstruction

def qdp_obstruction_theorem_B(p: int,
                              max_order: int = DEFAULT_MAX_ORDER) -> Certificate:
    """Certificate that no dimension function compatible with a p-effective
    Euler class exists on Qd(p), p odd.

    Route one finds a fusion witness g conjugating the Sylow center onto a
    non-central cyclic subgroup.  Route two encodes the effectiveness
    constraints (value 0 exactly at the center among nontrivial cyclic
    subgroups of the Sylow) over G-conjugacy classes and exhibits the
    clash.  The two routes must agree.
    """
    if p == 2:
        raise EvenPrime("the obstruction needs p > 2")
    G = construct_qdp(p, max_order=max_order)
    P = sylow_p_subgroup(G, p)
    Z = center(P)
    assert Z.order == p

    cycs = [C for C in cyclic_subgroups(P) if C.order > 1]
    legs = [Leg("sylow-center", VERIFIED, {
        "sylow_order": P.order,
        "center": list(Z.members),
        "center_order": Z.order,
    })]

    # G-conjugacy classes of the nontrivial cyclic subgroups of P
    gens = generating_set(G)
    class_key: dict[tuple[int, ...], tuple[int, ...]] = {}
    for C in cycs:
        if C.members in class_key:
            continue
        orbit = {C.members}
        frontier = [C.members]
        while frontier:
            t = frontier.pop()
            for g in gens:
                gi = G.inv(g)
                u = tuple(sorted(G.mul(G.mul(g, x), gi) for x in t))
                if u not in orbit:
                    orbit.add(u)
                    frontier.append(u)
        key = min(orbit)
        for t in orbit:
            class_key[t] = key

    constraints: dict[tuple[int, ...], set[str]] = {}
    for C in cycs:
        want = "= 0" if C.members == Z.members else ">= 1"
        constraints.setdefault(class_key[C.members], set()).add(want)
    clash_keys = [k for k, v in constraints.items() if len(v) > 1]
    unsat = bool(clash_keys)
    legs.append(Leg("effectiveness-constraints", VERIFIED, {
        "variables": [list(k) for k in sorted(constraints)],
        "constraints": {str(list(k)): sorted(v) for k, v in sorted(constraints.items())},
    }))

    witness_g = None
    witness_c = None
    for C in cycs:
        if C.members == Z.members:
            continue
        g = is_conjugate(G, Z, C)
        if g is not None:
            witness_g, witness_c = g, C
            break
    if witness_g is None:
        raise AssertionError("no fusion witness found; certificate impossible")
    assert conjugate_subgroup(G, witness_g, Z).members == witness_c.members
    non_central = any(G.mul(x, y) != G.mul(y, x)
                      for x in witness_c.members for y in P.members)
    legs.append(Leg("fusion-witness", VERIFIED, {
        "witness": witness_g,
        "witness_description": G.describe(witness_g),
        "conjugate_subgroup": list(witness_c.members),
        "non_central_in_sylow": non_central,
    }))

    agree = unsat and class_key[Z.members] == class_key[witness_c.members]
    legs.append(Leg("constraint-unsat", VERIFIED if agree else REFUTED, {
        "unsat": unsat,
        "clash_classes": [list(k) for k in clash_keys],
        "forced_equal_values": [list(Z.members), list(witness_c.members)],
        "agrees_with_witness_route": agree,
    }))

    # joins preserve effectiveness: sample check that squaring a
    # non-nilpotent even invariant stays non-nilpotent
    from .fixrank import euler_join, non_nilpotent
    from .steenrod import invariants
    zeta = invariants(p).zeta
    joined = euler_join([zeta, zeta])
    legs.append(Leg("join-preserves-effectiveness", VERIFIED, {
        "sample_degree": zeta.degree(),
        "joined_degree": joined.degree(),
        "non_nilpotent": non_nilpotent(joined),
    }))

    assert agree
    return Certificate(
        name="qdp-spherical-fibration-obstruction",
        claim=(f"no mod-{p} spherical fibration over the classifying space of "
               f"Qd({p}) has a p-effective Euler class"),
        status=UNSAT,
        legs=legs,
        witness={
            "conjugator": witness_g,
            "center": list(Z.members),
            "conjugate": list(witness_c.members),
        },
    )
