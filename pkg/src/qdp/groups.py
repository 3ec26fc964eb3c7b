"""Finite groups given by explicit multiplication, and their p-subgroup lattices.

A group is a set of indexed elements 0..n-1 with a total multiplication.
Small groups are stored as Cayley tables; Qd(p) = (Z/p)^2 x| SL2(Z/p) is
stored structurally (vector part + matrix part) so that Qd(5), of order
3000, multiplies in O(1) without a 9-million-entry table.

Subgroups are sorted index tuples.  Enumeration is restricted to
p-subgroups: every p-subgroup of G is conjugate into a fixed Sylow
p-subgroup P, so we enumerate the subgroups of P (by index-p normal
extensions, which reach everything inside a p-group) and close up under
G-conjugation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CompositeP, DomainMismatch, MalformedInput, SizeGuard

DEFAULT_MAX_ORDER = 5000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def p_part(n: int, p: int) -> int:
    q = 1
    while n % (q * p) == 0:
        q *= p
    return q


class FiniteGroup:
    """Base interface: elements are 0..order-1, `mul` is total."""

    order: int
    identity: int
    name: str

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def describe(self, a: int) -> str:
        return str(a)

    def elements(self) -> range:
        return range(self.order)

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        r = self.identity
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def element_order(self, a: int) -> int:
        n = 1
        x = a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def to_json(self) -> dict:
        raise NotImplementedError

    def check_axioms(self, max_order: int = 200) -> None:
        """Exhaustive associativity/identity/inverse check (cubic; guarded)."""
        n = self.order
        if n > max_order:
            raise SizeGuard(f"axiom check is cubic; refusing order {n} > {max_order}")
        e = self.identity
        for a in range(n):
            if self.mul(a, e) != a or self.mul(e, a) != a:
                raise AssertionError(f"identity fails at {a}")
            if self.mul(a, self.inv(a)) != e or self.mul(self.inv(a), a) != e:
                raise AssertionError(f"inverse fails at {a}")
        for a in range(n):
            for b in range(n):
                ab = self.mul(a, b)
                for c in range(n):
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        raise AssertionError(f"associativity fails at {(a, b, c)}")


class TableGroup(FiniteGroup):
    def __init__(self, table: list[list[int]], name: str = "G",
                 labels: Optional[list[str]] = None):
        n = len(table)
        if any(len(row) != n for row in table):
            raise MalformedInput("multiplication table must be square")
        if any(not (0 <= v < n) for row in table for v in row):
            raise MalformedInput("table entries must be indices 0..n-1")
        self.table = tuple(tuple(row) for row in table)
        self.order = n
        self.name = name
        self.labels = labels
        ident = None
        for e in range(n):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n)):
                ident = e
                break
        if ident is None:
            raise MalformedInput("table has no two-sided identity")
        self.identity = ident
        self._inv = [-1] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == ident and self.table[b][a] == ident:
                    self._inv[a] = b
                    break
            if self._inv[a] < 0:
                raise MalformedInput(f"element {a} has no two-sided inverse")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def describe(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def to_json(self) -> dict:
        return {"kind": "table", "n": self.order, "mul": [list(r) for r in self.table]}


class QdpGroup(FiniteGroup):
    """(Z/p)^2 x| SL2(Z/p), elements (v, A), (v,A)(w,B) = (v + Aw, AB)."""

    def __init__(self, p: int, max_order: int = DEFAULT_MAX_ORDER):
        if not is_prime(p):
            raise CompositeP(f"{p} is not prime")
        order = p ** 3 * (p * p - 1)
        if order > max_order:
            raise SizeGuard(
                f"|Qd({p})| = {order} exceeds the guard {max_order}; "
                "pass a larger max_order to opt in")
        self.p = p
        self.order = order
        self.name = f"Qd({p})"

        mats = []
        for a, b, c, d in itertools.product(range(p), repeat=4):
            if (a * d - b * c) % p == 1:
                mats.append((a, b, c, d))
        mats.sort()
        self.mats = mats
        self.nmat = len(mats)
        midx = {m: i for i, m in enumerate(mats)}

        self._matmul = [
            [midx[((m[0] * k[0] + m[1] * k[2]) % p, (m[0] * k[1] + m[1] * k[3]) % p,
                   (m[2] * k[0] + m[3] * k[2]) % p, (m[2] * k[1] + m[3] * k[3]) % p)]
             for k in mats] for m in mats]
        self._matinv = [midx[(m[3] % p, (-m[1]) % p, (-m[2]) % p, m[0] % p)] for m in mats]
        # act[i][v]: matrix i applied to the packed vector v = x*p + y
        self._act = [
            [((m[0] * x + m[1] * y) % p) * p + (m[2] * x + m[3] * y) % p
             for x in range(p) for y in range(p)]
            for m in mats]
        # re-pack: the comprehension above iterates (x, y) in row-major order,
        # which is exactly packed index x*p + y, so _act[i][v] is correct.
        nv = p * p
        self._vadd = [[(u // p + w // p) % p * p + (u % p + w % p) % p
                       for w in range(nv)] for u in range(nv)]
        self._vneg = [((-(u // p)) % p) * p + (-(u % p)) % p for u in range(nv)]
        self.identity = midx[(1, 0, 0, 1)]  # v = 0 packs to 0

    def mul(self, a: int, b: int) -> int:
        va, ma = divmod(a, self.nmat)
        vb, mb = divmod(b, self.nmat)
        return self._vadd[va][self._act[ma][vb]] * self.nmat + self._matmul[ma][mb]

    def inv(self, a: int) -> int:
        va, ma = divmod(a, self.nmat)
        mi = self._matinv[ma]
        return self._vneg[self._act[mi][va]] * self.nmat + mi

    def element(self, v: tuple[int, int], mat: tuple[int, int, int, int]) -> int:
        p = self.p
        vi = (v[0] % p) * p + v[1] % p
        return vi * self.nmat + self.mats.index(tuple(x % p for x in mat))

    def parts(self, a: int) -> tuple[tuple[int, int], tuple[int, int, int, int]]:
        v, m = divmod(a, self.nmat)
        return (v // self.p, v % self.p), self.mats[m]

    def describe(self, a: int) -> str:
        v, m = self.parts(a)
        return f"({v[0]},{v[1]})|[{m[0]},{m[1]};{m[2]},{m[3]}]"

    def to_json(self) -> dict:
        return {"kind": "qdp", "p": self.p}


def construct_qdp(p: int, max_order: int = DEFAULT_MAX_ORDER) -> QdpGroup:
    return QdpGroup(p, max_order=max_order)


def group_from_json(obj: dict, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise MalformedInput("group JSON needs a 'kind' field")
    if obj["kind"] == "qdp":
        return construct_qdp(int(obj["p"]), max_order=max_order)
    if obj["kind"] == "table":
        if "mul" not in obj:
            raise MalformedInput("table group JSON needs 'mul'")
        return TableGroup(obj["mul"])
    raise MalformedInput(f"unknown group kind {obj['kind']!r}")


# ---------------------------------------------------------------------------
# small-group constructors for tests and the character corpus

def from_elements(elems: list, mul, name: str = "G") -> TableGroup:
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[mul(a, b)] for b in elems] for a in elems]
    return TableGroup(table, name=name, labels=[str(e) for e in elems])


def cyclic(n: int) -> TableGroup:
    return from_elements(list(range(n)), lambda a, b: (a + b) % n, name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: Optional[str] = None) -> TableGroup:
    elems = [(a, b) for a in g.elements() for b in h.elements()]
    return from_elements(elems, lambda x, y: (g.mul(x[0], y[0]), h.mul(x[1], y[1])),
                         name=name or f"{g.name}x{h.name}")


def elementary_abelian(p: int, rank: int) -> TableGroup:
    elems = list(itertools.product(range(p), repeat=rank))
    return from_elements(elems, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)),
                         name=f"E{p}^{rank}")


def dihedral(n: int) -> TableGroup:
    """Dihedral group of order 2n: (i, j) with j a flip flag."""
    elems = [(i, j) for j in range(2) for i in range(n)]

    def mul(a, b):
        i, j = a
        k, l = b
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    return from_elements(elems, mul, name=f"D{2 * n}")


def generalized_quaternion(order: int) -> TableGroup:
    """Q_{2^k}: <a, b | a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1>, order = 4m."""
    if order < 8 or order % 4:
        raise MalformedInput("generalized quaternion groups have order 4m >= 8")
    m = order // 4
    n = 2 * m
    elems = [(i, j) for j in range(2) for i in range(n)]

    def mul(a, b):
        i, j = a
        k, l = b
        base = (i + k) % n if j == 0 else (i - k) % n
        if j == 1 and l == 1:
            return ((base + m) % n, 0)
        return (base, (j + l) % 2)

    return from_elements(elems, mul, name=f"Q{order}")


def heisenberg(p: int) -> TableGroup:
    """Extraspecial group of order p^3 and exponent p (p odd)."""
    elems = list(itertools.product(range(p), repeat=3))

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p,
                (x[2] + y[2] + x[0] * y[1]) % p)

    return from_elements(elems, mul, name=f"H{p ** 3}")


def modular_p3(p: int) -> TableGroup:
    """Extraspecial-type group of order p^3 and exponent p^2: Z/p^2 x| Z/p."""
    pp = p * p
    elems = [(i, j) for j in range(p) for i in range(pp)]

    def mul(x, y):
        return ((x[0] + pow(1 + p, x[1], pp) * y[0]) % pp, (x[1] + y[1]) % p)

    return from_elements(elems, mul, name=f"M{p ** 3}")


# ---------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in set(self.members)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def to_json(self) -> list[int]:
        return list(self.members)


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> tuple[int, ...]:
    """Members of <gens>, computed by product saturation."""
    gens = [g for g in gens]
    seen = {G.identity}
    frontier = [G.identity]
    for g in gens:
        if g not in seen:
            seen.add(g)
            frontier.append(g)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return tuple(sorted(seen))


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, subgroup_closure(G, gens))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def generating_set(G: FiniteGroup) -> list[int]:
    """Small (greedy, deterministic) generating set."""
    gens: list[int] = []
    closure = {G.identity}
    for a in G.elements():
        if a not in closure:
            gens.append(a)
            closure = set(subgroup_closure(G, gens))
            if len(closure) == G.order:
                break
    return gens


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    s = set(members)
    if G.identity not in s:
        return False
    return all(G.mul(a, b) in s for a in s for b in s)


def conjugate_subgroup(G: FiniteGroup, g: int, H: Subgroup) -> Subgroup:
    gi = G.inv(g)
    return Subgroup(G, tuple(sorted(G.mul(G.mul(g, x), gi) for x in H.members)))


def center(H: Subgroup) -> Subgroup:
    G = H.group
    mem = H.members
    out = [z for z in mem if all(G.mul(z, x) == G.mul(x, z) for x in mem)]
    return Subgroup(G, tuple(out))


def centralizes(G: FiniteGroup, z: int, members: Iterable[int]) -> bool:
    return all(G.mul(z, x) == G.mul(x, z) for x in members)


def sylow_p_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """Grow a p-subgroup by p-elements of its normalizer until full p-part.

    If H is a p-group normalized by a p-element g then <H, g> is again a
    p-group, and inside any Sylow subgroup containing H such a g exists
    whenever H is not yet Sylow, so the loop always completes.
    """
    if not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if G.order % p:
        raise SizeGuard(f"{p} does not divide |G| = {G.order}")
    target = p_part(G.order, p)
    pelems = [a for a in G.elements() if _is_p_power(G.element_order(a), p)]
    hgens: list[int] = []
    members = {G.identity}
    while len(members) < target:
        for g in pelems:
            if g in members:
                continue
            gi = G.inv(g)
            if all(G.mul(G.mul(g, x), gi) in members for x in members):
                hgens.append(g)
                members = set(subgroup_closure(G, hgens))
                break
        else:  # pragma: no cover - impossible by Sylow theory
            raise AssertionError("sylow growth stalled")
    return Subgroup(G, tuple(sorted(members)))


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def subgroups_of_p_group(P: Subgroup) -> list[Subgroup]:
    """All subgroups of a p-group, via normal index-p extensions.

    In a p-group every proper subgroup H sits inside some K with H normal
    of index p in K, so upward BFS by such extensions reaches everything.
    """
    G = P.group
    n = P.order
    if n == 1:
        return [P]
    p = _unique_prime(n)
    mem = set(P.members)
    seen: dict[tuple[int, ...], None] = {}
    start = (G.identity,)
    seen[start] = None
    frontier = [start]
    while frontier:
        h = frontier.pop()
        hset = set(h)
        norm = [g for g in mem
                if all(G.mul(G.mul(g, x), G.inv(g)) in hset for x in h)]
        for g in norm:
            if g in hset or G.power(g, p) not in hset:
                continue
            cosets = set(h)
            x = g
            for _ in range(p - 1):
                cosets.update(G.mul(x, y) for y in h)
                x = G.mul(x, g)
            key = tuple(sorted(cosets))
            if key not in seen:
                seen[key] = None
                frontier.append(key)
    return [Subgroup(G, k) for k in sorted(seen, key=lambda t: (len(t), t))]


def _unique_prime(n: int) -> int:
    for p in range(2, n + 1):
        if n % p == 0:
            if not _is_p_power(n, p):
                raise SizeGuard(f"order {n} is not a prime power")
            return p
    raise SizeGuard("trivial group has no prime")


def cyclic_subgroups(P: Subgroup) -> list[Subgroup]:
    G = P.group
    out = {}
    for g in P.members:
        key = tuple(sorted(subgroup_closure(G, [g])))
        out[key] = None
    return [Subgroup(G, k) for k in sorted(out, key=lambda t: (len(t), t))]


def is_conjugate(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Optional[int]:
    """A witness g with g H g^-1 = K, or None."""
    if H.order != K.order:
        return None
    if H.members == K.members:
        return G.identity
    kset = set(K.members)
    for g in G.elements():
        gi = G.inv(g)
        if all(G.mul(G.mul(g, x), gi) in kset for x in H.members):
            return g
    return None


# ---------------------------------------------------------------------------
# conjugacy classes of p-subgroups

@dataclass
class PSubgroupClasses:
    """All p-subgroups of G, partitioned into G-conjugacy classes.

    Classes are sorted by (order, smallest member tuple); `index` maps a
    subgroup's member tuple to its class number.
    """
    group: FiniteGroup
    prime: int
    sylow: Subgroup
    classes: tuple[tuple[Subgroup, ...], ...]
    index: dict[tuple[int, ...], int]

    def class_of(self, H: Subgroup) -> int:
        try:
            return self.index[H.members]
        except KeyError:
            raise DomainMismatch(
                f"subgroup {H.members} is not in the computed lattice")

    def reps(self) -> list[Subgroup]:
        return [cls[0] for cls in self.classes]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def all_subgroups(self) -> list[Subgroup]:
        return [s for cls in self.classes for s in cls]


def conjugacy_orbit(G: FiniteGroup, S: Subgroup, gens: list[int]) -> list[Subgroup]:
    seen = {S.members}
    frontier = [S.members]
    while frontier:
        t = frontier.pop()
        for g in gens:
            gi = G.inv(g)
            u = tuple(sorted(G.mul(G.mul(g, x), gi) for x in t))
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return [Subgroup(G, t) for t in sorted(seen)]


def p_subgroups(G: FiniteGroup, p: int,
                max_order: int = DEFAULT_MAX_ORDER) -> PSubgroupClasses:
    if G.order > max_order:
        raise SizeGuard(f"|G| = {G.order} exceeds the guard {max_order}")
    P = sylow_p_subgroup(G, p)
    gens = generating_set(G)
    classes: list[tuple[Subgroup, ...]] = []
    assigned: dict[tuple[int, ...], int] = {}
    for S in subgroups_of_p_group(P):
        if S.members in assigned:
            continue
        orbit = conjugacy_orbit(G, S, gens)
        ci = len(classes)
        classes.append(tuple(orbit))
        for T in orbit:
            assigned[T.members] = ci
    order = sorted(range(len(classes)),
                   key=lambda i: (classes[i][0].order, classes[i][0].members))
    classes = [classes[i] for i in order]
    index = {}
    for ci, cls in enumerate(classes):
        for T in cls:
            index[T.members] = ci
    return PSubgroupClasses(group=G, prime=p, sylow=P,
                            classes=tuple(classes), index=index)


# ---------------------------------------------------------------------------
# quotients and quotient-type tags

@dataclass(frozen=True)
class QuotientTag:
    kind: str  # elementary_abelian_rank2 | cyclic_p | cyclic4 | generalized_quaternion | other
    order: int

    ELEMENTARY_ABELIAN_RANK2 = "elementary_abelian_rank2"
    CYCLIC_P = "cyclic_p"
    CYCLIC4 = "cyclic4"
    GENERALIZED_QUATERNION = "generalized_quaternion"
    OTHER = "other"


def quotient_group(K: Subgroup, H: Subgroup) -> tuple[TableGroup, dict[int, int]]:
    """Coset table of K/H (H normal in K) and the member -> coset map."""
    G = K.group
    hset = set(H.members)
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for k in K.members:
        if k in coset_of:
            continue
        ci = len(reps)
        reps.append(k)
        for h in H.members:
            coset_of[G.mul(k, h)] = ci
    table = [[coset_of[G.mul(a, b)] for b in reps] for a in reps]
    return TableGroup(table, name="quotient"), coset_of


def is_normal_in(H: Subgroup, K: Subgroup) -> bool:
    G = H.group
    hset = set(H.members)
    return all(G.mul(G.mul(k, h), G.inv(k)) in hset
               for k in K.members for h in H.members)


def classify_quotient(Q: TableGroup, p: int) -> QuotientTag:
    q = Q.order
    orders = [Q.element_order(a) for a in Q.elements()]
    if q == p:
        return QuotientTag(QuotientTag.CYCLIC_P, q)
    if q == p * p:
        if max(orders) == p:
            return QuotientTag(QuotientTag.ELEMENTARY_ABELIAN_RANK2, q)
        if p == 2:
            return QuotientTag(QuotientTag.CYCLIC4, q)
        return QuotientTag(QuotientTag.OTHER, q)
    if p == 2 and q >= 8:
        involutions = sum(1 for o in orders if o == 2)
        abelian = all(Q.mul(a, b) == Q.mul(b, a)
                      for a in Q.elements() for b in Q.elements())
        if involutions == 1 and not abelian:
            return QuotientTag(QuotientTag.GENERALIZED_QUATERNION, q)
        return QuotientTag(QuotientTag.OTHER, q)
    return QuotientTag(QuotientTag.OTHER, q)


def normal_pairs_with_tag(P: Subgroup) -> list[tuple[Subgroup, Subgroup, QuotientTag]]:
    """All H normal in K <= P whose index is p, p^2, or (p=2) any 2-power >= 8.

    These are exactly the pairs the Borel-Smith conditions inspect.
    """
    p = _unique_prime(P.order) if P.order > 1 else 2
    subs = subgroups_of_p_group(P)
    out = []
    for K in subs:
        kset = set(K.members)
        inner = [H for H in subs if set(H.members) <= kset and H.order < K.order]
        for H in inner:
            q = K.order // H.order
            if p > 2 and q not in (p, p * p):
                continue
            if not is_normal_in(H, K):
                continue
            Q, _ = quotient_group(K, H)
            out.append((H, K, classify_quotient(Q, p)))
    return out


def order_p_subgroups_of_quotient(Q: TableGroup, p: int) -> list[tuple[int, ...]]:
    """The subgroups of order p of Q, as sorted tuples of Q-indices."""
    seen = {}
    for a in Q.elements():
        if Q.element_order(a) == p:
            seen[tuple(sorted(subgroup_closure(Q, [a])))] = None
    return sorted(seen)


def element_conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    gens = generating_set(G)
    seen = [False] * G.order
    classes = []
    for a in G.elements():
        if seen[a]:
            continue
        orbit = {a}
        frontier = [a]
        seen[a] = True
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = G.conj(g, x)
                if y not in orbit:
                    orbit.add(y)
                    seen[y] = True
                    frontier.append(y)
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: c[0])
    return classes
