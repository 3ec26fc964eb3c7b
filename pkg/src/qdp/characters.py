"""Irreducible characters of p-groups, exactly, and their real forms.

p-groups are monomial: every irreducible complex character is induced from
a linear character of some subgroup.  We induce the linear characters of
every subgroup, keep the norm-one results, and certify completeness by
sum-of-squares and exact pairwise orthogonality.  All values live in the
ring of cyclotomic integers Z[zeta_e], e = exp(P), represented as integer
vectors in the power basis of Z[x]/(Phi_e); no floating point anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import IncompleteInduction, NonIntegral, NotPGroup
from .groups import (
    FiniteGroup,
    Subgroup,
    TableGroup,
    element_conjugacy_classes,
    generated_subgroup,
    subgroup_closure,
    subgroups_of_p_group,
    whole_group,
)


# ---------------------------------------------------------------------------
# cyclotomic integers

def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return out, num


def cyclotomic_polynomial(e: int) -> list[int]:
    """Coefficients of Phi_e, low degree first."""
    num = [-1] + [0] * (e - 1) + [1]  # x^e - 1
    for d in range(1, e):
        if e % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert rem == [0]
    return num


class _CycloContext:
    _cache: dict[int, "_CycloContext"] = {}

    def __init__(self, e: int):
        phi_poly = cyclotomic_polynomial(e)
        self.e = e
        self.phi = len(phi_poly) - 1
        # x^phi == -(low part of Phi_e); extend the power table far enough
        # for degree-(2 phi - 2) products and for zeta_e^k, k < e.
        top = max(e - 1, 2 * self.phi - 2)
        powers: list[tuple[int, ...]] = []
        for j in range(self.phi):
            vec = [0] * self.phi
            vec[j] = 1
            powers.append(tuple(vec))
        for j in range(self.phi, top + 1):
            prev = powers[j - 1]
            shifted = [0] + list(prev[:-1])
            carry = prev[-1]
            if carry:
                for k in range(self.phi):
                    shifted[k] -= carry * phi_poly[k]
            powers.append(tuple(shifted))
        self.powers = powers

    @classmethod
    def get(cls, e: int) -> "_CycloContext":
        if e not in cls._cache:
            cls._cache[e] = _CycloContext(e)
        return cls._cache[e]


@dataclass(frozen=True)
class CyclotomicInteger:
    """Element of Z[zeta_e] in the power basis 1, zeta, ..., zeta^(phi(e)-1)."""

    order: int
    coeffs: tuple[int, ...]

    @staticmethod
    def zero(e: int) -> "CyclotomicInteger":
        return CyclotomicInteger(e, (0,) * _CycloContext.get(e).phi)

    @staticmethod
    def from_int(e: int, n: int) -> "CyclotomicInteger":
        ctx = _CycloContext.get(e)
        return CyclotomicInteger(e, (n,) + (0,) * (ctx.phi - 1))

    @staticmethod
    def zeta_power(e: int, k: int) -> "CyclotomicInteger":
        ctx = _CycloContext.get(e)
        return CyclotomicInteger(e, ctx.powers[k % e])

    def __add__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        assert self.order == other.order
        return CyclotomicInteger(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        assert self.order == other.order
        return CyclotomicInteger(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other) -> "CyclotomicInteger":
        if isinstance(other, int):
            return CyclotomicInteger(self.order, tuple(a * other for a in self.coeffs))
        assert self.order == other.order
        ctx = _CycloContext.get(self.order)
        phi = ctx.phi
        conv = [0] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        out = list(conv[:phi])
        for j in range(phi, 2 * phi - 1):
            c = conv[j]
            if c:
                vec = ctx.powers[j]
                for k in range(phi):
                    out[k] += c * vec[k]
        return CyclotomicInteger(self.order, tuple(out))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_rational_int(self) -> Optional[int]:
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None


# ---------------------------------------------------------------------------
# conjugacy classes of elements

@dataclass
class ElementClasses:
    group: FiniteGroup
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    inv_class: tuple[int, ...]

    @staticmethod
    def compute(G: FiniteGroup) -> "ElementClasses":
        classes = tuple(tuple(c) for c in element_conjugacy_classes(G))
        class_of = [0] * G.order
        for ci, cls in enumerate(classes):
            for a in cls:
                class_of[a] = ci
        inv_class = tuple(class_of[G.inv(cls[0])] for cls in classes)
        return ElementClasses(G, classes, tuple(class_of), inv_class)

    @property
    def identity_class(self) -> int:
        return self.class_of[self.group.identity]


# ---------------------------------------------------------------------------
# linear characters via the abelianization

def _restrict_group(Q: TableGroup, members: tuple[int, ...]) -> tuple[TableGroup, list[int]]:
    idx = {m: i for i, m in enumerate(members)}
    table = [[idx[Q.mul(a, b)] for b in members] for a in members]
    return TableGroup(table), list(members)


def _cyclic_decomposition(Q: TableGroup) -> list[tuple[int, int]]:
    """Internal direct-product basis [(generator, order)] of an abelian p-group."""
    if Q.order == 1:
        return []
    orders = [Q.element_order(a) for a in Q.elements()]
    m = max(orders)
    a = orders.index(m)
    if m == Q.order:
        return [(a, m)]
    cyc = set(subgroup_closure(Q, [a]))
    for B in subgroups_of_p_group(whole_group(Q)):
        if B.order * m == Q.order and len(set(B.members) & cyc) == 1:
            sub, mapping = _restrict_group(Q, B.members)
            return [(a, m)] + [(mapping[g], o) for g, o in _cyclic_decomposition(sub)]
    raise AssertionError("abelian p-group has no cyclic complement")  # pragma: no cover


@dataclass
class LinearCharacter:
    """zeta_modulus^(exponent) valued homomorphism, stored by exponents."""
    modulus: int
    exponents: dict[int, int]  # parent-group element -> exponent mod modulus


def linear_characters(H: Subgroup) -> list[LinearCharacter]:
    G = H.group
    commutators = [G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
                   for a in H.members for b in H.members]
    derived = generated_subgroup(G, commutators)
    from .groups import quotient_group
    Q, coset_of = quotient_group(H, derived)
    basis = _cyclic_decomposition(Q)
    mods = [m for _, m in basis]
    exp_q = max(mods, default=1)

    coords: dict[int, tuple[int, ...]] = {}
    for tup in itertools.product(*(range(m) for m in mods)):
        g = Q.identity
        for (b, _), k in zip(basis, tup):
            g = Q.mul(g, Q.power(b, k))
        coords[g] = tup
    assert len(coords) == Q.order

    out = []
    for jtup in itertools.product(*(range(m) for m in mods)):
        exps = {}
        for h in H.members:
            co = coords[coset_of[h]]
            val = sum(j * k * (exp_q // m) for j, k, m in zip(jtup, co, mods))
            exps[h] = val % exp_q
        out.append(LinearCharacter(exp_q, exps))
    return out


# ---------------------------------------------------------------------------
# characters of the whole p-group

@dataclass
class Character:
    group: FiniteGroup
    classes: ElementClasses
    values: tuple[CyclotomicInteger, ...]
    degree: int

    def value_at(self, a: int) -> CyclotomicInteger:
        return self.values[self.classes.class_of[a]]

    def sort_key(self):
        return (self.degree, tuple(v.coeffs for v in self.values))


def _inner_product_times_order(chi_vals, psi_vals, classes: ElementClasses) -> CyclotomicInteger:
    """|G| * <chi, psi> = sum_g chi(g) psi(g^-1)."""
    e = chi_vals[0].order
    acc = CyclotomicInteger.zero(e)
    for ci, cls in enumerate(classes.classes):
        acc = acc + len(cls) * (chi_vals[ci] * psi_vals[classes.inv_class[ci]])
    return acc


def group_exponent(G: FiniteGroup) -> int:
    return max(G.element_order(a) for a in G.elements())


def _is_p_group(G: FiniteGroup) -> Optional[int]:
    n = G.order
    if n == 1:
        return 2
    for p in range(2, n + 1):
        if n % p == 0:
            m = n
            while m % p == 0:
                m //= p
            return p if m == 1 else None
    return None


def induced_values(H: Subgroup, lam: LinearCharacter, classes: ElementClasses,
                   e: int) -> tuple[CyclotomicInteger, ...]:
    G = H.group
    hset = set(H.members)
    reps = []
    seen = set()
    for g in G.elements():
        if g not in seen:
            reps.append(g)
            seen.update(G.mul(g, h) for h in H.members)
    scale = e // lam.modulus
    values = []
    for cls in classes.classes:
        g = cls[0]
        acc = CyclotomicInteger.zero(e)
        for x in reps:
            y = G.mul(G.mul(G.inv(x), g), x)
            if y in hset:
                acc = acc + CyclotomicInteger.zeta_power(e, scale * lam.exponents[y])
        values.append(acc)
    return tuple(values)


def irreducible_characters(P: FiniteGroup,
                           classes: Optional[ElementClasses] = None) -> list[Character]:
    """The full irreducible character list, certified complete."""
    p = _is_p_group(P)
    if p is None:
        raise NotPGroup(f"|G| = {P.order} is not a prime power")
    if classes is None:
        classes = ElementClasses.compute(P)
    e = group_exponent(P)
    n = P.order

    candidates: dict[tuple, tuple[CyclotomicInteger, ...]] = {}
    for H in subgroups_of_p_group(whole_group(P)):
        for lam in linear_characters(H):
            vals = induced_values(H, lam, classes, e)
            candidates.setdefault(tuple(v.coeffs for v in vals), vals)

    irreducible = []
    for vals in candidates.values():
        norm = _inner_product_times_order(vals, vals, classes).as_rational_int()
        if norm == n:
            deg = vals[classes.identity_class].as_rational_int()
            assert deg is not None and deg > 0
            irreducible.append(Character(P, classes, vals, deg))

    irreducible.sort(key=Character.sort_key)
    if sum(chi.degree ** 2 for chi in irreducible) != n:
        raise IncompleteInduction(
            f"induction found degrees {[c.degree for c in irreducible]} "
            f"with sum of squares != {n}")
    for i in range(len(irreducible)):
        for j in range(i + 1, len(irreducible)):
            ip = _inner_product_times_order(
                irreducible[i].values, irreducible[j].values, classes)
            if not ip.is_zero():
                raise IncompleteInduction("distinct characters not orthogonal")
    return irreducible


def fixed_dimension(chi: Character, H: Subgroup) -> int:
    """dim of the fixed subspace of H, i.e. <res_H chi, 1> exactly."""
    acc = CyclotomicInteger.zero(chi.values[0].order)
    for h in H.members:
        acc = acc + chi.value_at(h)
    r = acc.as_rational_int()
    if r is None or r % H.order or r < 0:
        raise NonIntegral(f"character average over subgroup is {acc}, not an integer")
    return r // H.order


def frobenius_schur(chi: Character) -> int:
    G = chi.group
    acc = CyclotomicInteger.zero(chi.values[0].order)
    for g in G.elements():
        acc = acc + chi.value_at(G.mul(g, g))
    r = acc.as_rational_int()
    if r is None or r % G.order:
        raise NonIntegral("Frobenius-Schur sum is not an integer multiple of |G|")
    ind = r // G.order
    assert ind in (-1, 0, 1)
    return ind


REAL = "real"
COMPLEX_PAIR = "complex_pair"
QUATERNIONIC = "quaternionic"


@dataclass
class RealBasisEntry:
    """An irreducible real representation: a complex irreducible plus its
    realness type; complex pairs and quaternionic types are realified by
    doubling."""
    character: Character
    realness: str

    @property
    def real_degree(self) -> int:
        return self.character.degree * (1 if self.realness == REAL else 2)

    @property
    def multiplier(self) -> int:
        return 1 if self.realness == REAL else 2

    def fixed_dimension_vector(self, lattice) -> tuple[int, ...]:
        """Fixed-space dimensions of the realified representation, one per
        p-subgroup conjugacy class of the lattice."""
        return tuple(self.multiplier * fixed_dimension(self.character, cls[0])
                     for cls in lattice.classes)


def real_representation_basis(P: FiniteGroup,
                              chars: Optional[list[Character]] = None) -> list[RealBasisEntry]:
    if chars is None:
        chars = irreducible_characters(P)
    classes = chars[0].classes if chars else ElementClasses.compute(P)
    entries: list[RealBasisEntry] = []
    used = set()
    for i, chi in enumerate(chars):
        if i in used:
            continue
        nu = frobenius_schur(chi)
        if nu == 1:
            entries.append(RealBasisEntry(chi, REAL))
        elif nu == -1:
            entries.append(RealBasisEntry(chi, QUATERNIONIC))
        else:
            conj = tuple(chi.values[classes.inv_class[k]].coeffs
                         for k in range(len(classes.classes)))
            partner = None
            for j, other in enumerate(chars):
                if j != i and j not in used and \
                        tuple(v.coeffs for v in other.values) == conj:
                    partner = j
                    break
            if partner is None:
                raise IncompleteInduction("complex character without conjugate partner")
            used.add(partner)
            entries.append(RealBasisEntry(chi, COMPLEX_PAIR))
    total = sum((2 if e.realness == COMPLEX_PAIR else 1) * e.character.degree ** 2
                for e in entries)
    if total != P.order:
        raise IncompleteInduction("realified degrees inconsistent with |G|")
    return entries


def character_table_json(P: FiniteGroup) -> dict:
    chars = irreducible_characters(P)
    classes = chars[0].classes
    e = group_exponent(P)
    return {
        "schema": "1",
        "cyclotomic_order": e,
        "classes": [{"rep": cls[0], "size": len(cls)} for cls in classes.classes],
        "characters": [
            {"degree": chi.degree, "values": [list(v.coeffs) for v in chi.values]}
            for chi in chars
        ],
    }
