"""Two-row algebraic models of sphere-fiber cohomology over the classifying
space of Z/p, and their localized fixed-point ranks.

A model is the rank-one cohomology ring H = F_p[t] (x) Lambda(s) acting on
two generators g_0 (degree 0) and g_n (degree n), together with
  * the single differential datum: zero, or lambda t^a with 2a = n + 1
    (a = n + 1 at p = 2) killing the top row, and
  * the operation structure constants on g_n: beta(g_n) and P^i(g_n)
    (Sq^i at p = 2) as H-combinations of g_0 and g_n.

A nonzero differential makes t nilpotent, so the localization vanishes and
the rank is -1.  Otherwise the module is free; after inverting t each
degree is spanned by one Laurent monomial per generator, and the rank-r
line is detected as the largest r carrying an element with nonzero
g_n-component annihilated by beta and by P^i for every checked i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidModel, MalformedInput, NoWitnessFound
from .groups import is_prime
from .steenrod import (
    GradedElement,
    RankOneElement,
    rank_one_bockstein,
    rank_one_monomial_from_string,
    rank_one_power,
)

G0 = "g0"
GN = "g_n"


@dataclass
class TwoRowModule:
    """Model datum; `powers[i] = (c0, cn)` means
    P^i(g_n) = c0 * m(n + 2i(p-1)) * g_0 + cn * t^(i(p-1)) * g_n
    (at p = 2 read Sq^i and t-degree shifts i), and `bockstein_g0` is the
    coefficient of the canonical degree-(n+1) monomial in beta(g_n)."""

    p: int
    n: int
    differential: Optional[tuple[int, int]] = None  # (lambda, a)
    bockstein_g0: int = 0
    powers: dict[int, tuple[int, int]] = field(default_factory=dict)

    def op_range(self) -> range:
        """Indices i with possibly nonzero P^i(g_n) (Sq^i at p = 2)."""
        return range(1, (self.n if self.p == 2 else self.n // 2) + 1)

    def validate(self) -> None:
        p, n = self.p, self.n
        if not is_prime(p):
            raise InvalidModel(f"{p} is not prime")
        if n < 0:
            raise InvalidModel("fiber degree must be >= 0")
        if self.differential is not None:
            lam, a = self.differential
            if lam % p == 0:
                raise InvalidModel("differential coefficient must be a unit")
            want = n + 1 if p == 2 else (n + 1) / 2
            if p != 2 and (n + 1) % 2:
                raise InvalidModel(
                    "no polynomial-part target in odd degree: for odd p a "
                    "nonzero differential needs odd fiber degree")
            if a != int(want):
                raise InvalidModel(f"differential exponent must be {want}")
        top = self.n if p == 2 else n // 2
        for i, (c0, cn) in self.powers.items():
            if i < 1 or i > top:
                if (c0 % p) or (cn % p):
                    raise InvalidModel(f"operation index {i} violates instability")
        if p == 2 and self.bockstein_g0 % 2:
            raise InvalidModel("at p = 2 the Bockstein is Sq^1; use powers[1]")
        if p != 2 and n % 2 == 0 and self.bockstein_g0 % p:
            # beta^2(g_n) = bockstein_g0 * beta(s t^(n/2)) g_0 must vanish
            raise InvalidModel("beta(g_n) must vanish for even fiber degree")

    # -- serialization (schema: {"p":3,"n":5,"differential":{...}|"zero",
    #    "steenrod":[{"op":"P1","g_n":[["t^2*s","g0",c],["t","g_n",c]]}]})

    def to_json(self) -> dict:
        diff = "zero" if self.differential is None else \
            {"lambda": self.differential[0], "a": self.differential[1]}
        ops = []
        if self.bockstein_g0 % self.p:
            mono = RankOneElement.canonical(self.p, self.n + 1)
            ops.append({"op": "b", "g_n": [
                [_mono_str(mono), G0, self.bockstein_g0 % self.p]]})
        shift = 1 if self.p == 2 else self.p - 1
        for i in sorted(self.powers):
            c0, cn = self.powers[i]
            entry = []
            if c0 % self.p:
                entry.append([_mono_str(RankOneElement.canonical(
                    self.p, self.n + 2 * i * shift if self.p != 2 else self.n + i)),
                    G0, c0 % self.p])
            if cn % self.p:
                entry.append([_mono_str(RankOneElement.canonical(
                    self.p, 2 * i * shift if self.p != 2 else i)),
                    GN, cn % self.p])
            if entry:
                ops.append({"op": ("Sq" if self.p == 2 else "P") + str(i),
                            "g_n": entry})
        return {"schema": "1", "p": self.p, "n": self.n,
                "differential": diff, "steenrod": ops}

    @staticmethod
    def from_json(obj: dict) -> "TwoRowModule":
        try:
            p = int(obj["p"])
            n = int(obj["n"])
            diff_obj = obj.get("differential", "zero")
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad model JSON: {exc}")
        diff = None
        if diff_obj != "zero":
            try:
                diff = (int(diff_obj["lambda"]), int(diff_obj["a"]))
            except (KeyError, TypeError) as exc:
                raise MalformedInput(f"bad differential: {exc}")
        bock = 0
        powers: dict[int, tuple[int, int]] = {}
        for entry in obj.get("steenrod", []):
            op = entry.get("op")
            comps = {G0: 0, GN: 0}
            for mono_str, gen, c in entry.get("g_n", []):
                if gen not in comps:
                    raise MalformedInput(f"unknown generator {gen!r}")
                mono = rank_one_monomial_from_string(p, mono_str)
                comps[gen] = (comps[gen] + int(c)) % p
                # degree consistency of the stated monomial
                want = _component_degree(p, n, op, gen)
                if mono.degree() != want:
                    raise InvalidModel(
                        f"{op} component on {gen} must be in degree {want}, "
                        f"got {mono.degree()}")
            if op == "b":
                bock = comps[G0]
                if comps[GN]:
                    raise InvalidModel("beta(g_n) cannot have a g_n component "
                                       "(beta squared would not vanish)")
            elif op and (op.startswith("P") or op.startswith("Sq")):
                i = int(op[2:] if op.startswith("Sq") else op[1:])
                powers[i] = (comps[G0], comps[GN])
            else:
                raise MalformedInput(f"unknown operation {op!r}")
        model = TwoRowModule(p=p, n=n, differential=diff,
                             bockstein_g0=bock, powers=powers)
        model.validate()
        return model


def _component_degree(p: int, n: int, op: str, gen: str) -> int:
    base = n if gen == G0 else 0
    if op == "b":
        return base + 1
    i = int(op[2:] if op.startswith("Sq") else op[1:])
    return base + (i if p == 2 else 2 * i * (p - 1))


def _mono_str(m: RankOneElement) -> str:
    ((eps, k),) = m.terms.keys()
    if eps and k:
        return f"t^{k}*s"
    if eps:
        return "s"
    if k == 1:
        return "t"
    return f"t^{k}" if k else "1"


# ---------------------------------------------------------------------------
# graded presentation of the total cohomology

@dataclass
class Presentation:
    kind: str  # "free" | "truncated"
    description: str
    dims: list[int]  # dimensions in degrees 0..len-1


def he_presentation(M: TwoRowModule, through_degree: Optional[int] = None) -> Presentation:
    M.validate()
    p, n = M.p, M.n
    top = through_degree if through_degree is not None else 2 * n + 4
    if M.differential is None:
        dims = [1 + (1 if d >= n else 0) for d in range(top + 1)]
        return Presentation("free", "free on one degree-0 and one degree-"
                            f"{n} generator over the rank-one cohomology", dims)
    lam, a = M.differential
    # surviving row: rank-one cohomology truncated above t^(a-1)
    dims = []
    for d in range(top + 1):
        if p == 2:
            dims.append(1 if d < a else 0)
        else:
            k = (d - (d & 1)) // 2
            dims.append(1 if k < a else 0)
    desc = (f"truncated polynomial algebra on t with t^{a} = 0"
            if p == 2 else
            f"truncation: exterior generator times polynomial algebra with t^{a} = 0")
    return Presentation("truncated", desc, dims)


# ---------------------------------------------------------------------------
# localized elements over the two generators

@dataclass
class TwoRowLocalElement:
    """c0 * g_0 + cn * g_n with rank-one Laurent coefficients."""
    module: TwoRowModule
    c0: RankOneElement
    cn: RankOneElement

    def is_zero(self) -> bool:
        return self.c0.is_zero() and self.cn.is_zero()

    def degree(self) -> int:
        degs = set()
        if not self.c0.is_zero():
            degs.add(self.c0.degree())
        if not self.cn.is_zero():
            degs.add(self.cn.degree() + self.module.n)
        assert len(degs) <= 1
        return degs.pop() if degs else 0

    def to_terms(self) -> list[list]:
        out = []
        for (eps, k), c in sorted(self.c0.terms.items()):
            out.append([_mono_str(RankOneElement.monomial(self.module.p, eps, k)), G0, c])
        for (eps, k), c in sorted(self.cn.terms.items()):
            out.append([_mono_str(RankOneElement.monomial(self.module.p, eps, k)), GN, c])
        return out


def module_bockstein(x: TwoRowLocalElement) -> TwoRowLocalElement:
    M = x.module
    p = M.p
    c0 = rank_one_bockstein(x.c0)
    cn = rank_one_bockstein(x.cn)
    if M.bockstein_g0 % p and not x.cn.is_zero():
        # Koszul sign: beta(h g_n) = beta(h) g_n + (-1)^|h| h beta(g_n)
        sign = -1 if x.cn.degree() % 2 else 1
        target = RankOneElement.canonical(p, M.n + 1) * (sign * M.bockstein_g0)
        c0 = c0 + x.cn * target
    return TwoRowLocalElement(M, c0, cn)


def module_power(i: int, x: TwoRowLocalElement) -> TwoRowLocalElement:
    """P^i (Sq^i at p = 2) through the Cartan formula and the model data."""
    M = x.module
    p = M.p
    shift = 1 if p == 2 else p - 1
    c0 = rank_one_power(i, x.c0)
    cn = rank_one_power(i, x.cn)
    for j in range(i):
        l = i - j  # operation falling on g_n
        d0, dn = M.powers.get(l, (0, 0))
        if not (d0 % p or dn % p):
            continue
        hj = rank_one_power(j, x.cn)
        if hj.is_zero():
            continue
        if d0 % p:
            mono = RankOneElement.canonical(
                p, M.n + (l if p == 2 else 2 * l * shift))
            c0 = c0 + hj * mono * d0
        if dn % p:
            mono = RankOneElement.monomial(p, 0, l if p == 2 else l * shift)
            cn = cn + hj * mono * dn
    return TwoRowLocalElement(M, c0, cn)


@dataclass
class FixResult:
    rank: int
    witness: Optional[TwoRowLocalElement]
    unique_line: bool
    checked_ops: int

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "witness": self.witness.to_terms() if self.witness else None,
            "unique_line": self.unique_line,
            "checked_ops": self.checked_ops,
        }


def default_pole_bound(n: int) -> int:
    return 2 * (n + 1)


def default_op_bound(p: int, n: int, pole_bound: int) -> int:
    # covers one full period of the mod-p binomial pattern of every
    # exponent reachable under the pole bound
    return (n + 2 * pole_bound) * p


def fix_rank(M: TwoRowModule, pole_bound: Optional[int] = None,
             op_bound: Optional[int] = None) -> FixResult:
    """Rank r with the localized fixed-point module isomorphic to a rank-r
    sphere's cohomology: -1 when the differential is nonzero, else the top
    degree carrying a beta- and P-annihilated line with g_n-component."""
    M.validate()
    p, n = M.p, M.n
    if M.differential is not None:
        return FixResult(-1, None, True, 0)
    if pole_bound is None:
        pole_bound = default_pole_bound(n)
    if op_bound is None:
        op_bound = default_op_bound(p, n, pole_bound)

    for r in range(n, -1, -1):
        mono_gn = RankOneElement.canonical(p, r - n)
        if mono_gn.min_exponent() < -pole_bound:
            raise NoWitnessFound(
                f"needed pole order {-mono_gn.min_exponent()} exceeds "
                f"bound {pole_bound}")
        f_alpha = TwoRowLocalElement(M, RankOneElement.canonical(p, r),
                                     RankOneElement.zero(p))
        f_gamma = TwoRowLocalElement(M, RankOneElement.zero(p), mono_gn)

        images = [(module_bockstein(f_alpha), module_bockstein(f_gamma))] \
            if p != 2 else []
        start_i = 1
        for i in range(start_i, op_bound + 1):
            images.append((module_power(i, f_alpha), module_power(i, f_gamma)))

        # each image is linear in (alpha, gamma); every nonzero slot gives an
        # equation c_alpha * alpha + c_gamma * gamma = 0
        equations = []
        for ia, ig in images:
            for attr in ("c0", "cn"):
                ta = getattr(ia, attr)
                tg = getattr(ig, attr)
                slots = set(ta.terms) | set(tg.terms)
                for s in slots:
                    equations.append((ta.terms.get(s, 0) % p,
                                      tg.terms.get(s, 0) % p))
        alpha = None
        feasible = True
        constrained = False
        for ca, cg in equations:
            if ca == 0 and cg != 0:
                feasible = False
                break
            if ca != 0:
                val = (-cg * pow(ca, -1, p)) % p
                if alpha is None:
                    alpha = val
                    constrained = True
                elif alpha != val:
                    feasible = False
                    break
        if not feasible:
            continue
        if alpha is None:
            alpha = 0
        witness = TwoRowLocalElement(
            M, RankOneElement.canonical(p, r) * alpha, mono_gn)
        # sanity: the witness really is annihilated
        assert module_bockstein(witness).is_zero() or p == 2
        for i in range(1, op_bound + 1):
            assert module_power(i, witness).is_zero()
        # the line is unique iff alpha was pinned or the g_0 slot is inert
        # (r = 0: adding the unit keeps all operations zero)
        unique = constrained or r == 0
        return FixResult(r, witness, unique, len(images))
    raise NoWitnessFound(
        "no annihilated line with g_n-component found above degree 0; "
        "invalid model or insufficient bounds")


# ---------------------------------------------------------------------------
# tensor and join bookkeeping on ranks

def fix_tensor_rule(r1: int, r2: int) -> list[int]:
    """Degrees of the tensor product of two sphere cohomologies (empty when
    either factor is the empty sphere)."""
    if r1 < -1 or r2 < -1:
        raise MalformedInput("ranks are >= -1")
    if r1 == -1 or r2 == -1:
        return []
    return sorted([0, r1, r2, r1 + r2])


def fix_join_rule(r1: int, r2: int) -> int:
    """Sphere rank of the join: r1 + r2 + 1; the empty sphere (-1) is the
    identity."""
    if r1 < -1 or r2 < -1:
        raise MalformedInput("ranks are >= -1")
    return r1 + r2 + 1


def join_model(M1: TwoRowModule, M2: TwoRowModule) -> TwoRowModule:
    """Model of the fiber join of two models over the same prime.

    Both nonzero differentials multiply (the join Euler class is the
    product); both zero differentials convolve the g_n structure constants
    (transporting operations through the boundary map kills every
    component except the one on the product of top generators).  Mixed
    split/nonsplit joins are not modeled.
    """
    if M1.p != M2.p:
        raise InvalidModel("join needs a common prime")
    M1.validate()
    M2.validate()
    p = M1.p
    n = M1.n + M2.n + 1
    if (M1.differential is None) != (M2.differential is None):
        raise InvalidModel("mixed split/nonsplit joins are not modeled; "
                           "use fix_join_rule on the ranks instead")
    if M1.differential is not None:
        lam = (M1.differential[0] * M2.differential[0]) % p
        a = M1.differential[1] + M2.differential[1]
        return TwoRowModule(p=p, n=n, differential=(lam, a))
    top = n if p == 2 else n // 2
    powers: dict[int, tuple[int, int]] = {}
    for i in range(1, top + 1):
        acc = 0
        for j in range(i + 1):
            q1 = 1 if j == 0 else M1.powers.get(j, (0, 0))[1]
            q2 = 1 if i - j == 0 else M2.powers.get(i - j, (0, 0))[1]
            acc += q1 * q2
        if acc % p:
            powers[i] = (0, acc % p)
    return TwoRowModule(p=p, n=n, differential=None, bockstein_g0=0,
                        powers=powers)


def m_fold_join_model(M: TwoRowModule, m: int) -> TwoRowModule:
    if m < 1:
        raise MalformedInput("need m >= 1")
    out = M
    for _ in range(m - 1):
        out = join_model(out, M)
    return out


# ---------------------------------------------------------------------------
# Euler classes of joins

def euler_join(classes: list):
    """Product of Euler data under fiber join: integers add as degrees,
    graded elements multiply (homogeneity required)."""
    if not classes:
        raise MalformedInput("need at least one Euler class")
    if all(isinstance(c, int) for c in classes):
        return sum(classes)
    if not all(isinstance(c, GradedElement) for c in classes):
        raise MalformedInput("mix of degrees and classes")
    out = classes[0]
    out.degree()  # homogeneity check, raises Inhomogeneous
    for c in classes[1:]:
        c.degree()
        out = out * c
    return out


def non_nilpotent(e: GradedElement) -> bool:
    """Exact: an element is non-nilpotent iff its polynomial part is
    nonzero (the exterior ideal squares to zero sector by sector, while a
    nonzero polynomial part survives in every power because the polynomial
    subring is a domain)."""
    return not e.polynomial_part().is_zero()
