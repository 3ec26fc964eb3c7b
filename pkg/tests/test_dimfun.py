"""Borel-Smith checker, realization solver, joins, and the fibration
obstruction certificate."""

import random

import pytest

from qdp.characters import real_representation_basis
from qdp.dimfun import (
    SuperClassFunction,
    check_borel_smith,
    check_codim_one_sum,
    generation_by_order_p,
    is_monotone,
    join_dimension_function,
    lefschetz_number,
    qdp_obstruction_theorem_B,
    real_dimension_function,
    realize_as_representation,
    smallest_join_multiplier,
    superclassfunction_from_json,
)
from qdp.errors import (
    DomainMismatch,
    EvenPrime,
    NotBorelSmith,
    NotMonotone,
    ShapeMismatch,
)
from qdp.groups import (
    Subgroup,
    center,
    conjugate_subgroup,
    construct_qdp,
    cyclic,
    elementary_abelian,
    heisenberg,
    p_subgroups,
    sylow_p_subgroup,
    whole_group,
)


def regular_tau(G, p):
    """Dimension function of the real regular representation via the
    orbit-count oracle: value |G| / |H| at each class."""
    lat = p_subgroups(G, p)
    return lat, SuperClassFunction(
        lat, tuple(G.order // cls[0].order for cls in lat.classes))


def test_regular_representation_is_borel_smith():
    lat, tau = regular_tau(elementary_abelian(3, 2), 3)
    report = check_borel_smith(tau)
    assert report.ok and report.monotone
    # condition (i) by hand: 9 - 1 = 4 * (3 - 1)
    assert tau.values[lat.class_of(Subgroup(lat.group, (0,)))] == 9


def test_constant_function_passes():
    lat = p_subgroups(heisenberg(3), 3)
    tau = SuperClassFunction(lat, (7,) * lat.n_classes)
    report = check_borel_smith(tau)
    assert report.ok and report.monotone


def test_condition_i_violation():
    lat = p_subgroups(elementary_abelian(3, 2), 3)
    values = [0] * lat.n_classes
    values[lat.class_of(Subgroup(lat.group, (0,)))] = 2
    report = check_borel_smith(SuperClassFunction(lat, tuple(values)))
    assert not report.ok
    v = report.violations[0]
    assert v.condition == "i" and v.lhs == 2 and v.rhs == 0


def test_condition_ii_violation():
    lat = p_subgroups(cyclic(3), 3)
    tau = SuperClassFunction(lat, tuple(
        1 if cls[0].order == 1 else 0 for cls in lat.classes))
    report = check_borel_smith(tau)
    assert [v.condition for v in report.violations] == ["ii"]


def test_condition_iii_quaternion():
    from qdp.groups import generalized_quaternion
    G = generalized_quaternion(8)
    lat = p_subgroups(G, 2)
    # tau = 2 at the trivial subgroup only: 2 - 0 is even but not divisible
    # by 4, so the quaternion condition fails while the cyclic-4 one passes
    values = [2 if cls[0].order == 1 else 0 for cls in lat.classes]
    report = check_borel_smith(SuperClassFunction(lat, tuple(values)))
    assert any(v.condition == "iii" and v.rhs == 4 for v in report.violations)
    # the quaternionic entry of the real basis passes with difference 4
    basis = real_representation_basis(G)
    quat = next(e for e in basis if e.realness == "quaternionic")
    tau = real_dimension_function(quat, lat)
    assert tau.values[lat.class_of(Subgroup(G, (G.identity,)))] == 4
    assert check_borel_smith(tau).ok


def test_monotone_witness():
    lat = p_subgroups(cyclic(3), 3)
    tau = SuperClassFunction(lat, tuple(
        0 if cls[0].order == 1 else 1 for cls in lat.classes))
    mono, wit = is_monotone(tau)
    assert not mono and wit is not None
    assert is_monotone(SuperClassFunction(lat, (5, 5)))[0]


def test_borel_smith_closed_under_addition_and_join():
    G = heisenberg(3)
    lat = p_subgroups(G, 3)
    basis = real_representation_basis(G)
    taus = [real_dimension_function(e, lat) for e in basis]
    rng = random.Random(11)
    for _ in range(10):
        a, b = rng.choice(taus), rng.choice(taus)
        assert check_borel_smith(a + b).ok
        assert check_borel_smith(join_dimension_function(a, 3)).ok


def test_join_dimension_function():
    lat = p_subgroups(cyclic(3), 3)
    tau = SuperClassFunction(lat, (2, 1))
    j = join_dimension_function(tau, 3)
    assert j.values == (6, 3) and j.scale == 3
    assert join_dimension_function(tau, 1).values == tau.values
    # rank bookkeeping: r = 1 means value 2; the double join gives value 4,
    # i.e. a rank-3 sphere
    r = 1
    tau2 = SuperClassFunction(lat, (r + 1, r + 1))
    assert join_dimension_function(tau2, 2).values[0] == 4


def test_join_is_multiplicative():
    lat = p_subgroups(elementary_abelian(3, 2), 3)
    tau = SuperClassFunction(lat, tuple(range(1, lat.n_classes + 1))[::-1])
    a = join_dimension_function(tau, 6)
    b = join_dimension_function(join_dimension_function(tau, 2), 3)
    assert a.values == b.values and a.scale == b.scale


def test_codim_one_sum_regular():
    G = elementary_abelian(3, 2)
    lat, tau = regular_tau(G, 3)
    ok, euler, lhs, rhs = check_codim_one_sum(tau, whole_group(G))
    assert ok and lhs == rhs == 8
    assert euler.degree == 8
    assert sorted(euler.factor_degrees.values()) == [2, 2, 2, 2]


def test_codim_one_sum_constant_and_violation():
    G = elementary_abelian(3, 2)
    lat = p_subgroups(G, 3)
    const = SuperClassFunction(lat, (3,) * lat.n_classes)
    ok, euler, lhs, rhs = check_codim_one_sum(const, whole_group(G))
    assert ok and lhs == rhs == 0
    values = [2] * lat.n_classes
    values[lat.class_of(Subgroup(G, (0,)))] = 4
    bad = SuperClassFunction(lat, tuple(values))
    ok, _, lhs, rhs = check_codim_one_sum(bad, whole_group(G))
    assert not ok and lhs == 2 and rhs == 0


def test_realize_regular_of_z3():
    G = cyclic(3)
    lat, tau = regular_tau(G, 3)
    basis = real_representation_basis(G)
    sol = realize_as_representation(tau, basis)
    # one copy of the trivial entry and one of the realified faithful pair
    assert sol is not None and sorted(sol.values()) == [1, 1]
    degrees = sorted(basis[i].real_degree for i in sol)
    assert degrees == [1, 2]


def test_realize_zero_and_two_dimensional():
    G = cyclic(3)
    lat = p_subgroups(G, 3)
    basis = real_representation_basis(G)
    assert realize_as_representation(
        SuperClassFunction(lat, (0, 0)), basis) == {}
    tau = SuperClassFunction(lat, (2, 0))
    sol = realize_as_representation(tau, basis)
    assert sol is not None
    (idx, mult), = sol.items()
    assert mult == 1 and basis[idx].realness == "complex_pair"


def test_realize_refuses_bad_inputs():
    G = cyclic(3)
    lat = p_subgroups(G, 3)
    basis = real_representation_basis(G)
    with pytest.raises(NotMonotone):
        realize_as_representation(SuperClassFunction(lat, (0, 1)), basis)
    with pytest.raises(NotBorelSmith):
        realize_as_representation(SuperClassFunction(lat, (1, 0)), basis)


def test_realization_round_trip_reproduces_tau():
    G = heisenberg(3)
    lat = p_subgroups(G, 3)
    basis = real_representation_basis(G)
    vecs = [e.fixed_dimension_vector(lat) for e in basis]
    rng = random.Random(3)
    for _ in range(5):
        coeffs = [rng.randrange(3) for _ in basis]
        coeffs[0] += 1
        tau = SuperClassFunction(lat, tuple(
            sum(c * v[i] for c, v in zip(coeffs, vecs))
            for i in range(lat.n_classes)))
        sol = realize_as_representation(tau, basis)
        rebuilt = [0] * lat.n_classes
        for idx, mult in sol.items():
            rebuilt = [r + mult * v for r, v in zip(rebuilt, vecs[idx])]
        assert tuple(rebuilt) == tau.values


def test_superclassfunction_json_round_trip():
    G = elementary_abelian(3, 2)
    lat, tau = regular_tau(G, 3)
    blob = tau.to_json()
    tau2 = superclassfunction_from_json(blob)
    assert tau2.values == tau.values and tau2.scale == tau.scale
    blob["values"] = blob["values"][:-1]
    with pytest.raises(DomainMismatch):
        superclassfunction_from_json(blob, lattice=lat)


def test_smallest_join_multiplier():
    lat = p_subgroups(cyclic(3), 3)
    odd = SuperClassFunction(lat, (1, 0))  # fails (ii) until doubled
    assert smallest_join_multiplier(odd) == 2
    even = SuperClassFunction(lat, (2, 0))
    assert smallest_join_multiplier(even) == 1


def test_lefschetz_values():
    ident = [[1]]
    rot = [[0, -1], [1, -1]]
    assert lefschetz_number(ident, rot, ident, 1) == 3  # 2 - (-1)
    assert lefschetz_number(ident, rot, ident, 2) == 1  # 2 + (-1)
    assert lefschetz_number(ident, [[1, 0], [0, 1]], ident, 1) == 0
    with pytest.raises(ShapeMismatch):
        lefschetz_number(ident, ident, ident, 1)


def test_generation_by_order_p():
    ok, wits = generation_by_order_p(construct_qdp(3), 3)
    assert ok and wits
    ok, _ = generation_by_order_p(cyclic(4), 2)
    assert not ok
    ok, _ = generation_by_order_p(cyclic(5), 5)
    assert ok


def test_theorem_b_certificates():
    for p in (3, 5):
        cert = qdp_obstruction_theorem_B(p)
        assert cert.status == "unsat-certificate"
        names = [leg.name for leg in cert.legs]
        assert "fusion-witness" in names and "constraint-unsat" in names
        unsat = next(leg for leg in cert.legs if leg.name == "constraint-unsat")
        assert unsat.details["unsat"] and unsat.details["agrees_with_witness_route"]
        # verify the returned conjugator elementwise
        G = construct_qdp(p)
        g = cert.witness["conjugator"]
        Z = Subgroup(G, tuple(cert.witness["center"]))
        C = Subgroup(G, tuple(cert.witness["conjugate"]))
        assert conjugate_subgroup(G, g, Z) == C
        P = sylow_p_subgroup(G, p)
        assert Z == center(P) and C != Z
        assert set(C.members) <= set(P.members)


def test_theorem_b_rejects_two():
    with pytest.raises(EvenPrime):
        qdp_obstruction_theorem_B(2)
