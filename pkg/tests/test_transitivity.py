import itertools
import random
from fractions import Fraction as F

import pytest

import oracles
from fuzzdyn import (DYADIC_STAIRCASE, IDENTITY, DynMap, FuzzifiedSystem, FuzzySet,
                     LevelLattice, Step, audit_weak_mixing_transfer, build_separation,
                     certify_transitive, certify_weak_mixing, explicit, identity_system,
                     levelwise_distance, return_set, rotation, tent_grid, verify_separation)
from fuzzdyn.errors import NotApplicable, PreconditionViolated
from fuzzdyn.transitivity import (FuzzyBall, HyperBall, VietorisSet, interval_basis,
                                  min_block_length, singleton_basis, u_grid_members,
                                  vietoris_basis)
from fuzzdyn.sensitivity import TimeWindowSet


def test_base_return_set_matches_orbits():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randrange(2, 7)
        table = [rng.randrange(n) for _ in range(n)]
        s = explicit([[abs(i - j) for j in range(n)] for i in range(n)], table)
        x = rng.randrange(n)
        V = {rng.randrange(n) for _ in range(2)}
        rs = return_set("base", s, [x], V, 15)
        assert rs.times.sorted() == [m for m in range(16) if oracles.power(table, m)[x] in V]


def test_rotation_return_set():
    assert return_set("base", rotation(1, 4), [0], [2], 10).times.sorted() == [2, 6, 10]


def test_vietoris_return_set_by_brute_force():
    s = tent_grid(2)
    U = VietorisSet.of([[0, 1], [3]])
    V = VietorisSet.of([[0], [2, 4]])

    def inside(W, m):
        return m & ~W.union == 0 and all(m & o for o in W.opens)

    expect = set()
    for m in range(1, 32):
        if inside(U, m):
            img = m
            for n in range(9):
                if inside(V, img):
                    expect.add(n)
                img = s.map.image_mask(img)
    assert set(return_set("hyper", s, U, V, 8).times.members) == expect


def test_min_block_length():
    assert min_block_length(TimeWindowSet(10, {0, 5, 10})) == 5
    assert min_block_length(TimeWindowSet(3, {0, 1, 2, 3})) == 1
    assert min_block_length(TimeWindowSet(3)) is None


def test_rotation_is_transitive_but_not_weakly_mixing():
    s = rotation(1, 5)
    basis = singleton_basis(s.space)
    t = certify_transitive("base", s, basis, 20)
    assert t.holds and t.min_block == 5
    wm = certify_weak_mixing("base", s, basis, 20)
    assert not wm.holds
    first, second = wm.witness["first"]["times"], wm.witness["second"]["times"]
    assert not set(first) & set(second)


def test_tent_grid_weakly_mixing_on_width_quarter_basis():
    s = tent_grid(4)
    basis = interval_basis(s.space, F(1, 4))
    assert len(basis) == 4
    assert certify_weak_mixing("base", s, basis, 30).holds
    assert certify_weak_mixing("hyper", s, vietoris_basis(basis), 30).holds


def test_identity_not_transitive_and_one_point_trivial():
    s = identity_system(3)
    assert not certify_transitive("base", s, singleton_basis(s.space), 10).holds
    one = identity_system(1)
    assert certify_weak_mixing("base", one, singleton_basis(one.space), 5).holds


def test_fuzzy_return_set_on_rotation():
    s = rotation(1, 3)
    lat = LevelLattice.of(1)
    A = FuzzySet.from_membership(s.space, [1, 0, 0])
    B = FuzzySet.from_membership(s.space, [0, 1, 0])
    rs = return_set("fuzzy", s, FuzzyBall(A, F(1, 3)), FuzzyBall(B, F(1, 3)), 7, IDENTITY, lat)
    assert rs.times.sorted() == [1, 4, 7]


# ---------------------------------------------------------------- separation construction

def test_two_point_construction_values():
    sp = identity_system(2).space
    con = build_separation(sp, DYADIC_STAIRCASE, F(1, 4), 1, 0, 1)
    assert con.E1.members == (0,) and con.E2.members == (1,)
    assert con.eta == 1
    assert con.U_desc.radius == con.V_desc.radius == F(1, 4)
    assert con.case == 1
    assert levelwise_distance(con.E, con.G) >= con.eta
    for table in itertools.product(range(2), repeat=2):
        sys = FuzzifiedSystem(DynMap(sp, table), DYADIC_STAIRCASE)
        assert verify_separation(con, sys, 25).separated


def test_tent_grid_3_construction():
    s = tent_grid(3)
    con = build_separation(s, DYADIC_STAIRCASE, F(1, 4), 1, 0, 8)
    assert con.E1.members == (0, 1) and con.E2.members == (7, 8)
    assert con.eta == F(3, 4)
    v = verify_separation(con, FuzzifiedSystem(s.map, DYADIC_STAIRCASE), 15)
    assert v.separated and v.checked_members > 0


def test_u_grid_members_match_brute_force():
    s = tent_grid(2)
    con = build_separation(s, DYADIC_STAIRCASE, F(1, 4), 1, 0, 4)
    values = [F(0)] + list(con.lattice.values)
    brute = set()
    for vec in itertools.product(values, repeat=s.space.n):
        A = FuzzySet.from_membership(s.space, vec)
        if not A.is_empty() and levelwise_distance(con.E, A) < con.U_desc.radius:
            brute.add(A)
    assert set(u_grid_members(con)) == brute


def test_case_two_construction():
    g = Step([0, F(1, 4), F(1, 2), 1], [0, F(1, 2), F(1, 2)])
    sp = identity_system(3).space
    con = build_separation(sp, g, F(1, 2), 1, 0, 2)
    assert con.case == 2 and con.secondary_level == F(1, 4)
    for table in itertools.product(range(3), repeat=3):
        assert verify_separation(con, FuzzifiedSystem(DynMap(sp, table), g), 20).separated


def test_construction_preconditions():
    sp = identity_system(2).space
    with pytest.raises(NotApplicable):
        build_separation(sp, DYADIC_STAIRCASE, F(1, 4), 1, 0, 0)
    with pytest.raises(NotApplicable):
        build_separation(sp, IDENTITY, F(1, 4), 1, 0, 1)
    with pytest.raises(PreconditionViolated):
        build_separation(sp, DYADIC_STAIRCASE, F(1, 4), 1, 0, 1, LevelLattice.of(F(1, 4), 1))


def test_verifier_detects_violations():
    # with identity g the levels never merge, so the swap map carries E onto G
    sp = identity_system(2).space
    con = build_separation(sp, DYADIC_STAIRCASE, F(1, 4), 1, 0, 1)
    v = verify_separation(con, FuzzifiedSystem(DynMap(sp, (1, 0)), IDENTITY), 20)
    assert v.status == "violation" and v.witness["time"] > 1


# ---------------------------------------------------------------- transfer audit

def test_transfer_audit_blocking_pair_on_rotation():
    s = rotation(1, 5)
    r = s.space.min_distance()
    basis = [HyperBall(m, r) for m in range(1, 32)]
    a = audit_weak_mixing_transfer(s, IDENTITY, basis, 20)
    assert a.status == "blocking_pair"
    assert a.fuzzy_pair["fuzzy_times"] == []
    assert a.hyper.witness["tuple"]


def test_transfer_audit_vacuous_on_tent_grid():
    s = tent_grid(4)
    basis = vietoris_basis(interval_basis(s.space, F(1, 4)))
    assert audit_weak_mixing_transfer(s, IDENTITY, basis, 30).status == "vacuous"


def test_transfer_audit_identity_map():
    s = identity_system(3)
    basis = [HyperBall(1 << x, F(1, 2)) for x in range(3)]
    assert audit_weak_mixing_transfer(s, DYADIC_STAIRCASE, basis, 10,
                                      LevelLattice.of(F(1, 4), F(1, 2), 1)).status == "blocking_pair"
