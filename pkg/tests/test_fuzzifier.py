import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from fuzzdyn import CAP2X, DYADIC_STAIRCASE, IDENTITY, DynMap, FuzzifiedSystem, FuzzySet
from fuzzdyn import check_subset_inclusion, check_top_cut_equality, fuzzify_cutwise
from fuzzdyn import fuzzify_direct, tent_grid
from fuzzdyn.errors import NotNormal, SpaceMismatch
from fuzzdyn.fuzzifier import EngineMismatch
from fuzzdyn.groundspace import line_space

SPACE = line_space([0, F(1, 5), F(2, 5), F(3, 5), F(4, 5), 1])
LEVELS = [F(0), F(1, 4), F(1, 2), F(5, 8), F(3, 4), F(1)]
GS = [(IDENTITY, oracles.identity_g), (CAP2X, oracles.cap2x_g),
      (DYADIC_STAIRCASE, oracles.staircase_g)]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=6, max_size=6),
       st.lists(st.sampled_from(LEVELS), min_size=6, max_size=6),
       st.sampled_from(range(3)))
def test_direct_engine_matches_extension_principle(table, vals, gi):
    g, ref = GS[gi]
    sys = FuzzifiedSystem(DynMap(SPACE, table), g)
    A = FuzzySet.from_membership(SPACE, vals)
    assert list(fuzzify_direct(sys, A).memberships()) == oracles.zadeh(table, ref, vals)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=6, max_size=6),
       st.lists(st.sampled_from(LEVELS), min_size=6, max_size=6),
       st.sampled_from(range(3)), st.integers(1, 8))
def test_engines_agree(table, vals, gi, n):
    g = GS[gi][0]
    sys = FuzzifiedSystem(DynMap(SPACE, table), g)
    A = FuzzySet.from_membership(SPACE, vals)
    direct = A
    for _ in range(n):
        direct = fuzzify_direct(sys, direct)
    assert fuzzify_cutwise(sys, A, n) == direct
    both = FuzzifiedSystem(sys.base, g, "both")
    assert both.iterate(A, n) == direct


def test_engine_mismatch_is_reported():
    class Broken(FuzzifiedSystem):
        pass
    sys = FuzzifiedSystem(DynMap(SPACE, (1, 2, 3, 4, 5, 0)), IDENTITY, "both")
    A = FuzzySet.from_membership(SPACE, [1, 0, 0, 0, 0, 0])
    assert sys.iterate(A, 3).memberships()[3] == 1
    # a g whose lower inverse is wrong makes the engines disagree
    class BadG(type(IDENTITY)):
        def _xi(self, x):
            return x / 2
    bad = FuzzifiedSystem(sys.base, BadG(), "both")
    with pytest.raises(EngineMismatch):
        bad.iterate(FuzzySet.from_membership(SPACE, [F(1, 2), 1, 0, 0, 0, 0]), 1)


def test_space_mismatch():
    sys = FuzzifiedSystem(tent_grid(1).map)
    with pytest.raises(SpaceMismatch):
        fuzzify_direct(sys, FuzzySet.from_membership(tent_grid(1).space, [1, 0, 0]))


def test_top_cut_needs_normal_set():
    sys = FuzzifiedSystem(DynMap(SPACE, tuple(range(6))), IDENTITY)
    with pytest.raises(NotNormal):
        check_top_cut_equality(sys, FuzzySet.from_membership(SPACE, [F(1, 2)] + [0] * 5), 1)


def test_cap2x_top_cut_grows():
    sys = FuzzifiedSystem(DynMap(SPACE, tuple(range(6))), CAP2X)
    A = FuzzySet.from_membership(SPACE, list(SPACE.labels))
    v = check_top_cut_equality(sys, A, 1)
    assert v.status == "proper_superset"
    assert v.pushed == 1 << 5
    assert v.lifted == 0b111000


def test_inclusion_randomized():
    rng = random.Random(3)
    for _ in range(300):
        table = [rng.randrange(6) for _ in range(6)]
        g = rng.choice(GS)[0]
        sys = FuzzifiedSystem(DynMap(SPACE, table), g)
        A = FuzzySet.from_membership(SPACE, [rng.choice(LEVELS) for _ in range(6)])
        for alpha in LEVELS + [F(rng.randrange(1, 100), 100)]:
            assert check_subset_inclusion(sys, A, alpha)
