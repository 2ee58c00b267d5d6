import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from fuzzdyn import CompactSet, FuzzySet, LevelLattice, characteristic, cut, g_cut, support
from fuzzdyn import DYADIC_STAIRCASE, enumerate_fuzzy_grid, hausdorff, levelwise_distance
from fuzzdyn import rotation, tent_grid
from fuzzdyn.errors import AlphaOutOfRange
from fuzzdyn.fuzzyset import grid_size, random_fuzzy_set

LEVELS = [F(0), F(1, 4), F(1, 3), F(1, 2), F(3, 4), F(1)]
SPACE = tent_grid(2).space
vectors = st.lists(st.sampled_from(LEVELS), min_size=5, max_size=5)


@settings(max_examples=300, deadline=None)
@given(vectors)
def test_membership_round_trip(vals):
    A = FuzzySet.from_membership(SPACE, vals)
    assert list(A.memberships()) == vals
    for a in LEVELS[1:]:
        assert set(cut(A, a).members) == oracles.cut(vals, a)


@settings(max_examples=300, deadline=None)
@given(vectors, vectors)
def test_levelwise_distance_matches_definition(a, b):
    A = FuzzySet.from_membership(SPACE, a)
    B = FuzzySet.from_membership(SPACE, b)
    assert levelwise_distance(A, B) == oracles.levelwise(SPACE.dist, a, b)


def test_canonical_stack_drops_repeated_cuts():
    A = FuzzySet(SPACE, (F(1, 4), F(1, 2), F(1)), (0b11, 0b11, 0b1))
    assert A.levels == (F(1, 2), F(1))
    assert A == FuzzySet.from_membership(SPACE, [1, F(1, 2), 0, 0, 0])


def test_stack_validation():
    with pytest.raises(ValueError):
        FuzzySet(SPACE, (F(1, 2), F(1)), (0b1, 0b11))
    with pytest.raises(ValueError):
        FuzzySet(SPACE, (F(1),), (0,))
    with pytest.raises(ValueError):
        FuzzySet.from_membership(SPACE, [2, 0, 0, 0, 0])


def test_cuts_outside_range():
    A = FuzzySet.from_membership(SPACE, [1, 0, 0, 0, 0])
    with pytest.raises(AlphaOutOfRange):
        cut(A, 0)
    with pytest.raises(AlphaOutOfRange):
        cut(A, F(3, 2))
    B = FuzzySet.from_membership(SPACE, [F(1, 2), 0, 0, 0, 0])
    assert not cut(B, 1).members
    assert support(B).members == (0,)


def test_g_cut_is_cut_at_lower_inverse():
    A = FuzzySet.from_membership(SPACE, [1, F(5, 8), F(1, 4), F(1, 2), 0])
    g = DYADIC_STAIRCASE
    for alpha in (F(1, 8), F(1, 4), F(1, 2), F(3, 4), 1):
        expect = {x for x, v in enumerate(A.memberships()) if v > 0 and g(v) >= alpha}
        assert set(g_cut(A, g, alpha).members) == expect


def test_characteristic_is_isometric_on_rotation():
    sp = rotation(1, 6).space
    masks = range(1, 64)
    for a in masks:
        for b in masks:
            A, B = CompactSet(sp, a), CompactSet(sp, b)
            assert levelwise_distance(characteristic(A), characteristic(B)) == hausdorff(A, B)


def test_empty_cut_against_nonempty_uses_diameter():
    A = FuzzySet.from_membership(SPACE, [1, 0, 0, 0, 0])
    B = FuzzySet.from_membership(SPACE, [F(1, 2), 0, 0, 0, 0])
    assert levelwise_distance(A, B) == SPACE.diameter


def test_grid_enumeration_and_sampling():
    lat = LevelLattice.of(F(1, 2), 1)
    sp = tent_grid(1).space
    sets = list(enumerate_fuzzy_grid(sp, lat))
    assert len(sets) == grid_size(sp, lat) == 27
    assert len(set(sets)) == 27
    normal = list(enumerate_fuzzy_grid(sp, lat, True))
    assert len(normal) == 27 - 8
    rng = random.Random(1)
    assert all(random_fuzzy_set(sp, lat, rng).is_normal() for _ in range(50))


def test_lattice_validation():
    with pytest.raises(ValueError):
        LevelLattice.of(F(1, 2))
    with pytest.raises(ValueError):
        LevelLattice.of(0, 1)
    assert LevelLattice.of(1, "1/2", F(1, 2)).values == (F(1, 2), 1)
