"""Why a staircase g blocks transitivity of every fuzzification.

For the dyadic staircase, xi(1/4) = 1/2 and 1/2 is fixed.  Two fuzzy sets
built from small balls around distinct points, one carrying level 1/4 and
the other level 1, then stay a fixed distance apart under every map.  The
script checks that for every self-map of a three-point space.
"""

import itertools
from fractions import Fraction as F

from fuzzdyn import DYADIC_STAIRCASE, DynMap, FuzzifiedSystem, find_fixation_level, identity_system
from fuzzdyn.transitivity import build_separation, verify_separation

g = DYADIC_STAIRCASE
wit = find_fixation_level(g, [F(1, 4), F(1, 2), F(1)], 10)
print(f"fixation level z = {wit.z}, reached after m = {wit.m} step(s)")

space = identity_system(3).space
con = build_separation(space, g, wit.z, wit.m, 0, 2, horizon=20)
print(f"E = {con.E.to_json()}\nG = {con.G.to_json()}\nball radius = {con.eta / 4}")

tables = list(itertools.product(range(3), repeat=3))
bad = [t for t in tables
       if not verify_separation(con, FuzzifiedSystem(DynMap(space, t), g), 20).separated]
print(f"{len(tables)} maps checked, {len(bad)} let the U ball reach the V ball")
