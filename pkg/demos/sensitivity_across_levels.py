"""Sensitivity checked on the points, on closed subsets and on fuzzy sets.

The tent map on a dyadic grid stretches every neighbourhood, so all three
levels certify.  A rotation is an isometry, so nothing separates and all
three levels refute.  On a finite grid every tent orbit ends at 0, so the
cofinite and syndetic families refute even for the tent map.  The audit also looks for verdict combinations that
the lifting constructions rule out.
"""

from fractions import Fraction as F

from fuzzdyn import DYADIC_STAIRCASE, IDENTITY, LevelLattice, cross_level_audit, rotation, tent_grid

lattice = LevelLattice.of(F(1, 4), F(1, 2), 1)
cases = [
    ("tent map, 33 points", tent_grid(5), DYADIC_STAIRCASE, F(1, 2), F(1, 16)),
    ("tent map, 33 points", tent_grid(5), IDENTITY, F(1, 2), F(1, 16)),
    ("rotation by 1/8", rotation(1, 8), IDENTITY, F(1, 4), F(1, 16)),
]
for label, system, g, eps, delta in cases:
    rep = cross_level_audit(system, g, eps, delta, 15, lattice)
    print(f"{label}, g = {g}")
    for level, row in rep.to_json()["table"].items():
        print(f"  {level:6s} " + "  ".join(f"{col}={status}" for col, status in row.items()))
    print(f"  forbidden patterns: {len(rep.forbidden)}\n")
