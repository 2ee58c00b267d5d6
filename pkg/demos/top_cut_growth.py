"""How the top cut of a fuzzified orbit can outgrow the pushed-forward top cut.

With g = min(2t, 1) every membership of at least 1/2 is promoted to 1, so
even the identity map enlarges the top cut.  A g that sends only 1 to 1
keeps the two in step.
"""

from fractions import Fraction as F

from fuzzdyn import DYADIC_STAIRCASE, FuzzifiedSystem, FuzzySet
from fuzzdyn.gfunction import cap2x
from fuzzdyn.fuzzifier import check_top_cut_equality, fuzzify_cutwise, iterate_direct
from fuzzdyn.groundspace import format_rational
from fuzzdyn.suites import example31_instance

space, f, A = example31_instance()
print(f"ground space: {space.n} dyadic points of [0, 1]; f = identity; A(x) = x")

for g in (cap2x(), DYADIC_STAIRCASE):
    sys_g = FuzzifiedSystem(f, g)
    verdict = check_top_cut_equality(sys_g, A, 1)
    top = [format_rational(space.label(x)) for x in range(space.n) if verdict.lifted >> x & 1]
    print(f"\ng = {g}")
    print(f"  top cut of the image: {', '.join(top)}")
    print(f"  verdict: {verdict.status}")

# the cut-by-cut construction agrees with direct iteration
sys_g = FuzzifiedSystem(f, cap2x())
for n in (1, 2, 5):
    assert iterate_direct(sys_g, A, n) == fuzzify_cutwise(sys_g, A, n)
print("\ncut-by-cut and direct iterates agree for n = 1, 2, 5")

B = FuzzySet.from_membership(space, [F(1) if x == 4 else F(0) for x in range(space.n)])
print(f"a crisp singleton stays crisp: {iterate_direct(sys_g, B, 3) == B}")
