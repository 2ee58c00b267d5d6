"""The g-fuzzification of a finite dynamical system.

Two engines compute ``f~_g``:

* ``direct`` evaluates ``(f~_g A)(x) = max {g(A(y)) : f(y) = x}`` point by
  point (an empty preimage gives 0);
* ``cutwise`` builds the n-th iterate's stack in one shot from
  ``[(f~_g)^n A]_alpha = f^n([A]_{xi^n(alpha)})``.

They share no code beyond evaluating ``g``, so agreement between them is a
meaningful check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .errors import NotNormal, SpaceMismatch
from .fuzzyset import FuzzySet, cut, support
from .gfunction import IDENTITY, MonotoneUnitFunction
from .groundspace import DynMap
from .hyperspace import members_of

ZERO = Fraction(0)
ONE = Fraction(1)

Engine = Literal["direct", "cutwise", "both"]


class EngineMismatch(AssertionError):
    pass


@dataclass(frozen=True, eq=False)
class FuzzifiedSystem:
    base: DynMap
    g: MonotoneUnitFunction = IDENTITY
    engine: Engine = "direct"

    @property
    def space(self):
        return self.base.space

    def apply(self, A: FuzzySet) -> FuzzySet:
        return self.iterate(A, 1)

    def iterate(self, A: FuzzySet, n: int) -> FuzzySet:
        if self.engine == "direct":
            return iterate_direct(self, A, n)
        if self.engine == "cutwise":
            return A if n == 0 else fuzzify_cutwise(self, A, n)
        a = iterate_direct(self, A, n)
        b = A if n == 0 else fuzzify_cutwise(self, A, n)
        if a != b:
            raise EngineMismatch(f"engines disagree on {A!r} at n={n}: {a!r} vs {b!r}")
        return a

    def orbit(self, A: FuzzySet, horizon: int) -> list[FuzzySet]:
        out = [A]
        for _ in range(horizon):
            out.append(fuzzify_direct(self, out[-1]))
        return out


def _check(sys: FuzzifiedSystem, A: FuzzySet):
    if A.space is not sys.base.space:
        raise SpaceMismatch("fuzzy set and map live in different spaces")


def fuzzify_direct(sys: FuzzifiedSystem, A: FuzzySet) -> FuzzySet:
    """One application of ``f~_g`` by pointwise maxima over preimages."""
    _check(sys, A)
    g = sys.g
    table = sys.base.table
    out = [ZERO] * len(table)
    for y, a in enumerate(A.memberships()):
        if a:
            v = g(a)
            x = table[y]
            if v > out[x]:
                out[x] = v
    return FuzzySet.from_membership(A.space, out)


def iterate_direct(sys: FuzzifiedSystem, A: FuzzySet, n: int) -> FuzzySet:
    for _ in range(n):
        A = fuzzify_direct(sys, A)
    return A


def _power(step, memo: dict, a: Fraction, n: int) -> Fraction:
    key = (a.numerator, a.denominator, n)
    try:
        return memo[key]
    except KeyError:
        pass
    v = a
    for _ in range(n):
        v = step(v)
    memo[key] = v
    return v


def _g_power(g, a: Fraction, n: int) -> Fraction:
    return _power(g, g.__dict__.setdefault("_gpow", {}), a, n)


def _xi_power(g, a: Fraction, n: int) -> Fraction:
    return _power(g.xi, g.__dict__.setdefault("_xipow", {}), a, n)


def fuzzify_cutwise(sys: FuzzifiedSystem, A: FuzzySet, n: int) -> FuzzySet:
    """The n-th iterate built from cuts of ``A``.

    The cut of the iterate at ``alpha`` is ``f^n`` of ``A``'s cut at
    ``xi^n(alpha)``.  By the adjunction ``xi^n(alpha) <= a  <=>  alpha <=
    g^n(a)`` that selection only changes at the levels ``g^n(a_i)``, so
    those are the candidate levels; each cut is then read off at
    ``xi^n(level)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _check(sys, A)
    g = sys.g
    f = sys.base
    candidates = sorted({b for b in (_g_power(g, a, n) for a in A.levels) if b > 0})
    ptab = f.power_table(n)
    levels, cuts = [], []
    for beta in candidates:
        src = A.cut_mask(_xi_power(g, beta, n))
        img = 0
        for x in members_of(src):
            img |= 1 << ptab[x]
        if cuts and cuts[-1] == img:
            levels[-1] = beta
        else:
            levels.append(beta)
            cuts.append(img)
    return FuzzySet._canonical(A.space, tuple(levels), tuple(cuts))


def check_subset_inclusion(sys: FuzzifiedSystem, A: FuzzySet, alpha) -> bool:
    """Whether ``f([A]_alpha)`` lies inside ``[f~_g A]_{g(alpha)}``.

    ``alpha = 0`` uses ``supp A`` on the left; a right-hand level of 0 makes
    the right side the whole space.
    """
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    _check(sys, A)
    left = support(A) if alpha == 0 else cut(A, alpha)
    image = sys.base.image_mask(left.mask)
    ga = sys.g(alpha)
    B = fuzzify_direct(sys, A)
    right = A.space.full_mask if ga == 0 else B.cut_mask(ga)
    return image & ~right == 0


@dataclass(frozen=True)
class TopCutVerdict:
    status: Literal["equal", "proper_superset"]
    witness: int | None = None
    lifted: int = 0
    pushed: int = 0


def check_top_cut_equality(sys: FuzzifiedSystem, A: FuzzySet, n: int) -> TopCutVerdict:
    """Compare ``[(f~_g)^n A]_1`` with ``f^n([A]_1)``.

    The first always contains the second; equality is guaranteed when only
    ``t = 1`` is sent to 1 by ``g``.  A proper superset is reported with a
    point of the difference.
    """
    if not A.is_normal():
        raise NotNormal("top-cut comparison needs a normal fuzzy set")
    _check(sys, A)
    lifted = iterate_direct(sys, A, n).cut_mask(ONE)
    ptab = sys.base.power_table(n)
    pushed = 0
    for x in members_of(A.cut_mask(ONE)):
        pushed |= 1 << ptab[x]
    if lifted == pushed:
        return TopCutVerdict("equal", None, lifted, pushed)
    extra = lifted & ~pushed
    if pushed & ~lifted:
        raise AssertionError("iterate's top cut misses part of the pushed-forward cut")
    return TopCutVerdict("proper_superset", members_of(extra)[0], lifted, pushed)
