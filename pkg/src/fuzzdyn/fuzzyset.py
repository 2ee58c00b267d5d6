"""Fuzzy sets on finite spaces as nested level-cut stacks.

A fuzzy set with levels ``a_1 < ... < a_k`` and cuts ``C_1 > ... > C_k``
has membership ``A(x) = max{a_i : x in C_i}`` (0 off ``C_1``); its
alpha-cut is ``C_i`` for ``alpha`` in ``(a_{i-1}, a_i]`` and empty above
``a_k``.  The stack is kept canonical (strictly nested cuts), so two fuzzy
sets are equal exactly when their membership functions are.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import caps
from .errors import AlphaOutOfRange, GridTooLarge, SpaceMismatch
from .groundspace import FiniteMetricSpace, format_rational, to_rational
from .hyperspace import CompactSet, EmptySet, as_set, hausdorff_scaled, mask_of, members_of

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FuzzySet:
    space: FiniteMetricSpace
    levels: tuple[Fraction, ...]
    cuts: tuple[int, ...]

    def __post_init__(self):
        levels = tuple(Fraction(a) for a in self.levels)
        cuts = tuple(int(c) for c in self.cuts)
        if len(levels) != len(cuts):
            raise ValueError("levels and cuts differ in length")
        for i, (a, c) in enumerate(zip(levels, cuts)):
            if not 0 < a <= 1:
                raise ValueError(f"level {a} outside (0, 1]")
            if c == 0:
                raise ValueError("cuts must be nonempty")
            if c >> self.space.n:
                raise ValueError("cut has bits outside the space")
            if i and (a <= levels[i - 1] or c & ~cuts[i - 1]):
                raise ValueError("levels must increase and cuts must be nested")
        # drop the lower of two equal consecutive cuts
        keep = [i for i in range(len(cuts)) if i + 1 == len(cuts) or cuts[i] != cuts[i + 1]]
        if len(keep) != len(cuts):
            levels = tuple(levels[i] for i in keep)
            cuts = tuple(cuts[i] for i in keep)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "cuts", cuts)

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((id(self.space), self.cuts,
                      tuple((a.numerator, a.denominator) for a in self.levels)))
            object.__setattr__(self, "_hash", h)
            return h

    @classmethod
    def _canonical(cls, space, levels: tuple, cuts: tuple) -> "FuzzySet":
        # callers guarantee a canonical stack, so validation is skipped
        obj = object.__new__(cls)
        object.__setattr__(obj, "space", space)
        object.__setattr__(obj, "levels", levels)
        object.__setattr__(obj, "cuts", cuts)
        return obj

    @classmethod
    def empty(cls, space: FiniteMetricSpace) -> "FuzzySet":
        return cls(space, (), ())

    @classmethod
    def from_stack(cls, space, levels: Sequence, cuts: Sequence) -> "FuzzySet":
        """Accepts cuts as masks, point iterables or CompactSets."""
        ms = []
        for c in cuts:
            if isinstance(c, int):
                ms.append(c)
            elif hasattr(c, "mask"):
                ms.append(c.mask)
            else:
                ms.append(mask_of(c))
        return cls(space, tuple(to_rational(a) for a in levels), tuple(ms))

    @classmethod
    def from_membership(cls, space: FiniteMetricSpace, values: Sequence) -> "FuzzySet":
        """Rebuild the canonical stack from a membership vector."""
        if len(values) != space.n:
            raise ValueError("one membership value per point required")
        by_level = {}
        for x, v in enumerate(values):
            if not isinstance(v, Fraction):
                v = to_rational(v)
            if v:
                by_level[v] = by_level.get(v, 0) | 1 << x
        levels = sorted(by_level)
        if levels and (levels[0] < 0 or levels[-1] > 1):
            raise ValueError("membership values must lie in [0, 1]")
        cuts = []
        acc = 0
        for a in reversed(levels):
            acc |= by_level[a]
            cuts.append(acc)
        cuts.reverse()
        return cls._canonical(space, tuple(levels), tuple(cuts))

    def membership(self, x: int) -> Fraction:
        out = ZERO
        bit = 1 << x
        for a, c in zip(self.levels, self.cuts):
            if c & bit:
                out = a
            else:
                break
        return out

    def memberships(self) -> tuple[Fraction, ...]:
        vals = [ZERO] * self.space.n
        for a, c in zip(self.levels, self.cuts):
            for x in members_of(c):
                vals[x] = a
        return tuple(vals)

    def __call__(self, x: int) -> Fraction:
        return self.membership(x)

    @property
    def height(self) -> Fraction:
        return self.levels[-1] if self.levels else ZERO

    def is_normal(self) -> bool:
        """Membership of the normal class (attains 1)."""
        return bool(self.levels) and self.levels[-1] == 1

    def is_empty(self) -> bool:
        return not self.levels

    def cut_mask(self, alpha: Fraction) -> int:
        for a, c in zip(self.levels, self.cuts):
            if alpha <= a:
                return c
        return 0

    def to_json(self) -> dict:
        return {"levels": [format_rational(a) for a in self.levels],
                "cuts": [list(members_of(c)) for c in self.cuts]}

    @classmethod
    def from_json(cls, space, obj) -> "FuzzySet":
        return cls.from_stack(space, obj["levels"], obj["cuts"])

    def __repr__(self):
        body = ", ".join(f"{format_rational(a)}:{list(members_of(c))}"
                         for a, c in zip(self.levels, self.cuts))
        return f"FuzzySet({body})"


def _alpha(alpha) -> Fraction:
    a = alpha if isinstance(alpha, Fraction) else to_rational(alpha)
    if not 0 < a <= 1:
        raise AlphaOutOfRange(f"alpha = {a} is outside (0, 1]")
    return a


def cut(A: FuzzySet, alpha):
    """The alpha-cut ``{x : A(x) >= alpha}``; :class:`EmptySet` above the top level."""
    return as_set(A.space, A.cut_mask(_alpha(alpha)))


def support(A: FuzzySet):
    return as_set(A.space, A.cuts[0] if A.cuts else 0)


def g_cut(A: FuzzySet, g, alpha):
    """``{x in supp A : g(A(x)) >= alpha}``, computed as the ordinary cut at
    ``xi_g(alpha)``."""
    a = _alpha(alpha)
    return as_set(A.space, A.cut_mask(g.xi(a)) & (A.cuts[0] if A.cuts else 0))


def characteristic(A) -> FuzzySet:
    """Indicator of a nonempty set, as a one-level stack at level 1."""
    if isinstance(A, EmptySet) or A.mask == 0:
        raise ValueError("characteristic function of the empty set is not in F^1")
    return FuzzySet(A.space, (ONE,), (A.mask,))


def _breakpoints(A: FuzzySet, B: FuzzySet) -> list[Fraction]:
    pts = set(A.levels) | set(B.levels)
    pts.add(ONE)
    return sorted(pts)


def levelwise_distance_scaled(A: FuzzySet, B: FuzzySet) -> int:
    """Levelwise distance in the integer units of ``A.space.idist``.

    Cuts of both sets are constant on each half-open interval between
    consecutive merged levels, so one sample per interval (its right
    endpoint) gives the exact supremum.
    """
    if A.space is not B.space:
        raise SpaceMismatch("fuzzy sets live in different spaces")
    if A.levels == B.levels and A.cuts == B.cuts:
        return 0
    space = A.space
    la, ca, lb, cb = A.levels, A.cuts, B.levels, B.cuts
    na, nb = len(la), len(lb)
    i = j = 0
    out = 0
    # walk the merged levels upward; above both tops the cuts are empty
    while i < na or j < nb:
        if j >= nb:
            step_a, step_b = True, False
        elif i >= na:
            step_a, step_b = False, True
        else:
            a, b = la[i], lb[j]
            step_a, step_b = a <= b, b <= a
        d = hausdorff_scaled(space, ca[i] if i < na else 0, cb[j] if j < nb else 0)
        if d > out:
            out = d
        if step_a:
            i += 1
        if step_b:
            j += 1
    return out


def levelwise_distance(A: FuzzySet, B: FuzzySet) -> Fraction:
    """``sup_alpha d_H([A]_alpha, [B]_alpha)`` over ``alpha in (0, 1]``."""
    return Fraction(levelwise_distance_scaled(A, B), A.space.scale)


@dataclass(frozen=True)
class LevelLattice:
    """Finite set of membership levels in (0, 1] containing 1."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(sorted({to_rational(v) for v in self.values}))
        if not vals:
            raise ValueError("lattice must be nonempty")
        if vals[0] <= 0 or vals[-1] > 1:
            raise ValueError("lattice levels must lie in (0, 1]")
        if vals[-1] != 1:
            raise ValueError("lattice must contain 1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, *values) -> "LevelLattice":
        return cls(tuple(values))

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __contains__(self, v):
        return v in self.values

    def to_json(self):
        return [format_rational(v) for v in self.values]


def grid_size(space: FiniteMetricSpace, lattice: LevelLattice) -> int:
    return (len(lattice) + 1) ** space.n


def enumerate_fuzzy_grid(space: FiniteMetricSpace, lattice: LevelLattice,
                         require_normal: bool = False, cap=None) -> Iterator[FuzzySet]:
    """Every fuzzy set with memberships in ``lattice`` or 0, each once.

    With ``require_normal`` only sets attaining 1 are produced; otherwise the
    empty fuzzy set is included.
    """
    size = grid_size(space, lattice)
    if not caps.grid_allowed(size, cap):
        raise GridTooLarge(f"grid of {size} fuzzy sets exceeds the cap")
    values = (ZERO,) + tuple(lattice.values)
    for vec in itertools.product(values, repeat=space.n):
        if require_normal and ONE not in vec:
            continue
        yield FuzzySet.from_membership(space, vec)


def random_fuzzy_set(space: FiniteMetricSpace, lattice: LevelLattice, rng,
                     normal: bool = True) -> FuzzySet:
    """Draw memberships uniformly from ``lattice`` or 0; with ``normal`` a
    random point is raised to 1."""
    values = (ZERO,) + tuple(lattice.values)
    vec = [values[rng.randrange(len(values))] for _ in space.points]
    if normal and ONE not in vec:
        vec[rng.randrange(space.n)] = ONE
    return FuzzySet.from_membership(space, vec)


def pointwise_le(A: FuzzySet, B: FuzzySet) -> bool:
    return all(a <= b for a, b in zip(A.memberships(), B.memberships()))


__all__ = [
    "FuzzySet", "LevelLattice", "cut", "support", "g_cut", "characteristic",
    "levelwise_distance", "levelwise_distance_scaled", "enumerate_fuzzy_grid",
    "grid_size", "random_fuzzy_set", "pointwise_le", "CompactSet",
]
