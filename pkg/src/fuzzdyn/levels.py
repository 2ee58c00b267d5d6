"""The three dynamical levels seen through one interface.

``BaseLevel`` acts on points, ``HyperLevel`` on nonempty subsets (bit
masks) under the induced map, and ``FuzzyLevel`` on normal fuzzy sets
under a g-fuzzification.  Each level exposes exact scaled-integer
distances, one-step dynamics, enumeration of its states (when small
enough) and a source of ball members around a center.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Iterator

from . import caps
from .errors import BallNotEnumerable, GridTooLarge, LatticeIncomplete, ProbeSpaceTooLarge
from .fuzzifier import FuzzifiedSystem, fuzzify_direct
from .fuzzyset import (FuzzySet, LevelLattice, enumerate_fuzzy_grid, grid_size,
                       levelwise_distance_scaled, random_fuzzy_set)
from .gfunction import IDENTITY, MonotoneUnitFunction
from .groundspace import DynMap, NamedSystem
from .hyperspace import hausdorff_scaled, members_of

ONE = Fraction(1)

# candidate vectors an exact fuzzy ball may expand to before the level
# switches to generated members
BALL_BUDGET = 1 << 13


def _unpack(system):
    if isinstance(system, NamedSystem):
        return system.map
    if isinstance(system, DynMap):
        return system
    raise TypeError("expected a NamedSystem or DynMap")


class BaseLevel:
    name = "base"

    def __init__(self, system):
        self.f = _unpack(system)
        self.space = self.f.space

    def distance_scaled(self, a, b) -> int:
        return self.space.rows[a][b]

    def step(self, a):
        return self.f.table[a]

    def orbit(self, a, horizon: int) -> list:
        out = [a]
        t = self.f.table
        for _ in range(horizon):
            out.append(t[out[-1]])
        return out

    def is_enumerable(self) -> bool:
        return True

    def states(self) -> list:
        return list(self.space.points)

    def ball(self, center, radius) -> list:
        r = self.space.strict_bound(radius)
        row = self.space.rows[center]
        return [y for y in self.space.points if row[y] < r]

    def encode(self, a):
        return a

    def decode(self, obj):
        return int(obj)


class HyperLevel:
    """Nonempty subsets as bit masks, mapped by ``A -> f(A)``."""

    name = "hyper"

    def __init__(self, system, cap=None):
        self.f = _unpack(system)
        self.space = self.f.space
        self.cap = cap
        self._img = {}

    def distance_scaled(self, a: int, b: int) -> int:
        return hausdorff_scaled(self.space, a, b)

    def step(self, a: int) -> int:
        try:
            return self._img[a]
        except KeyError:
            v = self._img[a] = self.f.image_mask(a)
            return v

    def orbit(self, a: int, horizon: int) -> list:
        out = [a]
        for _ in range(horizon):
            out.append(self.step(out[-1]))
        return out

    def is_enumerable(self) -> bool:
        return caps.hyperspace_allowed(self.space.n, self.cap)

    def states(self) -> list:
        if not self.is_enumerable():
            raise ProbeSpaceTooLarge(f"K(X) of {self.space.n} points is too large to enumerate")
        return list(range(1, 1 << self.space.n))

    def ball(self, center: int, radius) -> list:
        if not self.is_enumerable():
            raise BallNotEnumerable("hyperspace ball cannot be enumerated")
        r = self.space.strict_bound(radius)
        return [m for m in range(1, 1 << self.space.n) if hausdorff_scaled(self.space, center, m) < r]

    def perturbations(self, center: int, radius, horizon: int) -> Iterator[int]:
        """Members of the open d_H-ball around ``center`` built by local moves.

        Moves, in order: add one nearby point, drop one point, swap one
        point for a neighbor, and for each time n and target point v
        replace every point by the neighbor whose n-th image is closest to
        v.  Each candidate is checked to lie in the ball.
        """
        space = self.space
        rows = space.rows
        r = space.strict_bound(radius)
        n_pts = space.n
        nbrs = [[y for y in range(n_pts) if rows[x][y] < r] for x in range(n_pts)]
        pts = members_of(center)
        seen = {center}

        def fresh(m):
            if m in seen or m == 0:
                return False
            seen.add(m)
            return hausdorff_scaled(space, center, m) < r

        for y in range(n_pts):
            if not center >> y & 1 and any(rows[x][y] < r for x in pts):
                m = center | 1 << y
                if fresh(m):
                    yield m
        for x in pts:
            m = center & ~(1 << x)
            if m and fresh(m):
                yield m
        for x in pts:
            for y in nbrs[x]:
                m = (center & ~(1 << x)) | 1 << y
                if fresh(m):
                    yield m
        for n in range(1, horizon + 1):
            ptab = self.f.power_table(n)
            for v in range(n_pts):
                vrow = rows[v]
                m = 0
                for x in pts:
                    best = min(nbrs[x], key=lambda y: (vrow[ptab[y]], y))
                    m |= 1 << best
                if fresh(m):
                    yield m

    def candidates(self, center: int, radius, horizon: int) -> tuple[Iterable, bool]:
        """Ball members and whether they are the whole ball."""
        if self.is_enumerable():
            return self.ball(center, radius), True
        return self.perturbations(center, radius, horizon), False

    def random_states(self, count: int, rng: random.Random) -> list:
        full = self.space.full_mask
        out = []
        while len(out) < count:
            m = rng.getrandbits(self.space.n) & full
            if m:
                out.append(m)
        return out

    def structured_states(self) -> list:
        """Singletons, the whole space, and halves/quarters by index."""
        n = self.space.n
        out = [1 << x for x in range(n)] + [self.space.full_mask]
        for parts in (2, 4):
            size = max(1, n // parts)
            for s in range(0, n, size):
                m = 0
                for x in range(s, min(n, s + size + 1)):
                    m |= 1 << x
                out.append(m)
        return sorted(set(out))

    def encode(self, a: int):
        return list(members_of(a))

    def decode(self, obj) -> int:
        m = 0
        for x in obj:
            m |= 1 << int(x)
        return m


def pruned_values(center: FuzzySet, radius, lattice: LevelLattice) -> list[list[Fraction]]:
    """Per point, the lattice values (and 0) a member of the open
    d_inf-ball around ``center`` can take there.

    A point may carry value v only if it lies within the radius of the
    center's beta-cut for every lattice level beta <= v; otherwise the
    member's beta-cut has a point too far from the center's.
    """
    space = center.space
    r = space.strict_bound(radius)
    rows = space.rows
    near = {}
    for beta in lattice.values:
        cm = members_of(center.cut_mask(beta))
        near[beta] = [bool(cm) and min(rows[x][y] for y in cm) < r for x in space.points]
    out = []
    for x in space.points:
        opts = [Fraction(0)]
        for v in lattice.values:
            if not near[v][x]:
                break
            opts.append(v)
        out.append(opts)
    return out


def grid_ball(center: FuzzySet, radius, lattice: LevelLattice, normal: bool = True,
              cap=None) -> list[FuzzySet]:
    """Every lattice-valued member of the open d_inf-ball around ``center``
    (normal members only unless ``normal`` is false)."""
    space = center.space
    opts = pruned_values(center, radius, lattice)
    size = 1
    for o in opts:
        size *= len(o)
    if not caps.grid_allowed(size, cap):
        raise GridTooLarge(f"{size} candidate grid members around the center exceed the cap")
    r = space.strict_bound(radius)
    out = []
    for vec in itertools.product(*opts):
        if normal and ONE not in vec:
            continue
        F = FuzzySet.from_membership(space, vec)
        if not F.is_empty() and levelwise_distance_scaled(center, F) < r:
            out.append(F)
    return out


def required_levels(g: MonotoneUnitFunction, lattice: LevelLattice, horizon: int) -> set:
    """Levels ``xi^j(l)`` for lattice levels l and 1 <= j <= horizon."""
    out = set()
    for level in set(lattice.values) | {ONE}:
        cur = level
        for _ in range(horizon):
            nxt = g.xi(cur)
            if nxt in out or nxt == cur:
                out.add(nxt)
                break
            out.add(nxt)
            cur = nxt
    return out


class FuzzyLevel:
    """Normal fuzzy sets under the g-fuzzification, probed on a level grid."""

    name = "fuzzy"

    def __init__(self, system, g: MonotoneUnitFunction = IDENTITY,
                 lattice: LevelLattice | None = None, horizon: int | None = None, cap=None,
                 engine: str = "direct"):
        self.f = _unpack(system)
        self.space = self.f.space
        self.g = g
        self.lattice = lattice if lattice is not None else LevelLattice.of(Fraction(1, 2), 1)
        self.sys = FuzzifiedSystem(self.f, g, engine)
        self.cap = cap
        self._img = {}
        if horizon is not None:
            missing = required_levels(g, self.lattice, horizon) - set(self.lattice.values)
            if missing:
                raise LatticeIncomplete(
                    "level lattice misses " + ", ".join(str(m) for m in sorted(missing)))

    def distance_scaled(self, a: FuzzySet, b: FuzzySet) -> int:
        return levelwise_distance_scaled(a, b)

    def step(self, a: FuzzySet) -> FuzzySet:
        try:
            return self._img[a]
        except KeyError:
            if self.sys.engine == "direct":
                v = fuzzify_direct(self.sys, a)
            else:
                v = self.sys.apply(a)
            self._img[a] = v
            return v

    def orbit(self, a: FuzzySet, horizon: int) -> list:
        out = [a]
        for _ in range(horizon):
            out.append(self.step(out[-1]))
        return out

    def is_enumerable(self) -> bool:
        return caps.grid_allowed(grid_size(self.space, self.lattice), self.cap)

    def states(self) -> list:
        if not self.is_enumerable():
            raise ProbeSpaceTooLarge("fuzzy grid is too large to enumerate")
        return list(enumerate_fuzzy_grid(self.space, self.lattice, True, self.cap))

    def ball(self, center: FuzzySet, radius, members=None) -> list:
        """Grid members of the open ball; pruned enumeration unless an
        explicit member list is given."""
        if members is None:
            budget = BALL_BUDGET if self.cap is None else min(self.cap, BALL_BUDGET)
            try:
                return grid_ball(center, radius, self.lattice, True, budget)
            except GridTooLarge:
                raise BallNotEnumerable("fuzzy ball cannot be enumerated") from None
        r = self.space.strict_bound(radius)
        return [F for F in members if levelwise_distance_scaled(center, F) < r]

    def random_states(self, count: int, rng: random.Random) -> list:
        return [random_fuzzy_set(self.space, self.lattice, rng, normal=True)
                for _ in range(count)]

    def encode(self, a: FuzzySet):
        return a.to_json()

    def decode(self, obj) -> FuzzySet:
        return FuzzySet.from_json(self.space, obj)


def make_level(name: str, system, g=IDENTITY, lattice=None, horizon=None, cap=None,
               engine: str = "direct"):
    if name == "base":
        return BaseLevel(system)
    if name == "hyper":
        return HyperLevel(system, cap)
    if name == "fuzzy":
        return FuzzyLevel(system, g, lattice, horizon, cap, engine)
    raise ValueError(f"unknown level {name!r}")
