"""Finite exact metric spaces and self-maps on them.

Every distance is a :class:`fractions.Fraction`.  Alongside the rational
matrix each space keeps an integer copy scaled by the least common
denominator, so inner loops (Hausdorff distances, metric-axiom sweeps)
can run on machine integers without giving up exactness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math
from math import lcm
from typing import Sequence

import numpy as np

from .errors import EmptySpace, MetricViolation


def to_rational(value) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Points ``0..n-1`` with an exact rational distance matrix.

    Spaces compare by identity: two sets or fuzzy sets live in the same
    space only if they hold the very same space object.
    """

    dist: tuple[tuple[Fraction, ...], ...]
    labels: tuple | None = None
    diameter: Fraction = field(init=False)
    scale: int = field(init=False, repr=False)
    idist: np.ndarray = field(init=False, repr=False)
    rows: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.dist)
        if n == 0:
            raise EmptySpace("a metric space needs at least one point")
        diameter = max(max(row) for row in self.dist)
        scale = 1
        for row in self.dist:
            for d in row:
                scale = lcm(scale, d.denominator)
        rows = tuple(tuple(int(d * scale) for d in row) for row in self.dist)
        idist = np.array(rows, dtype=np.int64)
        idist.setflags(write=False)
        object.__setattr__(self, "diameter", diameter)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "idist", idist)
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must match the number of points")

    @property
    def n(self) -> int:
        return len(self.dist)

    @property
    def points(self) -> range:
        return range(len(self.dist))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.dist)) - 1

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def min_distance(self) -> Fraction:
        """Smallest positive distance (the diameter for a one-point space)."""
        try:
            return self.__dict__["_min_distance"]
        except KeyError:
            pos = [d for row in self.dist for d in row if d > 0]
            v = self.__dict__["_min_distance"] = min(pos) if pos else self.diameter
            return v

    def label(self, i: int):
        return i if self.labels is None else self.labels[i]

    def index(self, label) -> int:
        """Point index carrying ``label`` (an int index when unlabeled)."""
        if self.labels is None:
            return int(label)
        key = to_rational(label) if not isinstance(label, Fraction) else label
        try:
            return self.labels.index(key)
        except ValueError:
            raise KeyError(f"no point labeled {label!r}") from None

    def to_scaled(self, q) -> Fraction:
        """``q`` expressed in the units of :attr:`idist`."""
        return Fraction(q) * self.scale

    def strict_bound(self, q) -> int:
        """Integer ``k`` with ``d < q  <=>  scaled d < k`` for scaled distances."""
        return math.ceil(Fraction(q) * self.scale)

    def floor_bound(self, q) -> int:
        """Integer ``k`` with ``d > q  <=>  scaled d > k`` for scaled distances."""
        return math.floor(Fraction(q) * self.scale)

    def ball(self, center: int, radius) -> list[int]:
        """Open ball ``{y : d(center, y) < radius}``."""
        r = Fraction(radius)
        return [y for y in self.points if self.dist[center][y] < r]


def build_space(dist_matrix: Sequence[Sequence], labels=None) -> FiniteMetricSpace:
    """Validate a rational distance matrix and wrap it as a metric space.

    Raises :class:`MetricViolation` naming the failing axiom and the index
    tuple where it fails; :class:`EmptySpace` for a 0x0 matrix.
    """
    n = len(dist_matrix)
    if n == 0:
        raise EmptySpace("distance matrix is empty")
    rows = []
    for i, row in enumerate(dist_matrix):
        if len(row) != n:
            raise MetricViolation("square", (i,))
        rows.append(tuple(to_rational(v) for v in row))
    for i in range(n):
        if rows[i][i] != 0:
            raise MetricViolation("zero-diagonal", (i,))
        for j in range(n):
            if rows[i][j] < 0:
                raise MetricViolation("nonnegativity", (i, j))
            if rows[i][j] != rows[j][i]:
                raise MetricViolation("symmetry", (i, j))
            if i != j and rows[i][j] == 0:
                raise MetricViolation("identity", (i, j))
    scale = _den_lcm(rows)
    ia = np.array([[int(d * scale) for d in row] for row in rows], dtype=np.int64)
    # triangle inequality on scaled integers, one intermediate point at a time
    for j in range(n):
        via = ia[:, j][:, None] + ia[j, :][None, :]
        bad = np.argwhere(ia > via)
        if bad.size:
            i, k = (int(v) for v in bad[0])
            raise MetricViolation("triangle", (i, j, k))
    return FiniteMetricSpace(tuple(rows), None if labels is None else tuple(labels))


def _den_lcm(rows) -> int:
    out = 1
    for row in rows:
        for d in row:
            out = lcm(out, d.denominator)
    return out


@dataclass(frozen=True, eq=False)
class DynMap:
    """A total self-map of a finite space given by its lookup table."""

    space: FiniteMetricSpace
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        n = self.space.n
        if len(table) != n:
            raise ValueError(f"map table has {len(table)} entries for {n} points")
        for x, y in enumerate(table):
            if not 0 <= y < n:
                raise ValueError(f"f({x}) = {y} lies outside the space")
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def iterate(self, x: int, n: int) -> int:
        if n < 0:
            raise ValueError("n must be nonnegative")
        t = self.table
        for _ in range(n):
            x = t[x]
        return x

    def power_table(self, n: int) -> tuple[int, ...]:
        cache = self.__dict__.setdefault("_powers", {0: tuple(self.space.points)})
        if n not in cache:
            prev = self.power_table(n - 1) if n - 1 in cache or n < 64 else \
                tuple(self.iterate(x, n - 1) for x in self.space.points)
            t = self.table
            cache[n] = tuple(t[y] for y in prev)
        return cache[n]

    def image_mask(self, mask: int) -> int:
        out = 0
        t = self.table
        x = 0
        while mask:
            if mask & 1:
                out |= 1 << t[x]
            mask >>= 1
            x += 1
        return out

    def preimages(self) -> tuple[tuple[int, ...], ...]:
        pre = [[] for _ in self.space.points]
        for y, x in enumerate(self.table):
            pre[x].append(y)
        return tuple(tuple(p) for p in pre)


def iterate(f: DynMap, x: int, n: int) -> int:
    """``f^n(x)`` by repeated lookup; ``f^0(x) = x``."""
    return f.iterate(x, n)


@dataclass(frozen=True, eq=False)
class NamedSystem:
    family: str
    params: dict
    space: FiniteMetricSpace
    map: DynMap

    def describe(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}({args})"


def dyadic_grid(k: int) -> FiniteMetricSpace:
    """Points ``i/2**k`` of [0, 1] with ``|x - y|``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return line_space([Fraction(i, 2**k) for i in range(2**k + 1)])


def line_space(coords) -> FiniteMetricSpace:
    coords = tuple(to_rational(c) for c in coords)
    if len(set(coords)) != len(coords):
        raise MetricViolation("identity", ())
    dist = tuple(tuple(abs(a - b) for b in coords) for a in coords)
    return FiniteMetricSpace(dist, coords)


def tent_grid(k: int) -> NamedSystem:
    """Tent map ``x -> min(2x, 2 - 2x)`` on the dyadic grid of step ``2**-k``."""
    space = dyadic_grid(k)
    m = 2**k
    # on numerators: i -> min(2i, 2m - 2i) / m lands on grid index min(2i, 2m-2i)
    table = tuple(min(2 * i, 2 * m - 2 * i) for i in range(m + 1))
    return NamedSystem("tent_grid", {"k": k}, space, DynMap(space, table))


def circle_space(q: int) -> FiniteMetricSpace:
    if q < 1:
        raise ValueError("q must be positive")
    labels = tuple(Fraction(i, q) for i in range(q))
    dist = tuple(tuple(min(abs(a - b), 1 - abs(a - b)) for b in labels) for a in labels)
    return FiniteMetricSpace(dist, labels)


def rotation(p: int, q: int) -> NamedSystem:
    """Rotation ``i/q -> (i + p)/q mod 1`` with the circle metric."""
    space = circle_space(q)
    table = tuple((i + p) % q for i in range(q))
    return NamedSystem("rotation", {"p": p, "q": q}, space, DynMap(space, table))


def identity_system(n: int | None = None, *, k: int | None = None,
                    space: FiniteMetricSpace | None = None) -> NamedSystem:
    """Identity map on ``n`` evenly spaced points of [0, 1], on the dyadic
    grid of step ``2**-k``, or on a given space."""
    if space is None:
        if k is not None:
            space = dyadic_grid(k)
            params = {"k": k}
        elif n is not None:
            coords = [Fraction(0)] if n == 1 else [Fraction(i, n - 1) for i in range(n)]
            space = line_space(coords)
            params = {"n": n}
        else:
            raise ValueError("identity_system needs n, k or space")
    else:
        params = {"n": space.n}
    return NamedSystem("identity", params, space, DynMap(space, tuple(space.points)))


def explicit(dist_matrix, table, labels=None) -> NamedSystem:
    space = build_space(dist_matrix, labels)
    return NamedSystem("explicit", {"n": space.n}, space, DynMap(space, tuple(table)))
