"""The hyperspace of nonempty subsets with the Hausdorff metric.

Subsets are bit masks over the point indices of their space.  On a finite
space every subset is compact and closure is the identity, so unions of
sets need no closure step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import caps
from .errors import PreconditionViolated, SpaceMismatch, SpaceTooLarge
from .groundspace import DynMap, FiniteMetricSpace


def mask_of(points) -> int:
    m = 0
    for p in points:
        m |= 1 << int(p)
    return m


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


@dataclass(frozen=True)
class CompactSet:
    """A nonempty subset of a finite metric space."""

    space: FiniteMetricSpace
    mask: int

    def __post_init__(self):
        if self.mask <= 0:
            raise ValueError("CompactSet must be nonempty; use EmptySet for the empty set")
        if self.mask >> self.space.n:
            raise ValueError("mask has bits outside the space")

    @classmethod
    def of(cls, space: FiniteMetricSpace, points) -> "CompactSet":
        return cls(space, mask_of(points))

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, x) -> bool:
        return bool(self.mask >> int(x) & 1)

    def issubset(self, other) -> bool:
        return self.mask & ~other.mask == 0

    def labels(self) -> list:
        return [self.space.label(x) for x in self.members]

    def __repr__(self):
        return f"CompactSet({list(self.members)})"


@dataclass(frozen=True)
class EmptySet:
    """The empty set of a space, kept apart from every :class:`CompactSet`."""

    space: FiniteMetricSpace
    mask: int = 0

    @property
    def members(self) -> tuple[int, ...]:
        return ()

    def __iter__(self):
        return iter(())

    def __len__(self) -> int:
        return 0

    def __contains__(self, x) -> bool:
        return False

    def issubset(self, other) -> bool:
        return True

    def __repr__(self):
        return "EmptySet()"


def as_set(space: FiniteMetricSpace, mask: int):
    return CompactSet(space, mask) if mask else EmptySet(space)


def _same_space(a, b):
    if a.space is not b.space:
        raise SpaceMismatch("sets live in different spaces")


@lru_cache(maxsize=1 << 18)
def hausdorff_scaled(space: FiniteMetricSpace, a: int, b: int) -> int:
    """Hausdorff distance between two masks in the integer units of
    ``space.idist``; ``0`` encodes the empty set."""
    if a == b:
        return 0
    if a == 0 or b == 0:
        return max(max(r) for r in space.rows)
    rows = space.rows
    am = members_of(a)
    bm = members_of(b)
    out = 0
    for x in am:
        r = rows[x]
        m = min(r[y] for y in bm)
        if m > out:
            out = m
    for y in bm:
        r = rows[y]
        m = min(r[x] for x in am)
        if m > out:
            out = m
    return out


def hausdorff(A, B) -> Fraction:
    """Exact Hausdorff distance, extended by d(empty, empty) = 0 and
    d(empty, A) = diam X."""
    _same_space(A, B)
    s = A.space
    return Fraction(hausdorff_scaled(s, A.mask, B.mask), s.scale)


def induced_map(f: DynMap, A: CompactSet) -> CompactSet:
    """The image ``f(A)``."""
    if A.space is not f.space:
        raise SpaceMismatch("set and map live in different spaces")
    return CompactSet(A.space, f.image_mask(A.mask))


def enumerate_hyperspace(space: FiniteMetricSpace, cap=None) -> Iterator[CompactSet]:
    """All nonempty subsets in increasing mask order."""
    if not caps.hyperspace_allowed(space.n, cap):
        raise SpaceTooLarge(f"{space.n} points exceed the hyperspace enumeration cap")
    for m in range(1, 1 << space.n):
        yield CompactSet(space, m)


def vietoris_contains(U_list: Sequence, A) -> bool:
    """Membership of ``A`` in the Vietoris basic set ``<U_1, ..., U_k>``."""
    if not U_list:
        raise ValueError("a Vietoris basic set needs at least one open set")
    masks = [u if isinstance(u, int) else mask_of(u) if not hasattr(u, "mask") else u.mask
             for u in U_list]
    union = 0
    for m in masks:
        union |= m
    a = A.mask
    return a & ~union == 0 and all(a & m for m in masks)


def union_bound_check(A: CompactSet, B_list: Sequence[CompactSet], xi) -> bool:
    """Check ``d_H(A, union B) <= xi`` given ``d_H(A, B) < xi`` for each B."""
    xi = Fraction(xi)
    if not B_list:
        raise PreconditionViolated("empty family")
    union = 0
    for B in B_list:
        _same_space(A, B)
        if hausdorff(A, B) >= xi:
            raise PreconditionViolated(f"d_H(A, {B!r}) >= {xi}")
        union |= B.mask
    return hausdorff(A, CompactSet(A.space, union)) <= xi


def dist_to_set_table(space: FiniteMetricSpace, masks: Sequence[int]) -> np.ndarray:
    """Row ``i`` holds ``min_{y in masks[i]} d(x, y)`` for every point x
    (integer units)."""
    member = membership_matrix(space, masks)
    big = np.iinfo(np.int64).max
    d = space.idist
    out = np.where(member[:, None, :], d[None, :, :], big).min(axis=2)
    return out


def membership_matrix(space: FiniteMetricSpace, masks: Sequence[int]) -> np.ndarray:
    bits = np.arange(space.n)
    arr = np.asarray(masks, dtype=np.int64)
    return ((arr[:, None] >> bits[None, :]) & 1).astype(bool)


def hausdorff_matrix(space: FiniteMetricSpace, masks: Sequence[int]) -> np.ndarray:
    """All pairwise Hausdorff distances (integer units) between nonempty masks."""
    member = membership_matrix(space, masks)
    dts = dist_to_set_table(space, masks)
    # directed[i, j] = max over x in masks[i] of dist(x, masks[j])
    directed = np.where(member[:, None, :], dts[None, :, :], 0).max(axis=2)
    return np.maximum(directed, directed.T)
