"""Return-time sets, window transitivity and weak mixing, and the explicit
obstruction to transitivity of g-fuzzifications.

Open sets are described by small descriptor objects:

* :class:`PointSet` - a subset of the base space;
* :class:`HyperBall` / :class:`FuzzyBall` - open metric balls at the
  hyperspace and fuzzy levels (fuzzy balls are read on a level grid);
* :class:`VietorisSet` - a basic Vietoris open set ``<U_1, ..., U_k>``,
  whose return sets are computed without enumerating the hyperspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from . import caps
from .errors import BallNotEnumerable, NotApplicable, PreconditionViolated
from .fuzzifier import FuzzifiedSystem, fuzzify_direct
from .fuzzyset import (FuzzySet, LevelLattice, characteristic, enumerate_fuzzy_grid,
                       levelwise_distance_scaled)
from .gfunction import MonotoneUnitFunction, xi_iter
from .groundspace import DynMap, FiniteMetricSpace, format_rational, to_rational
from .hyperspace import CompactSet, hausdorff_scaled, mask_of, members_of
from .levels import _unpack, grid_ball
from .sensitivity import TimeWindowSet

ONE = Fraction(1)


# ---------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class PointSet:
    mask: int

    @classmethod
    def of(cls, points) -> "PointSet":
        return cls(mask_of(points))

    def to_json(self):
        return {"points": list(members_of(self.mask))}


@dataclass(frozen=True)
class HyperBall:
    center: int
    radius: Fraction

    def to_json(self):
        return {"hyper_ball": list(members_of(self.center)), "radius": format_rational(self.radius)}


@dataclass(frozen=True)
class VietorisSet:
    opens: tuple[int, ...]

    @classmethod
    def of(cls, opens) -> "VietorisSet":
        return cls(tuple(o if isinstance(o, int) else o.mask if hasattr(o, "mask") else mask_of(o)
                         for o in opens))

    @property
    def union(self) -> int:
        u = 0
        for o in self.opens:
            u |= o
        return u

    def to_json(self):
        return {"vietoris": [list(members_of(o)) for o in self.opens]}


@dataclass(frozen=True)
class FuzzyBall:
    center: FuzzySet
    radius: Fraction

    def to_json(self):
        return {"fuzzy_ball": self.center.to_json(), "radius": format_rational(self.radius)}


@dataclass(frozen=True)
class ReturnSet:
    U: object
    V: object
    times: TimeWindowSet

    def to_json(self):
        return {"U": self.U.to_json(), "V": self.V.to_json(), "times": self.times.sorted()}


# ---------------------------------------------------------------- return sets


def _hyper_ball_members(space, ball: HyperBall) -> list[int]:
    if not caps.hyperspace_allowed(space.n):
        raise BallNotEnumerable("hyperspace ball cannot be enumerated")
    r = space.strict_bound(ball.radius)
    return [m for m in range(1, 1 << space.n) if hausdorff_scaled(space, ball.center, m) < r]


def _base_times(f: DynMap, U: int, V: int, horizon: int) -> set:
    out = set()
    for n in range(horizon + 1):
        ptab = f.power_table(n)
        if any(V >> ptab[x] & 1 for x in members_of(U)):
            out.add(n)
    return out


def _vietoris_times(f: DynMap, U: VietorisSet, V: VietorisSet, horizon: int) -> set:
    # n works iff K = {x in union U : f^n x in union V} meets every U_i and
    # f^n(K) meets every V_j
    uu, vu = U.union, V.union
    out = set()
    for n in range(horizon + 1):
        ptab = f.power_table(n)
        K = 0
        img = 0
        for x in members_of(uu):
            if vu >> ptab[x] & 1:
                K |= 1 << x
                img |= 1 << ptab[x]
        if all(K & o for o in U.opens) and all(img & o for o in V.opens):
            out.add(n)
    return out


def return_set(level: str, system, U, V, horizon: int, g: MonotoneUnitFunction | None = None,
               lattice: LevelLattice | None = None) -> ReturnSet:
    """Exact window return set ``{n <= N : (n-th image of U) meets V}``.

    ``level`` is ``"base"`` (``PointSet`` or point iterables), ``"hyper"``
    (``HyperBall`` or ``VietorisSet``) or ``"fuzzy"`` (``FuzzyBall`` on the
    grid of ``lattice``, dynamics by the g-fuzzification).
    """
    f = _unpack(system)
    space = f.space
    if level == "base":
        U = U if isinstance(U, PointSet) else PointSet.of(U)
        V = V if isinstance(V, PointSet) else PointSet.of(V)
        times = _base_times(f, U.mask, V.mask, horizon)
    elif level == "hyper":
        if isinstance(U, VietorisSet) and isinstance(V, VietorisSet):
            times = _vietoris_times(f, U, V, horizon)
        else:
            times = _hyper_ball_times(f, U, V, horizon)
    elif level == "fuzzy":
        if g is None or lattice is None:
            raise ValueError("fuzzy return sets need g and a lattice")
        members = fuzzy_ball_members(space, U, lattice)
        times = _fuzzy_times(FuzzifiedSystem(f, g), members, V, horizon)
    else:
        raise ValueError(f"unknown level {level!r}")
    return ReturnSet(U, V, TimeWindowSet(horizon, frozenset(times)))


def _in_hyper(space, V, m: int) -> bool:
    if isinstance(V, VietorisSet):
        return m & ~V.union == 0 and all(m & o for o in V.opens)
    return hausdorff_scaled(space, V.center, m) < space.strict_bound(V.radius)


def _hyper_ball_times(f: DynMap, U, V, horizon: int) -> set:
    space = f.space
    if isinstance(U, VietorisSet):
        raise BallNotEnumerable("mixed Vietoris/ball return sets need an enumerable U")
    members = _hyper_ball_members(space, U)
    out = set()
    cur = list(dict.fromkeys(members))
    for n in range(horizon + 1):
        if any(_in_hyper(space, V, m) for m in cur):
            out.add(n)
        cur = list(dict.fromkeys(f.image_mask(m) for m in cur))
    return out


def fuzzy_ball_members(space: FiniteMetricSpace, ball: FuzzyBall, lattice: LevelLattice,
                       cap=None) -> list[FuzzySet]:
    """Grid members of a strict d_inf-ball (boundary members excluded)."""
    r = space.strict_bound(ball.radius)
    return [F for F in enumerate_fuzzy_grid(space, lattice, False, cap)
            if not F.is_empty() and levelwise_distance_scaled(ball.center, F) < r]


def _fuzzy_times(sys: FuzzifiedSystem, members, V: FuzzyBall, horizon: int) -> set:
    space = sys.space
    r = space.strict_bound(V.radius)
    out = set()
    cur = list(dict.fromkeys(members))
    for n in range(horizon + 1):
        if any(levelwise_distance_scaled(V.center, F) < r for F in cur):
            out.add(n)
        cur = list(dict.fromkeys(fuzzify_direct(sys, F) for F in cur))
    return out


# ---------------------------------------------------------------- transitivity


def min_block_length(ts: TimeWindowSet) -> int | None:
    """Least L such that ``ts`` meets every block of L consecutive window
    times; ``None`` for the empty set."""
    if not ts:
        return None
    run = best = 0
    for n in range(ts.horizon + 1):
        if n in ts:
            run = 0
        else:
            run += 1
            best = max(best, run)
    return best + 1


@dataclass
class TransitivityVerdict:
    property: Literal["transitive", "weakly_mixing"]
    status: Literal["holds_at_horizon", "fails_at_horizon"]
    horizon: int
    basis_size: int
    witness: dict | None = None
    min_block: int | None = None
    notes: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.status == "holds_at_horizon"

    def to_json(self):
        return {"property": self.property, "status": self.status, "horizon": self.horizon,
                "basis_size": self.basis_size, "min_block": self.min_block,
                "witness": self.witness, "notes": list(self.notes)}


def _pair_sets(level, system, basis, horizon, g=None, lattice=None):
    return {(i, j): return_set(level, system, U, V, horizon, g, lattice)
            for i, U in enumerate(basis) for j, V in enumerate(basis)}


def certify_transitive(level: str, system, basis: Sequence, horizon: int,
                       g=None, lattice=None) -> TransitivityVerdict:
    """Every basis pair has a nonempty window return set.

    ``min_block`` is the least L for which every return set meets every
    block of L consecutive times, the window form of "infinite return
    sets".
    """
    sets = _pair_sets(level, system, basis, horizon, g, lattice)
    blocks = []
    for (i, j), rs in sorted(sets.items()):
        if not rs.times:
            return TransitivityVerdict("transitive", "fails_at_horizon", horizon, len(basis),
                                       {"pair": [i, j], "U": rs.U.to_json(), "V": rs.V.to_json()})
        blocks.append(min_block_length(rs.times))
    return TransitivityVerdict("transitive", "holds_at_horizon", horizon, len(basis),
                               None, max(blocks) if blocks else None)


def certify_weak_mixing(level: str, system, basis: Sequence, horizon: int,
                        g=None, lattice=None) -> TransitivityVerdict:
    """Every basis 4-tuple ``(U1, V1, U2, V2)`` has
    ``N(U1, V1) & N(U2, V2)`` nonempty in the window."""
    sets = _pair_sets(level, system, basis, horizon, g, lattice)
    return weak_mixing_from_sets(sets, len(basis), horizon)


def weak_mixing_from_sets(sets: dict, size: int, horizon: int) -> TransitivityVerdict:
    keys = sorted(sets)
    masks = {k: sum(1 << n for n in sets[k].times.members) for k in keys}
    for a, b in itertools.combinations_with_replacement(keys, 2):
        if masks[a] & masks[b] == 0:
            return TransitivityVerdict(
                "weakly_mixing", "fails_at_horizon", horizon, size,
                {"tuple": [a[0], a[1], b[0], b[1]],
                 "first": sets[a].to_json(), "second": sets[b].to_json()})
    return TransitivityVerdict("weakly_mixing", "holds_at_horizon", horizon, size)


def interval_basis(space: FiniteMetricSpace, width) -> list[PointSet]:
    """Closed intervals ``[j w, (j+1) w]`` intersected with a labeled line space."""
    width = to_rational(width) if not isinstance(width, Fraction) else width
    if width <= 0:
        raise ValueError("width must be positive")
    labels = [space.label(x) for x in space.points]
    lo, hi = min(labels), max(labels)
    out = []
    j = 0
    while lo + j * width <= hi:
        a, b = lo + j * width, lo + (j + 1) * width
        m = mask_of(x for x, t in enumerate(labels) if a <= t <= b)
        if m and (not out or m != out[-1].mask):
            out.append(PointSet(m))
        j += 1
        if b >= hi:
            break
    return out


def singleton_basis(space: FiniteMetricSpace) -> list[PointSet]:
    return [PointSet(1 << x) for x in space.points]


def vietoris_basis(basis: Sequence[PointSet], max_size: int | None = None) -> list[VietorisSet]:
    """All ``<U_i1, ..., U_ik>`` over nonempty subfamilies of a base basis."""
    masks = [b.mask for b in basis]
    top = len(masks) if max_size is None else max_size
    return [VietorisSet(tuple(c)) for r in range(1, top + 1)
            for c in itertools.combinations(masks, r)]


# ---------------------------------------------------------------- non-transitivity construction


@dataclass
class SeparationConstruction:
    a: int
    b: int
    E1: CompactSet
    E2: CompactSet
    E: FuzzySet
    G: FuzzySet
    eta: Fraction
    U_desc: FuzzyBall
    V_desc: FuzzyBall
    z: Fraction
    m: int
    case: int
    secondary_level: Fraction
    lattice: LevelLattice

    def to_json(self):
        return {
            "a": self.a, "b": self.b,
            "E1": list(self.E1.members), "E2": list(self.E2.members),
            "E": self.E.to_json(), "G": self.G.to_json(),
            "eta": format_rational(self.eta),
            "U": self.U_desc.to_json(), "V": self.V_desc.to_json(),
            "z": format_rational(self.z), "m": self.m, "case": self.case,
            "secondary_level": format_rational(self.secondary_level),
            "lattice": self.lattice.to_json(),
        }


def xi_levels(g: MonotoneUnitFunction, z, horizon: int) -> set:
    out = {ONE}
    cur = z
    out.add(cur)
    for _ in range(horizon):
        cur = g.xi(cur)
        out.add(cur)
    return out


def build_separation(space_or_system, g: MonotoneUnitFunction, z, m: int, a: int, b: int,
                     lattice: LevelLattice | None = None, horizon: int = 20) -> SeparationConstruction:
    """Two disjoint fuzzy balls that no iterate beyond time ``m`` connects.

    ``E1``/``E2`` are the closed ``d(a, b)/8``-balls around ``a`` and ``b``.
    With ``w = z`` when ``xi(z) > z`` and ``w = xi(z)`` when ``xi(z) < z``,
    ``E`` is 1 on ``E1`` and ``w`` on ``E2`` while ``G`` swaps the two
    sets.  After the xi-orbit of ``z`` is fixed, every iterate has equal
    cuts at ``min(z, xi z)`` and ``max(z, xi z)``, but ``G``'s cuts there are
    ``eta`` apart, so no iterate comes within ``eta/4`` of ``G``.

    Without a lattice one is made from ``1`` and ``xi^j(z)``, ``j <= horizon``.
    """
    space = space_or_system if isinstance(space_or_system, FiniteMetricSpace) else _unpack(space_or_system).space
    z = to_rational(z) if not isinstance(z, Fraction) else z
    if a == b:
        raise NotApplicable("a and b must be distinct points")
    if not 0 < z < 1:
        raise NotApplicable("z must lie in (0, 1)")
    xz = g.xi(z)
    if xz == z:
        raise NotApplicable(f"xi_g(z) = z at z = {format_rational(z)}")
    orbit = xi_iter(g, z, max(m, 0) + 1)
    if orbit.fixation is None or orbit.fixation > m:
        raise NotApplicable(f"xi-orbit of {format_rational(z)} does not fix within {m} steps")
    needed = xi_levels(g, z, horizon)
    if lattice is None:
        lattice = LevelLattice(tuple(needed))
    missing = needed - set(lattice.values)
    if missing:
        raise PreconditionViolated("lattice misses " + ", ".join(format_rational(v) for v in sorted(missing)))
    dab = space.d(a, b)
    r8 = dab / 8
    E1 = mask_of(y for y in space.points if space.d(a, y) <= r8)
    E2 = mask_of(y for y in space.points if space.d(b, y) <= r8)
    eta = min(space.d(x, y) for x in members_of(E1) for y in members_of(E2))
    case = 1 if xz > z else 2
    w = z if case == 1 else xz
    E = FuzzySet(space, (w, ONE), (E1 | E2, E1))
    G = FuzzySet(space, (w, ONE), (E1 | E2, E2))
    con = SeparationConstruction(a, b, CompactSet(space, E1), CompactSet(space, E2), E, G, eta,
                                 FuzzyBall(E, eta / 4), FuzzyBall(G, eta / 4), z, m, case, w, lattice)
    if eta < Fraction(3, 4) * dab:
        raise AssertionError("eta below 3/4 d(a, b)")
    if Fraction(levelwise_distance_scaled(E, G), space.scale) < eta:
        raise AssertionError("d_inf(E, G) below eta")
    return con


@dataclass
class SeparationVerdict:
    status: Literal["separated", "violation"]
    horizon: int
    checked_members: int
    witness: dict | None = None
    scope: str = "grid members of U"

    @property
    def separated(self) -> bool:
        return self.status == "separated"

    def to_json(self):
        return {"status": self.status, "horizon": self.horizon,
                "checked_members": self.checked_members, "scope": self.scope,
                "witness": self.witness}


def u_grid_members(con: SeparationConstruction, cap=None) -> list[FuzzySet]:
    """Grid members (normal or not) of the strict ``eta/4``-ball around ``E``."""
    return grid_ball(con.E, con.U_desc.radius, con.lattice, normal=False, cap=cap)


def verify_separation(con: SeparationConstruction, sys: FuzzifiedSystem, horizon: int,
                      cap=None) -> SeparationVerdict:
    """Push every grid member of U forward and check that no iterate with
    ``m < n <= horizon`` falls in V."""
    space = sys.space
    if con.E.space is not space:
        raise PreconditionViolated("construction and system live in different spaces")
    members = u_grid_members(con, cap)
    r = space.strict_bound(con.V_desc.radius)
    G = con.G
    step_cache = {}
    for F in members:
        cur = F
        for n in range(1, horizon + 1):
            nxt = step_cache.get(cur)
            if nxt is None:
                nxt = step_cache[cur] = fuzzify_direct(sys, cur)
            cur = nxt
            if n > con.m and levelwise_distance_scaled(G, cur) < r:
                return SeparationVerdict("violation", horizon, len(members),
                                         {"member": F.to_json(), "time": n, "image": cur.to_json()})
    return SeparationVerdict("separated", horizon, len(members))


# ---------------------------------------------------------------- weak-mixing transfer audit


@dataclass
class TransferAudit:
    status: Literal["blocking_pair", "vacuous", "inconclusive", "violation"]
    hyper: TransitivityVerdict
    fuzzy_pair: dict | None = None
    notes: list = field(default_factory=list)

    def to_json(self):
        return {"status": self.status, "hyper": self.hyper.to_json(),
                "fuzzy_pair": self.fuzzy_pair, "notes": list(self.notes)}


def audit_weak_mixing_transfer(system, g: MonotoneUnitFunction, basis, horizon: int,
                               lattice: LevelLattice | None = None, radius=None) -> TransferAudit:
    """Contrapositive check: if the hyperspace is not weakly mixing at the
    horizon, exhibit two fuzzy balls with empty return set.

    ``basis`` is a list of hyperspace open sets: ``HyperBall`` or
    ``VietorisSet``.  A hyperspace pair with empty return set around sets
    ``A`` and ``B`` is embedded as the d_inf-balls around ``chi_A`` and
    ``chi_B`` of the same radius, whose return set over the grid must be
    empty too.  Vietoris sets are embedded through their union.
    """
    f = _unpack(system)
    space = f.space
    if lattice is None:
        lattice = LevelLattice.of(1)
    hyper_pairs = _pair_sets("hyper", system, basis, horizon)
    wm = weak_mixing_from_sets(hyper_pairs, len(basis), horizon)
    if wm.holds:
        return TransferAudit("vacuous", wm, None, ["hyperspace weakly mixing at horizon"])
    for (i, j), rs in sorted(hyper_pairs.items()):
        if rs.times:
            continue
        U, V = basis[i], basis[j]
        if isinstance(U, HyperBall) and isinstance(V, HyperBall):
            ca, cb, rad = U.center, V.center, min(U.radius, V.radius)
        else:
            continue
        if radius is not None:
            rad = radius
        FU = FuzzyBall(characteristic(CompactSet(space, ca)), rad)
        FV = FuzzyBall(characteristic(CompactSet(space, cb)), rad)
        frs = return_set("fuzzy", system, FU, FV, horizon, g, lattice)
        pair = {"hyper_pair": [i, j], "U": FU.to_json(), "V": FV.to_json(),
                "fuzzy_times": frs.times.sorted(),
                "grid_members": len(fuzzy_ball_members(space, FU, lattice))}
        if not frs.times:
            return TransferAudit("blocking_pair", wm, pair)
        return TransferAudit("violation", wm, pair,
                             ["chi-embedded pair returns although its hyperspace pair never does"])
    return TransferAudit("inconclusive", wm, None,
                         ["no hyperspace pair with empty return set to embed"])


def chi_transport_times(system, g, A: int, B: int, radius, horizon: int,
                        lattice: LevelLattice) -> dict:
    """Return sets for the balls around ``A``, ``B`` at the hyperspace level,
    over characteristic members of the chi-balls, and over all grid members."""
    f = _unpack(system)
    space = f.space
    hyper = return_set("hyper", system, HyperBall(A, radius), HyperBall(B, radius), horizon).times
    FU = FuzzyBall(characteristic(CompactSet(space, A)), radius)
    FV = FuzzyBall(characteristic(CompactSet(space, B)), radius)
    members = fuzzy_ball_members(space, FU, lattice)
    sys = FuzzifiedSystem(f, g)
    chi_members = [F for F in members if F.levels == (ONE,)]
    chi = _fuzzy_times(sys, chi_members, FV, horizon)
    full = _fuzzy_times(sys, members, FV, horizon)
    return {"hyper": hyper, "chi": TimeWindowSet(horizon, frozenset(chi)),
            "all": TimeWindowSet(horizon, frozenset(full))}


__all__ = [
    "PointSet", "HyperBall", "VietorisSet", "FuzzyBall", "ReturnSet", "return_set",
    "TransitivityVerdict", "certify_transitive", "certify_weak_mixing", "interval_basis",
    "singleton_basis", "vietoris_basis", "min_block_length", "SeparationConstruction",
    "build_separation", "SeparationVerdict", "verify_separation", "u_grid_members",
    "TransferAudit", "audit_weak_mixing_transfer", "chi_transport_times",
]
