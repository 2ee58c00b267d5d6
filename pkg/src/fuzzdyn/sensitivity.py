"""Horizon-bounded sensitivity certificates on the three levels.

Everything here is a statement about the finite window ``{0, ..., N}``:
a *certified* verdict lists, for every probe center, a ball member whose
orbit separates from the center's by more than epsilon at some time
``n <= N``.  Separation-time sets are classified against window versions
of the usual Furstenberg families.

The fuzzy level also gets the two constructive bridges to the hyperspace:
``fuzzy_decompose``/``fuzzy_witness`` lift a hyperspace witness near the
top cut to a fuzzy one, and ``extract_hyper_witness`` goes the other way
by reading off a single cut.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Sequence

from .errors import (BallNotEnumerable, DegenerateDelta, NotNormal,
                     PreconditionViolated, ProbeSpaceTooLarge)
from .fuzzyset import FuzzySet, LevelLattice, characteristic, grid_size, levelwise_distance_scaled
from .gfunction import IDENTITY, MonotoneUnitFunction
from .groundspace import format_rational, to_rational
from .hyperspace import CompactSet, hausdorff_matrix, hausdorff_scaled, members_of
from .levels import BaseLevel, FuzzyLevel, HyperLevel, make_level

ONE = Fraction(1)


# ---------------------------------------------------------------- windows


@dataclass(frozen=True)
class TimeWindowSet:
    """A subset of ``{0, ..., horizon}``."""

    horizon: int
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.horizon < 0:
            raise ValueError("horizon must be nonnegative")
        mem = frozenset(int(n) for n in self.members)
        if any(n < 0 or n > self.horizon for n in mem):
            raise ValueError("members must lie in [0, horizon]")
        object.__setattr__(self, "members", mem)

    @classmethod
    def full(cls, horizon: int) -> "TimeWindowSet":
        return cls(horizon, frozenset(range(horizon + 1)))

    def __and__(self, other: "TimeWindowSet") -> "TimeWindowSet":
        if self.horizon != other.horizon:
            raise ValueError("windows have different horizons")
        return TimeWindowSet(self.horizon, self.members & other.members)

    def __or__(self, other: "TimeWindowSet") -> "TimeWindowSet":
        if self.horizon != other.horizon:
            raise ValueError("windows have different horizons")
        return TimeWindowSet(self.horizon, self.members | other.members)

    def __contains__(self, n) -> bool:
        return n in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def issubset(self, other: "TimeWindowSet") -> bool:
        return self.members <= other.members

    def to_json(self):
        return {"horizon": self.horizon, "members": self.sorted()}


FamilyKind = Literal["infinite", "cofinite", "syndetic", "full"]


@dataclass(frozen=True)
class FamilyPredicate:
    kind: FamilyKind
    param: int = 1

    def __post_init__(self):
        if self.kind not in ("infinite", "cofinite", "syndetic", "full"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.param < 1:
            raise ValueError("family parameter must be at least 1")

    @classmethod
    def parse(cls, text: str) -> "FamilyPredicate":
        """``"cofinite:3"``, ``"syndetic:4"``, ``"infinite:5"`` or ``"full"``."""
        kind, _, arg = text.partition(":")
        return cls(kind, int(arg) if arg else 1)

    def __str__(self):
        return self.kind if self.kind == "full" else f"{self.kind}:{self.param}"


def family_classify(ts: TimeWindowSet, fam: FamilyPredicate) -> bool:
    """Window membership test; the empty set belongs to no family.

    * ``infinite:L`` meets every block of L consecutive times inside the
      window (any nonempty set when the window is shorter than L);
    * ``cofinite:T`` contains ``[N - T, N]`` (clipped at 0);
    * ``syndetic:G`` has every block of G consecutive times meeting it,
      i.e. gaps of at most G with the ends included;
    * ``full`` is the whole window.
    """
    mem = ts.members
    if not mem:
        return False
    N = ts.horizon
    if fam.kind == "full":
        return len(mem) == N + 1
    if fam.kind == "cofinite":
        return all(n in mem for n in range(max(0, N - fam.param), N + 1))
    if fam.kind == "infinite":
        L = fam.param
        if L > N + 1:
            return True
        return all(any(n in mem for n in range(s, s + L)) for s in range(N - L + 2))
    # syndetic
    G = fam.param
    s = sorted(mem)
    if s[0] >= G or N - s[-1] >= G:
        return False
    return all(b - a <= G for a, b in zip(s, s[1:]))


# ---------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Witness:
    center: object
    perturbation: object
    time: int
    separation: Fraction


@dataclass
class SensitivityVerdict:
    level: str
    epsilon: Fraction
    delta: Fraction
    horizon: int
    status: Literal["certified", "refuted_at_horizon"]
    witnesses: list = field(default_factory=list)
    failing_center: object = None
    family: str = "plain"
    probe_mode: str = "exhaustive"
    probe_count: int = 0
    ball_mode: str = "exact"
    encoder: object = field(default=None, repr=False, compare=False)

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def min_separation(self):
        seps = [w.separation for w in self.witnesses]
        return min(seps) if seps else None

    def to_json(self) -> dict:
        enc = self.encoder or (lambda a: a)
        out = {
            "level": self.level,
            "family": self.family,
            "epsilon": format_rational(self.epsilon),
            "delta": format_rational(self.delta),
            "horizon": self.horizon,
            "status": self.status,
            "probe_mode": self.probe_mode,
            "probe_count": self.probe_count,
            "ball_mode": self.ball_mode,
            "min_witness_separation": (None if not self.witnesses
                                       else format_rational(self.min_separation())),
            "failing_center": None if self.failing_center is None else enc(self.failing_center),
            "witnesses": [
                {"center": enc(w.center), "perturbation": enc(w.perturbation),
                 "time": w.time, "separation": format_rational(w.separation)}
                for w in self.witnesses
            ],
        }
        return out


# ---------------------------------------------------------------- ball members


def _fraction(q) -> Fraction:
    return q if isinstance(q, Fraction) else to_rational(q)


def ball_members(level, center, radius, horizon: int) -> tuple[Iterable, bool]:
    """Members of the open ball of ``radius`` around ``center`` and whether
    they are all of its members (grid members at the fuzzy level)."""
    if isinstance(level, BaseLevel):
        return level.ball(center, radius), True
    if isinstance(level, HyperLevel):
        return level.candidates(center, radius, horizon)
    try:
        return level.ball(center, radius), True
    except BallNotEnumerable:
        return fuzzy_perturbations(level, center, radius, horizon), False


def _grid(level: FuzzyLevel) -> list:
    g = getattr(level, "_grid_cache", None)
    if g is None:
        g = level._grid_cache = level.states()
    return g


def _orbit_cached(level, cache: dict, a, horizon: int) -> list:
    orb = cache.get(a)
    if orb is None or len(orb) <= horizon:
        orb = cache[a] = level.orbit(a, horizon)
    return orb


def find_witness(level, center, delta, epsilon, horizon: int, members=None):
    """First ball member separating from ``center`` by more than ``epsilon``
    at some ``n <= horizon``, as a :class:`Witness`, or ``None``."""
    space = level.space
    eps = space.floor_bound(_fraction(epsilon))
    rad = space.strict_bound(_fraction(delta))
    if members is None:
        members, _ = ball_members(level, center, delta, horizon)
    cache = {}
    corb = _orbit_cached(level, cache, center, horizon)
    dist = level.distance_scaled
    for y in members:
        if y == center:
            continue
        if not dist(center, y) < rad:
            continue
        yorb = _orbit_cached(level, cache, y, horizon)
        for n in range(horizon + 1):
            d = dist(corb[n], yorb[n])
            if d > eps:
                return Witness(center, y, n, Fraction(d, space.scale))
    return None


def resolve_probes(level, probes) -> tuple[list, str]:
    if probes is None or probes == "exhaustive":
        if not level.is_enumerable():
            raise ProbeSpaceTooLarge(f"{level.name} probe space cannot be enumerated")
        states = _grid(level) if isinstance(level, FuzzyLevel) else level.states()
        return states, "exhaustive"
    return list(probes), "listed"


def certify_sensitivity(level, epsilon, delta, horizon: int, probes=None,
                        parallel: bool = False) -> SensitivityVerdict:
    """Certify horizon sensitivity at every probe center.

    ``probes`` is ``None``/``"exhaustive"`` (every state of the level) or an
    explicit list of centers.  The scan stops at the first center with no
    separating ball member, which is returned as ``failing_center``.
    """
    epsilon, delta = _fraction(epsilon), _fraction(delta)
    if delta <= 0:
        raise DegenerateDelta("delta must be positive")
    centers, mode = resolve_probes(level, probes)
    ball_mode = "exact"
    witnesses = []
    failing = None

    def one(c):
        members, exact = ball_members(level, c, delta, horizon)
        return find_witness(level, c, delta, epsilon, horizon, members), exact

    if parallel:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(one, centers))
    else:
        results = None
    for i, c in enumerate(centers):
        w, exact = results[i] if results is not None else one(c)
        if not exact:
            ball_mode = "generated"
        if w is None:
            failing = c
            break
        witnesses.append(w)
    status = "certified" if failing is None else "refuted_at_horizon"
    return SensitivityVerdict(level.name, epsilon, delta, horizon, status, witnesses, failing,
                              "plain", mode, len(centers), ball_mode, level.encode)


# ---------------------------------------------------------------- separation sets


def _diam_scaled(level, states: list) -> int:
    uniq = list(dict.fromkeys(states))
    if len(uniq) < 2:
        return 0
    if isinstance(level, BaseLevel):
        rows = level.space.rows
        return max(rows[a][b] for a in uniq for b in uniq)
    if isinstance(level, HyperLevel) and len(uniq) <= 4096:
        return int(hausdorff_matrix(level.space, uniq).max())
    dist = level.distance_scaled
    return max(dist(a, b) for a, b in itertools.combinations(uniq, 2))


def separation_times(level, center, radius, epsilon, horizon: int, members=None) -> TimeWindowSet:
    """``{n <= N : diam of the n-th image of the ball > epsilon}``.

    The ball is the exact open ball (grid members at the fuzzy level);
    passing ``members`` overrides it with an explicit list, which yields a
    lower bound on the true set.
    """
    epsilon = _fraction(epsilon)
    if members is None:
        members, exact = ball_members(level, center, radius, horizon)
        if not exact:
            raise BallNotEnumerable(f"{level.name} ball cannot be enumerated")
        members = list(members)
    members = list(members)
    if center not in members:
        members.append(center)
    eps = level.space.floor_bound(epsilon)
    cur = members
    out = set()
    for n in range(horizon + 1):
        if _diam_scaled(level, cur) > eps:
            out.add(n)
        if n < horizon:
            cur = list(dict.fromkeys(level.step(s) for s in cur))
    return TimeWindowSet(horizon, frozenset(out))


def center_separation_times(level, center, members: Iterable, epsilon, horizon: int) -> TimeWindowSet:
    """Times at which some listed member is more than ``epsilon`` from the
    center's orbit; a lower bound for :func:`separation_times`."""
    eps = level.space.floor_bound(_fraction(epsilon))
    cache = {}
    corb = _orbit_cached(level, cache, center, horizon)
    out = set()
    for y in members:
        yorb = _orbit_cached(level, cache, y, horizon)
        for n in range(horizon + 1):
            if n not in out and level.distance_scaled(corb[n], yorb[n]) > eps:
                out.add(n)
        if len(out) == horizon + 1:
            break
    return TimeWindowSet(horizon, frozenset(out))


def common_times(sets: Sequence[TimeWindowSet]) -> TimeWindowSet:
    out = sets[0]
    for s in sets[1:]:
        out = out & s
    return out


def multi_check(sets: Sequence[TimeWindowSet], k: int):
    """Whether every choice of at most ``k`` sets (with repetition) shares a
    time; returns ``(ok, failing index tuple)``."""
    masks = [sum(1 << n for n in s.members) for s in sets]
    for r in range(1, k + 1):
        for combo in itertools.combinations(range(len(masks)), r):
            m = -1
            for i in combo:
                m &= masks[i]
            if m == 0:
                return False, combo
    return True, None


# ---------------------------------------------------------------- lifting constructions


@dataclass(frozen=True)
class Decomposition:
    """Plateau peeling of a normal fuzzy set at neighborhood radius delta/4.

    ``alphas[i]`` is the largest membership left after removing the
    neighborhoods of the first i plateaus, ``plateaus[i]`` the points
    attaining it, ``unions[i]`` the union of the neighborhoods of
    plateaus ``0..i``.
    """

    alphas: tuple[Fraction, ...]
    plateaus: tuple[int, ...]
    unions: tuple[int, ...]
    fuzzy: FuzzySet


def _nbhd(space, mask: int, r) -> int:
    rows = space.rows
    pts = members_of(mask)
    out = 0
    for y in space.points:
        row = rows[y]
        if any(row[x] < r for x in pts):
            out |= 1 << y
    return out


def decompose(A: FuzzySet, delta) -> Decomposition:
    delta = _fraction(delta)
    if delta <= 0:
        raise DegenerateDelta("delta must be positive")
    if not A.is_normal():
        raise NotNormal("decomposition needs a normal fuzzy set")
    space = A.space
    r = space.strict_bound(delta / 4)
    vals = A.memberships()
    remaining = space.full_mask
    alphas, plateaus, unions = [], [], []
    union = 0
    while remaining:
        alpha = max(vals[x] for x in members_of(remaining))
        if alpha == 0:
            break
        D = 0
        for x in members_of(remaining):
            if vals[x] == alpha:
                D |= 1 << x
        nb = _nbhd(space, D, r)
        union |= nb
        alphas.append(alpha)
        plateaus.append(D)
        unions.append(union)
        remaining &= ~nb
    levels = tuple(reversed(alphas))
    cuts = tuple(reversed(unions))
    return Decomposition(tuple(alphas), tuple(plateaus), tuple(unions), FuzzySet(space, levels, cuts))


def fuzzy_decompose(A: FuzzySet, delta) -> FuzzySet:
    """Piecewise-constant approximation within ``delta/4`` of ``A``.

    On ``(alpha_{i+1}, alpha_i]`` its cut is the union of the open
    ``delta/4``-neighborhoods of the first i plateaus.
    """
    return decompose(A, delta).fuzzy


def default_fattening(space, delta) -> Fraction:
    """A radius below ``delta/4`` small enough that fattening changes nothing."""
    return min(_fraction(delta) / 8, space.min_distance() / 2)


def fuzzy_witness(A: FuzzySet, C, delta, xi=None, decomposition: Decomposition | None = None) -> FuzzySet:
    """Fuzzy set near ``A`` whose top cut is the xi-fattening Q of ``C``.

    The stack is ``Q`` on ``((a_1 + a_2)/2, 1]``, ``U_1 | Q`` on
    ``(a_2, (a_1 + a_2)/2]`` and ``U_i | Q`` on ``(a_{i+1}, a_i]`` below,
    with ``a_i, U_i`` from :func:`decompose`.
    """
    delta = _fraction(delta)
    space = A.space
    if xi is None:
        xi = default_fattening(space, delta)
    xi = _fraction(xi)
    cmask = C if isinstance(C, int) else C.mask
    if cmask == 0:
        raise PreconditionViolated("C must be nonempty")
    if not 0 < xi < delta / 4:
        raise PreconditionViolated("xi must lie in (0, delta/4)")
    if not A.is_normal():
        raise NotNormal("fuzzy witness needs a normal fuzzy set")
    if not hausdorff_scaled(space, A.cut_mask(ONE), cmask) < space.strict_bound(delta / 4):
        raise PreconditionViolated("d_H([A]_1, C) must be below delta/4")
    dec = decomposition or decompose(A, delta)
    Q = _nbhd(space, cmask, space.strict_bound(xi))
    a = list(dec.alphas) + [Fraction(0)]
    levels = [ONE, (a[0] + a[1]) / 2]
    cuts = [Q, dec.unions[0] | Q]
    for i in range(1, len(dec.alphas)):
        levels.append(a[i])
        cuts.append(dec.unions[i] | Q)
    E = FuzzySet(space, tuple(reversed(levels)), tuple(reversed(cuts)))
    if not levelwise_distance_scaled(A, E) < space.strict_bound(delta):
        raise AssertionError("lifted witness left the delta-ball")
    if E.cut_mask(ONE) != Q:
        raise AssertionError("lifted witness has the wrong top cut")
    return E


def lift_hyper_witness(level: FuzzyLevel, A: FuzzySet, C: int, delta, epsilon, n: int,
                       decomposition=None):
    """Lift a hyperspace member ``C`` near ``[A]_1`` and measure the fuzzy
    separation at time ``n``; returns ``(E, separation)``."""
    E = fuzzy_witness(A, C, delta, decomposition=decomposition)
    a = level.orbit(A, n)[n]
    e = level.orbit(E, n)[n]
    return E, Fraction(levelwise_distance_scaled(a, e), level.space.scale)


def fuzzy_perturbations(level: FuzzyLevel, A: FuzzySet, radius, horizon: int) -> Iterator[FuzzySet]:
    """Members of the open d_inf-ball around a normal ``A``.

    Lifts of hyperspace members near the top cut come first, then
    single-point membership changes on the lattice, then transports of
    ``A`` along the collapsing moves of the hyperspace generator.
    """
    space = level.space
    radius = _fraction(radius)
    r = space.strict_bound(radius)
    hyper = HyperLevel(level.f)
    top = A.cut_mask(ONE)
    dec = decompose(A, radius)
    seen = {A}

    def fresh(E):
        if E in seen or not E.is_normal():
            return False
        seen.add(E)
        return levelwise_distance_scaled(A, E) < r

    for C in hyper.perturbations(top, radius / 4, horizon):
        E = fuzzy_witness(A, C, radius, decomposition=dec)
        if fresh(E):
            yield E
    vals = list(A.memberships())
    choices = (Fraction(0),) + tuple(level.lattice.values)
    for x in space.points:
        old = vals[x]
        for v in choices:
            if v == old:
                continue
            vals[x] = v
            E = FuzzySet.from_membership(space, vals)
            if fresh(E):
                yield E
        vals[x] = old
    rows = space.rows
    nbrs = [[y for y in space.points if rows[x][y] < r] for x in space.points]
    for n in range(1, horizon + 1):
        ptab = level.f.power_table(n)
        for v in space.points:
            vrow = rows[v]
            out = [Fraction(0)] * space.n
            for x in space.points:
                if vals[x]:
                    y = min(nbrs[x], key=lambda t: (vrow[ptab[t]], t))
                    if vals[x] > out[y]:
                        out[y] = vals[x]
            E = FuzzySet.from_membership(space, out)
            if fresh(E):
                yield E


def extract_hyper_witness(level: FuzzyLevel, A: FuzzySet, B: FuzzySet, n: int, epsilon):
    """Read a hyperspace witness off a fuzzy one.

    Finds a level ``alpha`` where the time-n cuts of the two orbits are
    more than ``epsilon`` apart and returns the cuts of ``A`` and ``B`` at
    ``xi^n(alpha)``, whose n-th images are exactly those time-n cuts.
    Returns ``(alpha, cut_A, cut_B, separation)`` or ``None``.
    """
    space = level.space
    eps = space.floor_bound(_fraction(epsilon))
    an = level.orbit(A, n)[n]
    bn = level.orbit(B, n)[n]
    g = level.g
    for alpha in sorted(set(an.levels) | set(bn.levels) | {ONE}):
        d = hausdorff_scaled(space, an.cut_mask(alpha), bn.cut_mask(alpha))
        if d > eps:
            beta = alpha
            for _ in range(n):
                beta = g.xi(beta)
            return alpha, A.cut_mask(beta), B.cut_mask(beta), Fraction(d, space.scale)
    return None


# ---------------------------------------------------------------- family verdicts


def certify_family(level, family: str | FamilyPredicate, epsilon, delta, horizon: int,
                   probes=None) -> SensitivityVerdict:
    """Family or multi-ball sensitivity from per-center separation sets.

    ``family`` is a :class:`FamilyPredicate` or a string such as
    ``"cofinite:3"`` or ``"multi:2"``.  Balls that cannot be enumerated
    contribute the lower bound from generated members.
    """
    epsilon, delta = _fraction(epsilon), _fraction(delta)
    centers, mode = resolve_probes(level, probes)
    sets, ball_mode = per_center_sets(level, centers, epsilon, delta, horizon)
    return family_verdict(level, family, centers, sets, epsilon, delta, horizon, mode, ball_mode)


def per_center_sets(level, centers, epsilon, delta, horizon):
    sets = []
    ball_mode = "exact"
    for c in centers:
        members, exact = ball_members(level, c, delta, horizon)
        if exact:
            sets.append(separation_times(level, c, delta, epsilon, horizon, members))
        else:
            ball_mode = "generated"
            sets.append(center_separation_times(level, c, members, epsilon, horizon))
    return sets, ball_mode


def family_verdict(level, family, centers, sets, epsilon, delta, horizon, mode, ball_mode):
    name = str(family)
    failing = None
    if isinstance(family, str) and family.startswith("multi"):
        k = int(family.partition(":")[2] or 2)
        ok, combo = multi_check(sets, k)
        if not ok:
            failing = [centers[i] for i in combo]
            failing = failing[0] if len(failing) == 1 else tuple(failing)
    else:
        fam = family if isinstance(family, FamilyPredicate) else FamilyPredicate.parse(family)
        for c, s in zip(centers, sets):
            if not family_classify(s, fam):
                failing = c
                break
    status = "certified" if failing is None else "refuted_at_horizon"
    def enc(a, _e=level.encode):
        return [_e(x) for x in a] if isinstance(a, tuple) else _e(a)
    return SensitivityVerdict(level.name, epsilon, delta, horizon, status, [], failing, name,
                              mode, len(centers), ball_mode, enc)


# ---------------------------------------------------------------- cross-level audit


@dataclass
class AuditReport:
    system: str
    g: str
    horizon: int
    constants: dict
    verdicts: dict
    forbidden: list
    checks: dict
    probes: dict

    @property
    def ok(self) -> bool:
        return not self.forbidden

    def status(self, level: str, column: str = "plain") -> str:
        return self.verdicts[level][column].status

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "g": self.g,
            "horizon": self.horizon,
            "constants": self.constants,
            "probes": self.probes,
            "table": {lvl: {col: v.status for col, v in row.items()}
                      for lvl, row in self.verdicts.items()},
            "verdicts": {lvl: {col: v.to_json() for col, v in row.items()}
                         for lvl, row in self.verdicts.items()},
            "checks": self.checks,
            "forbidden": self.forbidden,
        }


def _probe_sets(system, g, lattice, horizon, hyper_sample, fuzzy_sample, seed, cap, engine):
    rng = random.Random(seed)
    base = BaseLevel(system)
    hyper = HyperLevel(system, cap)
    fuzzy = FuzzyLevel(system, g, lattice, horizon, cap, engine)
    if grid_size(fuzzy.space, lattice) <= fuzzy_sample * 8 and fuzzy.is_enumerable():
        fz = _grid(fuzzy)
        fmode = "exhaustive"
    else:
        structured = [characteristic(CompactSet(fuzzy.space, m)) for m in hyper.structured_states()]
        fz = list(dict.fromkeys(structured + fuzzy.random_states(fuzzy_sample, rng)))
        fmode = f"sampled(seed={seed})"
    if hyper.is_enumerable():
        hz = hyper.states()
        hmode = "exhaustive"
    else:
        tops = [F.cut_mask(ONE) for F in fz]
        hz = sorted(set(hyper.structured_states() + hyper.random_states(hyper_sample, rng) + tops))
        hmode = f"sampled(seed={seed})"
    return (base, base.states(), "exhaustive"), (hyper, hz, hmode), (fuzzy, fz, fmode)


def cross_level_audit(system, g: MonotoneUnitFunction = IDENTITY, epsilon=Fraction(1, 2),
                      delta=Fraction(1, 16), horizon: int = 15, lattice: LevelLattice | None = None,
                      families: Sequence[str] = ("cofinite:3", "syndetic:4"), multi_k: int = 3,
                      hyper_sample: int = 60, fuzzy_sample: int = 30, seed: int = 0,
                      cap=None, engine: str = "direct") -> AuditReport:
    """Verdict table {base, hyper, fuzzy} x {plain, families, multi} with
    consistency checks between the levels.

    Constants: base and hyper use ``(epsilon, delta)``; the fuzzy level uses
    radius ``4*delta``, separation ``epsilon`` for plain sensitivity and
    ``epsilon/2`` for families and multi-sensitivity.

    Forbidden patterns, each reported with a witness:

    * ``extraction``: a fuzzy witness at a characteristic center whose
      extracted cuts fail to be a hyperspace witness;
    * ``lift``: a hyperspace witness at the top cut whose lift fails;
    * ``family-lift``: a hyperspace separation time of the top cut that is
      missing from the fuzzy separation set at ``epsilon/2``;
    * ``plain-implication``: hyper certified on all top cuts while the
      fuzzy level is refuted.
    """
    epsilon, delta = _fraction(epsilon), _fraction(delta)
    delta_f = 4 * delta
    eps_f_family = epsilon / 2
    if lattice is None:
        lattice = LevelLattice.of(Fraction(1, 2), 1)
    (base, bz, bmode), (hyper, hz, hmode), (fuzzy, fz, fmode) = _probe_sets(
        system, g, lattice, horizon, hyper_sample, fuzzy_sample, seed, cap, engine)
    space = base.space
    columns = ["plain"] + list(families) + [f"multi:{multi_k}"]
    verdicts = {}
    forbidden = []
    checks = {}

    # base and hyper rows
    for lvl, centers, mode in ((base, bz, bmode), (hyper, hz, hmode)):
        row = {"plain": certify_sensitivity(lvl, epsilon, delta, horizon, centers)}
        row["plain"].probe_mode = mode
        sets, ball_mode = per_center_sets(lvl, centers, epsilon, delta, horizon)
        for col in columns[1:]:
            row[col] = family_verdict(lvl, col, centers, sets, epsilon, delta, horizon, mode, ball_mode)
        verdicts[lvl.name] = row
        if lvl is hyper:
            hyper_sets = dict(zip(centers, sets))

    # fuzzy row
    plain_w = []
    failing = None
    lifts = extractions = family_lifts = 0
    fuzzy_sets = []
    fuzzy_ball_mode = "exact" if fmode == "exhaustive" else "generated"
    for A in fz:
        top = A.cut_mask(ONE)
        dec = decompose(A, delta_f)
        hmembers, hexact = ball_members(hyper, top, delta, horizon)
        hmembers = list(hmembers)
        # lift check: a hyper witness at the top cut must lift
        hw = find_witness(hyper, top, delta, epsilon, horizon, hmembers)
        w = None
        if hw is not None:
            lifts += 1
            E, sep = lift_hyper_witness(fuzzy, A, hw.perturbation, delta_f, epsilon, hw.time, dec)
            if sep > epsilon:
                w = Witness(A, E, hw.time, sep)
            else:
                forbidden.append({"pattern": "lift", "center": fuzzy.encode(A),
                                  "hyper_witness": hyper.encode(hw.perturbation), "time": hw.time,
                                  "separation": format_rational(sep)})
        if w is None:
            members, _ = ball_members(fuzzy, A, delta_f, horizon)
            w = find_witness(fuzzy, A, delta_f, epsilon, horizon, members)
        if w is None:
            if failing is None:
                failing = A
        else:
            plain_w.append(w)
            # extraction check at characteristic centers
            if len(A.levels) == 1:
                extractions += 1
                ex = extract_hyper_witness(fuzzy, A, w.perturbation, w.time, epsilon)
                ok = False
                if ex is not None:
                    alpha, ca, cb, sep = ex
                    if cb:
                        d0 = hausdorff_scaled(space, ca, cb)
                        dn = hyper.distance_scaled(hyper.orbit(ca, w.time)[w.time],
                                                   hyper.orbit(cb, w.time)[w.time])
                        ok = (ca == top and d0 < space.strict_bound(delta_f)
                              and dn > space.floor_bound(epsilon))
                    else:
                        ok = True  # empty cut: no hyperspace set to report
                if not ok:
                    forbidden.append({"pattern": "extraction", "center": fuzzy.encode(A),
                                      "fuzzy_witness": fuzzy.encode(w.perturbation),
                                      "time": w.time})
        # fuzzy separation set at epsilon/2: exact grid diameters (if any) plus lifts
        if fmode == "exhaustive":
            grid_ball = fuzzy.ball(A, delta_f)
            fset = separation_times(fuzzy, A, delta_f, eps_f_family, horizon, grid_ball)
        else:
            fset = center_separation_times(
                fuzzy, A, itertools.islice(fuzzy_perturbations(fuzzy, A, delta_f, horizon), 400),
                eps_f_family, horizon)
        hset = hyper_sets.get(top)
        if hset is None:
            hset = (separation_times(hyper, top, delta, epsilon, horizon, hmembers) if hexact
                    else center_separation_times(hyper, top, hmembers, epsilon, horizon))
        lifted = set()
        horb = hyper.orbit(top, horizon)
        half = space.floor_bound(eps_f_family)
        for n in hset.sorted():
            best, bestd = None, -1
            for C in hmembers:
                d = hyper.distance_scaled(horb[n], hyper.orbit(C, n)[n])
                if d > bestd:
                    best, bestd = C, d
            if best is None or not bestd > half:
                forbidden.append({"pattern": "family-lift", "center": fuzzy.encode(A), "time": n,
                                  "reason": "no hyperspace member beyond epsilon/2"})
                continue
            family_lifts += 1
            E, sep = lift_hyper_witness(fuzzy, A, best, delta_f, eps_f_family, n, dec)
            if sep > eps_f_family:
                lifted.add(n)
            else:
                forbidden.append({"pattern": "family-lift", "center": fuzzy.encode(A), "time": n,
                                  "separation": format_rational(sep)})
        fuzzy_sets.append(fset | TimeWindowSet(horizon, frozenset(lifted)))

    frow = {"plain": SensitivityVerdict(
        "fuzzy", epsilon, delta_f, horizon,
        "certified" if failing is None else "refuted_at_horizon",
        plain_w, failing, "plain", fmode, len(fz), fuzzy_ball_mode, fuzzy.encode)}
    for col in columns[1:]:
        frow[col] = family_verdict(fuzzy, col, fz, fuzzy_sets, eps_f_family, delta_f, horizon,
                                   fmode, fuzzy_ball_mode)
    verdicts["fuzzy"] = frow

    # verdict-level implication: hyper certified on the top cuts => fuzzy certified
    tops = {A.cut_mask(ONE) for A in fz}
    hyper_on_tops = all(find_witness(hyper, t, delta, epsilon, horizon) is not None for t in tops)
    if hyper_on_tops and not frow["plain"].certified:
        forbidden.append({"pattern": "plain-implication",
                          "center": fuzzy.encode(frow["plain"].failing_center)})
    checks.update({"lifts_checked": lifts, "extractions_checked": extractions,
                   "family_lifts_checked": family_lifts,
                   "hyper_certified_on_top_cuts": hyper_on_tops})
    constants = {
        "base": {"epsilon": format_rational(epsilon), "delta": format_rational(delta)},
        "hyper": {"epsilon": format_rational(epsilon), "delta": format_rational(delta)},
        "fuzzy_plain": {"epsilon": format_rational(epsilon), "delta": format_rational(delta_f)},
        "fuzzy_family": {"epsilon": format_rational(eps_f_family), "delta": format_rational(delta_f)},
        "lattice": lattice.to_json(),
    }
    for lvl in ("hyper", "fuzzy"):
        m = verdicts[lvl]["plain"].min_separation()
        constants[f"{lvl}_min_witness_separation"] = None if m is None else format_rational(m)
    probes = {"base": {"mode": bmode, "count": len(bz)},
              "hyper": {"mode": hmode, "count": len(hz)},
              "fuzzy": {"mode": fmode, "count": len(fz)}}
    name = getattr(system, "describe", lambda: "system")()
    gname = g.to_json() if isinstance(g.to_json(), str) else g.name
    return AuditReport(name, gname, horizon, constants, verdicts, forbidden, checks, probes)


__all__ = [
    "TimeWindowSet", "FamilyPredicate", "SensitivityVerdict", "Witness", "family_classify",
    "separation_times", "center_separation_times", "certify_sensitivity", "certify_family",
    "find_witness", "fuzzy_decompose", "decompose", "fuzzy_witness", "fuzzy_perturbations",
    "extract_hyper_witness", "lift_hyper_witness", "cross_level_audit", "AuditReport",
    "common_times", "multi_check", "make_level",
]
