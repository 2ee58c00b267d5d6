"""Verification suites and their reports.

Each suite runs a group of checks on a :class:`~fuzzdyn.scenario.Scenario`
and returns a :class:`Report`.  A check ends as ``pass``, ``fail`` (a
contradiction of a proved statement, always with a witness),
``refuted_at_horizon`` (an expected negative verdict) or ``skipped``.
Reports are deterministic: no wall-clock data is emitted unless timing is
requested explicitly.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import __version__
from .errors import GridTooLarge, NotApplicable, ScenarioInvalid
from .fuzzifier import (FuzzifiedSystem, check_subset_inclusion, check_top_cut_equality,
                        fuzzify_cutwise, fuzzify_direct)
from .fuzzyset import (FuzzySet, LevelLattice, characteristic, enumerate_fuzzy_grid, grid_size,
                       levelwise_distance, levelwise_distance_scaled, random_fuzzy_set)
from .gfunction import CAP2X, IDENTITY, find_fixation_level, probe_grid
from .groundspace import (DynMap, FiniteMetricSpace, dyadic_grid, explicit, format_rational,
                          tent_grid)
from .hyperspace import (CompactSet, hausdorff, hausdorff_matrix, hausdorff_scaled,
                         members_of, union_bound_check)
from .levels import BaseLevel, HyperLevel
from .scenario import Scenario
from .sensitivity import (FamilyPredicate, TimeWindowSet, certify_family, common_times,
                          cross_level_audit, decompose, family_classify, fuzzy_witness,
                          multi_check)
from .transitivity import (HyperBall, audit_weak_mixing_transfer, build_separation,
                           certify_transitive, certify_weak_mixing, chi_transport_times,
                           interval_basis, singleton_basis, verify_separation, vietoris_basis,
                           xi_levels)

REPORT_SCHEMA = "fuzzdyn/1"

# Anchors name the mathematical statement a check exercises.
ANCHORS = {
    "cut-calculus": "cuts of the n-th g-fuzzification are images of cuts at xi_g^n levels",
    "top-cut-counterexample": "a g with g(t) = 1 for some t < 1 makes the top cut grow",
    "top-cut-equality": "top cut of the iterate equals the image of the top cut when only 1 maps to 1",
    "cut-inclusion": "the image of an alpha-cut lies in the g(alpha)-cut of the image",
    "union-bound": "a union of sets each closer than xi to A stays within xi of A",
    "decomposition": "plateau peeling stays within delta/4 and keeps the top cut",
    "fuzzy-lift": "a hyperspace witness near the top cut lifts to a fuzzy witness",
    "sensitivity-transfer": "fuzzy sensitivity and hyperspace sensitivity imply each other",
    "family-sensitivity-transfer": "family sensitivity of the hyperspace lifts at half the constant",
    "multi-sensitivity-transfer": "multi-sensitivity of the hyperspace lifts to the fuzzy level",
    "window-families": "window semantics of Furstenberg families",
    "fixation-level": "a level moved by xi_g whose xi-orbit becomes constant",
    "non-transitivity": "g-fuzzifications with a fixation level are never transitive",
    "weak-mixing-transfer": "a transitive fuzzification forces a weakly mixing hyperspace",
    "weak-mixing-implies-transitive": "weak mixing implies transitivity",
    "chi-transport": "return times of hyperspace balls survive the characteristic embedding",
    "hausdorff-metric": "Hausdorff distance is a metric on nonempty subsets",
    "levelwise-metric": "the levelwise distance is a metric on normal fuzzy sets",
    "characteristic-isometry": "the characteristic embedding is an isometry",
}

SUITES = ("prop31-oracle", "example31", "lemma34", "prop43-transport", "sensitivity-audit",
          "family", "theorem63", "theorem61", "metric-axioms")

EXHAUSTIVE_SETS = 5000
MAX_ORACLE_N = 8
MAX_TOPCUT_N = 10


@dataclass
class CheckRecord:
    name: str
    paper_anchor: str
    status: str
    witness: object = None
    timing: float | None = None

    def __post_init__(self):
        if self.paper_anchor not in ANCHORS:
            raise ValueError(f"unknown anchor {self.paper_anchor!r}")
        if self.status not in ("pass", "fail", "refuted_at_horizon", "skipped"):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing check needs a witness")

    def to_json(self, timing: bool = False) -> dict:
        return {"name": self.name, "paper_anchor": self.paper_anchor, "status": self.status,
                "witness": self.witness,
                "timing": (round(self.timing, 6) if timing and self.timing is not None else None)}


@dataclass
class Report:
    suite: str
    scenario: dict
    checks: list = field(default_factory=list)
    version: str = __version__

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self, timing: bool = False) -> dict:
        return {"schema": REPORT_SCHEMA, "tool": "fuzzdyn",
                "version": self.version, "suite": self.suite, "scenario": self.scenario,
                "checks": [c.to_json(timing) for c in self.checks]}


def emit_report(report: Report, fmt: str = "json", timing: bool = False) -> tuple[str, int]:
    """Serialize a report; returns ``(text, exit code)``, the exit code being
    0 exactly when no check failed."""
    if fmt == "json":
        text = json.dumps(report.to_json(timing), indent=2) + "\n"
    elif fmt == "text":
        lines = [f"{c.name}\t{c.status}\t{c.paper_anchor}" for c in report.checks]
        text = "\n".join(lines) + ("\n" if lines else "")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return text, report.exit_code


def _timed(name: str, anchor: str, fn: Callable[[], tuple]) -> CheckRecord:
    t0 = time.perf_counter()
    status, witness = fn()
    return CheckRecord(name, anchor, status, witness, time.perf_counter() - t0)


def _sets_for(space, lattice, count, rng, normal=False):
    """Every grid set when the grid is small, else ``count`` random ones."""
    if grid_size(space, lattice) <= EXHAUSTIVE_SETS:
        sets = [A for A in enumerate_fuzzy_grid(space, lattice, normal) if not A.is_empty()]
        return sets, "exhaustive"
    return [random_fuzzy_set(space, lattice, rng, normal=True) for _ in range(count)], "random"


def subspace(space: FiniteMetricSpace, k: int) -> FiniteMetricSpace:
    """The first ``k`` points with the restricted metric."""
    idx = range(min(k, space.n))
    labels = None if space.labels is None else tuple(space.labels[i] for i in idx)
    return FiniteMetricSpace(tuple(tuple(space.dist[i][j] for j in idx) for i in idx), labels)


# ---------------------------------------------------------------- suites


def suite_prop31(sc: Scenario) -> list:
    f = sc.system.map
    sys = FuzzifiedSystem(f, sc.g)
    rng = random.Random(sc.seed)

    def run():
        sets, mode = _sets_for(f.space, sc.lattice, sc.samples["random_cases"], rng)
        compared = 0
        for A in sets:
            cur = A
            for n in range(1, MAX_ORACLE_N + 1):
                cur = fuzzify_direct(sys, cur)
                other = fuzzify_cutwise(sys, A, n)
                compared += 1
                if cur != other:
                    return "fail", {"A": A.to_json(), "n": n, "direct": cur.to_json(),
                                    "cutwise": other.to_json()}
        return "pass", {"compared": compared, "sets": len(sets), "mode": mode,
                        "max_n": MAX_ORACLE_N}

    return [_timed("cutwise-vs-direct", "cut-calculus", run)]


def example31_instance():
    space = dyadic_grid(4)
    f = DynMap(space, tuple(space.points))
    A = FuzzySet.from_membership(space, space.labels)
    return space, f, A


def suite_example31(sc: Scenario) -> list:
    def run():
        space, f, A = example31_instance()
        sys = FuzzifiedSystem(f, CAP2X)
        top = fuzzify_direct(sys, A).cut_mask(CAP2X(Fraction(1)))
        expected = sum(1 << x for x in space.points if space.label(x) >= Fraction(1, 2))
        pushed = f.image_mask(A.cut_mask(Fraction(1)))
        witness = {"top_cut": "[1/2,1] grid", "f_image": "{1}",
                   "top_cut_labels": [format_rational(space.label(x)) for x in members_of(top)],
                   "f_image_labels": [format_rational(space.label(x)) for x in members_of(pushed)]}
        ok = top == expected and pushed == 1 << (space.n - 1) and top != pushed
        return ("pass" if ok else "fail"), witness

    return [_timed("top-cut-grows-under-cap2x", "top-cut-counterexample", run)]


def suite_lemma34(sc: Scenario) -> list:
    f = sc.system.map
    rng = random.Random(sc.seed)
    sets, mode = _sets_for(f.space, sc.lattice, sc.samples["random_cases"], rng, normal=True)
    sets = [A for A in sets if A.is_normal()]
    out = []

    def equality():
        if not sc.g.preimage_of_one_is_one():
            return "skipped", {"reason": "g takes the value 1 below 1"}
        sys = FuzzifiedSystem(f, sc.g)
        first_proper = None
        compared = 0
        for A in sets:
            for n in range(1, MAX_TOPCUT_N + 1):
                v = check_top_cut_equality(sys, A, n)
                compared += 1
                if v.status != "equal" and first_proper is None:
                    first_proper = {"A": A.to_json(), "n": n, "extra_point": v.witness}
        if first_proper is not None:
            return "fail", first_proper
        return "pass", {"compared": compared, "mode": mode}

    out.append(_timed("top-cut-equality", "top-cut-equality", equality))

    def inclusion():
        sys = FuzzifiedSystem(f, sc.g)
        levels = [Fraction(0)] + list(sc.lattice.values)
        count = 0
        for A in sets[: sc.samples["random_cases"]]:
            for alpha in levels + [Fraction(rng.randrange(1, 64), 64)]:
                count += 1
                if not check_subset_inclusion(sys, A, alpha):
                    return "fail", {"A": A.to_json(), "alpha": format_rational(alpha)}
        return "pass", {"compared": count}

    out.append(_timed("cut-inclusion", "cut-inclusion", inclusion))

    def cap2x_superset():
        sys = FuzzifiedSystem(f, CAP2X)
        for A in sets:
            v = check_top_cut_equality(sys, A, 1)
            if v.status == "proper_superset":
                return "pass", {"A": A.to_json(), "extra_point": v.witness}
        space, fe, Ae = example31_instance()
        v = check_top_cut_equality(FuzzifiedSystem(fe, CAP2X), Ae, 1)
        if v.status == "proper_superset":
            return "pass", {"instance": "identity on the 1/16 grid, A(x) = x", "extra_point": v.witness}
        return "fail", {"reason": "no proper superset found for cap2x"}

    out.append(_timed("cap2x-proper-superset", "top-cut-counterexample", cap2x_superset))
    return out


def _random_near(space, A: int, xi, rng) -> int:
    """A random set within Hausdorff distance < xi of ``A``: every point of
    ``A`` is kept or moved to a point closer than xi, plus a few extra
    points closer than xi to ``A``."""
    rows = space.rows
    r = space.strict_bound(xi)
    pts = members_of(A)
    out = 0
    for x in pts:
        near = [y for y in space.points if rows[x][y] < r]
        out |= 1 << rng.choice(near)
    for y in space.points:
        if rng.random() < 0.3 and any(rows[x][y] < r for x in pts):
            out |= 1 << y
    # every point of A needs a partner in the result
    for x in pts:
        if not any(rows[x][y] < r for y in members_of(out)):
            out |= 1 << x
    return out


def suite_prop43(sc: Scenario) -> list:
    rng = random.Random(sc.seed)
    space8 = subspace(sc.system.space, 8)
    out = []

    def union_bound():
        dists = sorted({d for row in space8.dist for d in row if d > 0})
        count = 0
        for _ in range(sc.samples["random_cases"]):
            A = 0
            while not A:
                A = rng.getrandbits(space8.n)
            xi = rng.choice(dists) if dists else Fraction(1)
            if rng.random() < 0.5:
                xi += Fraction(rng.randrange(1, 8), 64)
            Bs = [CompactSet(space8, _random_near(space8, A, xi, rng))
                  for _ in range(rng.randrange(1, 5))]
            Aset = CompactSet(space8, A)
            if any(hausdorff(Aset, B) >= xi for B in Bs):
                continue
            count += 1
            if not union_bound_check(Aset, Bs, xi):
                return "fail", {"A": list(members_of(A)), "B": [list(B.members) for B in Bs],
                                "xi": format_rational(xi)}
        return "pass", {"instances": count}

    out.append(_timed("union-bound", "union-bound", union_bound))

    f = sc.system.map
    space = f.space
    sys = FuzzifiedSystem(f, sc.g)
    hyper = HyperLevel(f)

    def decomposition():
        count = 0
        for _ in range(min(500, sc.samples["random_cases"])):
            A = random_fuzzy_set(space, sc.lattice, rng, normal=True)
            delta = Fraction(rng.randrange(1, 9), 8)
            D = decompose(A, delta)
            d = levelwise_distance(A, D.fuzzy)
            top_ok = A.cut_mask(Fraction(1)) & ~D.fuzzy.cut_mask(Fraction(1)) == 0
            count += 1
            if d > delta / 4 or not top_ok:
                return "fail", {"A": A.to_json(), "delta": format_rational(delta),
                                "distance": format_rational(d)}
        return "pass", {"instances": count}

    out.append(_timed("decomposition-bound", "decomposition", decomposition))

    def lift():
        count = 0
        if not sc.g.preimage_of_one_is_one():
            return "skipped", {"reason": "lifted separation needs g^-1(1) = {1}"}
        N = min(sc.horizon, MAX_TOPCUT_N)
        for _ in range(min(300, sc.samples["random_cases"])):
            A = random_fuzzy_set(space, sc.lattice, rng, normal=True)
            delta = Fraction(rng.randrange(1, 9), 8)
            top = A.cut_mask(Fraction(1))
            cands = list(itertools.islice(hyper.perturbations(top, delta / 4, N), 20)) or [top]
            C = rng.choice(cands)
            E = fuzzy_witness(A, C, delta)
            count += 1
            a, e = A, E
            ha, hc = top, C
            for n in range(N + 1):
                if levelwise_distance_scaled(a, e) < hausdorff_scaled(space, ha, hc):
                    return "fail", {"A": A.to_json(), "C": list(members_of(C)), "n": n,
                                    "delta": format_rational(delta)}
                a, e = fuzzify_direct(sys, a), fuzzify_direct(sys, e)
                ha, hc = f.image_mask(ha), f.image_mask(hc)
        return "pass", {"instances": count, "horizon": N}

    out.append(_timed("lifted-separation", "fuzzy-lift", lift))
    return out


def _verdict_status(v) -> str:
    return "pass" if v.certified else "refuted_at_horizon"


def suite_sensitivity(sc: Scenario) -> list:
    fam = sc.families
    families = (f"cofinite:{fam.T}", f"syndetic:{fam.G}")
    t0 = time.perf_counter()
    audit = cross_level_audit(sc.system, sc.g, sc.epsilon, sc.delta, sc.horizon, sc.lattice,
                              families, fam.k, sc.samples["hyper"], sc.samples["fuzzy"],
                              sc.seed, sc.cap, sc.engine)
    elapsed = time.perf_counter() - t0
    out = []
    data = audit.to_json()
    for level, row in audit.verdicts.items():
        for col, v in row.items():
            anchor = ("sensitivity-transfer" if col == "plain" else
                      "multi-sensitivity-transfer" if col.startswith("multi") else
                      "family-sensitivity-transfer")
            w = data["verdicts"][level][col]
            w["witnesses"] = w["witnesses"][:5]
            out.append(CheckRecord(f"{level}/{col}", anchor, _verdict_status(v), w))
    witness = {"table": data["table"], "constants": data["constants"], "probes": data["probes"],
               "checks": data["checks"], "forbidden": data["forbidden"]}
    out.append(CheckRecord("implication-audit", "sensitivity-transfer",
                           "fail" if audit.forbidden else "pass", witness, elapsed))
    return out


def _hyper_probes(sc: Scenario, hyper: HyperLevel):
    if hyper.is_enumerable():
        return None, "exhaustive"
    rng = random.Random(sc.seed)
    probes = sorted(set(hyper.structured_states() + hyper.random_states(sc.samples["hyper"], rng)))
    return probes, f"sampled(seed={sc.seed})"


def suite_family(sc: Scenario) -> list:
    fam = sc.families
    names = [f"infinite:{fam.L}", f"cofinite:{fam.T}", f"syndetic:{fam.G}", "full", f"multi:{fam.k}"]
    out = []
    base = BaseLevel(sc.system)
    hyper = HyperLevel(sc.system, sc.cap)
    hprobes, hmode = _hyper_probes(sc, hyper)
    for lvl, probes in ((base, None), (hyper, hprobes)):
        for name in names:
            def run(lvl=lvl, name=name, probes=probes):
                v = certify_family(lvl, name, sc.epsilon, sc.delta, sc.horizon, probes)
                w = v.to_json()
                if lvl is hyper:
                    w["probe_mode"] = hmode
                return _verdict_status(v), w
            out.append(_timed(f"{lvl.name}/{name}", "window-families", run))

    def algebra():
        rng = random.Random(sc.seed)
        N = sc.horizon
        for _ in range(500):
            T1, T2 = rng.randrange(1, N + 2), rng.randrange(1, N + 2)
            a = TimeWindowSet(N, frozenset(n for n in range(N + 1) if n >= N - T1 or rng.random() < .5))
            b = TimeWindowSet(N, frozenset(n for n in range(N + 1) if n >= N - T2 or rng.random() < .5))
            c = a & b
            if not family_classify(c, FamilyPredicate("cofinite", min(T1, T2))):
                return "fail", {"a": a.sorted(), "b": b.sorted(), "T": [T1, T2]}
            sets = [TimeWindowSet(N, frozenset(n for n in range(N + 1) if rng.random() < .6))
                    for _ in range(3)]
            ok, _ = multi_check(sets, 3)
            if ok != bool(common_times(sets)) and ok:
                return "fail", {"sets": [s.sorted() for s in sets]}
        return "pass", {"instances": 500}

    out.append(_timed("window-filter-algebra", "window-families", algebra))
    return out


def _two_point_systems():
    dist = [[0, 1], [1, 0]]
    return [explicit(dist, tab) for tab in itertools.product(range(2), repeat=2)]


def suite_theorem63(sc: Scenario) -> list:
    out = []
    g = sc.g
    # scenario levels first, so a complete lattice is used when it can be
    fix = find_fixation_level(g, list(sc.lattice.values), sc.horizon) \
        or find_fixation_level(g, probe_grid(64), sc.horizon)
    if fix is None:
        reason = "xi_g(z) = z for every probed level z, or no fixation within the horizon"
        out.append(CheckRecord("fixation-level", "fixation-level", "skipped",
                               {"reason": reason, "error": NotApplicable.__name__}))
        out.append(CheckRecord("separation", "non-transitivity", "skipped", {"reason": reason}))
        return out
    out.append(CheckRecord("fixation-level", "fixation-level", "pass",
                           {"z": format_rational(fix.z), "m": fix.m}))
    needed = xi_levels(g, fix.z, sc.horizon)
    missing = needed - set(sc.lattice.values)
    if missing:
        raise ScenarioInvalid("lattice", "misses " + ", ".join(format_rational(v) for v in sorted(missing)))
    lattice = LevelLattice(tuple(needed))
    instances = [(f"two-point/map={list(s.map.table)}", s) for s in _two_point_systems()]
    instances.append(("tent_grid(3)", tent_grid(3)))
    instances.append((sc.system.describe(), sc.system))
    for label, system in instances:
        def run(system=system):
            space = system.space
            a, b = 0, space.n - 1
            con = build_separation(space, g, fix.z, fix.m, a, b, lattice, sc.horizon)
            try:
                v = verify_separation(con, FuzzifiedSystem(system.map, g), sc.horizon, sc.cap)
            except GridTooLarge as exc:
                return "skipped", {"reason": str(exc), "construction": con.to_json()}
            w = {"construction": con.to_json(), "verdict": v.to_json()}
            return ("pass" if v.separated else "fail"), w
        out.append(_timed(f"separation/{label}", "non-transitivity", run))
    return out


def transitivity_basis(space):
    if space.labels is not None and all(isinstance(v, Fraction) for v in space.labels) \
            and max(space.labels) <= 1 and space.n > 8:
        return interval_basis(space, Fraction(1, 4)), "intervals of width 1/4"
    return singleton_basis(space), "singletons"


def suite_theorem61(sc: Scenario) -> list:
    out = []
    system = sc.system
    space = system.space
    basis, basis_name = transitivity_basis(space)
    lattice = LevelLattice.of(Fraction(1, 2), 1)
    if space.n <= 6:
        radius = space.min_distance()
        hbasis = [HyperBall(m, radius) for m in range(1, 1 << space.n)]
        hname = f"Hausdorff balls of radius {format_rational(radius)} around every subset"
    else:
        hbasis = vietoris_basis(basis, max_size=min(len(basis), 4))
        hname = f"Vietoris sets over {basis_name}"

    def transfer():
        a = audit_weak_mixing_transfer(system, sc.g, hbasis, sc.horizon, lattice)
        w = a.to_json()
        w["hyper_basis"] = hname
        if a.status == "violation":
            return "fail", w
        if a.status == "inconclusive":
            return "skipped", w
        return "pass", w

    out.append(_timed("hyper-weak-mixing-or-blocking-pair", "weak-mixing-transfer", transfer))

    def wm_implies_t():
        wm = certify_weak_mixing("base", system, basis, sc.horizon)
        tr = certify_transitive("base", system, basis, sc.horizon)
        w = {"basis": basis_name, "weakly_mixing": wm.to_json(), "transitive": tr.to_json()}
        return ("fail" if wm.holds and not tr.holds else "pass"), w

    out.append(_timed("weak-mixing-implies-transitive", "weak-mixing-implies-transitive", wm_implies_t))

    def chi():
        if space.n > 5:
            return "skipped", {"reason": "characteristic transport is checked on at most 5 points"}
        radius = space.min_distance()
        pairs = 0
        for A in range(1, 1 << space.n):
            for B in range(1, 1 << space.n):
                t = chi_transport_times(system, IDENTITY, A, B, radius, sc.horizon, lattice)
                pairs += 1
                if not (t["hyper"].members == t["chi"].members and t["chi"].issubset(t["all"])
                        and t["all"].issubset(t["hyper"])):
                    return "fail", {"A": list(members_of(A)), "B": list(members_of(B)),
                                    **{k: v.sorted() for k, v in t.items()}}
        return "pass", {"pairs": pairs, "radius": format_rational(radius)}

    out.append(_timed("chi-transport", "chi-transport", chi))
    return out


def _metric_violation(D: np.ndarray, same: np.ndarray | None = None):
    n = D.shape[0]
    if (D != D.T).any():
        i, j = map(int, np.argwhere(D != D.T)[0])
        return {"axiom": "symmetry", "at": [i, j]}
    off = ~np.eye(n, dtype=bool) if same is None else ~same
    if (np.diag(D) != 0).any():
        return {"axiom": "zero-diagonal"}
    if ((D == 0) & off).any():
        i, j = map(int, np.argwhere((D == 0) & off)[0])
        return {"axiom": "identity", "at": [i, j]}
    for j in range(n):
        bad = D > D[:, j][:, None] + D[j, :][None, :]
        if bad.any():
            i, k = map(int, np.argwhere(bad)[0])
            return {"axiom": "triangle", "at": [i, j, k]}
    return None


def suite_metric(sc: Scenario) -> list:
    out = []
    base = sc.system.space

    def hd():
        sp = subspace(base, 6)
        masks = list(range(1, 1 << sp.n))
        D = hausdorff_matrix(sp, masks)
        bad = _metric_violation(D)
        if bad:
            return "fail", bad
        return "pass", {"points": sp.n, "sets": len(masks)}

    out.append(_timed("hausdorff-axioms", "hausdorff-metric", hd))

    def linf():
        k = 1
        while k < base.n and (len(sc.lattice) + 1) ** (k + 1) <= 200:
            k += 1
        sp = subspace(base, k)
        sets = [A for A in enumerate_fuzzy_grid(sp, sc.lattice, True)]
        n = len(sets)
        D = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = levelwise_distance_scaled(sets[i], sets[j])
        bad = _metric_violation(D)
        if bad:
            return "fail", bad
        return "pass", {"points": sp.n, "grid_members": n}

    out.append(_timed("levelwise-axioms", "levelwise-metric", linf))

    def chi():
        sp = subspace(base, 8)
        masks = list(range(1, 1 << sp.n))
        H = hausdorff_matrix(sp, masks)
        chis = [characteristic(CompactSet(sp, m)) for m in masks]
        for i in range(len(masks)):
            for j in range(i + 1, len(masks)):
                if levelwise_distance_scaled(chis[i], chis[j]) != H[i, j]:
                    return "fail", {"A": list(members_of(masks[i])), "B": list(members_of(masks[j]))}
        return "pass", {"points": sp.n, "pairs": len(masks) * (len(masks) - 1) // 2}

    out.append(_timed("characteristic-isometry", "characteristic-isometry", chi))
    return out


RUNNERS = {
    "prop31-oracle": suite_prop31,
    "example31": suite_example31,
    "lemma34": suite_lemma34,
    "prop43-transport": suite_prop43,
    "sensitivity-audit": suite_sensitivity,
    "family": suite_family,
    "theorem63": suite_theorem63,
    "theorem61": suite_theorem61,
    "metric-axioms": suite_metric,
}


def run_suite(scenario: Scenario, suite: str) -> Report:
    """Run one named suite, or ``"all"`` for every suite in order."""
    if suite == "all":
        checks = []
        for name in SUITES:
            for c in RUNNERS[name](scenario):
                c.name = f"{name}/{c.name}"
                checks.append(c)
        return Report("all", scenario.echo(), checks)
    if suite not in RUNNERS:
        raise ScenarioInvalid("suite", f"unknown suite {suite!r}")
    return Report(suite, scenario.echo(), RUNNERS[suite](scenario))
