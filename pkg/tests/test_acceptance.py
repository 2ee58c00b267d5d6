"""Acceptance criteria C1 to C10.

Each test records one ``C<k> PASS|FAIL ...`` line, printed in the pytest
summary.  Run the file directly to execute the criteria without pytest.
"""

from __future__ import annotations

import functools
import itertools
import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import conftest  # noqa: E402

from fuzzdyn import (  # noqa: E402
    DYADIC_STAIRCASE, IDENTITY, CompactSet, DynMap, FuzzifiedSystem, LevelLattice,
    cross_level_audit, enumerate_fuzzy_grid, find_fixation_level, hausdorff, identity_system,
    rotation, tent_grid, union_bound_check, xi_iter)
from fuzzdyn.groundspace import line_space  # noqa: E402
from fuzzdyn.cli import main as cli_main  # noqa: E402
from fuzzdyn.fuzzifier import (  # noqa: E402
    check_subset_inclusion, check_top_cut_equality, fuzzify_cutwise, fuzzify_direct,
    iterate_direct)
from fuzzdyn.fuzzyset import random_fuzzy_set  # noqa: E402
from fuzzdyn.gfunction import Step, cap2x  # noqa: E402
from fuzzdyn.hyperspace import members_of  # noqa: E402
from fuzzdyn.scenario import load_scenario  # noqa: E402
from fuzzdyn.suites import example31_instance, run_suite  # noqa: E402
from fuzzdyn.transitivity import (  # noqa: E402
    HyperBall, audit_weak_mixing_transfer, build_separation, certify_weak_mixing,
    interval_basis, verify_separation, vietoris_basis, xi_levels)

LATTICE3 = LevelLattice.of(F(1, 4), F(1, 2), 1)
CAP2X = cap2x()


def criterion(tag: str, limit: float | None = None):
    """Record a pass/fail line for the wrapped test, including its runtime."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            ok = False
            detail = ""
            try:
                detail = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - t0
                if limit is not None:
                    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
                ok = True
            except Exception as exc:
                detail = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                raise
            finally:
                elapsed = time.perf_counter() - t0
                budget = f" (limit {limit:g}s)" if limit is not None else ""
                line = f"{tag} {'PASS' if ok else 'FAIL'} {elapsed:.2f}s{budget} {detail}".rstrip()
                conftest.ACCEPTANCE_LINES.append(line)
        return run

    return wrap


def random_step(rng: random.Random, den: int = 16) -> Step:
    k = rng.randint(2, 5)
    inner = sorted(rng.sample(range(1, den), k - 1))
    bounds = [F(0)] + [F(c, den) for c in inner] + [F(1)]
    values = [F(0)] + sorted(F(rng.randint(0, den), den) for _ in range(k - 1))
    return Step(bounds, values)


def g_family(seed: int = 31) -> list:
    rng = random.Random(seed)
    return [IDENTITY, CAP2X, DYADIC_STAIRCASE] + [random_step(rng) for _ in range(5)]


def random_table(rng: random.Random, n: int) -> tuple:
    return tuple(rng.randrange(n) for _ in range(n))


@criterion("C1", limit=0.1)
def test_c1_top_cut_counterexample_exact():
    space, f, A = example31_instance()
    assert space.n == 17 and f.table == tuple(space.points)
    sysm = FuzzifiedSystem(f, CAP2X)
    top = fuzzify_direct(sysm, A).cut_mask(CAP2X(F(1)))
    half_up = {x for x in space.points if space.label(x) >= F(1, 2)}
    assert set(members_of(top)) == half_up
    pushed = f.image_mask(A.cut_mask(F(1)))
    assert [space.label(x) for x in members_of(pushed)] == [F(1)]
    assert top != pushed
    return "top cut = grid on [1/2, 1], f(top) = {1}"


@criterion("C2", limit=60)
def test_c2_cutwise_matches_direct():
    rng = random.Random(2)
    gs = g_family()
    compared = 0
    for size in range(1, 7):
        space = identity_system(size).space
        f = DynMap(space, random_table(rng, size))
        sets = list(enumerate_fuzzy_grid(space, LATTICE3))
        for g in gs:
            sysm = FuzzifiedSystem(f, g)
            for A in sets:
                cur = A
                for n in range(1, 9):
                    cur = fuzzify_direct(sysm, cur)
                    other = fuzzify_cutwise(sysm, A, n)
                    assert cur == other, f"mismatch at {A!r}, n={n}, g={g}"
                    compared += 1
    for _ in range(10_000):
        size = rng.randint(1, 12)
        space = identity_system(size).space
        sysm = FuzzifiedSystem(DynMap(space, random_table(rng, size)), rng.choice(gs))
        A = random_fuzzy_set(space, LATTICE3, rng, normal=False)
        n = rng.randint(1, 8)
        assert iterate_direct(sysm, A, n) == fuzzify_cutwise(sysm, A, n)
        compared += 1
    return f"{compared} comparisons, 0 mismatches"


@criterion("C3")
def test_c3_top_cut_equality_and_inclusion():
    rng = random.Random(3)
    strict = [g for g in g_family() if g.preimage_of_one_is_one()]
    assert IDENTITY in strict and DYADIC_STAIRCASE in strict and len(strict) >= 3
    checked = 0
    for size in range(1, 7):
        space = identity_system(size).space
        tables = (itertools.product(range(size), repeat=size) if size <= 3
                  else [random_table(rng, size) for _ in range(3)])
        sets = [A for A in enumerate_fuzzy_grid(space, LATTICE3, require_normal=True)]
        for table in tables:
            f = DynMap(space, tuple(table))
            for g in strict:
                sysm = FuzzifiedSystem(f, g)
                for A in sets:
                    top = A.cut_mask(F(1))
                    cur = A
                    for n in range(1, 11):
                        cur = fuzzify_direct(sysm, cur)
                        ptab = f.power_table(n)
                        pushed = 0
                        for x in members_of(top):
                            pushed |= 1 << ptab[x]
                        assert cur.cut_mask(F(1)) == pushed, f"top cut differs: {A!r}, n={n}"
                        checked += 1
    # spot-check the library's own comparison on the same ground
    space = identity_system(4).space
    sysm = FuzzifiedSystem(DynMap(space, (1, 2, 3, 0)), DYADIC_STAIRCASE)
    A = random_fuzzy_set(space, LATTICE3, rng)
    assert all(check_top_cut_equality(sysm, A, n).status == "equal" for n in range(1, 11))

    gs = g_family()
    levels = (F(0),) + LATTICE3.values
    for _ in range(10_000):
        size = rng.randint(1, 8)
        space = identity_system(size).space
        sysm = FuzzifiedSystem(DynMap(space, random_table(rng, size)), rng.choice(gs))
        A = random_fuzzy_set(space, LATTICE3, rng, normal=False)
        assert check_subset_inclusion(sysm, A, rng.choice(levels))

    space, f, A = example31_instance()
    verdict = check_top_cut_equality(FuzzifiedSystem(f, CAP2X), A, 1)
    assert verdict.status == "proper_superset"
    assert space.label(verdict.witness) < 1
    return f"{checked} top-cut equalities, 10000 inclusions, cap2x superset certified"


@criterion("C4")
def test_c4_staircase_values():
    g = DYADIC_STAIRCASE
    assert g.xi(F(1, 4)) == F(1, 2)
    orbit = xi_iter(g, F(1, 4), 20)
    for n in range(1, 21):
        cur = F(1, 4)
        for _ in range(n):
            cur = g.xi(cur)
        assert cur == F(1, 2), f"xi^{n}(1/4) = {cur}"
    assert orbit.fixation == 1
    assert g(F(5, 8)) == F(1, 2)
    wit = find_fixation_level(g, LATTICE3.values, 20)
    assert wit is not None and (wit.z, wit.m) == (F(1, 4), 1)
    return "xi(1/4) = 1/2, xi^n(1/4) = 1/2 for n <= 20, g(5/8) = 1/2, fixation (1/4, 1)"


@criterion("C5", limit=120)
def test_c5_separation_desk_scale():
    g = DYADIC_STAIRCASE
    rng = random.Random(5)
    runs = members = 0
    for size in range(2, 7):
        space = identity_system(size).space
        tables = (itertools.product(range(size), repeat=size) if size <= 3
                  else [random_table(rng, size) for _ in range(200)])
        con = build_separation(space, g, F(1, 4), 1, 0, size - 1, horizon=20)
        assert xi_levels(g, F(1, 4), 20) <= set(con.lattice.values)
        for table in tables:
            v = verify_separation(con, FuzzifiedSystem(DynMap(space, tuple(table)), g), 20)
            assert v.separated, f"violation on table {tuple(table)}: {v.witness}"
            runs += 1
            members += v.checked_members
    return f"{runs} maps separated, {members} grid members pushed, 0 violations"


@criterion("C6")
def test_c6_metric_suites():
    scenarios = [
        {},
        {"system": {"kind": "rotation", "p": 1, "q": 6}, "lattice": ["1/2", "1"]},
        {"system": {"kind": "explicit",
                    "dist": [[0, 1, 2, 2, 3, 1], [1, 0, 1, 2, 2, 2], [2, 1, 0, 1, 2, 3],
                             [2, 2, 1, 0, 1, 2], [3, 2, 2, 1, 0, 2], [1, 2, 3, 2, 2, 0]],
                    "map": [1, 2, 3, 4, 5, 0]},
         "lattice": ["1/3", "2/3", "1"]},
    ]
    names = []
    for data in scenarios:
        report = run_suite(load_scenario(data), "metric-axioms")
        for c in report.checks:
            assert c.status == "pass", f"{c.name} on {data or 'defaults'}: {c.witness}"
            names.append(c.name)
    # direct from-definition spot-check on a small line space
    sp = line_space([0, F(1, 3), F(1, 2), 1])
    sets = [CompactSet(sp, m) for m in range(1, 16)]
    for A, B, C in itertools.product(sets, repeat=3):
        assert hausdorff(A, C) <= hausdorff(A, B) + hausdorff(B, C)
    return f"{len(names)} metric checks over {len(scenarios)} spaces"


@criterion("C7", limit=120)
def test_c7_cross_level_audit():
    levels = ("base", "hyper", "fuzzy")
    for g in (IDENTITY, DYADIC_STAIRCASE):
        assert g.preimage_of_one_is_one()
        rep = cross_level_audit(tent_grid(5), g, F(1, 2), F(1, 16), 15, LATTICE3)
        for lvl in levels:
            assert rep.status(lvl) == "certified", f"tent_grid(5) {lvl} with {g}: {rep.status(lvl)}"
        assert not rep.forbidden, rep.forbidden[:1]
        assert rep.constants["base"]["epsilon"] == "1/2"
        for w in (rep.verdicts["hyper"]["plain"].witnesses, rep.verdicts["fuzzy"]["plain"].witnesses):
            assert w and all(x.separation > 0 for x in w)
    rep = cross_level_audit(rotation(1, 8), IDENTITY, F(1, 4), F(1, 16), 15, LATTICE3)
    for lvl in levels:
        assert rep.status(lvl) == "refuted_at_horizon", f"rotation(1,8) {lvl}: {rep.status(lvl)}"
    assert not rep.forbidden
    return "tent_grid(5) certified at 3 levels for 2 g; rotation(1,8) refuted at 3 levels"


@criterion("C8")
def test_c8_union_bound():
    rng = random.Random(8)
    done = 0
    while done < 10_000:
        size = rng.randint(1, 8)
        coords = sorted(rng.sample(range(64), size))
        sp = line_space([F(c, 64) for c in coords])
        A = CompactSet(sp, rng.randrange(1, 1 << size))
        xi = F(rng.randint(1, 40), 64)
        family = []
        for _ in range(rng.randint(1, 6)):
            B = CompactSet(sp, rng.randrange(1, 1 << size))
            if hausdorff(A, B) < xi:
                family.append(B)
        if not family:
            continue
        assert union_bound_check(A, family, xi), f"bound fails for {A!r}, xi={xi}"
        done += 1
    return "10000 instances, union stays within xi"


@criterion("C9")
def test_c9_weak_mixing_transfer():
    r5 = rotation(1, 5)
    basis = [HyperBall(m, F(1, 5)) for m in range(1, 32)]
    audit = audit_weak_mixing_transfer(r5, IDENTITY, basis, 30, LevelLattice.of(F(1, 2), 1))
    assert not audit.hyper.holds
    assert len(audit.hyper.witness["tuple"]) == 4
    assert audit.status == "blocking_pair", audit.notes
    assert audit.fuzzy_pair["fuzzy_times"] == []
    t4 = tent_grid(4)
    intervals = interval_basis(t4.space, F(1, 4))
    assert certify_weak_mixing("base", t4, intervals, 30).holds
    assert certify_weak_mixing("hyper", t4, vietoris_basis(intervals), 30).holds
    return (f"rotation(1,5) tuple {audit.hyper.witness['tuple']} blocked; "
            "tent_grid(4) weakly mixing at horizon 30")


@criterion("C10")
def test_c10_report_is_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert cli_main(["report", "--out", str(first)]) == 0
    assert cli_main(["report", "--out", str(second)]) == 0
    a, b = first.read_bytes(), second.read_bytes()
    assert a == b, "reports differ"
    return f"two full reports identical ({len(a)} bytes)"


if __name__ == "__main__":
    import tempfile

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    tests.sort(key=lambda fn: int(fn.__name__.split("_")[1][1:]))
    failed = 0
    for fn in tests:
        try:
            if fn is test_c10_report_is_deterministic:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            failed += 1
    for line in conftest.ACCEPTANCE_LINES:
        print(line)
    sys.exit(1 if failed else 0)
