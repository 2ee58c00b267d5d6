"""Command line entry point ``fuzzdyn``.

Exit codes: 0 when nothing failed, 1 when a check failed, 2 for an invalid
scenario or an exceeded enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .errors import (BallNotEnumerable, CapExceeded, GridTooLarge, LatticeIncomplete,
                     ProbeSpaceTooLarge, ScenarioInvalid)
from .levels import HyperLevel, make_level
from .scenario import ENGINES, Scenario, load_scenario, read_scenario
from .sensitivity import certify_family, certify_sensitivity
from .suites import SUITES, emit_report, run_suite, transitivity_basis
from .transitivity import certify_transitive, certify_weak_mixing


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuzzdyn", description="Exact checks for fuzzified dynamics.")
    p.add_argument("--version", action="version", version=f"fuzzdyn {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--scenario", help="scenario JSON file (defaults apply when omitted)")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--engine", choices=ENGINES)
        sp.add_argument("--parallel", action="store_true")
        sp.add_argument("--horizon", type=int)
        sp.add_argument("--timing", action="store_true", help="include wall-clock timings")

    v = sub.add_parser("verify", help="run one suite (default: all)")
    common(v)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")

    r = sub.add_parser("report", help="run every suite, or the one named by --suite")
    common(r)
    r.add_argument("--suite", choices=SUITES + ("all",), default="all")

    s = sub.add_parser("sensitivity", help="certify or refute sensitivity at one level")
    common(s)
    s.add_argument("--level", choices=("base", "hyper", "fuzzy"), default="base")
    s.add_argument("--epsilon")
    s.add_argument("--delta")
    s.add_argument("--family", default="plain")

    t = sub.add_parser("transitivity", help="transitivity, weak mixing and the fuzzification audits")
    common(t)
    t.add_argument("--check", choices=("transitive", "weakmix", "theorem63", "theorem61"),
                   default="transitive")
    return p


def _scenario(args) -> Scenario:
    base = read_scenario(args.scenario)
    over = {}
    for key in ("engine", "horizon", "epsilon", "delta"):
        val = getattr(args, key, None)
        if val is not None:
            over[key] = val
    if not over:
        return base
    data = dict(base.raw)
    data.update(over)
    return load_scenario(data)


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _sensitivity(sc: Scenario, args) -> dict:
    try:
        level = make_level(args.level, sc.system, sc.g, sc.lattice,
                           sc.horizon if args.level == "fuzzy" else None, sc.cap, sc.engine)
    except LatticeIncomplete as exc:
        raise ScenarioInvalid("lattice", str(exc)) from exc
    probes = None
    if not level.is_enumerable():
        rng = random.Random(sc.seed)
        if isinstance(level, HyperLevel):
            probes = sorted(set(level.structured_states()
                                + level.random_states(sc.samples["hyper"], rng)))
        else:
            probes = level.random_states(sc.samples["fuzzy"], rng)
    if args.family == "plain":
        verdict = certify_sensitivity(level, sc.epsilon, sc.delta, sc.horizon, probes,
                                      parallel=args.parallel)
    else:
        try:
            verdict = certify_family(level, args.family, sc.epsilon, sc.delta, sc.horizon, probes)
        except ValueError as exc:
            raise ScenarioInvalid("family", str(exc)) from exc
    if probes is not None:
        verdict.probe_mode = f"sampled(seed={sc.seed})"
    out = verdict.to_json()
    out["level"] = args.level
    out["scenario"] = sc.echo()
    return out


def _transitivity(sc: Scenario, args) -> tuple[dict, int]:
    if args.check in ("theorem63", "theorem61"):
        report = run_suite(sc, args.check)
        return report.to_json(args.timing), report.exit_code
    basis, name = transitivity_basis(sc.system.space)
    fn = certify_transitive if args.check == "transitive" else certify_weak_mixing
    verdict = fn("base", sc.system, basis, sc.horizon)
    out = verdict.to_json()
    out["basis"] = name
    out["scenario"] = sc.echo()
    return out, 0


def _verdict_text(obj: dict) -> str:
    keys = ("property", "level", "status", "horizon", "min_block", "probe_count")
    return "\n".join(f"{k}\t{obj[k]}" for k in keys if k in obj) + "\n"


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        sc = _scenario(args)
        if args.command in ("verify", "report"):
            report = run_suite(sc, args.suite)
            text, code = emit_report(report, args.format, args.timing)
        elif args.command == "sensitivity":
            obj = _sensitivity(sc, args)
            text = json.dumps(obj, indent=2) + "\n" if args.format == "json" else _verdict_text(obj)
            code = 0
        else:
            obj, code = _transitivity(sc, args)
            if "checks" in obj:
                text = json.dumps(obj, indent=2) + "\n" if args.format == "json" else \
                    "".join(f"{c['name']}\t{c['status']}\t{c['paper_anchor']}\n" for c in obj["checks"])
            else:
                text = json.dumps(obj, indent=2) + "\n" if args.format == "json" else _verdict_text(obj)
    except ScenarioInvalid as exc:
        print(f"fuzzdyn: {exc}", file=sys.stderr)
        return 2
    except (CapExceeded, GridTooLarge, ProbeSpaceTooLarge, BallNotEnumerable) as exc:
        print(f"fuzzdyn: cap exceeded: {exc}", file=sys.stderr)
        return 2
    _write(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
