"""Scenario files (JSON, schema ``"fuzzdyn/1"``).

A scenario names a system, a g-function, a level lattice and the numeric
parameters the suites need.  Every rational is written as an integer or a
``"p/q"`` string.  Missing fields take the defaults in :data:`DEFAULTS`.

Example::

    {
      "schema": "fuzzdyn/1",
      "system": {"kind": "tent_grid", "k": 5},
      "g": "dyadic_staircase",
      "lattice": ["1/4", "1/2", "1"],
      "horizon": 15,
      "epsilon": "1/2",
      "delta": "1/16",
      "families": {"L": 4, "T": 3, "G": 4, "k": 3}
    }

System kinds: ``tent_grid`` (``k``), ``rotation`` (``p``, ``q``),
``identity`` (``n`` or ``k``), ``explicit`` (``dist``, ``map``, optional
``labels``).
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import caps
from .errors import CapExceeded, DomainError, FuzzDynError, ScenarioInvalid
from .fuzzyset import LevelLattice
from .gfunction import MonotoneUnitFunction, from_json as g_from_json
from .groundspace import (NamedSystem, explicit, format_rational, identity_system, rotation,
                          tent_grid, to_rational)

SCHEMA = "fuzzdyn/1"
ENGINES = ("direct", "cutwise", "both")

DEFAULTS = {
    "schema": SCHEMA,
    "system": {"kind": "tent_grid", "k": 5},
    "g": "dyadic_staircase",
    "lattice": ["1/4", "1/2", "1"],
    "horizon": 15,
    "epsilon": "1/2",
    "delta": "1/16",
    "families": {"L": 4, "T": 3, "G": 4, "k": 3},
    "engine": "direct",
    "seed": 0,
    "samples": {"hyper": 60, "fuzzy": 30, "random_cases": 2000},
    "cap": None,
}


@dataclass(frozen=True)
class Families:
    L: int
    T: int
    G: int
    k: int


@dataclass(frozen=True, eq=False)
class Scenario:
    raw: dict
    system: NamedSystem
    g: MonotoneUnitFunction
    lattice: LevelLattice
    horizon: int
    epsilon: Fraction
    delta: Fraction
    families: Families
    engine: str
    seed: int
    samples: dict
    cap: int | None

    def echo(self) -> dict:
        """Normalized scenario, as echoed into reports."""
        return copy.deepcopy(self.raw)


def _rational(raw, name) -> Fraction:
    try:
        q = to_rational(raw)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ScenarioInvalid(name, f"not an exact rational: {raw!r}") from exc
    return q


def _int(raw, name, lo=None) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ScenarioInvalid(name, f"expected an integer, got {raw!r}")
    if lo is not None and raw < lo:
        raise ScenarioInvalid(name, f"must be at least {lo}")
    return raw


def build_system(spec: dict) -> NamedSystem:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ScenarioInvalid("system", "expected an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "tent_grid":
            return tent_grid(_int(spec.get("k"), "system.k", 0))
        if kind == "rotation":
            q = _int(spec.get("q"), "system.q", 1)
            return rotation(_int(spec.get("p", 1), "system.p"), q)
        if kind == "identity":
            if "k" in spec:
                return identity_system(k=_int(spec["k"], "system.k", 0))
            return identity_system(_int(spec.get("n"), "system.n", 1))
        if kind == "explicit":
            if "dist" not in spec or "map" not in spec:
                raise ScenarioInvalid("system", "explicit systems need 'dist' and 'map'")
            labels = spec.get("labels")
            if labels is not None:
                labels = [to_rational(v) for v in labels]
            return explicit(spec["dist"], spec["map"], labels)
    except ScenarioInvalid:
        raise
    except (FuzzDynError, ValueError, TypeError) as exc:
        raise ScenarioInvalid("system", str(exc)) from exc
    raise ScenarioInvalid("system.kind", f"unknown kind {kind!r}")


def system_to_json(sys: NamedSystem) -> dict:
    if sys.family == "explicit":
        out = {"kind": "explicit",
               "dist": [[format_rational(d) for d in row] for row in sys.space.dist],
               "map": list(sys.map.table)}
        if sys.space.labels is not None:
            out["labels"] = [format_rational(v) for v in sys.space.labels]
        return out
    return {"kind": sys.family, **sys.params}


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for key, val in over.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict) and key != "system":
            out[key] = _merge(out[key], val)
        else:
            out[key] = copy.deepcopy(val)
    return out


def load_scenario(data: dict | None = None) -> Scenario:
    """Validate a scenario mapping (merged over the defaults)."""
    data = {} if data is None else data
    if not isinstance(data, dict):
        raise ScenarioInvalid("<root>", "scenario must be a JSON object")
    schema = data.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ScenarioInvalid("schema", f"expected {SCHEMA!r}, got {schema!r}")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise ScenarioInvalid(sorted(unknown)[0], "unknown field")
    raw = _merge(DEFAULTS, data)
    system = build_system(raw["system"])
    try:
        g = g_from_json(raw["g"])
    except (DomainError, KeyError, TypeError, ValueError) as exc:
        raise ScenarioInvalid("g", str(exc)) from exc
    try:
        lattice = LevelLattice(tuple(to_rational(v) for v in raw["lattice"]))
    except (TypeError, ValueError) as exc:
        raise ScenarioInvalid("lattice", str(exc)) from exc
    horizon = _int(raw["horizon"], "horizon", 0)
    epsilon = _rational(raw["epsilon"], "epsilon")
    delta = _rational(raw["delta"], "delta")
    if epsilon <= 0:
        raise ScenarioInvalid("epsilon", "must be positive")
    if delta <= 0:
        raise ScenarioInvalid("delta", "must be positive")
    fam = raw["families"]
    families = Families(*(_int(fam.get(key), f"families.{key}", 1) for key in ("L", "T", "G", "k")))
    engine = raw["engine"]
    if engine not in ENGINES:
        raise ScenarioInvalid("engine", f"must be one of {', '.join(ENGINES)}")
    seed = _int(raw["seed"], "seed")
    samples = raw["samples"]
    for key in ("hyper", "fuzzy", "random_cases"):
        _int(samples.get(key), f"samples.{key}", 1)
    cap = raw["cap"]
    if cap is not None:
        cap = _int(cap, "cap", 1)
    env = caps.env_cap()
    if env is not None:
        cap = env if cap is None else min(cap, env)
    # normalize rationals for the echo
    raw["lattice"] = lattice.to_json()
    raw["epsilon"] = format_rational(epsilon)
    raw["delta"] = format_rational(delta)
    raw["g"] = g.to_json()
    raw["system"] = system_to_json(system)
    return Scenario(raw, system, g, lattice, horizon, epsilon, delta, families, engine, seed,
                    dict(samples), cap)


def read_scenario(path: str | Path | None) -> Scenario:
    if path is None:
        return load_scenario({})
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioInvalid("<file>", str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioInvalid("<file>", f"invalid JSON: {exc}") from exc
    return load_scenario(data)


def check_cap(count: int, cap: int | None, what: str):
    if cap is not None and count > cap:
        raise CapExceeded(f"{what}: {count} objects exceed the cap of {cap}")
