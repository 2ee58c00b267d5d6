"""Nondecreasing right-continuous maps of [0, 1] fixing 0 and 1.

Each function evaluates exactly on rationals and provides its lower
inverse ``xi(x) = min {t : g(t) >= x}``.  The two satisfy the adjunction
``g(t) >= x  <=>  t >= xi(x)``, which the cut calculus of
:mod:`fuzzdyn.fuzzifier` relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DomainError
from .groundspace import format_rational, to_rational

ZERO = Fraction(0)
ONE = Fraction(1)


def _check_unit(x) -> Fraction:
    x = to_rational(x) if not isinstance(x, Fraction) else x
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    return x


class MonotoneUnitFunction:
    """Common interface; subclasses implement ``_eval`` and ``_xi``."""

    name = "g"

    def __init__(self):
        self._cache = {}
        self._xi_cache = {}

    # caches are keyed by (numerator, denominator): hashing a Fraction is slow

    def __call__(self, x) -> Fraction:
        try:
            return self._cache[x.numerator, x.denominator]
        except (KeyError, AttributeError):
            pass
        x = _check_unit(x)
        v = self._eval(x)
        self._cache[x.numerator, x.denominator] = v
        return v

    def xi(self, x) -> Fraction:
        try:
            return self._xi_cache[x.numerator, x.denominator]
        except (KeyError, AttributeError):
            pass
        x = _check_unit(x)
        v = self._xi(x)
        self._xi_cache[x.numerator, x.denominator] = v
        return v

    def preimage_of_one_is_one(self) -> bool:
        """True iff ``g(t) = 1`` only at ``t = 1``."""
        raise NotImplementedError

    def breakpoints(self) -> tuple[Fraction, ...]:
        return ()

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return f"<g {self.name}>"


class Identity(MonotoneUnitFunction):
    name = "identity"

    def _eval(self, x):
        return x

    def _xi(self, x):
        return x

    def preimage_of_one_is_one(self):
        return True

    def to_json(self):
        return "identity"


class PiecewiseLinear(MonotoneUnitFunction):
    """Linear interpolation between knots ``(t, v)``.

    Repeating a knot position encodes a jump; the value at the jump is the
    last listed one, which makes the function right-continuous.
    """

    def __init__(self, knots: Sequence, name: str = "linear"):
        super().__init__()
        self.name = name
        ks = [(to_rational(t), to_rational(v)) for t, v in knots]
        if len(ks) < 2 or ks[0][0] != 0 or ks[-1][0] != 1:
            raise DomainError("knots must start at t=0 and end at t=1")
        for (t0, v0), (t1, v1) in zip(ks, ks[1:]):
            if t1 < t0:
                raise DomainError("knot positions must be nondecreasing")
            if v1 < v0:
                raise DomainError("knot values must be nondecreasing")
        for i in range(len(ks) - 2):
            if ks[i][0] == ks[i + 1][0] == ks[i + 2][0]:
                raise DomainError("at most two knots may share a position")
        # value at t = 0 is the last knot at 0, value at 1 the last knot at 1
        if _right_value(ks, ZERO) != 0 or _right_value(ks, ONE) != 1:
            raise DomainError("g(0) must be 0 and g(1) must be 1")
        if ks[0][1] != 0:
            raise DomainError("g(0) must be 0")
        self.knots = tuple(ks)
        # segments [t0, t1) with right value at t0 and left limit at t1
        segs = []
        for (t0, v0), (t1, v1) in zip(ks, ks[1:]):
            if t1 > t0:
                segs.append((t0, _right_value(ks, t0), t1, v1))
        self._segments = tuple(segs)

    def _eval(self, x):
        if x == 1:
            return _right_value(self.knots, ONE)
        for t0, v0, t1, v1 in self._segments:
            if t0 <= x < t1:
                return v0 + (v1 - v0) * (x - t0) / (t1 - t0)
        raise AssertionError("unreachable")

    def _xi(self, x):
        if x == 0:
            return ZERO
        for t0, v0, t1, v1 in self._segments:
            if v0 >= x:
                return t0
            if v0 < x <= v1:
                # solved on the open piece; t = t1 means the jump at t1 reaches x
                return t0 + (x - v0) * (t1 - t0) / (v1 - v0)
        return ONE

    def preimage_of_one_is_one(self):
        return all(v < 1 for t, v in self.knots if t < 1)

    def breakpoints(self):
        return tuple(sorted({t for t, _ in self.knots}))

    def to_json(self):
        if self.name == "cap2x":
            return "cap2x"
        return {"linear": {"knots": [[format_rational(t), format_rational(v)]
                                     for t, v in self.knots]}}


def _right_value(knots, t):
    vals = [v for s, v in knots if s == t]
    return vals[-1]


class Step(MonotoneUnitFunction):
    """Step function: value ``values[j]`` on ``[bounds[j], bounds[j+1])`` and
    ``g(1) = 1``."""

    def __init__(self, bounds: Sequence, values: Sequence, name: str = "step"):
        super().__init__()
        self.name = name
        b = tuple(to_rational(v) for v in bounds)
        v = tuple(to_rational(x) for x in values)
        if len(b) < 2 or b[0] != 0 or b[-1] != 1:
            raise DomainError("bounds must run from 0 to 1")
        if any(b1 <= b0 for b0, b1 in zip(b, b[1:])):
            raise DomainError("bounds must be strictly increasing")
        if len(v) != len(b) - 1:
            raise DomainError("need one value per interval")
        if v[0] != 0:
            raise DomainError("g(0) must be 0")
        if any(y < x for x, y in zip(v, v[1:])) or v[-1] > 1:
            raise DomainError("values must be nondecreasing in [0, 1]")
        self.bounds = b
        self.values = v

    def _eval(self, x):
        if x == 1:
            return ONE
        for j in range(len(self.values) - 1, -1, -1):
            if x >= self.bounds[j]:
                return self.values[j]
        raise AssertionError("unreachable")

    def _xi(self, x):
        if x == 0:
            return ZERO
        for j, v in enumerate(self.values):
            if v >= x:
                return self.bounds[j]
        return ONE

    def preimage_of_one_is_one(self):
        return self.values[-1] < 1

    def breakpoints(self):
        return self.bounds

    def to_json(self):
        return {"step": {"bounds": [format_rational(t) for t in self.bounds],
                         "values": [format_rational(v) for v in self.values]}}


class DyadicStaircase(MonotoneUnitFunction):
    """``g = 1 - 2**-n`` on ``[1 - 2**-n, 1 - 2**-(n+1))`` for n >= 0, ``g(1) = 1``.

    Infinitely many steps accumulate at 1; the step index is found by exact
    comparison, so evaluation is exact for every rational input.
    """

    name = "dyadic_staircase"

    @staticmethod
    def _piece(x):
        # least n >= 0 with x < 1 - 2**-(n+1); loop length is bounded by the
        # bit length of the denominator of 1 - x
        gap = 1 - x
        n = 0
        half = Fraction(1, 2)
        while gap <= half:
            half /= 2
            n += 1
        return n

    def _eval(self, x):
        if x == 1:
            return ONE
        n = self._piece(x)
        return 1 - Fraction(1, 2**n)

    def _xi(self, x):
        if x == 0 or x == 1:
            return x
        # least n >= 0 with x <= 1 - 2**-(n+1)
        gap = 1 - x
        n = 0
        half = Fraction(1, 2)
        while gap < half:
            half /= 2
            n += 1
        return 1 - half

    def preimage_of_one_is_one(self):
        return True

    def to_json(self):
        return "dyadic_staircase"


def cap2x() -> PiecewiseLinear:
    """``min(2x, 1)``."""
    return PiecewiseLinear([(0, 0), (Fraction(1, 2), 1), (1, 1)], name="cap2x")


IDENTITY = Identity()
CAP2X = cap2x()
DYADIC_STAIRCASE = DyadicStaircase()


def from_json(spec) -> MonotoneUnitFunction:
    if isinstance(spec, dict) and "g" in spec:
        spec = spec["g"]
    if spec == "identity":
        return Identity()
    if spec == "cap2x":
        return cap2x()
    if spec == "dyadic_staircase":
        return DyadicStaircase()
    if isinstance(spec, dict) and "step" in spec:
        s = spec["step"]
        return Step(s["bounds"], s["values"])
    if isinstance(spec, dict) and "linear" in spec:
        return PiecewiseLinear(spec["linear"]["knots"])
    raise DomainError(f"unknown g specification: {spec!r}")


def eval_g(g: MonotoneUnitFunction, x) -> Fraction:
    return g(x)


def xi_g(g: MonotoneUnitFunction, x) -> Fraction:
    return g.xi(x)


def g_power(g: MonotoneUnitFunction, x, n: int) -> Fraction:
    for _ in range(n):
        x = g(x)
    return Fraction(x)


class XiOrbit(NamedTuple):
    value: Fraction
    fixation: int | None


def xi_iter(g: MonotoneUnitFunction, x, n: int) -> XiOrbit:
    """``xi^n(x)`` together with the least ``m <= n`` such that
    ``xi^(m+1)(x) = xi^m(x)``, or ``None`` if the orbit has not fixed."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    cur = _check_unit(x)
    for m in range(n + 1):
        nxt = g.xi(cur)
        if nxt == cur:
            # fixed from step m on
            return XiOrbit(cur, m)
        if m == n:
            return XiOrbit(cur, None)
        cur = nxt
    raise AssertionError("unreachable")


class FixationWitness(NamedTuple):
    z: Fraction
    m: int


def find_fixation_level(g: MonotoneUnitFunction, probe: Sequence, max_m: int):
    """First probe level ``z`` with ``xi(z) != z`` whose xi-orbit fixes within
    ``max_m`` steps, as ``FixationWitness(z, m)``; ``None`` when no probe
    qualifies.  Such a pair makes every g-fuzzification non-transitive."""
    if not probe:
        raise ValueError("probe must be nonempty")
    for z in sorted(to_rational(p) for p in probe):
        if z <= 0 or z > 1:
            continue
        if g.xi(z) == z:
            continue
        orbit = xi_iter(g, z, max_m)
        if orbit.fixation is not None and orbit.fixation <= max_m:
            return FixationWitness(z, orbit.fixation)
    return None


def probe_grid(size: int) -> list[Fraction]:
    return [Fraction(i, size) for i in range(size + 1)]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    probes: int
    problem: str | None = None


def validate(g: MonotoneUnitFunction, probes: int = 1000) -> ValidationReport:
    """Check the defining properties on a dense rational probe grid: endpoint
    values, monotonicity, and right-continuity at breakpoints (approached
    from the right by probes ``b + 1/k``)."""
    if g(ZERO) != 0:
        return ValidationReport(False, probes, "g(0) != 0")
    if g(ONE) != 1:
        return ValidationReport(False, probes, "g(1) != 1")
    pts = probe_grid(probes)
    vals = [g(t) for t in pts]
    for t, a, b in zip(pts[1:], vals, vals[1:]):
        if b < a:
            return ValidationReport(False, probes, f"decreases before {t}")
    h = Fraction(1, 10**12)
    for b in g.breakpoints():
        if b < 1 and g(min(ONE, b + h)) - g(b) > Fraction(1, 10**6):
            return ValidationReport(False, probes, f"not right-continuous at {b}")
    return ValidationReport(True, probes)
