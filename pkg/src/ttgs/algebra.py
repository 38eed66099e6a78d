"""Scalar domain, ternary Gamma operators, evaluation maps and law probes.

Values are plain Python floats; ``math.inf`` is the absorbing element and
the neutral element of ``oplus``.  NaN is rejected wherever a Value enters
the system.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable

INF = math.inf
TOL = 1e-9

GRID = range(11)


def check_value(x: float) -> float:
    x = float(x)
    if math.isnan(x):
        raise ValueError("NaN is not a valid value")
    if x == -INF:
        raise ValueError("-inf is not a valid value")
    return x


def oplus(a: float, b: float) -> float:
    return a if a <= b else b


def strictly_improves(a: float, b: float) -> bool:
    """True iff ``a`` is strictly better than ``b`` in the tropical order."""
    return a < b


@dataclass(frozen=True)
class GammaOperator:
    """A ternary interaction ``F(x, y, z)``.

    ``family`` is one of ``linear``, ``weighted`` or ``riskamp``.  Weighted
    coefficients may be zero; a zero-coefficient argument is not depended
    upon, so an infinite value there is ignored instead of absorbing.
    """

    family: str
    params: tuple[float, ...] = ()
    _fn: Callable[[float, float, float], float] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if self.family == "linear":
            if params:
                raise ValueError("linear takes no parameters")
            fn = _linear
        elif self.family == "weighted":
            if len(params) != 3:
                raise ValueError("weighted takes exactly three coefficients")
            if any(math.isnan(p) or p < 0 or math.isinf(p) for p in params):
                raise ValueError("weighted coefficients must be finite and >= 0")
            if not any(params):
                raise ValueError("weighted coefficients must not all be zero")
            fn = _make_weighted(*params)
        elif self.family == "riskamp":
            if len(params) != 1:
                raise ValueError("riskamp takes exactly one parameter")
            lam = params[0]
            if not (lam > 0) or math.isinf(lam):
                raise ValueError("riskamp lambda must be finite and > 0")
            fn = _make_riskamp(lam)
        else:
            raise ValueError(f"unknown gamma family {self.family!r}")
        object.__setattr__(self, "_fn", fn)

    def __call__(self, x: float, y: float, z: float) -> float:
        return self._fn(x, y, z)

    @property
    def spec(self) -> str:
        if not self.params:
            return self.family
        return self.family + ":" + ",".join(_fmt_param(p) for p in self.params)


def linear() -> GammaOperator:
    return GammaOperator("linear")


def weighted(alpha: float, beta: float, gamma: float) -> GammaOperator:
    return GammaOperator("weighted", (alpha, beta, gamma))


def riskamp(lam: float) -> GammaOperator:
    return GammaOperator("riskamp", (lam,))


def _linear(x, y, z):
    # inf + finite is inf; -inf never enters
    return x + y + z


def _make_weighted(a, b, c):
    def fn(x, y, z):
        total = 0.0
        if a:
            total += a * x
        if b:
            total += b * y
        if c:
            total += c * z
        return total

    return fn


def _make_riskamp(lam):
    def fn(x, y, z):
        hi = x if x >= y else y
        if z > hi:
            hi = z
        if hi == INF:
            return INF
        lo = x if x <= y else y
        if z < lo:
            lo = z
        return hi + lam * lo

    return fn


def apply_gamma(op: GammaOperator, x: float, y: float, z: float) -> float:
    return op(x, y, z)


@dataclass(frozen=True)
class EvalMap:
    """Monotone map collapsing an edge's (cost, time, risk) triple to a scalar.

    ``sum`` computes ``wc*c + wt*t + wr*r``; ``riskscaled`` computes
    ``c + t*(1 + mu*r)``.
    """

    variant: str
    params: tuple[float, ...]

    def __post_init__(self):
        params = tuple(float(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if any(math.isnan(p) or math.isinf(p) or p < 0 for p in params):
            raise ValueError("eval-map parameters must be finite and >= 0")
        if self.variant == "sum":
            if len(params) != 3:
                raise ValueError("sum takes exactly three weights")
        elif self.variant == "riskscaled":
            if len(params) != 1:
                raise ValueError("riskscaled takes exactly one parameter")
        else:
            raise ValueError(f"unknown eval map {self.variant!r}")

    def __call__(self, c: float, t: float, r: float) -> float:
        return evaluate_triple(self, c, t, r)

    @property
    def spec(self) -> str:
        return self.variant + ":" + ",".join(_fmt_param(p) for p in self.params)


def weighted_sum(wc: float, wt: float, wr: float) -> EvalMap:
    return EvalMap("sum", (wc, wt, wr))


def risk_scaled(mu: float) -> EvalMap:
    return EvalMap("riskscaled", (mu,))


def evaluate_triple(h: EvalMap, c: float, t: float, r: float) -> float:
    if not all(math.isfinite(x) for x in (c, t, r)):
        raise ValueError(f"non-finite triple ({c}, {t}, {r})")
    if h.variant == "sum":
        wc, wt, wr = h.params
        return wc * c + wt * t + wr * r
    (mu,) = h.params
    return c + t * (1.0 + mu * r)


def _fmt_param(p: float) -> str:
    return format(p, "g")


def _parse_params(text: str, what: str) -> list[float]:
    try:
        vals = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"bad {what} parameters {text!r}") from None
    if any(math.isnan(v) for v in vals):
        raise ValueError(f"NaN in {what} parameters")
    return vals


def parse_gamma(spec: str) -> GammaOperator:
    """Parse ``linear``, ``weighted:A,B,C`` or ``riskamp:L``."""
    name, _, rest = spec.strip().partition(":")
    name = name.lower()
    if name == "linear":
        if rest:
            raise ValueError("linear takes no parameters")
        return linear()
    if name in ("weighted", "riskamp"):
        if not rest:
            raise ValueError(f"{name} requires parameters")
        return GammaOperator(name, tuple(_parse_params(rest, name)))
    raise ValueError(f"unknown gamma spec {spec!r}")


def parse_eval(spec: str) -> EvalMap:
    """Parse ``sum:WC,WT,WR`` or ``riskscaled:MU``."""
    name, _, rest = spec.strip().partition(":")
    name = name.lower()
    if name not in ("sum", "riskscaled") or not rest:
        raise ValueError(f"bad eval spec {spec!r}")
    return EvalMap(name, tuple(_parse_params(rest, name)))


# --- law probes -----------------------------------------------------------


@dataclass
class Counterexample:
    args: tuple[float, ...]
    variant: str
    lhs: float
    rhs: float


@dataclass
class ProbeReport:
    law: str
    samples_tested: int
    counterexamples: list[Counterexample]
    violations: int = 0
    mode: str = "random"

    @property
    def violated(self) -> bool:
        return bool(self.counterexamples)


def _differs(a: float, b: float) -> bool:
    if a == b:
        return False
    return not abs(a - b) <= TOL


def check_monotone(op, args):
    """Return violations for ``args = (x, y, z, dx, dy, dz)``."""
    x, y, z, dx, dy, dz = args
    base = op(x, y, z)
    out = []
    for name, bumped in (
        ("x", op(x + dx, y, z)),
        ("y", op(x, y + dy, z)),
        ("z", op(x, y, z + dz)),
    ):
        if bumped < base - TOL:
            out.append((name, base, bumped))
    return out


def check_distributive(op, args):
    """Return violations for ``args = (x, x2, y, z)``, all three positions."""
    a, a2, y, z = args
    m = oplus(a, a2)
    out = []
    for name, f in (
        ("first", lambda t: op(t, y, z)),
        ("second", lambda t: op(y, t, z)),
        ("third", lambda t: op(y, z, t)),
    ):
        lhs = f(m)
        rhs = oplus(f(a), f(a2))
        if _differs(lhs, rhs):
            out.append((name, lhs, rhs))
    return out


def nestings(op, args):
    x, y, z, u, v = args
    return (
        op(op(x, y, z), u, v),
        op(x, op(y, z, u), v),
        op(x, y, op(z, u, v)),
    )


def check_associative(op, args):
    """Return violations among the three nestings of ``args = (x, y, z, u, v)``."""
    a, b, c = nestings(op, args)
    out = []
    for name, lhs, rhs in (("AB", a, b), ("AC", a, c), ("BC", b, c)):
        if _differs(lhs, rhs):
            out.append((name, lhs, rhs))
    return out


LAWS = {
    "monotone": check_monotone,
    "distributive": check_distributive,
    "associative": check_associative,
}


def _random_args(law, rng, samples):
    for _ in range(samples):
        if law == "monotone":
            base = [rng.uniform(0.0, 100.0) for _ in range(3)]
            bump = [rng.uniform(1e-6, 10.0) for _ in range(3)]
            yield tuple(base + bump)
        elif law == "distributive":
            yield tuple(rng.uniform(0.0, 100.0) for _ in range(4))
        else:
            yield tuple(rng.uniform(0.0, 100.0) for _ in range(5))


def _grid_args(law):
    if law == "monotone":
        for x, y, z in itertools.product(GRID, repeat=3):
            yield (x, y, z, 1, 1, 1)
    elif law == "distributive":
        yield from itertools.product(GRID, repeat=4)
    else:
        yield from itertools.product(GRID, repeat=5)


def probe(
    law: str,
    op,
    samples: int = 10_000,
    seed: int = 0,
    grid: bool = False,
    limit: int = 1000,
) -> ProbeReport:
    """Probe ``law`` on ``op`` by random sampling or on the integer grid 0..10.

    ``op`` may be any callable of three floats.  At most ``limit``
    counterexamples are kept; ``violations`` counts all of them.
    """
    check = LAWS[law]
    if grid:
        source = _grid_args(law)
    else:
        if samples <= 0:
            raise ValueError("samples must be positive")
        source = _random_args(law, random.Random(seed), samples)
    tested = 0
    total = 0
    found: list[Counterexample] = []
    for args in source:
        tested += 1
        bad = check(op, args)
        if bad:
            total += len(bad)
            for name, lhs, rhs in bad:
                if len(found) < limit:
                    found.append(Counterexample(tuple(args), name, lhs, rhs))
    return ProbeReport(law, tested, found, total, "grid" if grid else "random")


def probe_monotone(op, samples: int = 10_000, seed: int = 0, grid: bool = False) -> ProbeReport:
    return probe("monotone", op, samples, seed, grid)


def probe_distributive(op, samples: int = 10_000, seed: int = 0, grid: bool = False) -> ProbeReport:
    return probe("distributive", op, samples, seed, grid)


def probe_associative(op, samples: int = 10_000, seed: int = 0, grid: bool = False) -> ProbeReport:
    return probe("associative", op, samples, seed, grid)


def replay(op, law: str, cx: Counterexample) -> bool:
    """Re-evaluate a counterexample; True if it is still a violation."""
    return any(name == cx.variant for name, _, _ in LAWS[law](op, cx.args))
