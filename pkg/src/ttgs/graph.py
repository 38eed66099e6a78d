"""Triple-weighted directed networks: model, TTGN v1 text format, generators.

TTGN v1 is line oriented (``#`` starts a comment)::

    ttgn 1
    n <vertex_count>
    s <source_index>
    e <u> <v> <c> <t> <r>      # zero or more
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .algebra import EvalMap, evaluate_triple

# Predecessor token standing in for "p = s" at the source; its label is 0.
VIRTUAL = -1


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class EdgeTriple(NamedTuple):
    c: float
    t: float
    r: float


class Edge(NamedTuple):
    u: int
    v: int
    triple: EdgeTriple
    weight: Optional[float] = None


@dataclass(frozen=True)
class Network:
    n: int
    source: int
    edges: tuple[Edge, ...] = ()
    allow_negative: bool = False
    forward_adj: tuple[tuple[Edge, ...], ...] = field(init=False, repr=False, compare=False)
    pred_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("network needs at least one vertex")
        if not 0 <= self.source < self.n:
            raise ValueError(f"source {self.source} out of range")
        edges = tuple(self.edges)
        fwd: list[list[Edge]] = [[] for _ in range(self.n)]
        preds: list[set[int]] = [set() for _ in range(self.n)]
        for e in edges:
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"vertex out of range in edge ({e.u}, {e.v})")
            for x in e.triple:
                if not math.isfinite(x):
                    raise ValueError(f"non-finite component in edge ({e.u}, {e.v})")
                if x < 0 and not self.allow_negative:
                    raise ValueError(
                        f"negative component in edge ({e.u}, {e.v}); set allow_negative"
                    )
            if e.weight is not None and not math.isfinite(e.weight):
                raise ValueError(f"non-finite weight on edge ({e.u}, {e.v})")
            fwd[e.u].append(e)
            preds[e.v].add(e.u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "forward_adj", tuple(tuple(x) for x in fwd))
        object.__setattr__(self, "pred_adj", tuple(tuple(sorted(p)) for p in preds))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def scalarized(self) -> bool:
        return all(e.weight is not None for e in self.edges)

    def predecessors(self, u: int) -> tuple[int, ...]:
        return predecessors(self, u)


def predecessors(net: Network, u: int) -> tuple[int, ...]:
    """Incoming neighbours of ``u``; the source additionally gets VIRTUAL first."""
    if not 0 <= u < net.n:
        raise ValueError(f"vertex {u} out of range")
    if u == net.source:
        return (VIRTUAL,) + net.pred_adj[u]
    return net.pred_adj[u]


def scalarize(net: Network, h: EvalMap) -> Network:
    edges = tuple(
        e._replace(weight=evaluate_triple(h, *e.triple)) for e in net.edges
    )
    return Network(net.n, net.source, edges, net.allow_negative)


def _parse_real(tok: str, lineno: int) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(lineno, f"bad number {tok!r}") from None
    if not math.isfinite(x):
        raise ParseError(lineno, f"non-finite literal {tok!r}")
    return x


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"bad integer {tok!r}") from None


def parse_network(text: str, allow_negative: bool = False) -> Network:
    header: list[tuple[int, list[str]]] = []
    n = source = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(header) < 3:
            header.append((lineno, toks))
            if len(header) == 1:
                if toks != ["ttgn", "1"]:
                    raise ParseError(lineno, "missing header 'ttgn 1'")
            elif len(header) == 2:
                if len(toks) != 2 or toks[0] != "n":
                    raise ParseError(lineno, "expected 'n <vertex_count>'")
                n = _parse_int(toks[1], lineno)
                if n < 1:
                    raise ParseError(lineno, "vertex count must be >= 1")
            else:
                if len(toks) != 2 or toks[0] != "s":
                    raise ParseError(lineno, "expected 's <source_index>'")
                source = _parse_int(toks[1], lineno)
                if not 0 <= source < n:
                    raise ParseError(lineno, "vertex out of range")
            continue
        if toks[0] != "e" or len(toks) != 6:
            raise ParseError(lineno, f"malformed edge line {line!r}")
        u, v = _parse_int(toks[1], lineno), _parse_int(toks[2], lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, "vertex out of range")
        triple = EdgeTriple(*(_parse_real(t, lineno) for t in toks[3:]))
        if not allow_negative and min(triple) < 0:
            raise ParseError(lineno, "negative component (use allow_negative)")
        edges.append(Edge(u, v, triple))
    if len(header) < 3:
        raise ParseError(len(text.splitlines()) or 1, "missing header")
    return Network(n, source, tuple(edges), allow_negative)


def serialize_network(net: Network) -> str:
    lines = ["ttgn 1", f"n {net.n}", f"s {net.source}"]
    for e in net.edges:
        c, t, r = (repr(float(x)) for x in e.triple)
        lines.append(f"e {e.u} {e.v} {c} {t} {r}")
    return "\n".join(lines) + "\n"


DEFAULT_RANGES = ((0.0, 100.0), (0.0, 100.0), (0.0, 100.0))


def _draw(rng: random.Random, lo, hi, integer: bool) -> float:
    if integer:
        return float(rng.randint(int(lo), int(hi)))
    return rng.uniform(lo, hi)


def generate_random(
    n: int,
    edge_prob: float,
    weight_ranges=DEFAULT_RANGES,
    seed: int = 0,
    integer: bool = False,
) -> Network:
    """G(n, p) digraph without self-loops; source is vertex 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if rng.random() < edge_prob:
                triple = EdgeTriple(*(_draw(rng, lo, hi, integer) for lo, hi in weight_ranges))
                edges.append(Edge(u, v, triple))
    return Network(n, 0, tuple(edges))


def generate_out_tree(
    n: int,
    weight_ranges=DEFAULT_RANGES,
    seed: int = 0,
    integer: bool = False,
) -> Network:
    """Random recursive tree rooted at 0, every edge pointing away from the root."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    edges = []
    for v in range(1, n):
        parent = rng.randrange(v)
        triple = EdgeTriple(*(_draw(rng, lo, hi, integer) for lo, hi in weight_ranges))
        edges.append(Edge(parent, v, triple))
    return Network(n, 0, tuple(edges))


def from_weights(n: int, source: int, arcs, allow_negative: bool = False) -> Network:
    """Build an already-scalarized network from ``(u, v, w)`` arcs.

    The triple is set to ``(w, 0, 0)`` so that ``sum:1,0,0`` reproduces it.
    """
    edges = tuple(Edge(u, v, EdgeTriple(float(w), 0.0, 0.0), float(w)) for u, v, w in arcs)
    return Network(n, source, edges, allow_negative)
