"""Ground truth by brute force: walk costs, exhaustive enumeration, bound checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import INF, TOL

MAX_EXTENSIONS = 10**8


class EnumerationBudgetExceeded(RuntimeError):
    pass


class VerificationError(AssertionError):
    pass


def path_cost_nested(op, weights: Sequence[float]) -> float:
    """Cost of a walk under the label recurrence.

    ``a[-1] = a[0] = 0`` and ``a[i] = F(a[i-2], a[i-1], w[i])``; this is what
    the solver's updates compute along a single walk.
    """
    prev2, prev1 = 0.0, 0.0
    for w in weights:
        prev2, prev1 = prev1, op(prev2, prev1, w)
    return prev1


def path_cost_windows(op, weights: Sequence[float]) -> float:
    """Cost as the min over sliding windows of three consecutive edge weights.

    Walks with one or two edges are left-padded with zeros to a single window.
    """
    k = len(weights)
    if k == 0:
        return 0.0
    if k < 3:
        padded = [0.0] * (3 - k) + list(weights)
        return op(*padded)
    return min(op(weights[i], weights[i + 1], weights[i + 2]) for i in range(k - 2))


@dataclass
class WalkCostTable:
    best: list[float]
    walks: list[Optional[list[int]]]
    edge_budget: int
    extensions: int = 0
    simple_only: bool = False


def enumerate_optimal(
    net,
    op,
    edge_budget: int,
    simple_only: bool = False,
    max_extensions: int = MAX_EXTENSIONS,
) -> WalkCostTable:
    """Depth-first enumeration of every walk from the source with <= L edges.

    Parallel arcs are collapsed to their cheapest weight: with a monotone F a
    heavier parallel arc can never produce a cheaper walk.
    """
    if edge_budget < 0:
        raise ValueError("edge_budget must be >= 0")
    if not net.scalarized:
        raise ValueError("network is not scalarized")
    arcs: dict[tuple[int, int], float] = {}
    for e in net.edges:
        key = (e.u, e.v)
        if key not in arcs or e.weight < arcs[key]:
            arcs[key] = e.weight
    out: list[list[tuple[int, float]]] = [[] for _ in range(net.n)]
    for (u, v), w in sorted(arcs.items()):
        out[u].append((v, w))

    s = net.source
    best = [INF] * net.n
    walks: list[Optional[list[int]]] = [None] * net.n
    best[s] = 0.0
    walks[s] = [s]
    extensions = 0
    path = [s]
    on_path = [False] * net.n
    on_path[s] = True

    # explicit stack of (vertex, a_prev, a_cur, iterator over out-arcs)
    stack = [(s, 0.0, 0.0, iter(out[s]))]
    while stack:
        u, a2, a1, it = stack[-1]
        if len(path) - 1 >= edge_budget:
            nxt = None
        else:
            nxt = next(it, None)
            while nxt is not None and simple_only and on_path[nxt[0]]:
                nxt = next(it, None)
        if nxt is None:
            stack.pop()
            on_path[path.pop()] = False
            continue
        v, w = nxt
        extensions += 1
        if extensions > max_extensions:
            raise EnumerationBudgetExceeded(
                f"more than {max_extensions} walk extensions; shrink the graph or budget"
            )
        cost = op(a2, a1, w)
        path.append(v)
        on_path[v] = True
        if cost < best[v]:
            best[v] = cost
            walks[v] = list(path)
        stack.append((v, a1, cost, iter(out[v])))
    return WalkCostTable(best, walks, edge_budget, extensions, simple_only)


@dataclass
class VertexCheck:
    vertex: int
    label: float
    oracle: float
    equal: bool
    strict: bool


@dataclass
class VerificationRecord:
    vertices: list[VertexCheck]
    violations: list[int] = field(default_factory=list)
    n_equal: int = 0
    n_strict: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def all_equal(self) -> bool:
        return self.n_strict == 0 and self.ok

    def raise_for_violations(self):
        if self.violations:
            raise VerificationError(f"lower bound violated at vertices {self.violations}")


def verify_bounds(report, table: WalkCostTable) -> VerificationRecord:
    """Check ``d[v] <= best[v] + tol`` wherever the oracle is finite.

    Equality is recorded but not required: the solver may mix labels from
    different walks and land strictly below every real walk.
    """
    labels = report.final.labels
    if len(labels) != len(table.best):
        raise ValueError("report and table disagree on vertex count")
    rec = VerificationRecord([])
    for v, (d, b) in enumerate(zip(labels, table.best)):
        if b == INF:
            continue
        equal = abs(d - b) <= TOL
        strict = d < b - TOL
        rec.vertices.append(VertexCheck(v, d, b, equal, strict))
        if d > b + TOL:
            rec.violations.append(v)
        elif equal:
            rec.n_equal += 1
        else:
            rec.n_strict += 1
    return rec
