"""Ternary Bellman-Ford (TTGS-Pathfinder), classical baseline, witnesses.

Labels live in plain lists of floats.  A witness for vertex ``v`` is the
pair ``(p, u)`` whose candidate ``F(d[p], d[u], w(u, v))`` last set
``d[v]``; ``p`` may be :data:`~ttgs.graph.VIRTUAL`.  The source's initial
label 0 carries no witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import INF, TOL, GammaOperator
from .graph import VIRTUAL, Network
from .oracle import path_cost_nested

SYNCHRONOUS = "synchronous"
IN_PLACE = "in_place"
SCHEDULES = (SYNCHRONOUS, IN_PLACE)

Witness = Optional[tuple[int, int]]


@dataclass
class LabelVector:
    labels: list[float]
    witnesses: list[Witness]

    def copy(self) -> "LabelVector":
        return LabelVector(list(self.labels), list(self.witnesses))


@dataclass
class SolveReport:
    final: LabelVector
    iterations_run: int
    converged_at: Optional[int]
    improving_cycle: bool
    relaxations_total: int
    relaxations_per_iteration: list[int]
    schedule: str
    per_iteration_labels: Optional[list[LabelVector]] = None
    op: Optional[GammaOperator] = None

    @property
    def labels(self) -> list[float]:
        return self.final.labels


def initial_labels(net: Network) -> LabelVector:
    labels = [INF] * net.n
    labels[net.source] = 0.0
    return LabelVector(labels, [None] * net.n)


def _require_scalarized(net: Network):
    if not net.scalarized:
        raise ValueError("network is not scalarized; call scalarize() first")


def _pred_lists(net: Network):
    return [net.predecessors(u) for u in range(net.n)]


def relax_step_synchronous(
    labels: LabelVector, net: Network, op: GammaOperator, _preds=None
) -> tuple[LabelVector, int]:
    """One application of the two-step-fragment recurrence.

    All reads come from ``labels``; the result is a fresh vector.  Returns
    the new labels and the number of ``F`` evaluations performed.
    """
    if len(labels.labels) != net.n:
        raise ValueError("label vector has wrong dimension")
    preds = _preds if _preds is not None else _pred_lists(net)
    old = labels.labels
    new = list(old)
    wit = list(labels.witnesses)
    improved = [False] * net.n
    count = 0
    for e in net.edges:
        u, v, w = e.u, e.v, e.weight
        du = old[u]
        for p in preds[u]:
            dp = 0.0 if p == VIRTUAL else old[p]
            temp = op(dp, du, w)
            count += 1
            cur = new[v]
            if temp < cur:
                new[v] = temp
                wit[v] = (p, u)
                improved[v] = True
            elif improved[v] and temp == cur and (p, u) < wit[v]:
                wit[v] = (p, u)
    return LabelVector(new, wit), count


def relax_step_in_place(
    labels: LabelVector, net: Network, op: GammaOperator, _preds=None
) -> tuple[LabelVector, int]:
    """One outer iteration of the literal pseudocode: updates are seen at once."""
    preds = _preds if _preds is not None else _pred_lists(net)
    d = list(labels.labels)
    wit = list(labels.witnesses)
    improved = [False] * net.n
    count = 0
    for e in net.edges:
        u, v, w = e.u, e.v, e.weight
        for p in preds[u]:
            dp = 0.0 if p == VIRTUAL else d[p]
            temp = op(dp, d[u], w)
            count += 1
            cur = d[v]
            if temp < cur:
                d[v] = temp
                wit[v] = (p, u)
                improved[v] = True
            elif improved[v] and temp == cur and (p, u) < wit[v]:
                wit[v] = (p, u)
    return LabelVector(d, wit), count


def detect_improving_cycle(net: Network, op: GammaOperator, fixpoint_labels: LabelVector) -> bool:
    """True iff one more synchronous step strictly improves some label."""
    nxt, _ = relax_step_synchronous(fixpoint_labels, net, op)
    return any(a < b for a, b in zip(nxt.labels, fixpoint_labels.labels))


def solve(
    net: Network,
    op: GammaOperator,
    schedule: str = SYNCHRONOUS,
    max_iterations: Optional[int] = None,
    trace: bool = False,
) -> SolveReport:
    """Run TTGS-Pathfinder.

    Runs up to ``max_iterations`` outer iterations (default ``n - 1``) and
    stops early once an iteration changes no label; ``converged_at`` is then
    the last iteration index whose labels equal their successor.  When the
    budget is at least ``n - 1`` and exhausted while labels still change, one
    synchronous detection pass decides ``improving_cycle``.  The detection
    pass is not included in the relaxation counts.
    """
    _require_scalarized(net)
    if schedule not in SCHEDULES:
        raise ValueError(f"unknown schedule {schedule!r}")
    full = net.n - 1
    budget = full if max_iterations is None else max_iterations
    if budget < 0:
        raise ValueError("max_iterations must be >= 0")
    step = relax_step_synchronous if schedule == SYNCHRONOUS else relax_step_in_place
    preds = _pred_lists(net)

    cur = initial_labels(net)
    history = [cur.copy()] if trace else None
    per_iter: list[int] = []
    converged_at = None
    for ell in range(1, budget + 1):
        nxt, count = step(cur, net, op, preds)
        per_iter.append(count)
        if trace:
            history.append(nxt.copy())
        changed = nxt.labels != cur.labels
        cur = nxt
        if not changed:
            converged_at = ell - 1
            break

    improving = False
    if converged_at is None and budget >= full:
        if detect_improving_cycle(net, op, cur):
            improving = True
        else:
            converged_at = len(per_iter)

    return SolveReport(
        final=cur,
        iterations_run=len(per_iter),
        converged_at=converged_at,
        improving_cycle=improving,
        relaxations_total=sum(per_iter),
        relaxations_per_iteration=per_iter,
        schedule=schedule,
        per_iteration_labels=history,
        op=op,
    )


def relaxations_per_iteration(net: Network) -> int:
    """Closed form for the number of F evaluations in one outer iteration."""
    return sum(len(net.predecessors(e.u)) for e in net.edges)


def bellman_ford_baseline(net: Network) -> tuple[LabelVector, bool]:
    """Classical (min, +) single-source distances.

    Witnesses follow the ternary convention ``(parent of u, u)`` so chains can
    be rebuilt the same way.  The flag is True when an ``n``-th pass still
    relaxes an edge (negative cycle reachable from the source).
    """
    _require_scalarized(net)
    dist = [INF] * net.n
    parent: list[Optional[int]] = [None] * net.n
    dist[net.source] = 0.0
    for _ in range(net.n - 1):
        changed = False
        for e in net.edges:
            if dist[e.u] + e.weight < dist[e.v]:
                dist[e.v] = dist[e.u] + e.weight
                parent[e.v] = e.u
                changed = True
        if not changed:
            break
    negative = any(dist[e.u] + e.weight < dist[e.v] for e in net.edges)
    wit: list[Witness] = [None] * net.n
    for v, u in enumerate(parent):
        if u is not None:
            pu = parent[u]
            wit[v] = (VIRTUAL if pu is None else pu, u)
    return LabelVector(dist, wit), negative


@dataclass
class WitnessChain:
    vertices: list[int]
    cost: float
    consistent: bool
    reached_source: bool = field(default=True)


def _min_arc_weights(net: Network) -> dict[tuple[int, int], float]:
    best: dict[tuple[int, int], float] = {}
    for e in net.edges:
        key = (e.u, e.v)
        if key not in best or e.weight < best[key]:
            best[key] = e.weight
    return best


def reconstruct_witness(
    report: SolveReport, net: Network, v: int, op: Optional[GammaOperator] = None
) -> WitnessChain:
    """Follow witnesses back from ``v`` and re-cost the chain.

    The chain is only a witness: labels may combine different walks, in
    which case the recomputed cost differs and ``consistent`` is False.
    Parallel arcs are costed at their cheapest weight.
    """
    op = op or report.op
    if op is None:
        raise ValueError("no gamma operator given")
    labels = report.final.labels
    wits = report.final.witnesses
    if not 0 <= v < net.n:
        raise ValueError(f"vertex {v} out of range")
    if labels[v] == INF:
        raise ValueError(f"no witness: vertex {v} is unreachable")
    chain = [v]
    cur = v
    reached = False
    for _ in range(net.n + 1):
        w = wits[cur]
        if w is None:
            reached = cur == net.source
            break
        cur = w[1]
        chain.append(cur)
    chain.reverse()
    arcs = _min_arc_weights(net)
    weights = [arcs[(a, b)] for a, b in zip(chain, chain[1:])]
    cost = path_cost_nested(op, weights)
    consistent = reached and abs(cost - labels[v]) <= TOL
    return WitnessChain(chain, cost, consistent, reached)
