"""Ternary tropical Gamma semiring and the ternary Bellman-Ford path solver."""
from .algebra import (
    INF,
    EvalMap,
    GammaOperator,
    apply_gamma,
    evaluate_triple,
    linear,
    oplus,
    parse_eval,
    parse_gamma,
    riskamp,
    strictly_improves,
    weighted,
)
from .graph import VIRTUAL, Network, parse_network, scalarize, serialize_network
from .oracle import enumerate_optimal, path_cost_nested, path_cost_windows, verify_bounds
from .solver import bellman_ford_baseline, reconstruct_witness, solve

__version__ = "0.1.0"

__all__ = [
    "INF",
    "VIRTUAL",
    "EvalMap",
    "GammaOperator",
    "Network",
    "apply_gamma",
    "bellman_ford_baseline",
    "enumerate_optimal",
    "evaluate_triple",
    "linear",
    "oplus",
    "parse_eval",
    "parse_gamma",
    "parse_network",
    "path_cost_nested",
    "path_cost_windows",
    "reconstruct_witness",
    "riskamp",
    "scalarize",
    "serialize_network",
    "solve",
    "strictly_improves",
    "verify_bounds",
    "weighted",
]
