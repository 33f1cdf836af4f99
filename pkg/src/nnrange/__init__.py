"""Guaranteed output range analysis for feedforward ReLU networks.

Computes delta-tight bounds on network outputs over compact polyhedral
input sets by alternating projected-gradient local search with MILP
feasibility queries, backed by an exact pattern-enumeration oracle and a
benchmark harness.
"""

from . import bench, cli, errors, lp_core, milp, network, oracle, polytope, search
from .network import ActivationPattern, AffineMap, Layer, Network
from .polytope import Box, Polyhedron
from .search import RangeResult, SearchParams, estimate_range

__all__ = [
    "ActivationPattern",
    "AffineMap",
    "Box",
    "Layer",
    "Network",
    "Polyhedron",
    "RangeResult",
    "SearchParams",
    "bench",
    "cli",
    "errors",
    "estimate_range",
    "lp_core",
    "milp",
    "network",
    "oracle",
    "polytope",
    "search",
]
