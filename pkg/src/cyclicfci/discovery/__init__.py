"""Constraint-based discovery: FCI, FCI-JCI and PC with Meek's rules."""

from .background import BackgroundKnowledge, check_jci_assumptions, parse_jci_subset
from .fci import fci, fci_jci
from .oracle import GraphOracle, IndependenceOracle, ModelOracle, graph_oracle
from .pc import pc_meek
from .state import DiscoveryResult, TraceEvent, replay_trace
from .validate import arrowhead_shape_violations

__all__ = [
    "BackgroundKnowledge",
    "DiscoveryResult",
    "GraphOracle",
    "IndependenceOracle",
    "ModelOracle",
    "TraceEvent",
    "arrowhead_shape_violations",
    "check_jci_assumptions",
    "fci",
    "fci_jci",
    "graph_oracle",
    "parse_jci_subset",
    "pc_meek",
    "replay_trace",
]
