"""Deduction engine and exhaustive oracle for Ramsey numbers of near-complete graphs."""

from .graphs import (AdjacencyGraph, GraphSpec, complete, cone, contains_subgraph, cycle, decone,
                     minus_star, realize, spec_subgraph_leq, wheel)
from .kb import Contradiction, Derivation, Fact, KnowledgeBase, Rule, dump, load_seed
from .engine import Catalog, build, explain, propagate
from .oracle import ColoringCertificate, Status, arrows, audit, is_good_coloring, ramsey_small
from .manifest import CLAIMS, reproduce

__all__ = [
    "AdjacencyGraph", "GraphSpec", "complete", "cone", "contains_subgraph", "cycle", "decone",
    "minus_star", "realize", "spec_subgraph_leq", "wheel",
    "Contradiction", "Derivation", "Fact", "KnowledgeBase", "Rule", "dump", "load_seed",
    "Catalog", "build", "explain", "propagate",
    "ColoringCertificate", "Status", "arrows", "audit", "is_good_coloring", "ramsey_small",
    "CLAIMS", "reproduce",
]
