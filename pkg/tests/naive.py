"""Slow reference implementations the package code is checked against."""

from __future__ import annotations

import itertools

from ramsey_deduce.graphs import AdjacencyGraph


def edge_set(graph: AdjacencyGraph) -> set[tuple[int, int]]:
    out = set()
    for u in range(graph.vertex_count):
        for v in range(u + 1, graph.vertex_count):
            if graph.rows[u] >> v & 1:
                out.add((u, v))
    return out


def contains(host: AdjacencyGraph, pattern: AdjacencyGraph) -> bool:
    """Try every injective vertex map."""
    host_edges = edge_set(host)
    pattern_edges = list(edge_set(pattern))
    for image in itertools.permutations(range(host.vertex_count), pattern.vertex_count):
        if all((min(image[a], image[b]), max(image[a], image[b])) in host_edges
               for a, b in pattern_edges):
            return True
    return False


def good(N: int, red: set[tuple[int, int]], g: AdjacencyGraph, h: AdjacencyGraph) -> bool:
    all_edges = set(itertools.combinations(range(N), 2))
    red_graph = AdjacencyGraph.from_edges(N, red)
    blue_graph = AdjacencyGraph.from_edges(N, all_edges - red)
    return not contains(red_graph, g) and not contains(blue_graph, h)


def good_colorings(N: int, g: AdjacencyGraph, h: AdjacencyGraph):
    edges = list(itertools.combinations(range(N), 2))
    for mask in range(1 << len(edges)):
        red = {e for i, e in enumerate(edges) if mask >> i & 1}
        if good(N, red, g, h):
            yield red


def theorem1_min_n_scan(n: int, s: int, ub2: int) -> int:
    """Least N >= n with ceil((s+1)(N-n)/n) >= ub2, by counting up."""
    N = n
    while -(-(s + 1) * (N - n) // n) < ub2:
        N += 1
    return N
