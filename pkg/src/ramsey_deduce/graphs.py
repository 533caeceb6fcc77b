"""Graph families, concrete realizations and non-induced subgraph search.

Catalog graphs are described symbolically by :class:`GraphSpec` and turned
into bitset adjacency graphs by :func:`realize`.  Vertex labels are 0-based;
for ``K_n - K_{1,s}`` the star center is vertex 0 and the leaves are
``1..s``; for the wheel ``W_n`` the rim is ``0..n-2`` and the hub is ``n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

COMPLETE = "K"
MINUS_STAR = "KS"
CYCLE = "C"
WHEEL = "W"
EXPLICIT = "X"

_KIND_RANK = {COMPLETE: 0, MINUS_STAR: 1, CYCLE: 2, WHEEL: 3, EXPLICIT: 4}

# Above this size spec_subgraph_leq refuses to search without a closed form.
FALLBACK_VERTEX_CAP = 12


class GraphDomainError(ValueError):
    """Raised for family parameters outside their valid range."""


class UndecidedError(Exception):
    """Containment could not be settled by closed form or bounded search."""


@dataclass(frozen=True)
class AdjacencyGraph:
    """Simple undirected graph stored as one bitmask row per vertex."""

    vertex_count: int
    rows: tuple[int, ...]

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "AdjacencyGraph":
        rows = [0] * vertex_count
        for u, v in edges:
            if u == v:
                raise GraphDomainError(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphDomainError(f"edge ({u}, {v}) out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(vertex_count, tuple(rows))

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for u, row in enumerate(self.rows):
            for v in _bits(row >> (u + 1)):
                out.add((u, u + 1 + v))
        return frozenset(out)

    @property
    def edge_count(self) -> int:
        return sum(bin(r).count("1") for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    def degrees(self) -> list[int]:
        return [bin(r).count("1") for r in self.rows]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def complement(self) -> "AdjacencyGraph":
        full = (1 << self.vertex_count) - 1
        return AdjacencyGraph(
            self.vertex_count,
            tuple((~r & full) & ~(1 << i) for i, r in enumerate(self.rows)),
        )

    def add_universal_vertex(self) -> "AdjacencyGraph":
        n = self.vertex_count
        rows = tuple(r | (1 << n) for r in self.rows) + ((1 << n) - 1,)
        return AdjacencyGraph(n + 1, rows)

    def delete_vertex(self, v: int) -> "AdjacencyGraph":
        keep = [u for u in range(self.vertex_count) if u != v]
        index = {u: i for i, u in enumerate(keep)}
        edges = [(index[a], index[b]) for a, b in self.edges if a != v and b != v]
        return AdjacencyGraph.from_edges(len(keep), edges)

    def universal_vertices(self) -> list[int]:
        full = (1 << self.vertex_count) - 1
        return [v for v, r in enumerate(self.rows) if r | (1 << v) == full]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


_INTERNED: dict[tuple, "GraphSpec"] = {}


@dataclass(frozen=True, eq=False)
class GraphSpec:
    """Symbolic member of the graph catalog.

    ``kind`` is one of ``"K"``, ``"KS"`` (complete minus a star), ``"C"``,
    ``"W"`` or ``"X"`` (explicit adjacency in ``edges``).  Instances are
    interned, so equal specs are the same object and compare by identity.
    """

    kind: str
    n: int
    s: int = 0
    edges: frozenset = frozenset()
    _key: tuple = field(init=False, repr=False)

    def __new__(cls, kind: str, n: int, s: int = 0, edges: frozenset = frozenset()):
        found = _INTERNED.get((kind, n, s, frozenset(edges)))
        return found if found is not None else super().__new__(cls)

    def __post_init__(self) -> None:
        n, s = self.n, self.s
        if self.kind == COMPLETE:
            ok = n >= 1
        elif self.kind == MINUS_STAR:
            ok = n >= 3 and 1 <= s <= n - 1
        elif self.kind == CYCLE:
            ok = n >= 3
        elif self.kind == WHEEL:
            ok = n >= 4
        elif self.kind == EXPLICIT:
            ok = n >= 0 and all(0 <= a < b < n for a, b in self.edges)
        else:
            raise GraphDomainError(f"unknown graph kind {self.kind!r}")
        if not ok:
            raise GraphDomainError(f"invalid parameters for {self.kind}: n={n}, s={s}")
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(self, "_key", (_KIND_RANK[self.kind], n, s, tuple(sorted(self.edges))))
        _INTERNED.setdefault((self.kind, n, s, self.edges), self)

    def __reduce__(self):
        return (GraphSpec, (self.kind, self.n, self.s, self.edges))

    def __str__(self) -> str:
        if self.kind == COMPLETE:
            return f"K{self.n}"
        if self.kind == MINUS_STAR:
            if self.s == 1:
                return f"K{self.n}-e"
            if self.s == 2:
                return f"K{self.n}-P3"
            return f"K{self.n}-K1,{self.s}"
        if self.kind == CYCLE:
            return f"C{self.n}"
        if self.kind == WHEEL:
            return f"W{self.n}"
        body = " ".join(f"{a}-{b}" for a, b in sorted(self.edges))
        return f"X{self.n}[{body}]"

    @property
    def sort_key(self) -> tuple:
        return self._key

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        if self.kind == COMPLETE:
            return self.n * (self.n - 1) // 2
        if self.kind == MINUS_STAR:
            return self.n * (self.n - 1) // 2 - self.s
        if self.kind == CYCLE:
            return self.n
        if self.kind == WHEEL:
            return 2 * (self.n - 1)
        return len(self.edges)

    @property
    def is_complete_type(self) -> bool:
        return self.kind in (COMPLETE, MINUS_STAR)


def complete(n: int) -> GraphSpec:
    return GraphSpec(COMPLETE, n)


def minus_star(n: int, s: int) -> GraphSpec:
    return GraphSpec(MINUS_STAR, n, s)


def cycle(n: int) -> GraphSpec:
    return GraphSpec(CYCLE, n)


def wheel(n: int) -> GraphSpec:
    return GraphSpec(WHEEL, n)


def explicit(graph: AdjacencyGraph) -> GraphSpec:
    return GraphSpec(EXPLICIT, graph.vertex_count, 0, graph.edges)


def realize(spec: GraphSpec) -> AdjacencyGraph:
    n = spec.n
    if spec.kind == COMPLETE:
        full = (1 << n) - 1
        return AdjacencyGraph(n, tuple(full & ~(1 << v) for v in range(n)))
    if spec.kind == MINUS_STAR:
        g = realize(complete(n))
        rows = list(g.rows)
        for leaf in range(1, spec.s + 1):
            rows[0] &= ~(1 << leaf)
            rows[leaf] &= ~1
        return AdjacencyGraph(n, tuple(rows))
    if spec.kind == CYCLE:
        return AdjacencyGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if spec.kind == WHEEL:
        return realize(cycle(n - 1)).add_universal_vertex()
    return AdjacencyGraph.from_edges(n, spec.edges)


def cone(spec: GraphSpec) -> GraphSpec:
    """Join ``spec`` with one new vertex adjacent to everything."""
    if spec.kind == COMPLETE:
        return complete(spec.n + 1)
    if spec.kind == MINUS_STAR:
        return minus_star(spec.n + 1, spec.s)
    if spec.kind == CYCLE:
        return wheel(spec.n + 1)
    return explicit(realize(spec).add_universal_vertex())


def decone(spec: GraphSpec) -> Optional[GraphSpec]:
    """Inverse of :func:`cone`, or ``None`` when there is no universal vertex."""
    if spec.kind == COMPLETE:
        return complete(spec.n - 1) if spec.n >= 2 else None
    if spec.kind == MINUS_STAR:
        if spec.s > spec.n - 2:
            return None
        if spec.n - 1 >= 3:
            return minus_star(spec.n - 1, spec.s)
        # K3-e minus its apex leaves two isolated vertices
        return explicit(realize(spec).delete_vertex(spec.n - 1))
    if spec.kind == WHEEL:
        return cycle(spec.n - 1)
    if spec.kind == CYCLE:
        # only C3 has a universal vertex
        return explicit(realize(spec).delete_vertex(2)) if spec.n == 3 else None
    graph = realize(spec)
    universal = graph.universal_vertices()
    if not universal:
        return None
    return explicit(graph.delete_vertex(universal[-1]))


def vertex_deletions(spec: GraphSpec) -> list[GraphSpec]:
    """Catalog graphs obtainable from ``spec`` by deleting one vertex."""
    out: list[GraphSpec] = []
    n, s = spec.n, spec.s
    if spec.kind == COMPLETE and n >= 2:
        out.append(complete(n - 1))
    elif spec.kind == MINUS_STAR:
        if s <= n - 2 and n - 1 >= 3:
            out.append(minus_star(n - 1, s))
        out.append(complete(n - 1))
        if s >= 2 and n - 1 >= 3:
            out.append(minus_star(n - 1, s - 1))
    elif spec.kind == WHEEL:
        out.append(cycle(n - 1))
    return out


def _ordered_pattern(pattern: AdjacencyGraph) -> list[int]:
    """Non-isolated pattern vertices, high degree first, grown along edges."""
    deg = pattern.degrees()
    remaining = {v for v in range(pattern.vertex_count) if deg[v] > 0}
    order: list[int] = []
    placed = 0
    while remaining:
        touching = [v for v in remaining if pattern.rows[v] & placed]
        pool = touching or list(remaining)
        v = max(pool, key=lambda x: (bin(pattern.rows[x] & placed).count("1"), deg[x], -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _extend(host_rows, host_deg, pattern, order, deg, idx, mapping, used) -> bool:
    if idx == len(order):
        return True
    p = order[idx]
    need = deg[p]
    cand = ~used & ((1 << len(host_rows)) - 1)
    for q in _bits(pattern.rows[p]):
        img = mapping.get(q)
        if img is not None:
            cand &= host_rows[img]
    for h in _bits(cand):
        if host_deg[h] < need:
            continue
        mapping[p] = h
        if _extend(host_rows, host_deg, pattern, order, deg, idx + 1, mapping, used | (1 << h)):
            return True
        del mapping[p]
    return False


def find_embedding(host: AdjacencyGraph, pattern: AdjacencyGraph) -> Optional[dict[int, int]]:
    """Injective map of pattern vertices carrying every pattern edge to a host edge."""
    if pattern.vertex_count > host.vertex_count or pattern.edge_count > host.edge_count:
        return None
    deg = pattern.degrees()
    host_deg = host.degrees()
    if not _degree_dominated(deg, host_deg):
        return None
    order = _ordered_pattern(pattern)
    mapping: dict[int, int] = {}
    if not _extend(host.rows, host_deg, pattern, order, deg, 0, mapping, 0):
        return None
    spare = [h for h in range(host.vertex_count) if h not in mapping.values()]
    for p in range(pattern.vertex_count):
        if p not in mapping:
            mapping[p] = spare.pop(0)
    return mapping


def _degree_dominated(pattern_deg: list[int], host_deg: list[int]) -> bool:
    # the k-th largest pattern degree cannot exceed the k-th largest host degree
    a = sorted(pattern_deg, reverse=True)
    b = sorted(host_deg, reverse=True)
    return all(x <= y for x, y in zip(a, b))


def contains_subgraph(host: AdjacencyGraph, pattern: AdjacencyGraph) -> bool:
    """Non-induced containment of ``pattern`` in ``host``."""
    return find_embedding(host, pattern) is not None


def is_isomorphic(a: AdjacencyGraph, b: AdjacencyGraph) -> bool:
    if a.vertex_count != b.vertex_count or a.edge_count != b.edge_count:
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    # equal edge counts turn an injective edge-preserving map into an isomorphism
    return contains_subgraph(b, a)


def spec_subgraph_leq(a: GraphSpec, b: GraphSpec) -> bool:
    """Whether ``a`` is a (non-induced) subgraph of ``b``, extra vertices allowed.

    Raises :class:`UndecidedError` when no closed form applies and the graphs
    are too large for the fallback search.
    """
    if a == b:
        return True
    if a.n > b.n or a.edge_count > b.edge_count:
        return False
    if a.is_complete_type and b.is_complete_type:
        if b.kind == COMPLETE:
            return True
        # clique number of K_q - K_{1,t} is q - 1
        if a.kind == COMPLETE:
            return a.n <= b.n - 1
        if b.n >= a.n + 1:
            return True
        return b.s <= a.s
    if b.kind == COMPLETE:
        return True
    if a.kind == COMPLETE and b.kind in (CYCLE, WHEEL):
        # clique number of C_q is 2 (3 for C3), of W_q is 3 (4 for W4)
        omega = (3 if b.n == 3 else 2) if b.kind == CYCLE else (4 if b.n == 4 else 3)
        return a.n <= omega
    if max(a.n, b.n) > FALLBACK_VERTEX_CAP:
        raise UndecidedError(f"cannot decide {a} <= {b}")
    return contains_subgraph(realize(b), realize(a))
