"""Exhaustive arrowing decisions for small complete graphs.

``arrows(N, G, H)`` decides ``K_N -> (G, H)`` by coloring the edges of
``K_N`` one at a time (all edges ``k-0 .. k-(k-1)`` before vertex ``k+1``)
and backtracking as soon as the edge just colored completes a red ``G`` or a
blue ``H``.  Only committed edges count, so a pruned branch has no good
completion.  Vertices ``1..N-1`` are interchangeable, which lets the edges
at vertex 0 be restricted to a run of reds followed by blues.
"""

from __future__ import annotations

import enum
import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graphs import AdjacencyGraph, GraphSpec, contains_subgraph, realize
from .kb import KnowledgeBase, Pair, base_lo, pair_text

DEFAULT_BUDGET = 10**8
MAX_PATTERN_VERTICES = 12


class CertificateError(ValueError):
    """Malformed coloring certificate."""


@dataclass(frozen=True)
class ColoringCertificate:
    """A red/blue coloring of ``K_N`` given by its red edges."""

    N: int
    red_edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.N < 0:
            raise CertificateError(f"negative order {self.N}")
        for u, v in self.red_edges:
            if u == v:
                raise CertificateError(f"loop at vertex {u}")
            if not (0 <= u < self.N and 0 <= v < self.N):
                raise CertificateError(f"edge ({u}, {v}) out of range for N={self.N}")
            if u > v:
                raise CertificateError(f"edge ({u}, {v}) not normalized")

    @classmethod
    def from_edges(cls, N: int, edges: Iterable[tuple[int, int]]) -> "ColoringCertificate":
        norm = set()
        for u, v in edges:
            e = (min(u, v), max(u, v))
            if e in norm:
                raise CertificateError(f"duplicate edge {e}")
            norm.add(e)
        return cls(N, frozenset(norm))

    def red(self) -> AdjacencyGraph:
        return AdjacencyGraph.from_edges(self.N, self.red_edges)

    def blue(self) -> AdjacencyGraph:
        return self.red().complement()

    def to_text(self) -> str:
        lines = [f"N={self.N}"] + [f"{u} {v}" for u, v in sorted(self.red_edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ColoringCertificate":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("N="):
            raise CertificateError("first line must be N=<int>")
        try:
            N = int(lines[0][2:])
            edges = []
            for ln in lines[1:]:
                u, v = ln.split()
                edges.append((int(u), int(v)))
        except ValueError as exc:
            raise CertificateError(f"bad certificate line: {exc}") from None
        return cls.from_edges(N, edges)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())

    @classmethod
    def load(cls, path: str) -> "ColoringCertificate":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())


def _pattern(spec: GraphSpec) -> AdjacencyGraph:
    if spec.vertex_count > MAX_PATTERN_VERTICES:
        raise ValueError(f"{spec} has more than {MAX_PATTERN_VERTICES} vertices")
    return realize(spec)


def find_monochromatic(cert: ColoringCertificate, G: GraphSpec, H: GraphSpec) -> Optional[str]:
    """``"red"`` or ``"blue"`` for the first forbidden copy found, else ``None``."""
    if contains_subgraph(cert.red(), _pattern(G)):
        return "red"
    if contains_subgraph(cert.blue(), _pattern(H)):
        return "blue"
    return None


def is_good_coloring(cert: ColoringCertificate, G: GraphSpec, H: GraphSpec) -> bool:
    """True when the coloring has no red ``G`` and no blue ``H``."""
    return find_monochromatic(cert, G, H) is None


# -- rooted embedding plans --------------------------------------------------

class _Plan:
    """Embedding order for a pattern whose edge ``(a, b)`` is already placed.

    ``steps[i]`` is ``(degree, slots)`` where ``slots`` index earlier
    placements adjacent to the i-th remaining vertex.
    """

    __slots__ = ("a", "b", "deg_a", "deg_b", "steps")

    def __init__(self, pattern: AdjacencyGraph, a: int, b: int):
        deg = pattern.degrees()
        self.a, self.b = a, b
        self.deg_a, self.deg_b = deg[a], deg[b]
        order = [a, b]
        placed = (1 << a) | (1 << b)
        rest = {v for v in range(pattern.vertex_count) if deg[v] > 0} - {a, b}
        while rest:
            v = max(rest, key=lambda x: ((pattern.rows[x] & placed).bit_count(), deg[x], -x))
            order.append(v)
            placed |= 1 << v
            rest.discard(v)
        pos = {v: i for i, v in enumerate(order)}
        self.steps = tuple(
            (deg[v], tuple(pos[u] for u in order[:i] if pattern.rows[v] >> u & 1))
            for i, v in enumerate(order) if i >= 2
        )

    def embeds(self, rows, u: int, v: int, full: int) -> bool:
        if rows[u].bit_count() < self.deg_a or rows[v].bit_count() < self.deg_b:
            return False
        return _extend(rows, self.steps, 0, [u, v], (1 << u) | (1 << v), full)


def _extend(rows, steps, i, placed, used, full) -> bool:
    if i == len(steps):
        return True
    need, slots = steps[i]
    cand = full & ~used
    for s in slots:
        cand &= rows[placed[s]]
    while cand:
        low = cand & -cand
        cand ^= low
        h = low.bit_length() - 1
        if rows[h].bit_count() < need:
            continue
        placed.append(h)
        if _extend(rows, steps, i + 1, placed, used | low, full):
            return True
        placed.pop()
    return False


def _edge_plans(pattern: AdjacencyGraph) -> list[_Plan]:
    """One plan per orbit of oriented edges under the automorphism group."""
    full = (1 << pattern.vertex_count) - 1
    reps: list[_Plan] = []
    for a, b in sorted(pattern.edges):
        for x, y in ((a, b), (b, a)):
            plan = _Plan(pattern, x, y)
            # an edge-preserving self-map of a finite graph is an automorphism
            if not any(r.embeds(pattern.rows, x, y, full) for r in reps):
                reps.append(plan)
    return reps


class _Detector:
    """Tests whether a newly colored edge completes a copy of the pattern."""

    def __init__(self, spec: GraphSpec, N: int):
        graph = _pattern(spec)
        self.trivial = graph.edge_count == 0 and graph.vertex_count <= N
        self.possible = graph.vertex_count <= N
        self.plans = _edge_plans(graph) if self.possible else []

    def completes(self, rows, u: int, v: int, full: int) -> bool:
        for plan in self.plans:
            if plan.embeds(rows, u, v, full) or plan.embeds(rows, v, u, full):
                return True
        return False


# -- search ----------------------------------------------------------------------

class Status(enum.Enum):
    ARROWS = "Arrows"
    NOT_ARROWS = "NotArrows"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass
class ArrowResult:
    status: Status
    certificate: Optional[ColoringCertificate] = None
    nodes: int = 0


class _BudgetExhausted(Exception):
    pass


class _Search:
    def __init__(self, N: int, G: GraphSpec, H: GraphSpec, budget: int, symmetry: bool,
                 first_row: Optional[int] = None):
        self.N = N
        self.red_det = _Detector(G, N)
        self.blue_det = _Detector(H, N)
        self.budget = budget
        self.symmetry = symmetry
        self.first_row = first_row
        self.edges = [(k, j) for k in range(1, N) for j in range(k)]
        self.red = [0] * N
        self.blue = [0] * N
        self.full = (1 << N) - 1
        self.nodes = 0

    def run(self) -> ArrowResult:
        if self.red_det.trivial or self.blue_det.trivial:
            return ArrowResult(Status.ARROWS, nodes=0)
        try:
            found = self._dfs(0)
        except _BudgetExhausted:
            return ArrowResult(Status.UNKNOWN, nodes=self.nodes)
        if not found:
            return ArrowResult(Status.ARROWS, nodes=self.nodes)
        red_edges = [(j, k) for k, j in self.edges if self.red[k] >> j & 1]
        return ArrowResult(Status.NOT_ARROWS, ColoringCertificate.from_edges(self.N, red_edges),
                           self.nodes)

    def _allowed(self, k: int, j: int, is_red: bool) -> bool:
        if j != 0:
            return True
        if self.first_row is not None:
            return is_red == (k <= self.first_row)
        if self.symmetry and is_red and k >= 2:
            return bool(self.red[k - 1] & 1)
        return True

    def _dfs(self, i: int) -> bool:
        if i == len(self.edges):
            return True
        k, j = self.edges[i]
        bit_k, bit_j = 1 << k, 1 << j
        # blue first, so the first good coloring found is lexicographically least
        for is_red, rows, det in ((False, self.blue, self.blue_det), (True, self.red, self.red_det)):
            if not self._allowed(k, j, is_red):
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExhausted
            rows[k] |= bit_j
            rows[j] |= bit_k
            if not det.completes(rows, k, j, self.full) and self._dfs(i + 1):
                return True
            rows[k] ^= bit_j
            rows[j] ^= bit_k
        return False


def _run_class(args) -> ArrowResult:
    N, G, H, budget, r = args
    return _Search(N, G, H, budget, True, first_row=r).run()


def arrows(N: int, G: GraphSpec, H: GraphSpec, budget: int = DEFAULT_BUDGET,
           symmetry: bool = True, threads: int = 1) -> ArrowResult:
    """Decide whether every red/blue coloring of ``K_N`` has a red ``G`` or blue ``H``.

    With ``threads > 1`` the classes of first-row colorings (``r`` leading
    reds) are searched in separate processes and each class receives an
    equal share of the budget.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if N < 0:
        raise ValueError("N must be non-negative")
    if threads <= 1 or N < 3:
        return _Search(N, G, H, budget, symmetry).run()
    classes = list(range(N))
    share = max(1, budget // len(classes))
    with ProcessPoolExecutor(max_workers=min(threads, os.cpu_count() or 1)) as pool:
        results = list(pool.map(_run_class, [(N, G, H, share, r) for r in classes]))
    nodes = sum(r.nodes for r in results)
    for res in results:
        if res.status is Status.NOT_ARROWS:
            return ArrowResult(Status.NOT_ARROWS, res.certificate, nodes)
    if any(r.status is Status.UNKNOWN for r in results):
        return ArrowResult(Status.UNKNOWN, nodes=nodes)
    return ArrowResult(Status.ARROWS, nodes=nodes)


def arrows_naive(N: int, G: GraphSpec, H: GraphSpec) -> bool:
    """Decide arrowing by checking all ``2^C(N,2)`` colorings."""
    edges = list(itertools.combinations(range(N), 2))
    for mask in range(1 << len(edges)):
        red = [e for i, e in enumerate(edges) if mask >> i & 1]
        if is_good_coloring(ColoringCertificate.from_edges(N, red), G, H):
            return False
    return True


# -- small Ramsey numbers --------------------------------------------------------

@dataclass
class SmallResult:
    """Outcome of a linear scan: ``lo <= r(G,H) <= hi``."""

    lo: int
    hi: float
    certificate: Optional[ColoringCertificate] = None
    nodes: int = 0
    complete: bool = True
    witnesses: dict[int, ColoringCertificate] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


def ramsey_small(G: GraphSpec, H: GraphSpec, n_cap: int = 10, budget: int = DEFAULT_BUDGET,
                 threads: int = 1) -> SmallResult:
    """Scan ``N`` upward from the trivial lower bound until ``K_N`` arrows.

    ``certificate`` is the good coloring on ``lo - 1`` vertices when one was
    found; ``complete`` is false when the cap or the budget stopped the scan.
    """
    if n_cap > MAX_PATTERN_VERTICES:
        raise ValueError(f"n_cap must be at most {MAX_PATTERN_VERTICES}")
    lo = base_lo((G, H))
    out = SmallResult(lo, float("inf"))
    N = lo
    remaining = budget
    while N <= n_cap:
        res = arrows(N, G, H, budget=remaining, threads=threads)
        out.nodes += res.nodes
        remaining -= res.nodes
        if res.status is Status.ARROWS:
            out.hi = N
            return out
        if res.status is Status.UNKNOWN or remaining <= 0:
            out.complete = False
            return out
        out.lo = N + 1
        out.certificate = res.certificate
        out.witnesses[N] = res.certificate
        N += 1
    out.complete = False
    return out


# -- audit -------------------------------------------------------------------------

@dataclass(frozen=True)
class AuditEntry:
    pair: Pair
    kind: str  # "unsound", "loose" or "unknown"
    kb_interval: tuple[int, float]
    oracle: tuple[int, float]

    def __str__(self) -> str:
        def iv(x):
            return f"[{x[0]},{'inf' if x[1] == float('inf') else x[1]}]"
        return (f"kind={self.kind} pair={pair_text(self.pair)} kb={iv(self.kb_interval)} "
                f"oracle={iv(self.oracle)}")


@dataclass
class AuditReport:
    entries: list[AuditEntry] = field(default_factory=list)
    checked: int = 0

    @property
    def failures(self) -> list[AuditEntry]:
        return [e for e in self.entries if e.kind == "unsound"]


def audit(kb: KnowledgeBase, vertex_cap: int = 4, budget: int = DEFAULT_BUDGET, n_cap: int = 10,
          pairs: Optional[Iterable[Pair]] = None) -> AuditReport:
    """Compare KB intervals with oracle values for small pairs.

    Pairs whose KB lower bound already exceeds ``n_cap`` are skipped.  An
    oracle interval disjoint from the KB interval is a soundness failure; an
    exact oracle value strictly inside a wider KB interval is informational.
    """
    report = AuditReport()
    for pair in (kb.pairs() if pairs is None else pairs):
        g, h = pair
        if max(g.vertex_count, h.vertex_count) > vertex_cap:
            continue
        lo, hi = kb.interval(g, h)
        if lo > n_cap:
            continue
        res = ramsey_small(g, h, n_cap=n_cap, budget=budget)
        report.checked += 1
        ours = (res.lo, res.hi)
        if res.lo > hi or res.hi < lo:
            report.entries.append(AuditEntry(pair, "unsound", (lo, hi), ours))
        elif not res.complete:
            report.entries.append(AuditEntry(pair, "unknown", (lo, hi), ours))
        elif res.exact and (lo, hi) != ours:
            report.entries.append(AuditEntry(pair, "loose", (lo, hi), ours))
    return report
