"""Interval knowledge base for two-color Ramsey numbers.

Every pair ``(G, H)`` carries an interval ``[lo, hi]`` known to contain
``r(G, H)``.  Pairs proven equal share one interval through a union-find
structure.  Each change is recorded as an :class:`Event` whose derivation
points only at strictly earlier events, so proof trees are acyclic by
construction.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .grammar import format_seed_line, parse_seed
from .graphs import GraphSpec

INF = math.inf

Pair = tuple[GraphSpec, GraphSpec]


class Rule(str, enum.Enum):
    SEED = "SEED"
    BASE = "BASE"
    MONOTONE = "MONOTONE"
    RECURSION = "RECURSION"
    PARITY = "PARITY"
    THEOREM1 = "THEOREM1"
    BE89 = "BE89"
    BBH98 = "BBH98"

    def __str__(self) -> str:
        return self.value


RULE_ORDER = [Rule.SEED, Rule.BASE, Rule.MONOTONE, Rule.RECURSION, Rule.PARITY,
              Rule.THEOREM1, Rule.BE89, Rule.BBH98]


@functools.lru_cache(maxsize=1 << 16)
def canonical(left: GraphSpec, right: GraphSpec) -> Pair:
    """Order a pair so that ``r(G, H)`` and ``r(H, G)`` share one key."""
    return (left, right) if left.sort_key <= right.sort_key else (right, left)


def pair_text(pair: Pair) -> str:
    return f"r({pair[0]},{pair[1]})"


def has_edge(spec: GraphSpec) -> bool:
    return spec.edge_count > 0


def base_lo(pair: Pair) -> int:
    """``max(|V(G)|, |V(H)|)`` when both graphs have an edge, else 1.

    A coloring of a smaller clique that is entirely one color contains
    neither graph.
    """
    a, b = pair
    if has_edge(a) and has_edge(b):
        return max(a.n, b.n)
    return 1


@dataclass(frozen=True)
class PremiseRef:
    pair: Pair
    event: Optional[int]

    def __str__(self) -> str:
        return f"{pair_text(self.pair)}@{self.event}"


@dataclass(frozen=True)
class Derivation:
    rule: Rule
    params: tuple[tuple[str, int], ...] = ()
    premises: tuple[PremiseRef, ...] = ()
    tag: str = ""

    def param_text(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.params)

    def __str__(self) -> str:
        label = str(self.rule)
        if self.params:
            label += "{" + self.param_text() + "}"
        if self.tag:
            label += f"[{self.tag}]"
        return label


@dataclass(frozen=True)
class Event:
    id: int
    pair: Pair
    kind: str  # "lo", "hi", "both" or "merge"
    old: tuple[int, float]
    new: tuple[int, float]
    derivation: Derivation
    other: Optional[Pair] = None


@dataclass
class Fact:
    left: GraphSpec
    right: GraphSpec
    lo: int
    hi: float
    provenance: list[Derivation] = field(default_factory=list)
    lo_event: Optional[int] = None
    hi_event: Optional[int] = None

    @property
    def pair(self) -> Pair:
        return (self.left, self.right)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __str__(self) -> str:
        from .grammar import format_interval
        return f"{pair_text(self.pair)} {format_interval(self.lo, self.hi)}"


class Contradiction(Exception):
    """Two derivations bound one Ramsey number by an empty interval."""

    def __init__(self, pair: Pair, lo: int, hi: float, first: Optional[Derivation], second: Derivation):
        self.pair = pair
        self.lo = lo
        self.hi = hi
        self.first = first
        self.second = second
        super().__init__(
            f"contradiction at {pair_text(pair)}: lo={lo} > hi={hi} "
            f"({first or 'default'} vs {second})"
        )


class _Class:
    __slots__ = ("lo", "hi", "lo_event", "hi_event", "members", "provenance")

    def __init__(self, pair: Pair):
        self.lo = base_lo(pair)
        self.hi = INF
        self.lo_event: Optional[int] = None
        self.hi_event: Optional[int] = None
        self.members = [pair]
        self.provenance: list[int] = []


class KnowledgeBase:
    """Single-writer store of Ramsey intervals with equality classes."""

    def __init__(self) -> None:
        # every registered pair maps to its class; merges relabel the smaller side
        self._of: dict[Pair, _Class] = {}
        self.events: list[Event] = []
        self.tags: dict[Pair, list[str]] = {}
        self._seeded: set[Pair] = set()
        self.seed_log: list[tuple[Pair, Optional[int], Optional[int], tuple[str, ...]]] = []

    # -- equality classes -------------------------------------------------
    def _cls(self, pair: Pair) -> _Class:
        c = self._of.get(pair)
        if c is None:
            c = self._of[pair] = _Class(pair)
        return c

    # -- queries ----------------------------------------------------------
    def __contains__(self, pair: Pair) -> bool:
        return canonical(*pair) in self._of

    def pairs(self) -> list[Pair]:
        return sorted(self._of, key=lambda p: (p[0].sort_key, p[1].sort_key))

    def interval(self, left: GraphSpec, right: GraphSpec) -> tuple[int, float]:
        pair = canonical(left, right)
        c = self._of.get(pair)
        if c is None:
            return base_lo(pair), INF
        return c.lo, c.hi

    def lo(self, left: GraphSpec, right: GraphSpec) -> int:
        return self.interval(left, right)[0]

    def hi(self, left: GraphSpec, right: GraphSpec) -> float:
        return self.interval(left, right)[1]

    def ref(self, left: GraphSpec, right: GraphSpec, side: str) -> PremiseRef:
        """Reference to the event currently establishing one side of a pair."""
        pair = canonical(left, right)
        c = self._of.get(pair)
        if c is None:
            return PremiseRef(pair, None)
        return PremiseRef(pair, c.lo_event if side == "lo" else c.hi_event)

    def lookup(self, left: GraphSpec, right: GraphSpec) -> Fact:
        pair = canonical(left, right)
        c = self._of.get(pair)
        if c is None:
            return Fact(pair[0], pair[1], base_lo(pair), INF)
        prov = [self.events[i].derivation for i in c.provenance]
        return Fact(pair[0], pair[1], c.lo, c.hi, prov, c.lo_event, c.hi_event)

    def same_class(self, a: Pair, b: Pair) -> bool:
        a, b = canonical(*a), canonical(*b)
        ca, cb = self._of.get(a), self._of.get(b)
        if ca is None or cb is None:
            return a == b
        return ca is cb

    def class_members(self, pair: Pair) -> list[Pair]:
        pair = canonical(*pair)
        c = self._of.get(pair)
        if c is None:
            return [pair]
        return list(c.members)

    def is_informative(self, left: GraphSpec, right: GraphSpec) -> bool:
        """Whether anything beyond the default interval is known."""
        c = self._of.get(canonical(left, right))
        if c is None:
            return False
        return bool(c.provenance) or len(c.members) > 1

    # -- mutation ---------------------------------------------------------
    def _check(self, pair: Pair, c: _Class, lo: int, hi: float, why: Derivation) -> None:
        if lo > hi:
            first_id = c.lo_event if hi < c.lo else c.hi_event
            first = self.events[first_id].derivation if first_id is not None else None
            raise Contradiction(pair, lo, hi, first, why)

    def tighten(self, left: GraphSpec, right: GraphSpec, new_lo: Optional[int] = None,
                new_hi: Optional[float] = None, why: Derivation = Derivation(Rule.SEED)) -> bool:
        """Intersect the pair's interval with ``[new_lo, new_hi]``."""
        pair = canonical(left, right)
        c = self._cls(pair)
        lo = c.lo if new_lo is None else max(c.lo, new_lo)
        hi = c.hi if new_hi is None else min(c.hi, new_hi)
        self._check(pair, c, lo, hi, why)
        if (lo, hi) == (c.lo, c.hi):
            return False
        kind = "both" if lo != c.lo and hi != c.hi else ("lo" if lo != c.lo else "hi")
        event = Event(len(self.events), pair, kind, (c.lo, c.hi), (lo, hi), why)
        self.events.append(event)
        if lo != c.lo:
            c.lo, c.lo_event = lo, event.id
        if hi != c.hi:
            c.hi, c.hi_event = hi, event.id
        c.provenance.append(event.id)
        return True

    def assert_equal(self, a: Pair, b: Pair, why: Derivation) -> bool:
        """Merge the equality classes of two pairs, intersecting intervals."""
        a, b = canonical(*a), canonical(*b)
        ca, cb = self._cls(a), self._cls(b)
        if ca is cb:
            return False
        lo, hi = max(ca.lo, cb.lo), min(ca.hi, cb.hi)
        if lo > hi:
            first_id = ca.lo_event if ca.lo > cb.hi else ca.hi_event
            first = self.events[first_id].derivation if first_id is not None else None
            raise Contradiction(a, lo, hi, first, why)
        event = Event(len(self.events), a, "merge", (ca.lo, ca.hi), (lo, hi), why, other=b)
        self.events.append(event)
        # each bound stays attributed to the side that supplied it; the merge
        # event links the members
        if ca.lo == cb.lo:
            lo_event = _earliest(ca.lo_event, cb.lo_event)
        else:
            lo_event = ca.lo_event if ca.lo > cb.lo else cb.lo_event
        if ca.hi == cb.hi:
            hi_event = _earliest(ca.hi_event, cb.hi_event)
        else:
            hi_event = ca.hi_event if ca.hi < cb.hi else cb.hi_event
        if len(ca.members) < len(cb.members):
            ca, cb = cb, ca
        for m in cb.members:
            self._of[m] = ca
        ca.members.extend(cb.members)
        ca.provenance = sorted(set(ca.provenance) | set(cb.provenance) | {event.id})
        ca.lo, ca.hi, ca.lo_event, ca.hi_event = lo, hi, lo_event, hi_event
        return True

    # -- seeds --------------------------------------------------------------
    def seed(self, left: GraphSpec, right: GraphSpec, lo: Optional[int], hi: Optional[int],
             tags: Iterable[str] = ()) -> bool:
        pair = canonical(left, right)
        tags = tuple(tags)
        why = Derivation(Rule.SEED, (), (), "+".join(tags))
        changed = self.tighten(left, right, lo, hi, why)
        self.seed_log.append((pair, lo, hi, tags))
        self._seeded.add(pair)
        known = self.tags.setdefault(pair, [])
        known.extend(t for t in tags if t not in known)
        return changed

    @property
    def seeded_pairs(self) -> list[Pair]:
        return sorted(self._seeded, key=lambda p: (p[0].sort_key, p[1].sort_key))

    def copy(self) -> "KnowledgeBase":
        other = KnowledgeBase()
        clones: dict[int, _Class] = {}
        for pair, c in self._of.items():
            d = clones.get(id(c))
            if d is None:
                d = clones[id(c)] = _Class.__new__(_Class)
                d.lo, d.hi, d.lo_event, d.hi_event = c.lo, c.hi, c.lo_event, c.hi_event
                d.members = list(c.members)
                d.provenance = list(c.provenance)
            other._of[pair] = d
        other.events = list(self.events)
        other.tags = {k: list(v) for k, v in self.tags.items()}
        other._seeded = set(self._seeded)
        other.seed_log = list(self.seed_log)
        return other

    def informative_pairs(self) -> Iterator[Pair]:
        for pair in self.pairs():
            if self.is_informative(*pair):
                yield pair


def _earliest(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None or b is None:
        return a if b is None else b
    return min(a, b)


def load_seed(text: str, kb: Optional[KnowledgeBase] = None, replace: bool = False) -> KnowledgeBase:
    """Populate a knowledge base from seed-file text.

    With ``replace`` the lines act as an overlay: each listed pair is reset
    to the line's interval before intersecting, instead of being intersected
    with what ``kb`` already holds.
    """
    kb = KnowledgeBase() if kb is None else kb
    lines = parse_seed(text)
    if replace:
        kb = _strip_pairs(kb, {canonical(s.left, s.right) for s in lines})
    for s in lines:
        kb.seed(s.left, s.right, s.lo, s.hi, s.tags)
    return kb


def _strip_pairs(kb: KnowledgeBase, drop: set[Pair]) -> KnowledgeBase:
    """Replay the seeds of ``kb`` into a fresh base, leaving out ``drop``."""
    fresh = KnowledgeBase()
    for pair, lo, hi, tags in kb.seed_log:
        if pair not in drop:
            fresh.seed(pair[0], pair[1], lo, hi, tags)
    return fresh


def dump(kb: KnowledgeBase, only_seeded: bool = False) -> str:
    """Seed-format text for every informative pair, in canonical order."""
    lines = []
    for pair in kb.pairs():
        if only_seeded and pair not in kb._seeded:
            continue
        if not only_seeded and not kb.is_informative(*pair) and pair not in kb._seeded:
            continue
        if any(g.kind == "X" for g in pair):
            continue
        lo, hi = kb.interval(*pair)
        if hi == INF and lo == base_lo(pair):
            continue
        tags = tuple(kb.tags.get(pair, ()))
        if not tags:
            fact = kb.lookup(*pair)
            tags = (str(fact.provenance[-1].rule),) if fact.provenance else ("derived",)
        lines.append(format_seed_line(pair[0], pair[1], lo, hi, base_lo(pair), tags))
    return "".join(line + "\n" for line in lines)
