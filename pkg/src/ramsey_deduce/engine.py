"""Fixpoint propagation over a catalog of graph pairs, and proof trees."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional

from .grammar import format_interval
from .graphs import (COMPLETE, CYCLE, MINUS_STAR, WHEEL, GraphSpec, UndecidedError, complete, cone,
                     decone, minus_star, spec_subgraph_leq, vertex_deletions)
from .kb import (INF, RULE_ORDER, KnowledgeBase, Pair, Rule, canonical, load_seed,
                 pair_text)
from .rules import (RuleApplication, base_applications, monotone_applications,
                    recursion_applications, rule_bbh98, rule_be89, theorem1_both_ways)

log = logging.getLogger(__name__)

DEFAULT_N_MAX = 16
ALL_RULES = frozenset(RULE_ORDER)


def default_seed_text() -> str:
    return resources.files("ramsey_deduce").joinpath("data/seed.kb").read_text(encoding="utf-8")


class Catalog:
    """Graph specs considered by propagation and their one-step relations.

    Holds every ``K_n`` (n >= 2) and ``K_n - K_{1,s}`` up to ``n_max``
    vertices, plus any cycles and wheels given in ``extra`` together with
    their cones and decones.
    """

    def __init__(self, n_max: int = DEFAULT_N_MAX, extra: Iterable[GraphSpec] = ()):
        self.n_max = n_max
        specs = {complete(n) for n in range(2, n_max + 1)}
        specs |= {minus_star(n, s) for n in range(3, n_max + 1) for s in range(1, n)}
        for g in extra:
            if g.kind in (CYCLE, WHEEL) and g.n <= n_max:
                specs.add(g)
                for h in (cone(g), decone(g)):
                    if h is not None and h.kind in (CYCLE, WHEEL) and h.n <= n_max:
                        specs.add(h)
        self.specs = sorted(specs, key=lambda g: g.sort_key)
        self._known = set(self.specs)
        self._up: dict[GraphSpec, list[GraphSpec]] = {g: self._one_step_up(g) for g in self.specs}
        self._down: dict[GraphSpec, list[GraphSpec]] = {g: [] for g in self.specs}
        for g, ups in self._up.items():
            for h in ups:
                self._down[h].append(g)
        for g in self._down:
            self._down[g].sort(key=lambda x: x.sort_key)
        self._deletions = {g: [d for d in vertex_deletions(g) if d in self._known]
                           for g in self.specs}
        self.pairs: list[Pair] = [
            (a, b) for i, a in enumerate(self.specs) for b in self.specs[i:]
        ]
        self.pair_set = set(self.pairs)

    def __contains__(self, spec: GraphSpec) -> bool:
        return spec in self._known

    def _one_step_up(self, g: GraphSpec) -> list[GraphSpec]:
        out = []
        n, s = g.n, g.s
        if g.kind == COMPLETE:
            out += [complete(n + 1), minus_star(n + 1, n)]
        elif g.kind == MINUS_STAR:
            out.append(minus_star(n, s - 1) if s >= 2 else complete(n))
            out += [minus_star(n + 1, s), minus_star(n + 1, s + 1)]
        odd = [h for h in self.specs if h.kind in (CYCLE, WHEEL) or g.kind in (CYCLE, WHEEL)]
        for h in odd:
            if h == g or h.n not in (n, n + 1) or h in out:
                continue
            try:
                if spec_subgraph_leq(g, h):
                    out.append(h)
            except UndecidedError:
                continue
        return [h for h in out if h in self._known]

    def up(self, g: GraphSpec) -> list[GraphSpec]:
        return self._up.get(g, [])

    def down(self, g: GraphSpec) -> list[GraphSpec]:
        return self._down.get(g, [])

    def deletions(self, g: GraphSpec) -> list[GraphSpec]:
        return self._deletions.get(g, [])

    def premises(self, pair: Pair) -> set[Pair]:
        """Pairs whose intervals can influence per-target rules at ``pair``."""
        g, h = pair
        out = set()
        for g2 in self.up(g) + self.down(g) + self.deletions(g):
            out.add(canonical(g2, h))
        for h2 in self.up(h) + self.down(h) + self.deletions(h):
            out.add(canonical(g, h2))
        for left, right in ((g, h), (h, g)):
            if right.kind == MINUS_STAR:
                g1 = decone(left)
                if right.n - 1 >= 2:
                    out.add(canonical(left, complete(right.n - 1)))
                if g1 is not None and g1 in self._known:
                    out.add(canonical(g1, right))
        return out


@dataclass(frozen=True)
class LogRecord:
    """One committed rule application."""

    round: int
    rule: Rule
    pair: Pair
    params: tuple[tuple[str, int], ...]
    old: tuple[int, float]
    new: tuple[int, float]
    equal_to: Optional[Pair] = None

    def __str__(self) -> str:
        params = ";".join(f"{k}={v}" for k, v in self.params)
        parts = [f"round={self.round}", f"rule={self.rule}", f"pair={pair_text(self.pair)}",
                 f"params={params}", f"old={_iv(self.old)}", f"new={_iv(self.new)}"]
        if self.equal_to is not None:
            parts.append(f"equal={pair_text(self.equal_to)}")
        return " ".join(parts)


def _iv(interval) -> str:
    lo, hi = interval
    return f"[{lo},{'inf' if hi == INF else hi}]"


@dataclass
class PropagationResult:
    kb: KnowledgeBase
    log: list[LogRecord] = field(default_factory=list)
    rounds: int = 0
    catalog: Optional[Catalog] = None


def _extra_specs(kb: KnowledgeBase) -> list[GraphSpec]:
    return [g for pair in kb.pairs() for g in pair if g.kind in (CYCLE, WHEEL)]


def propagate(kb: KnowledgeBase, rules: Iterable[Rule] = ALL_RULES, max_rounds: int = 200,
              n_max: int = DEFAULT_N_MAX, catalog: Optional[Catalog] = None) -> PropagationResult:
    """Apply the enabled rules until no interval or equality class changes.

    Rules run in :data:`RULE_ORDER`, targets in canonical pair order.  After
    the first round only targets whose premises changed are revisited, which
    yields the same fixpoint as re-running every target.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    rules = frozenset(rules)
    if catalog is None:
        catalog = Catalog(n_max, _extra_specs(kb))
    dependents: dict[Pair, list[Pair]] = {}
    for pair in catalog.pairs:
        for p in catalog.premises(pair):
            dependents.setdefault(p, []).append(pair)
    result = PropagationResult(kb, catalog=catalog)
    dirty = set(catalog.pairs)
    be89_args = [(m, n) for n in range(3, catalog.n_max) for m in range(3, n + 1) if m + n >= 8]
    bbh98_args = [(n, s) for n in range(2, catalog.n_max) for s in range(1, n)]

    for rnd in range(1, max_rounds + 1):
        touched: set[Pair] = set()
        ordered = sorted(dirty, key=lambda p: (p[0].sort_key, p[1].sort_key))

        def commit(app: RuleApplication) -> None:
            if not app.improves(kb):
                return
            old = kb.interval(*app.target)
            if app.apply(kb):
                result.log.append(LogRecord(rnd, app.rule, app.target, app.params, old,
                                            kb.interval(*app.target), app.equal_to))
                touched.update(kb.class_members(app.target))

        for rule in RULE_ORDER:
            if rule not in rules:
                continue
            if rule is Rule.BASE:
                for pair in ordered:
                    for app in base_applications(kb, pair):
                        commit(app)
            elif rule is Rule.MONOTONE:
                for pair in ordered:
                    for app in monotone_applications(kb, pair, catalog.up, catalog.down):
                        commit(app)
            elif rule is Rule.RECURSION or (rule is Rule.PARITY and Rule.RECURSION not in rules):
                parity = Rule.PARITY in rules
                for pair in ordered:
                    for app in recursion_applications(kb, pair, catalog.deletions, parity,
                                                      plain=Rule.RECURSION in rules):
                        commit(app)
            elif rule is Rule.THEOREM1:
                for pair in ordered:
                    for app in theorem1_both_ways(kb, pair):
                        commit(app)
            elif rule is Rule.BE89:
                for m, n in be89_args:
                    for app in rule_be89(kb, m, n, catalog.n_max):
                        commit(app)
            elif rule is Rule.BBH98:
                for n, s in bbh98_args:
                    for app in rule_bbh98(kb, n, s):
                        commit(app)
        result.rounds = rnd
        log.debug("round %d: %d pairs changed", rnd, len(touched))
        if not touched:
            break
        dirty = set()
        for p in touched:
            dirty.update(dependents.get(p, ()))
            if p in catalog.pair_set:
                dirty.add(p)
    return result


def build(seed_text: Optional[str] = None, overlay_text: Optional[str] = None,
          rules: Iterable[Rule] = ALL_RULES, n_max: int = DEFAULT_N_MAX,
          max_rounds: int = 200) -> PropagationResult:
    """Load seeds (plus an optional replacing overlay) and propagate."""
    kb = load_seed(default_seed_text() if seed_text is None else seed_text)
    if overlay_text:
        kb = load_seed(overlay_text, kb, replace=True)
    return propagate(kb, rules, max_rounds=max_rounds, n_max=n_max)


# -- proof trees -------------------------------------------------------------

@dataclass
class ProofNode:
    event: Optional[int]
    rule: str
    params: dict
    pair: Pair
    claim: str
    children: list["ProofNode"] = field(default_factory=list)
    repeat: bool = False

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def to_dict(self) -> dict:
        return {
            "event": self.event,
            "rule": self.rule,
            "params": dict(self.params),
            "pair": pair_text(self.pair),
            "claim": self.claim,
            "repeat": self.repeat,
            "children": [c.to_dict() for c in self.children],
        }

    def render(self, indent: int = 0) -> list[str]:
        label = self.rule
        if self.params:
            label += "{" + ",".join(f"{k}={v}" for k, v in self.params.items()) + "}"
        line = "  " * indent + f"{label} {self.claim}"
        if self.repeat:
            return [line + f" (see #{self.event})"]
        tag = f"  #{self.event}" if self.event is not None else ""
        lines = [line + tag]
        for child in self.children:
            lines += child.render(indent + 1)
        return lines


def _claim_text(kb: KnowledgeBase, event) -> str:
    lo, hi = event.new
    pair = pair_text(event.pair)
    if event.kind == "merge":
        return f"{pair} == {pair_text(event.other)} {format_interval(lo, hi)}"
    if event.kind == "lo":
        return f"{pair} >= {lo}"
    if event.kind == "hi":
        return f"{pair} <= {hi if hi != INF else 'inf'}"
    return f"{pair} {format_interval(lo, hi)}"


class _MergeIndex:
    """Merge events keyed by the pairs they connect."""

    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        self.adj: dict[Pair, list[tuple[int, Pair]]] = {}
        for e in kb.events:
            if e.kind == "merge":
                self.adj.setdefault(e.pair, []).append((e.id, e.other))
                self.adj.setdefault(e.other, []).append((e.id, e.pair))

    def path(self, src: Pair, dst: Pair, before: int) -> list[int]:
        """Merge events, all older than ``before``, linking ``src`` to ``dst``."""
        if src == dst:
            return []
        prev: dict[Pair, tuple[Pair, int]] = {src: (src, -1)}
        frontier = [src]
        while frontier:
            nxt = []
            for p in frontier:
                for eid, q in self.adj.get(p, ()):
                    if eid < before and q not in prev:
                        prev[q] = (p, eid)
                        nxt.append(q)
            frontier = nxt
        if dst not in prev:
            return []
        out = []
        while dst != src:
            dst, eid = prev[dst]
            out.append(eid)
        return sorted(out)


def _event_tree(kb: KnowledgeBase, event_id: int, seen: set[int], merges: _MergeIndex) -> ProofNode:
    event = kb.events[event_id]
    d = event.derivation
    rule = str(d.rule) + (f"[{d.tag}]" if d.tag else "")
    node = ProofNode(event_id, rule, dict(d.params), event.pair, _claim_text(kb, event))
    if event_id in seen:
        node.repeat = True
        return node
    seen.add(event_id)
    children: list[int] = []
    for ref in d.premises:
        if ref.event is None:
            continue
        # a premise may be justified on another member of its equality class
        linked = merges.path(ref.pair, kb.events[ref.event].pair, event_id)
        for eid in linked + [ref.event]:
            if eid not in children:
                children.append(eid)
    for child in sorted(children):
        node.children.append(_event_tree(kb, child, seen, merges))
    return node


def explain(kb: KnowledgeBase, left: GraphSpec, right: GraphSpec) -> ProofNode:
    """Proof tree for the current interval of ``r(left, right)``.

    The root summarises the interval; its children are the events that
    established the lower and upper bounds.  Unknown pairs give a root with
    no children.
    """
    pair = canonical(left, right)
    fact = kb.lookup(*pair)
    root = ProofNode(None, "FACT", {}, pair, f"{pair_text(pair)} {format_interval(fact.lo, fact.hi)}")
    seen: set[int] = set()
    merges = _MergeIndex(kb)
    ids: list[int] = []
    for eid in (fact.lo_event, fact.hi_event):
        if eid is None:
            continue
        for x in merges.path(pair, kb.events[eid].pair, len(kb.events)) + [eid]:
            if x not in ids:
                ids.append(x)
    for eid in sorted(ids):
        root.children.append(_event_tree(kb, eid, seen, merges))
    return root
