"""Built-in catalog of claims that ``reproduce`` checks against the engine.

A claim names a pair, an expected relation and optionally an overlay of
hypothetical seed lines and a restricted rule set.  Relations:

``=``          exact value ``v``
``<=``         derived upper bound equals ``v``
``>=``         derived lower bound equals ``v``
``in``         derived interval equals ``[a, b]``
``equiv``      the pair shares an equality class with ``other``
``not-equiv``  the pair does not share a class with ``other``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .engine import ALL_RULES, PropagationResult, build, explain
from .grammar import format_interval, parse_pair
from .kb import INF, Pair, Rule, canonical, pair_text

NO_THEOREM1 = frozenset(ALL_RULES - {Rule.THEOREM1})
RECURSION_ONLY = frozenset(ALL_RULES - {Rule.THEOREM1, Rule.PARITY})


@dataclass(frozen=True)
class Claim:
    id: str
    pair: Pair
    relation: str
    value: tuple[int, ...] = ()
    other: Optional[Pair] = None
    locus: str = ""
    overlay: str = ""
    rules: frozenset = ALL_RULES
    text: str = ""
    other_label: str = ""

    @property
    def expected_text(self) -> str:
        if self.relation in ("equiv", "not-equiv"):
            sym = "==" if self.relation == "equiv" else "!="
            return f"{sym} {self.other_text}"
        if self.relation == "in":
            return f"in [{self.value[0]},{self.value[1]}]"
        return f"{self.relation} {self.value[0]}"

    @property
    def other_text(self) -> str:
        if self.other is None:
            return ""
        return self.other_label or pair_text(self.other)

    @property
    def setup_key(self) -> tuple:
        return (self.overlay, self.rules)


@dataclass(frozen=True)
class Outcome:
    claim: Claim
    passed: bool
    interval: tuple[int, float]
    depth: int

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lo, hi = self.interval
        return (f"{status} id={self.claim.id} pair={self.claim.text} "
                f"expected={self.claim.expected_text.replace(' ', '')} "
                f"derived={format_interval(lo, hi).replace(' ', '')} depth={self.depth}")


def _p(text: str) -> Pair:
    return canonical(*parse_pair(text))


def _claim(id: str, pair: str, relation: str, *value: int, other: Optional[str] = None,
           locus: str = "", overlay: str = "", rules: Iterable[Rule] = ALL_RULES) -> Claim:
    return Claim(id, _p(pair), relation, tuple(value), _p(other) if other else None, locus,
                 overlay, frozenset(rules), pair, other or "")


def _star(n: int, s: int) -> str:
    return {1: f"K{n}-e", 2: f"K{n}-P3"}.get(s, f"K{n}-K1,{s}")


def _claims() -> list[Claim]:
    c: list[Claim] = []
    add = c.append

    # cone theorem with book-like graphs on the red side
    add(_claim("book4-k5s3", "r(K4-e,K5-K1,3)", "=", 11, locus="cone over K3-e, n=4, s=3"))
    for s in (3, 4):
        add(_claim(f"book4-k6s{s}", f"r(K4-e,{_star(6, s)})", "=", 16,
                   locus=f"cone over K3-e, n=5, s={s}"))
    for s in (4, 5):
        add(_claim(f"book4-k7s{s}", f"r(K4-e,{_star(7, s)})", "=", 21,
                   locus=f"cone over K3-e, n=6, s={s}"))
    add(_claim("book4-k7s3", "r(K4-e,K7-K1,3)", "in", 21, 22, locus="cone over K3-e, N=22"))
    add(_claim("book4-k7s2", "r(K4-e,K7-P3)", "in", 21, 27, locus="cone over K3-e, N=27"))
    add(_claim("book5-k5s3", "r(K5-e,K5-K1,3)", "=", 19, locus="cone over K4-e, N=19"))
    for s in (3, 4):
        add(_claim(f"book5-k6s{s}", f"r(K5-e,{_star(6, s)})", "equiv", other="r(K5-e,K5)",
                   locus=f"cone over K4-e with lower bound 30, s={s}"))
    for m in range(2, 16):
        for s in range(1, m + 1):
            add(_claim(f"path3-m{m + 1}s{s}", f"r(K3-e,{_star(m + 1, s)})", "=", 2 * m - 1,
                       locus="sandwich between K_m and K_{m+1}-e"))
    overlay16 = "K4-e K6-K1,3 <= 16 src=hyp\n"
    add(_claim("book4-rec-k7s3", "r(K4-e,K7-K1,3)", "<=", 27, locus="sum recursion 11+16",
               overlay=overlay16, rules=NO_THEOREM1))
    add(_claim("book4-rec-k7s2", "r(K4-e,K7-P3)", "<=", 28, locus="sum recursion 11+17",
               overlay=overlay16, rules=NO_THEOREM1))

    # triangle and near-complete graphs
    add(_claim("k3-k6s2", "r(K3,K6-P3)", "=", 14, locus="triangle rule, n=5, s=2"))
    add(_claim("k3-k7s3", "r(K3,K7-K1,3)", "=", 18, locus="triangle rule, n=6, s=3"))
    for s in range(2, 10):
        add(_claim(f"k3-k10s{s}", f"r(K3,{_star(10, s)})", "=", 36, locus=f"triangle rule, n=9, s={s}"))
    for s in range(3, 11):
        add(_claim(f"k3-k11s{s}", f"r(K3,{_star(11, s)})", "equiv", other="r(K3,K10)",
                   locus=f"n=10, s={s}"))
    for m, v in ((6, 18), (7, 23), (8, 28), (9, 36)):
        add(_claim(f"k{m}-k4s2", f"r(K{m},K4-P3)", "=", v, locus=f"clique pair rule, m={m - 1}, n=3"))
    add(_claim("k10-k4s2", "r(K10,K4-P3)", "equiv", other="r(K10,K3)",
               locus="clique pair rule, m=9, n=3"))
    add(_claim("k4-k5s2", "r(K4,K5-P3)", "=", 18, locus="clique pair rule, m=n=4"))

    # sum recursion along K_m versus K5-P3 without the cone theorem
    overlay43 = "K3 K10 in [40,43] src=hyp\n"
    for m, v in ((6, 43), (7, 66), (8, 94), (9, 130), (10, 173)):
        add(_claim(f"rec-k{m}-k5s2", f"r(K{m},K5-P3)", "<=", v, locus="sum recursion",
                   overlay=overlay43 if m == 10 else "", rules=RECURSION_ONLY))
    for m, v in ((6, 41), (7, 61), (8, 85), (9, 117), (10, 159)):
        add(_claim(f"k{m}-k5s2", f"r(K{m},K5-P3)", "<=", v, locus=f"cone over K{m - 1}, n=4, s=2"))
    add(_claim("k11-k5s2", "r(K11,K5-P3)", "<=", 210, locus="sum recursion over improved bounds"))
    add(_claim("cond-k6-k5s2", "r(K6,K5-P3)", "equiv", other="r(K6,K4)",
               locus="cone over K5 if r(K6,K4) >= 37", overlay="K6 K4 = 37 src=hyp\n"))
    add(_claim("cond-k6-k5s2-neg", "r(K6,K5-P3)", "not-equiv", other="r(K6,K4)",
               locus="hypothesis absent"))

    add(_claim("rec-k4-k6s2", "r(K4,K6-P3)", "<=", 31, locus="sum recursion with parity",
               rules=NO_THEOREM1))
    add(_claim("k4-k6s2", "r(K4,K6-P3)", "in", 25, 27, locus="cone over K3, n=5, s=2"))
    add(_claim("k5-k6s2", "r(K5,K6-P3)", "<=", 49, locus="cone over K4, n=5, s=2"))
    add(_claim("k6-k6s2", "r(K6,K6-P3)", "<=", 87, locus="cone over K5, n=5, s=2"))
    add(_claim("k7-k6s2", "r(K7,K6-P3)", "<=", 148, locus="sum recursion over improved bounds"))

    table = {
        3: {11: 44, 12: 52, 13: 61, 14: 70, 15: 80, 16: 91},
        4: {7: 41, 8: 61, 10: 115, 11: 154, 12: 199, 13: 253, 14: 313, 15: 383, 16: 466},
        5: {7: 87, 8: 143, 9: 222},
    }
    for m, row in table.items():
        for n, v in row.items():
            add(_claim(f"u-k{m}-k{n}s2", f"r(K{m},K{n}-P3)", "<=", v,
                       locus=f"cone over K{m - 1}, n={n - 1}, s=2"))

    for m, v in zip(range(6, 16), (87, 143, 216, 316, 442, 633, 848, 1139, 1461, 1878)):
        add(_claim(f"k{m}-k6s3", f"r(K{m},K6-K1,3)", "<=", v, locus=f"cone over K{m - 1}, n=5, s=3"))
    add(_claim("cond-k6-k6s3", "r(K6,K6-K1,3)", "equiv", other="r(K6,K5)",
               locus="cone over K5 if r(K6,K5) >= 66", overlay="K6 K5 in [66,87] src=hyp\n"))
    add(_claim("rec-k4-k7s3", "r(K4,K7-K1,3)", "<=", 43, locus="sum recursion 18+25",
               rules=NO_THEOREM1))
    for m, v in zip(range(4, 12), (41, 87, 165, 298, 495, 780, 1175, 1804)):
        add(_claim(f"k{m}-k7s3", f"r(K{m},K7-K1,3)", "<=", v, locus=f"cone over K{m - 1}, n=6, s=3"))

    # K4 versus K_{n+1} - K_{1,s}
    smallest = {6: 4, 7: 5, 8: 5, 9: 6, 10: 6, 11: 7, 12: 8, 13: 8, 14: 9, 15: 10}
    for n, s in smallest.items():
        add(_claim(f"k4eq-k{n + 1}s{s}", f"r(K4,{_star(n + 1, s)})", "equiv", other=f"r(K4,K{n})",
                   locus=f"clique pair rule, m=4, n={n}"))
    extended = [(6, 3), (7, 3), (7, 4), (8, 4), (9, 4), (9, 5), (10, 5), (11, 6), (12, 6), (12, 7),
                (13, 7), (14, 8), (15, 9)]
    for n, s in extended:
        add(_claim(f"k4eq-k{n + 1}s{s}", f"r(K4,{_star(n + 1, s)})", "equiv", other=f"r(K4,K{n})",
                   locus=f"cone over K3, n={n}, s={s}"))
    add(_claim("cond-k4-k11s4", "r(K4,K11-K1,4)", "equiv", other="r(K4,K10)",
               locus="cone over K3 if r(K4,K10) >= 93", overlay="K4 K10 in [93,149] src=hyp\n"))
    add(_claim("cond-k4-k13s5", "r(K4,K13-K1,5)", "equiv", other="r(K4,K12)",
               locus="cone over K3 if r(K4,K12) >= 129", overlay="K4 K12 in [129,238] src=hyp\n"))

    # wheels
    for s in (3, 4, 5):
        add(_claim(f"w5-k6s{s}", f"r(W5,{_star(6, s)})", "=", 27, locus=f"cone over C4, n=5, s={s}"))
    for n, ss in ((6, (4, 5, 6)), (7, (4, 5, 6, 7))):
        for s in ss:
            add(_claim(f"w5-k{n + 1}s{s}", f"r(W5,{_star(n + 1, s)})", "equiv",
                       other=f"r(W5,K{n})", locus=f"cone over C4, n={n}, s={s}"))

    # conditional equality for s = 2 against K5-e
    add(_claim("cond-book5-k6s2", "r(K5-e,K6-P3)", "equiv", other="r(K5-e,K5)",
               locus="cone over K4-e if r(K5-e,K5) >= 32", overlay="K5-e K5 >= 32 src=hyp\n"))
    add(_claim("cond-book5-k6s2-neg", "r(K5-e,K6-P3)", "not-equiv", other="r(K5-e,K5)",
               locus="hypothesis absent"))
    return c


CLAIMS: list[Claim] = _claims()
CLAIMS_BY_ID: dict[str, Claim] = {cl.id: cl for cl in CLAIMS}

if len(CLAIMS_BY_ID) != len(CLAIMS):
    raise RuntimeError("duplicate claim id in manifest")


def evaluate(claim: Claim, result: PropagationResult) -> Outcome:
    kb = result.kb
    lo, hi = kb.interval(*claim.pair)
    rel, v = claim.relation, claim.value
    if rel == "=":
        ok = lo == hi == v[0]
    elif rel == "<=":
        ok = hi == v[0]
    elif rel == ">=":
        ok = lo == v[0]
    elif rel == "in":
        ok = (lo, hi) == (v[0], v[1])
    elif rel == "equiv":
        ok = kb.same_class(claim.pair, claim.other)
    elif rel == "not-equiv":
        ok = not kb.same_class(claim.pair, claim.other)
    else:
        raise ValueError(f"unknown relation {rel!r}")
    depth = explain(kb, *claim.pair).depth() - 1
    return Outcome(claim, ok, (lo, hi if hi != INF else INF), depth)


def reproduce(claims: Iterable[Claim] = CLAIMS, seed_text: Optional[str] = None,
              extra_overlay: str = "") -> list[Outcome]:
    """Evaluate claims, building one fixpoint per distinct overlay and rule set."""
    cache: dict[tuple, PropagationResult] = {}
    out = []
    for claim in claims:
        key = claim.setup_key
        if key not in cache:
            overlay = claim.overlay + extra_overlay
            cache[key] = build(seed_text, overlay or None, rules=claim.rules)
        out.append(evaluate(claim, cache[key]))
    return out
