"""Sound inference rules over the interval knowledge base.

Each rule inspects the current intervals and proposes
:class:`RuleApplication` objects; nothing here mutates the knowledge base
except :meth:`RuleApplication.apply`.  Where a rule's hypothesis refers to
a true Ramsey number, the rule substitutes the stored upper (or lower)
bound instead.  That is sound because every hypothesis used here is
monotone in the premise value: a smaller true value only makes it easier
to satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import COMPLETE, MINUS_STAR, GraphSpec, complete, decone, minus_star
from .kb import INF, Derivation, KnowledgeBase, Pair, PremiseRef, Rule, canonical


@dataclass(frozen=True)
class RuleApplication:
    rule: Rule
    target: Pair
    params: tuple[tuple[str, int], ...] = ()
    lo: Optional[int] = None
    hi: Optional[int] = None
    equal_to: Optional[Pair] = None
    premises: tuple[PremiseRef, ...] = ()

    @property
    def derivation(self) -> Derivation:
        return Derivation(self.rule, self.params, self.premises)

    def apply(self, kb: KnowledgeBase) -> bool:
        if self.equal_to is not None:
            return kb.assert_equal(self.target, self.equal_to, self.derivation)
        return kb.tighten(*self.target, self.lo, self.hi, self.derivation)

    def improves(self, kb: KnowledgeBase) -> bool:
        if self.equal_to is not None:
            return not kb.same_class(self.target, self.equal_to)
        lo, hi = kb.interval(*self.target)
        return (self.lo is not None and self.lo > lo) or (self.hi is not None and self.hi < hi)


# -- the cone theorem ------------------------------------------------------

def theorem1_min_n(n: int, s: int, ub2: int) -> int:
    """Least N with ``ceil((s+1)(N-n)/n) >= ub2``.

    The inequality is equivalent to ``(s+1)(N-n) >= n(ub2-1) + 1``.
    """
    if ub2 <= 0:
        return n
    need = n * (ub2 - 1) + 1
    return n + -(-need // (s + 1))


def cone_side_condition(N: int, n: int, s: int) -> int:
    """``ceil((s+1)(N-n)/n)``, the red-degree guaranteed by pigeonhole."""
    return -(-(s + 1) * (N - n) // n)


def rule_theorem1(kb: KnowledgeBase, target_left: GraphSpec,
                  target_right: GraphSpec) -> list[RuleApplication]:
    """Apply the cone theorem with ``target_left`` on the red side.

    With ``target_right = K_{n+1} - K_{1,s}`` and ``G1`` the decone of
    ``target_left``: if ``N >= r(G1^v, K_n)`` and
    ``ceil((s+1)(N-n)/n) >= r(G1, K_{n+1} - K_{1,s})`` then
    ``r(G1^v, K_{n+1} - K_{1,s}) <= N``.  The minimal such N is emitted as
    an upper bound; when it is already below the stored lower bound of
    ``r(G1^v, K_n)``, the true value of that number satisfies the
    hypothesis too, and the two pairs are merged.
    """
    if target_right.kind != MINUS_STAR:
        return []
    g1 = decone(target_left)
    if g1 is None:
        return []
    n, s = target_right.n - 1, target_right.s
    if n < 2:
        return []
    base = complete(n)
    lo1, ub1 = kb.interval(target_left, base)
    ub2 = kb.hi(g1, target_right)
    if ub2 == INF:
        return []
    n_cond = theorem1_min_n(n, s, int(ub2))
    target = canonical(target_left, target_right)
    premise2 = kb.ref(g1, target_right, "hi")
    out = []
    if ub1 != INF:
        N = max(int(ub1), n_cond)
        out.append(RuleApplication(
            Rule.THEOREM1, target, (("N", N), ("n", n), ("s", s)), hi=N,
            premises=(kb.ref(target_left, base, "hi"), premise2)))
    if n_cond <= lo1:
        out.append(RuleApplication(
            Rule.THEOREM1, target, (("N", n_cond), ("n", n), ("s", s)),
            equal_to=canonical(target_left, base),
            premises=(kb.ref(target_left, base, "lo"), premise2)))
    return out


def theorem1_both_ways(kb: KnowledgeBase, pair: Pair) -> list[RuleApplication]:
    a, b = pair
    out = rule_theorem1(kb, a, b)
    if a != b:
        out += rule_theorem1(kb, b, a)
    return out


# -- classical recursion ---------------------------------------------------

def recursion_applications(kb: KnowledgeBase, pair: Pair, deletions, parity: bool,
                           plain: bool = True) -> list[RuleApplication]:
    """``r(G,H) <= r(G-u,H) + r(G,H-w)``, minus one when both terms are even.

    The parity step needs only valid upper bounds ``a`` and ``b``: on
    ``a+b-1`` vertices a bad coloring forces every vertex to have red
    degree exactly ``a-1`` (odd) on an odd number of vertices.
    """
    g, h = pair
    left = [(kb.hi(gu, h), gu) for gu in deletions(g)]
    right = [(kb.hi(g, hw), hw) for hw in deletions(h)]
    left = [x for x in left if x[0] != INF]
    right = [x for x in right if x[0] != INF]
    if not left or not right:
        return []
    best = None
    for a, gu in sorted(left, key=lambda x: x[0]):
        for b, hw in sorted(right, key=lambda x: x[0]):
            total = int(a + b)
            candidates = []
            if plain:
                candidates.append((total, Rule.RECURSION))
            if parity and a % 2 == 0 and b % 2 == 0:
                candidates.append((total - 1, Rule.PARITY))
            for value, rule in candidates:
                key = (value, rule is Rule.PARITY)
                if best is None or key < best[0]:
                    best = (key, rule, gu, hw, int(a), int(b))
    if best is None:
        return []
    (value, _), rule, gu, hw, a, b = best
    premises = (kb.ref(gu, h, "hi"), kb.ref(g, hw, "hi"))
    return [RuleApplication(rule, canonical(g, h), (("a", a), ("b", b)), hi=value,
                            premises=premises)]


# -- monotonicity ----------------------------------------------------------

def monotone_applications(kb: KnowledgeBase, pair: Pair, up, down) -> list[RuleApplication]:
    """Subgraph monotonicity: ``G' <= G`` and ``H' <= H`` give ``r(G',H') <= r(G,H)``."""
    g, h = pair
    target = canonical(g, h)
    lo, hi = kb.interval(g, h)
    out = []
    best_hi, via = hi, None
    for g2 in up(g):
        v = kb.hi(g2, h)
        if v < best_hi:
            best_hi, via = v, (g2, h)
    for h2 in up(h):
        v = kb.hi(g, h2)
        if v < best_hi:
            best_hi, via = v, (g, h2)
    if via is not None:
        out.append(RuleApplication(Rule.MONOTONE, target, hi=int(best_hi),
                                   premises=(kb.ref(*via, "hi"),)))
    best_lo, via = lo, None
    for g1 in down(g):
        v = kb.lo(g1, h)
        if v > best_lo:
            best_lo, via = v, (g1, h)
    for h1 in down(h):
        v = kb.lo(g, h1)
        if v > best_lo:
            best_lo, via = v, (g, h1)
    if via is not None:
        out.append(RuleApplication(Rule.MONOTONE, target, lo=best_lo,
                                   premises=(kb.ref(*via, "lo"),)))
    return out


def rule_monotone(kb: KnowledgeBase, catalog) -> list[RuleApplication]:
    out = []
    for pair in catalog.pairs:
        out += monotone_applications(kb, pair, catalog.up, catalog.down)
    return out


def rule_recursion(kb: KnowledgeBase, catalog, parity: bool = True) -> list[RuleApplication]:
    out = []
    for pair in catalog.pairs:
        out += recursion_applications(kb, pair, catalog.deletions, parity)
    return out


# -- trivial values --------------------------------------------------------

def base_applications(kb: KnowledgeBase, pair: Pair) -> list[RuleApplication]:
    """``r(K_2, H) = |V(H)|``: a red edge or an all-blue clique."""
    g, h = pair
    for a, b in ((g, h), (h, g)):
        if a.kind == COMPLETE and a.n == 2:
            v = max(b.n, 1)
            return [RuleApplication(Rule.BASE, canonical(g, h), (("v", v),), lo=v, hi=v)]
    return []


# -- literature theorems -----------------------------------------------------

def rule_be89(kb: KnowledgeBase, m: int, n: int, n_max: Optional[int] = None) -> list[RuleApplication]:
    """Equalities ``r(K_{m+1}-K_{1,m-p}, K_{n+1}-K_{1,n-q}) = r(K_m, K_n)``.

    Valid for ``n >= m >= 3`` and ``m + n >= 8`` with ``p = ceil(m/(n-1))``
    and ``q = ceil(n/(m-1))``; the two one-sided equalities follow by
    sandwiching.
    """
    if not (n >= m >= 3 and m + n >= 8):
        return []
    p = -(-m // (n - 1))
    q = -(-n // (m - 1))
    anchor = canonical(complete(m), complete(n))
    params = (("m", m), ("n", n), ("p", p), ("q", q))
    left = minus_star(m + 1, m - p) if m - p >= 1 else None
    right = minus_star(n + 1, n - q) if n - q >= 1 else None
    pairs = []
    if left is not None and right is not None:
        pairs.append((left, right))
    if right is not None:
        pairs.append((complete(m), right))
    if left is not None:
        pairs.append((left, complete(n)))
    out = []
    for a, b in pairs:
        if n_max is not None and max(a.n, b.n) > n_max:
            continue
        out.append(RuleApplication(Rule.BE89, canonical(a, b), params, equal_to=anchor))
    return out


# The inequality alone is not sufficient: it would give r(K3, K5-e) = 9 and
# r(K3, K4-P3) = 6, while exhaustive search gives 11 and 7.  The rule is
# confined to s >= BBH98_MIN_S and n >= BBH98_MIN_N.
BBH98_MIN_S = 2
BBH98_MIN_N = 4


def rule_bbh98(kb: KnowledgeBase, n: int, s: int) -> list[RuleApplication]:
    """``r(K_3, K_{n+1}-K_{1,s}) = r(K_3, K_n)`` when
    ``n >= s+1 > (n-1)(n-2)/(r(3,n)-n)``, checked in integers."""
    if not (BBH98_MIN_S <= s and n >= s + 1 and n >= BBH98_MIN_N):
        return []
    k3, kn = complete(3), complete(n)
    lo, hi = kb.interval(k3, kn)
    if lo != hi:
        return []
    R = int(lo)
    if (s + 1) * (R - n) <= (n - 1) * (n - 2):
        return []
    return [RuleApplication(
        Rule.BBH98, canonical(k3, minus_star(n + 1, s)), (("n", n), ("s", s), ("R", R)),
        equal_to=canonical(k3, kn), premises=(kb.ref(k3, kn, "lo"), kb.ref(k3, kn, "hi")))]
