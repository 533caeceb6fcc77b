import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey_deduce.engine import Catalog, build, default_seed_text, explain, propagate
from ramsey_deduce.graphs import complete, minus_star, spec_subgraph_leq, wheel
from ramsey_deduce.kb import Contradiction, KnowledgeBase, Rule, canonical, load_seed

SMALL = 9
SEED_LINES = [ln for ln in default_seed_text().splitlines() if ln.split("#", 1)[0].strip()]


def intervals(result):
    kb = result.kb
    return {p: kb.interval(*p) for p in result.catalog.pairs}


def partition(result):
    kb = result.kb
    return {p: frozenset(kb.class_members(p)) for p in result.catalog.pairs}


@pytest.fixture(scope="module")
def small():
    return build(n_max=SMALL)


def test_fixpoint_values(fixpoint):
    kb = fixpoint.kb
    assert kb.interval(minus_star(4, 1), minus_star(6, 3)) == (16, 16)
    assert kb.interval(minus_star(5, 1), minus_star(5, 3)) == (19, 19)
    assert kb.interval(complete(3), minus_star(6, 2)) == (14, 14)
    assert kb.interval(wheel(5), minus_star(6, 4)) == (27, 27)


def test_empty_kb_applies_nothing_but_trivia():
    result = propagate(KnowledgeBase(), rules={Rule.MONOTONE, Rule.RECURSION, Rule.PARITY,
                                               Rule.THEOREM1}, n_max=6)
    assert result.log == []
    assert result.rounds == 1


def test_fixpoint_is_idempotent(small):
    before = intervals(small)
    again = propagate(small.kb, n_max=SMALL, catalog=small.catalog)
    assert again.log == []
    assert intervals(again) == before


@settings(max_examples=4, deadline=None)
@given(st.permutations(SEED_LINES))
def test_seed_order_does_not_matter(small, lines):
    shuffled = build("\n".join(lines) + "\n", n_max=SMALL)
    assert intervals(shuffled) == intervals(small)
    assert partition(shuffled) == partition(small)


def test_monotone_order_consistency(small):
    kb = small.kb
    specs = [g for g in Catalog(10).specs if g.n <= SMALL]
    for g in specs:
        for g2 in specs:
            if g is g2 or g2.n > g.n + 1 or not spec_subgraph_leq(g, g2):
                continue
            for h in specs:
                lo1, hi1 = kb.interval(g, h)
                lo2, hi2 = kb.interval(g2, h)
                assert lo1 <= hi2, (g, g2, h)
                assert hi1 <= hi2 and lo1 <= lo2, (g, g2, h)


def test_log_is_deterministic():
    a = [str(r) for r in build(n_max=8).log]
    b = [str(r) for r in build(n_max=8).log]
    assert a == b
    assert a[0].startswith("round=1 rule=")


def test_rule_subset_changes_result():
    full = build(n_max=SMALL)
    partial = build(n_max=SMALL, rules=set(Rule) - {Rule.THEOREM1})
    pair = (minus_star(4, 1), minus_star(5, 3))
    assert full.kb.interval(*pair) == (11, 11)
    assert partial.kb.interval(*pair) != (11, 11)
    assert all(r.rule is not Rule.THEOREM1 for r in partial.log)


def test_injected_contradiction():
    with pytest.raises(Contradiction) as info:
        build("K3 K3 = 6\nK3 K4 = 5\n", n_max=6)
    assert info.value.lo > info.value.hi


def test_max_rounds_validated():
    with pytest.raises(ValueError):
        propagate(KnowledgeBase(), max_rounds=0)


def test_explain_book_graph(fixpoint):
    tree = explain(fixpoint.kb, minus_star(4, 1), minus_star(5, 3))
    assert tree.claim == "r(K4-e,K5-K1,3) = 11"
    lines = tree.render()
    assert any("THEOREM1{N=11,n=4,s=3}" in ln for ln in lines)
    assert any(ln.lstrip().startswith("SEED") for ln in lines)
    d = json.loads(json.dumps(tree.to_dict()))
    assert d["pair"] == "r(K4-e,K5-K1,3)"
    assert tree.depth() >= 3


def test_explain_children_are_older(fixpoint):
    tree = explain(fixpoint.kb, complete(6), minus_star(6, 3))

    def walk(node):
        for child in node.children:
            if node.event is not None:
                assert child.event < node.event
            walk(child)

    walk(tree)
    assert any("THEOREM1{N=87" in ln for ln in tree.render())


def test_explain_unknown_pair():
    kb = load_seed("K3 K3 = 6\n")
    tree = explain(kb, complete(9), complete(9))
    assert tree.children == []
    assert tree.claim == "r(K9,K9) in [9,inf]"


def test_equalities_propagate_across_class(fixpoint):
    kb = fixpoint.kb
    a = canonical(complete(3), minus_star(11, 3))
    b = canonical(complete(3), complete(10))
    assert kb.same_class(a, b)
    assert kb.interval(*a) == kb.interval(*b)
