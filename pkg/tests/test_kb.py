import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey_deduce.engine import default_seed_text
from ramsey_deduce.graphs import complete, cycle, minus_star, wheel
from ramsey_deduce.kb import (Contradiction, Derivation, KnowledgeBase, Rule, base_lo, canonical,
                              dump, load_seed)

K3, K4, K5, K6 = (complete(n) for n in (3, 4, 5, 6))
WHY = Derivation(Rule.MONOTONE)


def test_default_interval():
    kb = KnowledgeBase()
    assert kb.interval(K3, K4) == (4, math.inf)
    assert not kb.is_informative(K3, K4)
    assert base_lo((complete(1), K4)) == 1
    assert base_lo((minus_star(3, 2), K5)) == 5


def test_symmetric_lookup():
    kb = KnowledgeBase()
    kb.tighten(K4, K3, 9, 9)
    assert kb.interval(K3, K4) == (9, 9)
    assert canonical(K4, K3) == canonical(K3, K4)


def test_tighten_only_narrows():
    kb = KnowledgeBase()
    assert kb.tighten(K3, K5, 10, 20)
    assert not kb.tighten(K3, K5, 8, 25)
    assert kb.tighten(K3, K5, None, 14)
    assert kb.interval(K3, K5) == (10, 14)
    assert [e.kind for e in kb.events] == ["both", "hi"]


def test_contradiction_names_both_sides():
    kb = KnowledgeBase()
    kb.seed(K3, K3, 6, 6, ["lit"])
    with pytest.raises(Contradiction) as info:
        kb.tighten(K3, K3, None, 5, WHY)
    exc = info.value
    assert (exc.lo, exc.hi) == (6, 5)
    assert exc.first.rule is Rule.SEED
    assert exc.second.rule is Rule.MONOTONE
    assert kb.interval(K3, K3) == (6, 6)


def test_merge_intersects_and_shares():
    kb = KnowledgeBase()
    a, b = canonical(K4, minus_star(7, 4)), canonical(K4, complete(6))
    kb.tighten(*a, 30, 50)
    kb.tighten(*b, 36, 41)
    assert kb.assert_equal(a, b, Derivation(Rule.BE89))
    assert kb.interval(*a) == kb.interval(*b) == (36, 41)
    assert not kb.assert_equal(b, a, Derivation(Rule.BE89))
    kb.tighten(*a, 38)
    assert kb.lo(*b) == 38
    assert set(kb.class_members(a)) == {a, b}


def test_merge_contradiction():
    kb = KnowledgeBase()
    a, b = canonical(K3, K5), canonical(K3, K6)
    kb.tighten(*a, 14, 14)
    kb.tighten(*b, 18, 18)
    with pytest.raises(Contradiction):
        kb.assert_equal(a, b, WHY)
    assert not kb.same_class(a, b)


def test_merge_keeps_tighter_attribution():
    kb = KnowledgeBase()
    a, b = canonical(K3, K5), canonical(K3, minus_star(6, 5))
    kb.tighten(*a, 10, 20, WHY)
    kb.tighten(*b, 12, 30, WHY)
    kb.assert_equal(a, b, WHY)
    fact = kb.lookup(*a)
    assert (fact.lo_event, fact.hi_event) == (1, 0)


def test_copy_is_independent():
    kb = load_seed("K3 K3 = 6\nK3 K10 in [40,42]\n")
    dup = kb.copy()
    dup.tighten(K3, complete(10), 41)
    dup.assert_equal(canonical(K3, complete(10)), canonical(K3, minus_star(11, 3)), WHY)
    assert kb.interval(K3, complete(10)) == (40, 42)
    assert not kb.same_class(canonical(K3, complete(10)), canonical(K3, minus_star(11, 3)))
    assert len(kb.events) == 2


def test_overlay_replaces_instead_of_intersecting():
    kb = load_seed("K3 K10 in [40,42] src=Rad\nK4 K6 in [36,41]\n")
    kb = load_seed("K3 K10 in [40,43] src=hyp\n", kb, replace=True)
    assert kb.interval(K3, complete(10)) == (40, 43)
    assert kb.interval(K4, K6) == (36, 41)
    assert kb.tags[canonical(K3, complete(10))] == ["hyp"]
    merged = load_seed("K3 K10 in [39,43]\n", load_seed("K3 K10 in [40,42]\n"))
    assert merged.interval(K3, complete(10)) == (40, 42)


def test_shipped_seeds_round_trip():
    kb = load_seed(default_seed_text())
    again = load_seed(dump(kb, only_seeded=True))
    assert again.seeded_pairs == kb.seeded_pairs
    for pair in kb.seeded_pairs:
        assert again.interval(*pair) == kb.interval(*pair)
        assert again.tags[pair] == kb.tags[pair]


def test_fixpoint_dump_round_trip(fixpoint):
    kb = fixpoint.kb
    again = load_seed(dump(kb))
    for pair in again.pairs():
        assert again.interval(*pair) == kb.interval(*pair)


def test_premises_point_backwards(fixpoint):
    events = fixpoint.kb.events
    assert events
    for i, e in enumerate(events):
        assert e.id == i
        for ref in e.derivation.premises:
            assert ref.event is None or ref.event < e.id


specs = st.sampled_from([K3, K4, K5, minus_star(4, 1), minus_star(5, 2), cycle(4), wheel(5)])
ops = st.lists(st.tuples(st.sampled_from(["lo", "hi", "eq"]), specs, specs, specs,
                         st.integers(1, 40)), max_size=30)


@settings(max_examples=200, deadline=None)
@given(ops)
def test_random_operations_keep_invariants(seq):
    kb = KnowledgeBase()
    for op, a, b, c, v in seq:
        try:
            if op == "lo":
                kb.tighten(a, b, v, None, WHY)
            elif op == "hi":
                kb.tighten(a, b, None, v, WHY)
            else:
                kb.assert_equal(canonical(a, b), canonical(a, c), WHY)
        except Contradiction:
            continue
    for pair in kb.pairs():
        lo, hi = kb.interval(*pair)
        assert lo <= hi
        for other in kb.class_members(pair):
            assert kb.interval(*other) == (lo, hi)
        fact = kb.lookup(*pair)
        if fact.lo_event is not None:
            assert kb.events[fact.lo_event].new[0] == lo
        if fact.hi_event is not None:
            assert kb.events[fact.hi_event].new[1] == hi
    for e in kb.events:
        assert e.old[0] <= e.new[0] and e.new[1] <= e.old[1]
