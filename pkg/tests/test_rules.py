import pytest

from naive import theorem1_min_n_scan
from ramsey_deduce.graphs import complete, cycle, minus_star, wheel
from ramsey_deduce.kb import KnowledgeBase, Rule, canonical, load_seed
from ramsey_deduce.rules import (base_applications, cone_side_condition, monotone_applications,
                                 recursion_applications, rule_bbh98, rule_be89, rule_theorem1,
                                 theorem1_min_n)

K3, K4, K5 = complete(3), complete(4), complete(5)


@pytest.mark.parametrize("n", range(3, 13))
def test_theorem1_min_n_matches_scan(n):
    for s in range(1, 11):
        for ub2 in range(1, 51):
            N = theorem1_min_n(n, s, ub2)
            assert N == theorem1_min_n_scan(n, s, ub2), (n, s, ub2)
            assert cone_side_condition(N, n, s) >= ub2
            if N > n:
                assert cone_side_condition(N - 1, n, s) < ub2


def test_theorem1_upper_bound_and_merge():
    kb = load_seed("K4-e K4 = 10\nK3-e K5-K1,3 = 7\n")
    apps = rule_theorem1(kb, minus_star(4, 1), minus_star(5, 3))
    assert [(a.hi, a.equal_to) for a in apps] == [(11, None)]
    assert dict(apps[0].params) == {"N": 11, "n": 4, "s": 3}

    kb = load_seed("K4 K5 = 25\nK3 K6-P3 in [1,14]\n")
    apps = rule_theorem1(kb, K4, minus_star(6, 2))
    assert apps[0].hi == 27
    assert all(a.equal_to is None for a in apps)


def test_theorem1_merges_when_condition_below_lower_bound():
    kb = load_seed("K6 K4 = 37\nK5 K5-P3 = 25\n")
    apps = rule_theorem1(kb, complete(6), minus_star(5, 2))
    merges = [a for a in apps if a.equal_to is not None]
    assert merges and merges[0].equal_to == canonical(complete(6), K4)
    assert dict(merges[0].params)["N"] <= 37


def test_theorem1_needs_a_cone():
    kb = load_seed("C4 K5 = 13\n")
    assert rule_theorem1(kb, cycle(4), minus_star(6, 2)) == []
    assert rule_theorem1(kb, K4, complete(6)) == []


def test_be89_examples():
    apps = rule_be89(KnowledgeBase(), 4, 4)
    targets = {a.target for a in apps}
    assert canonical(minus_star(5, 2), minus_star(5, 2)) in targets
    assert canonical(K4, minus_star(5, 2)) in targets
    assert all(a.equal_to == canonical(K4, K4) for a in apps)
    apps = rule_be89(KnowledgeBase(), 3, 5)
    assert {a.target for a in apps} == {canonical(K3, minus_star(6, 2)),
                                        canonical(minus_star(4, 2), minus_star(6, 2)),
                                        canonical(minus_star(4, 2), K5)}
    assert all(a.equal_to == canonical(K3, K5) for a in apps)
    assert rule_be89(KnowledgeBase(), 3, 4) == []
    assert rule_be89(KnowledgeBase(), 2, 7) == []


def test_bbh98_examples():
    kb = load_seed("K3 K5 = 14\nK3 K9 = 36\nK3 K10 in [40,42]\nK3 K4 = 9\n")
    app, = rule_bbh98(kb, 5, 2)
    assert app.target == canonical(K3, minus_star(6, 2))
    assert app.equal_to == canonical(K3, K5)
    assert len(rule_bbh98(kb, 9, 2)) == 1
    assert rule_bbh98(kb, 10, 3) == []
    assert rule_bbh98(kb, 5, 1) == []
    assert rule_bbh98(kb, 3, 2) == []


def test_bbh98_threshold():
    kb = load_seed("K3 K6 = 18\n")
    # (s+1)(18-6) > 5*4 needs s >= 1; s = 1 is excluded by domain
    assert len(rule_bbh98(kb, 6, 2)) == 1
    kb = load_seed("K3 K7 = 23\n")
    # (s+1)*16 > 30 holds from s = 1
    assert [a.target for a in rule_bbh98(kb, 7, 2)] == [canonical(K3, minus_star(8, 2))]


def test_base_rule():
    app, = base_applications(KnowledgeBase(), canonical(complete(2), wheel(6)))
    assert (app.lo, app.hi) == (6, 6)
    assert base_applications(KnowledgeBase(), canonical(K3, K4)) == []


def test_recursion_prefers_parity():
    kb = load_seed("K3 K6-P3 = 14\nK4 K5-P3 = 18\n")
    pair = canonical(K4, minus_star(6, 2))

    def deletions(g):
        return {K4: [K3], minus_star(6, 2): [minus_star(5, 2)]}.get(g, [])

    app, = recursion_applications(kb, pair, deletions, parity=True)
    assert (app.rule, app.hi) == (Rule.PARITY, 31)
    app, = recursion_applications(kb, pair, deletions, parity=False)
    assert (app.rule, app.hi) == (Rule.RECURSION, 32)


def test_recursion_needs_both_terms():
    kb = load_seed("K3 K6-P3 = 14\n")
    pair = canonical(K4, minus_star(6, 2))
    assert recursion_applications(kb, pair, lambda g: [K3] if g is K4 else [minus_star(5, 2)],
                                  parity=True) == []


def test_monotone_both_directions():
    kb = load_seed("K3 K5 = 14\nK3 K4 = 9\n")
    pair = canonical(K3, minus_star(5, 1))
    apps = monotone_applications(kb, pair, up=lambda g: [K5] if g == minus_star(5, 1) else [],
                                 down=lambda g: [K4] if g == minus_star(5, 1) else [])
    assert {(a.lo, a.hi) for a in apps} == {(None, 14), (9, None)}
