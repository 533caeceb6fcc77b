"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random
import re
import time

from naive import theorem1_min_n_scan
from ramsey_deduce.cli import main
from ramsey_deduce.engine import build, default_seed_text, propagate
from ramsey_deduce.graphs import complete, minus_star, spec_subgraph_leq
from ramsey_deduce.kb import dump, load_seed
from ramsey_deduce.manifest import CLAIMS, evaluate, reproduce
from ramsey_deduce.oracle import Status, arrows, arrows_naive, audit, is_good_coloring, ramsey_small
from ramsey_deduce.rules import theorem1_min_n

K3, K4 = complete(3), complete(4)
P3 = minus_star(3, 1)


def claims(*patterns):
    rx = re.compile("|".join(f"(?:{p})$" for p in patterns))
    out = [c for c in CLAIMS if rx.match(c.id)]
    assert out, patterns
    return out


def report(capsys, number, label, failures, extra=""):
    status = "PASS" if not failures else "FAIL"
    detail = f" ({extra})" if extra else ""
    with capsys.disabled():
        print(f"\ncriterion {number} {label}: {status}{detail}")
        for f in failures:
            print(f"    {f}")
    assert not failures, failures


def failed(outcomes):
    return [str(o) for o in outcomes if not o.passed]


def test_criterion_1_exact_values(capsys):
    selected = claims(r"book4-k\d+s\d+", r"book5-.*", r"path3-.*")
    start = time.perf_counter()
    result = build()
    outcomes = [evaluate(c, result) for c in selected]
    elapsed = time.perf_counter() - start
    bad = failed(outcomes)
    if elapsed >= 10:
        bad.append(f"runtime {elapsed:.1f}s >= 10s")
    report(capsys, 1, "exact values", bad, f"{len(outcomes)} claims, {elapsed:.1f}s")


def test_criterion_2_upper_bound_tables(capsys):
    selected = claims(r"k\d+-k5s2", r"k\d+-k6s2", r"u-.*", r"k\d+-k6s3", r"k\d+-k7s3",
                      r"rec-.*", r"book4-rec-.*")
    outcomes = reproduce(selected)
    report(capsys, 2, "upper-bound tables", failed(outcomes), f"{len(outcomes)} claims")


def test_criterion_3_equalities(capsys):
    selected = claims(r"k3-k\d+s\d+", r"k\d+-k4s2", r"k4-k5s2", r"k4eq-.*", r"w5-.*")
    outcomes = reproduce(selected)
    report(capsys, 3, "equalities", failed(outcomes), f"{len(outcomes)} claims")


def test_criterion_4_conditional_overlays(capsys):
    selected = claims(r"cond-.*")
    assert {c.id for c in selected} >= {"cond-k6-k5s2", "cond-k6-k5s2-neg", "cond-book5-k6s2",
                                        "cond-book5-k6s2-neg"}
    outcomes = reproduce(selected)
    report(capsys, 4, "conditional claims", failed(outcomes), f"{len(outcomes)} claims")


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def test_criterion_5_oracle(capsys):
    bad = []
    res, t = timed(lambda: ramsey_small(K3, K3))
    if (res.lo, res.hi) != (6, 6) or res.certificate is None or res.certificate.N != 5 \
            or not is_good_coloring(res.certificate, K3, K3):
        bad.append(f"5a: r(K3,K3) gave [{res.lo},{res.hi}]")
    if t >= 5:
        bad.append(f"5a: {t:.1f}s")

    def part_b():
        return [ramsey_small(P3, h) for h in (K3, minus_star(4, 1), K4)]

    results, t = timed(part_b)
    if [(r.lo, r.hi) for r in results] != [(5, 5), (5, 5), (7, 7)]:
        bad.append(f"5b: {[(r.lo, r.hi) for r in results]}")
    if t >= 5:
        bad.append(f"5b: {t:.1f}s")

    def part_c():
        specs = [complete(2), K3, P3, minus_star(3, 2), minus_star(4, 1), minus_star(4, 2), K4]
        mismatches = []
        for g in specs[:5]:
            for h in specs:
                for N in range(1, 6):
                    if (arrows(N, g, h).status is Status.ARROWS) != arrows_naive(N, g, h):
                        mismatches.append(f"5c: N={N} {g} {h}")
        return mismatches

    mismatches, t = timed(part_c)
    bad += mismatches
    if t >= 5:
        bad.append(f"5c: {t:.1f}s")

    res, t = timed(lambda: ramsey_small(K3, K4, budget=10**9))
    if (res.lo, res.hi) != (9, 9):
        bad.append(f"5d: r(K3,K4) gave [{res.lo},{res.hi}]")
    if t >= 120:
        bad.append(f"5d: {t:.1f}s")
    report(capsys, 5, "oracle ground truth", bad, f"5d {t:.1f}s, {res.nodes} nodes")


def test_criterion_6_audit(capsys, fixpoint):
    rep = audit(fixpoint.kb, vertex_cap=4)
    report(capsys, 6, "audit", [str(e) for e in rep.failures],
           f"{rep.checked} pairs checked, {len(rep.entries)} informational")


def test_criterion_7_properties(capsys, tmp_path):
    bad = []
    n_max = 9
    base = build(n_max=n_max)
    pairs = base.catalog.pairs
    snapshot = {p: base.kb.interval(*p) for p in pairs}

    again = propagate(base.kb, n_max=n_max, catalog=base.catalog)
    if again.log:
        bad.append("idempotence: second pass changed the fixpoint")

    lines = [ln for ln in default_seed_text().splitlines() if ln.split("#", 1)[0].strip()]
    rng = random.Random(7)
    for trial in range(3):
        rng.shuffle(lines)
        other = build("\n".join(lines) + "\n", n_max=n_max)
        diff = [p for p in pairs if other.kb.interval(*p) != snapshot[p]]
        if diff:
            bad.append(f"seed permutation {trial}: {len(diff)} pairs differ")

    specs = base.catalog.specs
    for g in specs:
        for g2 in specs:
            if g is g2 or g2.n > g.n + 1 or not spec_subgraph_leq(g, g2):
                continue
            for h in specs:
                lo1, hi1 = base.kb.interval(g, h)
                lo2, hi2 = base.kb.interval(g2, h)
                if hi1 > hi2 or lo1 > lo2:
                    bad.append(f"monotone: r({g},{h}) vs r({g2},{h})")

    bad_seed = tmp_path / "bad.kb"
    bad_seed.write_text("K3 K3 = 6\nK3 K4 = 5\n")
    code = main(["query", "K3,K4", "--kb", str(bad_seed), "--n-max", "6"])
    capsys.readouterr()
    if code != 4:
        bad.append(f"contradiction exit code {code}")

    seeds = load_seed(default_seed_text())
    back = load_seed(dump(seeds, only_seeded=True))
    if any(back.interval(*p) != seeds.interval(*p) or back.tags[p] != seeds.tags[p]
           for p in seeds.seeded_pairs):
        bad.append("dump/load round trip changed a seed")

    for n in range(3, 13):
        for s in range(1, 11):
            for ub2 in range(1, 51):
                if theorem1_min_n(n, s, ub2) != theorem1_min_n_scan(n, s, ub2):
                    bad.append(f"theorem1_min_n({n},{s},{ub2})")
    report(capsys, 7, "property suites", bad[:20])
