"""Command-line entry point.

Exit codes: 0 success, 1 a reproduced claim failed or a certificate is bad,
2 usage, parse or file errors, 3 nothing is known about the queried pair,
4 the seeds are contradictory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .engine import ALL_RULES, DEFAULT_N_MAX, PropagationResult, build, default_seed_text, explain
from .grammar import ParseError, format_interval, parse_graph, parse_pair
from .graphs import find_embedding, realize
from .kb import Contradiction, Rule, dump, load_seed
from .manifest import CLAIMS, CLAIMS_BY_ID, reproduce
from .oracle import DEFAULT_BUDGET, CertificateError, ColoringCertificate, ramsey_small

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN, EXIT_CONTRADICTION = 0, 1, 2, 3, 4
KB_ENV = "RAMSEY_KB"


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def seed_text(args) -> str:
    """Seed file contents: ``--kb`` first, then ``$RAMSEY_KB``, then the bundled seeds."""
    path = args.kb or os.environ.get(KB_ENV)
    return _read(path) if path else default_seed_text()


def _rules(args) -> frozenset:
    disabled = set()
    for name in args.disable or ():
        try:
            disabled.add(Rule(name.upper()))
        except ValueError:
            raise UsageError(f"unknown rule {name!r}") from None
    return frozenset(ALL_RULES - disabled)


def _build(args) -> PropagationResult:
    result = build(seed_text(args), rules=_rules(args), n_max=args.n_max)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            fh.writelines(f"{rec}\n" for rec in result.log)
    return result


def _interval_text(text: str, lo: int, hi: float) -> str:
    return f"{text} {format_interval(lo, hi)}"


def cmd_query(args) -> int:
    left, right = parse_pair(args.expr)
    result = _build(args)
    fact = result.kb.lookup(left, right)
    print(_interval_text(f"r({left},{right})", fact.lo, fact.hi))
    if not result.kb.is_informative(left, right):
        print("source: none (default interval)")
        return EXIT_UNKNOWN
    events = result.kb.events
    lo_src = events[fact.lo_event].derivation if fact.lo_event is not None else "default"
    hi_src = events[fact.hi_event].derivation if fact.hi_event is not None else "default"
    print(f"source: lo={lo_src} hi={hi_src}")
    return EXIT_OK


def cmd_explain(args) -> int:
    left, right = parse_pair(args.expr)
    result = _build(args)
    tree = explain(result.kb, left, right)
    if args.json:
        print(json.dumps(tree.to_dict(), indent=2))
    else:
        print("\n".join(tree.render()))
    return EXIT_OK if result.kb.is_informative(left, right) else EXIT_UNKNOWN


def cmd_reproduce(args) -> int:
    claims = CLAIMS
    if args.claim:
        missing = [c for c in args.claim if c not in CLAIMS_BY_ID]
        if missing:
            raise UsageError(f"unknown claim id(s): {', '.join(missing)}")
        claims = [CLAIMS_BY_ID[c] for c in args.claim]
    overlay = _read(args.overlay) if args.overlay else ""
    outcomes = reproduce(claims, seed_text(args), overlay)
    if args.records:
        for o in outcomes:
            print(o)
    else:
        rows = [("STATUS", "ID", "PAIR", "EXPECTED", "DERIVED", "DEPTH")]
        for o in outcomes:
            lo, hi = o.interval
            rows.append(("PASS" if o.passed else "FAIL", o.claim.id, o.claim.text,
                         o.claim.expected_text, format_interval(lo, hi), str(o.depth)))
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        for r in rows:
            print("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    failed = sum(not o.passed for o in outcomes)
    print(f"summary: {len(outcomes) - failed} passed, {failed} failed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify(args) -> int:
    try:
        cert = ColoringCertificate.load(args.cert)
    except OSError as exc:
        raise UsageError(f"cannot read {args.cert}: {exc.strerror}") from None
    except CertificateError as exc:
        raise UsageError(f"invalid certificate: {exc}") from None
    g, h = parse_graph(args.G), parse_graph(args.H)
    for color, host, spec in (("red", cert.red(), g), ("blue", cert.blue(), h)):
        mapping = find_embedding(host, realize(spec))
        if mapping is not None:
            verts = ",".join(str(mapping[v]) for v in sorted(mapping))
            print(f"bad: {color} {spec} at vertices {verts}")
            return EXIT_FAIL
    print(f"good: N={cert.N} has no red {g} and no blue {h}")
    return EXIT_OK


def cmd_search(args) -> int:
    g, h = parse_graph(args.G), parse_graph(args.H)
    if args.cap > 12:
        raise UsageError("--cap must be at most 12")
    res = ramsey_small(g, h, n_cap=args.cap, budget=args.budget, threads=args.threads)
    line = _interval_text(f"r({g},{h})", res.lo, res.hi)
    if not res.complete:
        line += " (partial: cap or budget reached)"
    print(line)
    print(f"nodes={res.nodes}")
    if args.witness_dir and res.witnesses:
        out = Path(args.witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        for N, cert in sorted(res.witnesses.items()):
            path = out / f"{g}_{h}_N{N}.txt".replace(",", "_")
            cert.save(str(path))
            print(f"witness={path}")
    return EXIT_OK


def cmd_kb(args) -> int:
    if args.kb_command == "export":
        if args.fixpoint:
            text = dump(_build(args).kb)
        else:
            text = dump(load_seed(seed_text(args)), only_seeded=True)
    else:
        kb = load_seed(seed_text(args))
        kb = load_seed(_read(args.file), kb)
        build(dump(kb, only_seeded=True), rules=_rules(args), n_max=args.n_max)
        text = dump(kb, only_seeded=True)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kb", help=f"seed file (default: ${KB_ENV}, then the bundled seeds)")
    common.add_argument("--n-max", type=int, default=DEFAULT_N_MAX,
                        help="largest vertex count enumerated by propagation")
    common.add_argument("--disable", action="append", metavar="RULE",
                        help="turn off a rule (repeatable), e.g. THEOREM1 or PARITY")
    common.add_argument("--log", metavar="FILE", help="write the application log here")

    parser = argparse.ArgumentParser(prog="ramsey-deduce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("query", parents=[common], help="print the interval for r(G,H)")
    p.add_argument("expr", help='pair such as "r(K4-e,K7-K1,3)"')
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("explain", parents=[common], help="print the proof tree for r(G,H)")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true", help="emit the tree as JSON")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("reproduce", parents=[common], help="check the built-in claim manifest")
    p.add_argument("--claim", action="append", metavar="ID", help="only this claim (repeatable)")
    p.add_argument("--overlay", metavar="FILE", help="seed lines replacing the base values")
    p.add_argument("--records", action="store_true", help="key=value lines instead of a table")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("verify", help="check a coloring certificate")
    p.add_argument("cert")
    p.add_argument("G")
    p.add_argument("H")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="compute a small Ramsey number exhaustively")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--cap", type=int, default=10, help="largest N tried (at most 12)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search-tree node limit")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--witness-dir", metavar="DIR", help="save good colorings here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("kb", help="export or import seed files")
    kb_sub = p.add_subparsers(dest="kb_command", required=True)
    e = kb_sub.add_parser("export", parents=[common], help="write the seeds (or the fixpoint)")
    e.add_argument("--fixpoint", action="store_true", help="export every derived interval")
    e.add_argument("-o", "--output")
    i = kb_sub.add_parser("import", parents=[common],
                          help="merge a seed file into the current seeds and check consistency")
    i.add_argument("file")
    i.add_argument("-o", "--output")
    p.set_defaults(func=cmd_kb)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Contradiction as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION


if __name__ == "__main__":
    sys.exit(main())
