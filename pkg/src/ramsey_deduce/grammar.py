"""Text forms: graph expressions, ``r(A,B)`` queries and seed-file lines.

Graph grammar (whitespace-insensitive)::

    graph := "K" INT | "K" INT "-e" | "K" INT "-P3" | "K" INT "-K1," INT
           | "C" INT | "W" INT

Seed line grammar::

    line := graph WS graph WS rel WS value ["src=" TAG]
    rel  := "=" | ">=" | "<=" | "in"
    value := INT | "[" INT "," INT "]"
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .graphs import GraphDomainError, GraphSpec, complete, cycle, minus_star, wheel


class ParseError(ValueError):
    def __init__(self, text: str, offset: int, expected: list[str], line: Optional[int] = None):
        self.text = text
        self.offset = offset
        self.expected = expected
        self.line = line
        where = f"line {line}, " if line is not None else ""
        got = text[offset:offset + 8] or "end of input"
        super().__init__(f"{where}offset {offset}: expected {' or '.join(expected)}, got {got!r}")


class _Cursor:
    def __init__(self, text: str, line: Optional[int] = None):
        self.text = text
        self.pos = 0
        self.line = line

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def take(self, token: str) -> bool:
        start = self.pos
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        self.pos = start
        return False

    def expect(self, token: str) -> None:
        if not self.take(token):
            self.fail([repr(token)])

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail(["INT"])
        return int(self.text[start:self.pos])

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def fail(self, expected: list[str]):
        self.skip_ws()
        raise ParseError(self.text, self.pos, expected, self.line)


def _graph(cur: _Cursor) -> GraphSpec:
    start = cur.pos
    try:
        if cur.take("K"):
            n = cur.integer()
            if cur.take("-"):
                if cur.take("e"):
                    return minus_star(n, 1)
                if cur.take("P3"):
                    return minus_star(n, 2)
                if cur.take("K1"):
                    cur.expect(",")
                    return minus_star(n, cur.integer())
                cur.fail(["'e'", "'P3'", "'K1,'"])
            return complete(n)
        if cur.take("C"):
            return cycle(cur.integer())
        if cur.take("W"):
            return wheel(cur.integer())
    except GraphDomainError as exc:
        raise ParseError(cur.text, start, [f"valid parameters ({exc})"], cur.line) from None
    cur.fail(["'K'", "'C'", "'W'"])


def parse_graph(text: str) -> GraphSpec:
    cur = _Cursor(text)
    spec = _graph(cur)
    if not cur.at_end():
        cur.fail(["end of input"])
    return spec


def parse_pair(text: str) -> tuple[GraphSpec, GraphSpec]:
    """Parse ``r(<graph>,<graph>)``; the ``r(...)`` wrapper is optional."""
    cur = _Cursor(text)
    wrapped = cur.take("r(")
    left = _graph(cur)
    cur.expect(",")
    right = _graph(cur)
    if wrapped:
        cur.expect(")")
    if not cur.at_end():
        cur.fail(["end of input"])
    return left, right


@dataclass(frozen=True)
class SeedLine:
    left: GraphSpec
    right: GraphSpec
    lo: Optional[int]
    hi: Optional[int]
    tags: tuple[str, ...]
    line: int

    @property
    def rel(self) -> str:
        if self.lo is not None and self.lo == self.hi:
            return "="
        if self.hi is None:
            return ">="
        if self.lo is None:
            return "<="
        return "in"


def parse_seed_line(text: str, line: int = 0) -> SeedLine:
    cur = _Cursor(text, line)
    left = _graph(cur)
    if not text[cur.pos:cur.pos + 1].isspace():
        cur.fail(["whitespace"])
    right = _graph(cur)
    lo = hi = None
    if cur.take(">="):
        lo = cur.integer()
    elif cur.take("<="):
        hi = cur.integer()
    elif cur.take("="):
        lo = hi = cur.integer()
    elif cur.take("in"):
        cur.expect("[")
        lo = cur.integer()
        cur.expect(",")
        hi = cur.integer()
        cur.expect("]")
    else:
        cur.fail(["'='", "'>='", "'<='", "'in'"])
    tags: tuple[str, ...] = ()
    if cur.take("src="):
        cur.skip_ws()
        start = cur.pos
        while cur.pos < len(cur.text) and not cur.text[cur.pos].isspace():
            cur.pos += 1
        if start == cur.pos:
            cur.fail(["TAG"])
        tags = tuple(t for t in cur.text[start:cur.pos].split("+") if t)
    if not cur.at_end():
        cur.fail(["'src='", "end of line"])
    return SeedLine(left, right, lo, hi, tags, line)


def parse_seed(text: str) -> list[SeedLine]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append(parse_seed_line(body, number))
    return out


def format_interval(lo: int, hi: float) -> str:
    if lo == hi:
        return f"= {lo}"
    top = "inf" if hi == math.inf else str(hi)
    return f"in [{lo},{top}]"


def format_seed_line(left: GraphSpec, right: GraphSpec, lo: int, hi: float, base_lo: int,
                     tags: tuple[str, ...]) -> str:
    if lo == hi:
        rel = f"= {lo}"
    elif hi == math.inf:
        rel = f">= {lo}"
    elif lo <= base_lo:
        rel = f"<= {hi}"
    else:
        rel = f"in [{lo},{hi}]"
    src = f" src={'+'.join(tags)}" if tags else ""
    return f"{left} {right} {rel}{src}"
