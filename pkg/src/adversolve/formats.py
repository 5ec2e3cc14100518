"""Text input formats for the command line.

Every parser is strict: unknown keywords, duplicate declarations and
dangling references raise :class:`ParseError` carrying line and column.
``#`` starts a comment anywhere on a line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .board import MultiRoundConfig, Tree, TreblecrossBoard
from .core import Outcome, ScoredEdge, ScoredStateGraph, StateGraph
from .errors import AdversolveError, ParseError
from .pursuit import PursuitConfig, UndirectedGraph

OUTCOME_CODES = {"W": Outcome.VICTORY, "D": Outcome.DRAW, "L": Outcome.DEFEAT}


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int

    def fail(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)


def tokenize(text: str) -> list[list[Token]]:
    """Nonblank lines as token lists; quoted strings stay one token."""
    lines = []
    for number, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        toks = [Token(m.group(0), number, m.start() + 1) for m in re.finditer(r'"[^"]*"|\S+', body)]
        if toks:
            lines.append(toks)
    return lines


def _strip_comment(raw: str) -> str:
    inside = False
    for i, ch in enumerate(raw):
        if ch == '"':
            inside = not inside
        elif ch == "#" and not inside:
            return raw[:i]
    return raw


def _end(text: str) -> ParseError:
    return ParseError("unexpected end of input", len(text.splitlines()) or 1)


def as_int(tok: Token, low: int | None = None) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok.text):
        raise tok.fail(f"expected an integer, got {tok.text!r}")
    value = int(tok.text)
    if low is not None and value < low:
        raise tok.fail(f"expected an integer >= {low}, got {value}")
    return value


def as_rational(tok: Token) -> Fraction:
    if not re.fullmatch(r"[+-]?(\d+(/\d+)?|\d*\.\d+)", tok.text):
        raise tok.fail(f"expected a rational number, got {tok.text!r}")
    try:
        return Fraction(tok.text)
    except ZeroDivisionError:
        raise tok.fail("zero denominator") from None


def expect_arity(toks: list[Token], low: int, high: int | None = None) -> None:
    high = low if high is None else high
    if not low <= len(toks) - 1 <= high:
        head = toks[0]
        if len(toks) - 1 > high:
            raise toks[high + 1].fail(f"too many fields for {head.text!r}")
        raise head.fail(f"{head.text!r} needs {low} field(s)" if low == high else f"{head.text!r} needs {low}..{high} fields")


def key_values(toks: list[Token], required: set[str], optional: set[str] = frozenset()) -> dict[str, Token]:
    """Parse ``key=value`` tokens; values come back as tokens positioned at the value."""
    out: dict[str, Token] = {}
    for tok in toks:
        if "=" not in tok.text:
            raise tok.fail(f"expected key=value, got {tok.text!r}")
        key, value = tok.text.split("=", 1)
        if key not in required and key not in optional:
            raise tok.fail(f"unknown key {key!r}")
        if key in out:
            raise tok.fail(f"duplicate key {key!r}")
        out[key] = Token(value, tok.line, tok.col + len(key) + 1)
    missing = sorted(required - out.keys())
    if missing:
        anchor = toks[0] if toks else Token("", 1, 1)
        raise ParseError(f"missing key {missing[0]!r}", anchor.line, None if not toks else 1)
    return out


# ---------------------------------------------------------------- state graphs


def _graph_lines(text: str, scored: bool):
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    head = lines[0]
    if head[0].text != "states":
        raise head[0].fail("expected 'states N'")
    expect_arity(head, 1)
    n = as_int(head[1], 1)
    movers: dict[int, str] = {}
    terminal: dict[int, Token] = {}
    edges = []

    def state_id(tok: Token, what: str) -> int:
        v = as_int(tok)
        if not 1 <= v <= n:
            raise tok.fail(f"{what} {v}")
        return v - 1

    for toks in lines[1:]:
        kw = toks[0].text
        if kw == "states":
            raise toks[0].fail("duplicate 'states' declaration")
        if kw == "state":
            expect_arity(toks, 2)
            s = state_id(toks[1], "undeclared state")
            if s in movers:
                raise toks[1].fail(f"duplicate state {s + 1}")
            if toks[2].text not in ("1", "2", "-"):
                raise toks[2].fail(f"mover must be 1, 2 or -, got {toks[2].text!r}")
            movers[s] = toks[2].text
        elif kw == "terminal":
            expect_arity(toks, 2)
            s = state_id(toks[1], "undeclared state")
            if s in terminal:
                raise toks[1].fail(f"duplicate terminal label for state {s + 1}")
            terminal[s] = toks[2]
        elif kw == "edge":
            expect_arity(toks, 2, 4)
            if len(toks) == 4:
                raise toks[3].fail("score deltas come in pairs")
            u = state_id(toks[1], "dangling edge endpoint")
            v = state_id(toks[2], "dangling edge endpoint")
            deltas = (as_rational(toks[3]), as_rational(toks[4])) if len(toks) == 5 else None
            if deltas and not scored:
                raise toks[3].fail("score deltas are only allowed in scored graphs")
            edges.append((u, v, deltas))
        else:
            raise toks[0].fail(f"unknown keyword {kw!r}")
    tags = [movers.get(s, "-") for s in range(n)]
    if len(set(t == "-" for t in tags)) > 1:
        raise ParseError("mixed mover conventions: either every state is impartial or none is", head[0].line, 1)
    mover_tuple = tuple(None if t == "-" else int(t) for t in tags)
    return n, mover_tuple, terminal, edges


def parse_state_graph(text: str) -> StateGraph:
    """``states N`` / ``state id 1|2|-`` / ``terminal id W|D|L`` / ``edge u v``.

    States are numbered from 1 in the text and from 0 in the result.
    """
    _, movers, terminal, edges = _graph_lines(text, scored=False)
    labels = {}
    for s, tok in terminal.items():
        if tok.text not in OUTCOME_CODES:
            raise tok.fail(f"terminal label must be W, D or L, got {tok.text!r}")
        labels[s] = OUTCOME_CODES[tok.text]
    return StateGraph(movers, tuple((u, v) for u, v, _ in edges), labels)


def parse_scored_graph(text: str) -> ScoredStateGraph:
    """Same layout; edges carry ``dm do`` gains and terminals a final score difference."""
    _, movers, terminal, edges = _graph_lines(text, scored=True)
    final = {s: as_rational(tok) for s, tok in terminal.items()}
    scored = tuple(ScoredEdge(u, v, *(d or (Fraction(0), Fraction(0)))) for u, v, d in edges)
    return ScoredStateGraph(movers, scored, final)


def split_blocks(text: str) -> list[tuple[int, str]]:
    """Split on lines holding only ``---``; returns (first line number, block text)."""
    blocks, cur, start = [], [], 1
    for number, raw in enumerate(text.splitlines(), 1):
        if raw.strip() == "---":
            blocks.append((start, "\n".join(cur)))
            cur, start = [], number + 1
        else:
            cur.append(raw)
    blocks.append((start, "\n".join(cur)))
    return [(s, b) for s, b in blocks if tokenize(b)]


def shift_errors(offset: int, fn, *args):
    """Run a parser on a block and report line numbers relative to the whole input."""
    try:
        return fn(*args)
    except ParseError as exc:
        if exc.line is None:
            raise
        msg = str(exc).split(": ", 1)[1] if str(exc).startswith("line ") else str(exc)
        raise ParseError(msg, exc.line + offset - 1, exc.column) from None


@dataclass(frozen=True)
class SubtractionSpec:
    pile: int
    take: int
    mult: int = 1


def parse_subtraction(text: str) -> list[SubtractionSpec]:
    """One ``subtraction pile=P K=K [mult=M]`` per line."""
    out = []
    for toks in tokenize(text):
        if toks[0].text != "subtraction":
            raise toks[0].fail("expected 'subtraction pile=P K=K'")
        kv = key_values(toks[1:], {"pile", "K"}, {"mult"})
        out.append(
            SubtractionSpec(as_int(kv["pile"], 0), as_int(kv["K"], 1), as_int(kv["mult"], 0) if "mult" in kv else 1)
        )
    if not out:
        raise _end(text)
    return out


def is_subtraction(text: str) -> bool:
    lines = tokenize(text)
    return bool(lines) and lines[0][0].text == "subtraction"


# ---------------------------------------------------------------- boards and trees


def _tree_edges(lines, n: int, keyword: str, costs: bool = False):
    edges, cost = [], {}
    seen = set()
    for toks in lines:
        if toks[0].text != keyword:
            return edges, cost, toks
        expect_arity(toks, 4 if costs else 2)
        u, v = as_int(toks[1]), as_int(toks[2])
        for tok, w in ((toks[1], u), (toks[2], v)):
            if not 1 <= w <= n:
                raise tok.fail(f"dangling edge endpoint {w}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise toks[0].fail(f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u, v))
        if costs:
            cost[u, v] = as_rational(toks[3])
            cost[v, u] = as_rational(toks[4])
    return edges, cost, None


def parse_tree(text: str) -> Tree:
    """``tree N`` followed by ``edge u v`` lines."""
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    head = lines[0]
    if head[0].text != "tree":
        raise head[0].fail("expected 'tree N'")
    expect_arity(head, 1)
    n = as_int(head[1], 1)
    edges, _, extra = _tree_edges(lines[1:], n, "edge")
    if extra is not None:
        raise extra[0].fail(f"unexpected {extra[0].text!r}")
    try:
        return Tree(n, tuple(edges))
    except AdversolveError as exc:
        raise ParseError(str(exc), head[0].line, head[0].col) from None


def parse_board(text: str):
    """``board N`` then N nonnegative rationals, or a quoted string of N characters."""
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    head = lines[0]
    if head[0].text != "board":
        raise head[0].fail("expected 'board N'")
    expect_arity(head, 1)
    n = as_int(head[1], 1)
    body = [t for toks in lines[1:] for t in toks]
    if len(body) == 1 and body[0].text.startswith('"'):
        s = body[0].text[1:-1]
        if len(s) != n:
            raise body[0].fail(f"board declares {n} cells but the string has {len(s)}")
        return s
    if len(body) != n:
        where = body[n] if len(body) > n else head[1]
        raise where.fail(f"board declares {n} cells but {len(body)} values follow")
    values = []
    for tok in body:
        v = as_rational(tok)
        if v < 0:
            raise tok.fail("board values must be nonnegative")
        values.append(v)
    return values


def parse_treblecross(text: str) -> list[tuple[TreblecrossBoard, int]]:
    """Blocks of ``treblecross N`` with optional ``marked p..`` and ``mult m`` lines."""
    out = []
    cur = None
    for toks in tokenize(text):
        kw = toks[0].text
        if kw == "treblecross":
            expect_arity(toks, 1)
            if cur is not None:
                out.append(cur)
            cur = {"n": as_int(toks[1], 1), "marked": None, "mult": None, "at": toks[0]}
            continue
        if cur is None:
            raise toks[0].fail("expected 'treblecross N'")
        if kw == "marked":
            if cur["marked"] is not None:
                raise toks[0].fail("duplicate 'marked' line")
            cells = set()
            for tok in toks[1:]:
                p = as_int(tok)
                if not 1 <= p <= cur["n"]:
                    raise tok.fail(f"cell {p} outside the board")
                if p in cells:
                    raise tok.fail(f"cell {p} marked twice")
                cells.add(p)
            cur["marked"] = frozenset(cells)
        elif kw == "mult":
            expect_arity(toks, 1)
            if cur["mult"] is not None:
                raise toks[0].fail("duplicate 'mult' line")
            cur["mult"] = as_int(toks[1], 0)
        else:
            raise toks[0].fail(f"unknown keyword {kw!r}")
    if cur is not None:
        out.append(cur)
    if not out:
        raise _end(text)
    boards = []
    for c in out:
        try:
            board = TreblecrossBoard(c["n"], c["marked"] or frozenset())
        except ValueError as exc:
            raise c["at"].fail(str(exc)) from None
        boards.append((board, 1 if c["mult"] is None else c["mult"]))
    return boards


def parse_multiround(text: str) -> MultiRoundConfig:
    """``multiround N | s1: a b | s2: c d | rule: case1`` on one line or several."""
    parts: list[list[Token]] = []
    for toks in tokenize(text):
        cur: list[Token] = []
        for tok in toks:
            pieces = re.split(r"(\|)", tok.text)
            col = tok.col
            for piece in pieces:
                if piece == "|":
                    parts.append(cur)
                    cur = []
                elif piece:
                    cur.append(Token(piece, tok.line, col))
                col += len(piece)
        parts.append(cur)
    parts = [p for p in parts if p]
    if not parts:
        raise _end(text)
    head = parts[0]
    if head[0].text != "multiround":
        raise head[0].fail("expected 'multiround N'")
    expect_arity(head, 1)
    n = as_int(head[1], 1)
    fields: dict[str, list[Token]] = {}
    for p in parts[1:]:
        key = p[0].text.rstrip(":")
        if key not in ("s1", "s2", "rule") or not p[0].text.endswith(":"):
            raise p[0].fail(f"expected 's1:', 's2:' or 'rule:', got {p[0].text!r}")
        if key in fields:
            raise p[0].fail(f"duplicate field {key!r}")
        fields[key] = p[1:]
    for key in ("s1", "s2"):
        if key not in fields:
            raise ParseError(f"missing field {key!r}", head[0].line, None)
    rule = "case1"
    if "rule" in fields:
        if len(fields["rule"]) != 1 or fields["rule"][0].text not in ("case1", "case2"):
            raise (fields["rule"][0] if fields["rule"] else head[0]).fail("rule must be case1 or case2")
        rule = fields["rule"][0].text
    sets = []
    for key in ("s1", "s2"):
        vals = frozenset(as_int(t, 1) for t in fields[key])
        if not vals:
            raise head[0].fail(f"move set {key} is empty")
        sets.append(vals)
    try:
        return MultiRoundConfig(n, sets[0], sets[1], rule)
    except ValueError as exc:
        raise ParseError(str(exc), head[0].line, head[0].col) from None


@dataclass(frozen=True)
class GatherEvenSpec:
    n: int
    k: int
    target: str


def parse_gather_even(text: str) -> list[GatherEvenSpec]:
    """One ``gather N=n K=k target=even|odd`` per line."""
    out = []
    for toks in tokenize(text):
        if toks[0].text != "gather":
            raise toks[0].fail("expected 'gather N=n K=k target=even|odd'")
        kv = key_values(toks[1:], {"N", "K"}, {"target"})
        target = kv["target"].text if "target" in kv else "even"
        if target not in ("even", "odd"):
            raise kv["target"].fail("target must be even or odd")
        out.append(GatherEvenSpec(as_int(kv["N"], 1), as_int(kv["K"], 1), target))
    if not out:
        raise _end(text)
    return out


# ---------------------------------------------------------------- query games


def _single(text: str, keyword: str) -> list[Token]:
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    if lines[0][0].text != keyword:
        raise lines[0][0].fail(f"expected {keyword!r}")
    if len(lines) > 1:
        raise lines[1][0].fail("unexpected extra line")
    return lines[0]


SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"


def parse_secret(text: str) -> tuple[tuple[int, ...], int]:
    """``secret <string> over K=<k>``; symbols are base-36 digits below K."""
    toks = _single(text, "secret")
    if len(toks) != 4 or toks[2].text != "over":
        raise toks[0].fail("expected 'secret <string> over K=<k>'")
    k = as_int(key_values(toks[3:], {"K"})["K"], 1)
    raw = toks[1].text
    if raw.startswith('"'):
        raw = raw[1:-1]
    secret = []
    for i, ch in enumerate(raw):
        v = SYMBOLS.find(ch.lower())
        if v < 0 or v >= k:
            raise ParseError(f"symbol {ch!r} is not below K={k}", toks[1].line, toks[1].col + i)
        secret.append(v)
    return tuple(secret), k


@dataclass(frozen=True)
class HcSpec:
    n: int
    delay: int
    mode: str
    secret: int | None


def parse_hc(text: str) -> HcSpec:
    toks = _single(text, "hc")
    kv = key_values(toks[1:], {"N"}, {"D", "mode", "S"})
    n = as_int(kv["N"], 1)
    mode = kv["mode"].text if "mode" in kv else "valid"
    if mode not in ("valid", "any"):
        raise kv["mode"].fail("mode must be valid or any")
    s = None
    if "S" in kv:
        s = as_int(kv["S"])
        if not 1 <= s <= n:
            raise kv["S"].fail(f"S must lie in [1, {n}]")
    return HcSpec(n, as_int(kv["D"], 1) if "D" in kv else 1, mode, s)


def parse_coins(text: str) -> tuple[int, tuple[int, str] | None]:
    toks = _single(text, "coins")
    kv = key_values(toks[1:], {"n"}, {"assign"})
    n = as_int(kv["n"], 3)
    assign = None
    if "assign" in kv:
        tok = kv["assign"]
        m = re.fullmatch(r"(\d+),([LH])", tok.text)
        if not m:
            raise tok.fail("assign must look like <index>,<L|H>")
        idx = int(m.group(1))
        if not 1 <= idx <= n:
            raise tok.fail(f"coin {idx} outside 1..{n}")
        assign = (idx, m.group(2))
    return n, assign


def parse_bets(text: str) -> tuple[int, int]:
    toks = _single(text, "bets")
    kv = key_values(toks[1:], {"N", "R"})
    return as_int(kv["N"], 0), as_int(kv["R"], 0)


def parse_powersum(text: str) -> list[tuple[Fraction, Fraction, int]]:
    """One ``P Q N`` triple per line; a leading ``powersum`` line is optional."""
    out = []
    lines = tokenize(text)
    if lines and lines[0][0].text == "powersum":
        expect_arity(lines[0], 0)
        lines = lines[1:]
    for toks in lines:
        if len(toks) != 3:
            raise toks[0].fail("expected 'P Q N'")
        out.append((as_rational(toks[0]), as_rational(toks[1]), as_int(toks[2], 0)))
    if not out:
        raise _end(text)
    return out


# ---------------------------------------------------------------- pursuit


_SCHED = re.compile(r"\(\s*([cr])\s*,\s*(\d+)\s*\)")


def parse_pursuit(text: str, strict: bool = False, opening: bool = False) -> PursuitConfig:
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    head = lines[0]
    if head[0].text != "digraph":
        raise head[0].fail("expected 'digraph n m'")
    expect_arity(head, 2)
    n, m = as_int(head[1], 1), as_int(head[2], 0)
    arcs = []
    fields: dict[str, list[Token]] = {}
    safe: dict[int, frozenset[int]] = {}

    def vertex(tok: Token) -> int:
        v = as_int(tok)
        if not 1 <= v <= n:
            raise tok.fail(f"dangling vertex {v}")
        return v

    for toks in lines[1:]:
        kw = toks[0].text
        if kw == "arc":
            expect_arity(toks, 2)
            arcs.append((vertex(toks[1]), vertex(toks[2])))
        elif kw in ("cops", "robbers", "schedule", "Bprime", "Bsecond"):
            if kw in fields:
                raise toks[0].fail(f"duplicate {kw!r} line")
            fields[kw] = toks
        elif kw == "safe":
            if len(toks) < 2 or not toks[1].text.endswith(":"):
                raise toks[0].fail("expected 'safe j: v1 v2 ...'")
            j = as_int(Token(toks[1].text[:-1], toks[1].line, toks[1].col), 1)
            if j in safe:
                raise toks[1].fail(f"duplicate safe set for robber {j}")
            safe[j] = frozenset(vertex(t) for t in toks[2:])
        else:
            raise toks[0].fail(f"unknown keyword {kw!r}")
    if len(arcs) != m:
        raise head[2].fail(f"declared {m} arcs but found {len(arcs)}")
    for kw in ("cops", "robbers", "schedule"):
        if kw not in fields:
            raise ParseError(f"missing {kw!r} line", head[0].line, None)
    cops = tuple(vertex(t) for t in fields["cops"][1:])
    robbers = tuple(vertex(t) for t in fields["robbers"][1:])
    if not robbers:
        raise fields["robbers"][0].fail("at least one robber is required")
    sched_toks = fields["schedule"][1:]
    joined = "".join(t.text for t in sched_toks)
    schedule = tuple((kind, int(idx)) for kind, idx in _SCHED.findall(joined))
    if not sched_toks or _SCHED.sub("", joined):
        raise fields["schedule"][0].fail("schedule must be a sequence like (c,1)(r,1)")
    for j in safe:
        if j > len(robbers):
            raise ParseError(f"safe set for unknown robber {j}", head[0].line, None)
    thresholds = {}
    for kw in ("Bprime", "Bsecond"):
        if kw in fields:
            expect_arity(fields[kw], 1)
            thresholds[kw] = as_int(fields[kw][1], 1)
    safe_sets = tuple(safe.get(j, frozenset()) for j in range(1, len(robbers) + 1))
    try:
        return PursuitConfig(
            n,
            tuple(arcs),
            cops,
            robbers,
            schedule,
            thresholds.get("Bprime", 1),
            thresholds.get("Bsecond", 1),
            safe_sets,
            strict=strict,
            opening=opening,
        )
    except AdversolveError as exc:
        raise ParseError(str(exc), head[0].line, head[0].col) from None


def parse_undirected(text: str) -> UndirectedGraph:
    """``graph n m`` followed by ``e u v`` lines."""
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    head = lines[0]
    if head[0].text != "graph":
        raise head[0].fail("expected 'graph n m'")
    expect_arity(head, 2)
    n, m = as_int(head[1], 1), as_int(head[2], 0)
    edges, seen = [], set()
    for toks in lines[1:]:
        if toks[0].text != "e":
            raise toks[0].fail(f"expected 'e u v', got {toks[0].text!r}")
        expect_arity(toks, 2)
        u, v = as_int(toks[1]), as_int(toks[2])
        for tok, w in ((toks[1], u), (toks[2], v)):
            if not 1 <= w <= n:
                raise tok.fail(f"dangling edge endpoint {w}")
        if u == v:
            raise toks[1].fail(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise toks[0].fail(f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u, v))
    if len(edges) != m:
        raise head[2].fail(f"declared {m} edges but found {len(edges)}")
    return UndirectedGraph(n, tuple(edges))


# ---------------------------------------------------------------- allocation


def parse_amounts(text: str) -> list[Fraction]:
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    if len(lines) > 1:
        raise lines[1][0].fail("expected a single line of amounts")
    out = []
    for tok in lines[0]:
        v = as_rational(tok)
        if v < 0:
            raise tok.fail("amounts must be nonnegative")
        out.append(v)
    return out


def _labelled(lines, names: tuple[str, ...]) -> dict[str, list[Token]]:
    out = {}
    for toks in lines:
        key = toks[0].text.rstrip(":")
        if key not in names or not toks[0].text.endswith(":"):
            raise toks[0].fail(f"expected one of {', '.join(k + ':' for k in names)}")
        if key in out:
            raise toks[0].fail(f"duplicate {key!r} line")
        out[key] = toks
    return out


def parse_line_instance(text: str) -> tuple[list[Fraction], list[Fraction]]:
    """``r: ...`` and ``q: ...`` lines."""
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    fields = _labelled(lines, ("r", "q"))
    if "r" not in fields:
        raise ParseError("missing 'r:' line", lines[0][0].line, None)
    r = [as_rational(t) for t in fields["r"][1:]]
    q = [as_rational(t) for t in fields.get("q", [None])[1:]]
    if not r:
        raise fields["r"][0].fail("need at least one container")
    if len(q) != len(r) - 1:
        anchor = fields["q"][0] if "q" in fields else fields["r"][0]
        raise anchor.fail(f"{len(r)} containers need {len(r) - 1} segment costs, got {len(q)}")
    for tok, v in zip(fields["r"][1:], r):
        if v < 0:
            raise tok.fail("amounts must be nonnegative")
    if any(v < 0 for v in q):
        raise fields["q"][0].fail("segment costs must be nonnegative")
    return r, q


def parse_tree_realloc(text: str):
    """Optional ``tree N``, ``edge u v c_uv c_vu`` lines, then ``b: ...`` and ``q: ...``."""
    lines = tokenize(text)
    if not lines:
        raise _end(text)
    declared = None
    if lines[0][0].text == "tree":
        expect_arity(lines[0], 1)
        declared = as_int(lines[0][1], 1)
        lines = lines[1:]
    split = next((i for i, toks in enumerate(lines) if toks[0].text != "edge"), len(lines))
    fields = _labelled(lines[split:], ("b", "q"))
    for key in ("b", "q"):
        if key not in fields:
            raise ParseError(f"missing '{key}:' line", (lines[-1][0].line if lines else 1), None)
    b = [as_int(t, 0) for t in fields["b"][1:]]
    q = [as_int(t, 0) for t in fields["q"][1:]]
    n = declared if declared is not None else len(b)
    if len(b) != n or len(q) != n:
        raise fields["b" if len(b) != n else "q"][0].fail(f"expected {n} amounts")
    edges, cost, _ = _tree_edges(lines[:split], n, "edge", costs=True)
    try:
        tree = Tree(n, tuple(edges))
    except AdversolveError as exc:
        raise ParseError(str(exc), fields["b"][0].line, None) from None
    for key in cost:
        if cost[key] < 0:
            raise ParseError(f"negative cost on {key}", fields["b"][0].line, None)
    return tree, b, q, cost
