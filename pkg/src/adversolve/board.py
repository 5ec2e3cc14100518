"""Games where both players have the same role.

Covers the path-marking game on trees, parity gathering from a pile,
pick-from-the-ends boards (numeric and lexicographic), the multi-round
gathering game and parallel Treblecross.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .core import Outcome, StateGraph, combined_grundy, mex
from .errors import GraphError


@dataclass(frozen=True)
class Tree:
    """Undirected tree on vertices 1..n."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a tree needs at least one vertex")
        if len(self.edges) != self.n - 1:
            raise GraphError(f"a tree on {self.n} vertices needs {self.n - 1} edges, got {len(self.edges)}")
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge ({u}, {v}) leaves the vertex range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
        seen = {1}
        stack = [1]
        adj = self.adjacency
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != self.n:
            raise GraphError("tree is not connected")

    @property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def rooted(self, root: int) -> tuple[list[int], list[int]]:
        """Return (parent, preorder) for the tree hung from ``root``."""
        if not 1 <= root <= self.n:
            raise GraphError(f"invalid root {root}")
        adj = self.adjacency
        parent = [0] * (self.n + 1)
        order = []
        stack = [root]
        parent[root] = -1
        while stack:
            u = stack.pop()
            order.append(u)
            for v in adj[u]:
                if v != parent[u]:
                    parent[v] = u
                    stack.append(v)
        return parent, order


def _son_wins(tree: Tree, root: int, counter: Counter | None = None):
    parent, order = tree.rooted(root)
    adj = tree.adjacency
    win = [False] * (tree.n + 1)
    ntwin = [0] * (tree.n + 1)
    for u in reversed(order):
        for v in adj[u]:
            if v != parent[u] and win[v]:
                ntwin[u] += 1
            if counter is not None:
                counter["ops"] += 1
        win[u] = ntwin[u] == 0
    return parent, order, win, ntwin


def path_game_rooted(tree: Tree, root: int) -> bool:
    """Does the first player win by marking ``root`` first?"""
    _, _, win, _ = _son_wins(tree, root)
    return win[root]


def path_game_all_starts(tree: Tree, counter: Counter | None = None) -> list[bool]:
    """``rwin`` for every vertex in O(n) by rerooting; index 0 is vertex 1.

    ``counter["ops"]`` (when given) counts adjacency visits, so callers can
    check the pass stays linear.
    """
    parent, order, win, ntwin = _son_wins(tree, 1, counter)
    adj = tree.adjacency
    rwin = [False] * (tree.n + 1)
    ntrwin = [0] * (tree.n + 1)
    rwin[1], ntrwin[1] = win[1], ntwin[1]
    # preorder guarantees a parent is finished before its sons
    for u in order:
        for s in adj[u]:
            if counter is not None:
                counter["ops"] += 1
            if s == parent[u]:
                continue
            without_s = ntrwin[u] - (1 if win[s] else 0)
            ntrwin[s] = ntwin[s] + (1 if without_s == 0 else 0)
            rwin[s] = ntrwin[s] == 0
    return rwin[1:]


def even_gather(n: int, k: int, target: str = "even", mode: str = "dp") -> bool:
    """Whether the first player wins the parity gathering game.

    The winner is whoever ends with a total of the ``target`` parity; the
    pile holds ``n`` objects and a move takes 1..k of them.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if target not in ("even", "odd"):
        raise ValueError(f"unknown target {target!r}")
    x = 0 if target == "even" else 1
    if mode == "pattern":
        return _even_gather_pattern(n, k, x)
    if mode == "dp":
        return bool(even_gather_table(n, k)[x][n])
    if mode == "fast":
        return bool(even_gather_table_fast(n, k)[x][n])
    raise ValueError(f"unknown mode {mode!r}")


def even_gather_table(n: int, k: int) -> list[list[int]]:
    """``win[x][i]``: with i objects left the mover can make its further
    haul have parity x, against an opponent trying to stop it.  O(n k)."""
    win = [[0] * (n + 1) for _ in range(2)]
    win[0][0], win[1][0] = 1, 0
    for i in range(1, n + 1):
        for x in (0, 1):
            # the opponent then needs the complementary parity of what remains
            y = (i + x + 1) % 2
            win[x][i] = int(any(win[y][j] == 0 for j in range(max(i - k, 0), i)))
    return win


def even_gather_table_fast(n: int, k: int) -> list[list[int]]:
    """Same table in O(n) using the last index seen per (x, parity, value)."""
    never = -(10**18)
    last = [[[never, never] for _ in range(2)] for _ in range(2)]
    win = [[0] * (n + 1) for _ in range(2)]
    win[0][0], win[1][0] = 1, 0
    last[0][0][1] = 0
    last[1][0][0] = 0
    for i in range(1, n + 1):
        for x in (0, 1):
            y = (i + x + 1) % 2
            recent_loss = max(last[y][0][0], last[y][1][0])
            win[x][i] = int(i - recent_loss <= k)
        last[0][i % 2][win[0][i]] = i
        last[1][i % 2][win[1][i]] = i
    return win


def _even_gather_pattern(n: int, k: int, x: int) -> bool:
    if x == 0:
        if n % 2 == 1:
            lost = n % (k + 2) == 1 if k % 2 == 0 else n % (2 * k + 2) == 1
        else:
            lost = False if k % 2 == 0 else n % (2 * k + 2) == k + 1
    else:
        if n % 2 == 1:
            lost = n % (k + 2) == k + 1 if k % 2 == 0 else n % (2 * k + 2) == k + 2
        else:
            lost = n % (k + 2) == 0 if k % 2 == 0 else n % (2 * k + 2) == 0
    return not lost


class BoardGatherResult(NamedTuple):
    smax: Fraction
    diff: Fraction
    parity_guarantee: Fraction
    table: dict


def board_gather(values) -> BoardGatherResult:
    """Pick-from-the-ends with values: best score for the first player."""
    v = [Fraction(x) for x in values]
    n = len(v)
    if n == 0:
        raise ValueError("board must be nonempty")
    if any(x < 0 for x in v):
        raise ValueError("values must be nonnegative")
    prefix = [Fraction(0)]
    for x in v:
        prefix.append(prefix[-1] + x)

    def total(a, b):  # 0-based inclusive
        return prefix[b + 1] - prefix[a]

    smax = {(i, i): v[i] for i in range(n)}
    for length in range(1, n):
        for i in range(n - length):
            j = i + length
            smax[(i, j)] = max(
                v[i] + total(i + 1, j) - smax[(i + 1, j)],
                v[j] + total(i, j - 1) - smax[(i, j - 1)],
            )
    best = smax[(0, n - 1)]
    odd = sum(v[0::2], Fraction(0))
    even = sum(v[1::2], Fraction(0))
    return BoardGatherResult(best, 2 * best - total(0, n - 1), max(odd, even), smax)


def board_gather_move(values, table: dict, i: int, j: int) -> str:
    """'L' or 'R': the end that realises ``table[(i, j)]`` (0-based), left on ties."""
    v = [Fraction(x) for x in values]
    if i == j:
        return "L"
    rest_left = sum(v[i + 1 : j + 1], Fraction(0))
    if v[i] + rest_left - table[(i + 1, j)] == table[(i, j)]:
        return "L"
    return "R"


def lex_game(board: str) -> str:
    """Final string when player 1 wants it lexicographically small and
    player 2 wants it large, taking characters from either end."""
    n = len(board)
    if n == 0:
        raise ValueError("board must be nonempty")
    res = {(i, i): board[i] for i in range(n)}
    for length in range(1, n):
        for i in range(n - length):
            j = i + length
            a = board[i] + res[(i + 1, j)]
            b = board[j] + res[(i, j - 1)]
            mover = 1 if (i + (n - 1 - j)) % 2 == 0 else 2
            res[(i, j)] = min(a, b) if mover == 1 else max(a, b)
    return res[(0, n - 1)]


@dataclass(frozen=True)
class MultiRoundConfig:
    n: int
    moves1: frozenset[int]
    moves2: frozenset[int]
    rule: str = "case1"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("pile must hold at least one object")
        for s in (self.moves1, self.moves2):
            if 1 not in s:
                raise ValueError("every move set must contain 1")
            if any(m < 1 for m in s):
                raise ValueError("moves must be positive")
        if self.rule not in ("case1", "case2"):
            raise ValueError(f"unknown round rule {self.rule!r}")


def multi_round_gather(config: MultiRoundConfig) -> tuple[int, Outcome]:
    """Objects player 1 ends up keeping, and the resulting outcome.

    ``g[(i, j, q, p)]``: best final haul for mover p holding i objects aside
    this round, opponent holding j, q in the pile.  Filled by increasing
    i + j + q, ties by increasing q.
    """
    n = config.n
    moves = {1: sorted(config.moves1), 2: sorted(config.moves2)}
    g: dict[tuple[int, int, int, int], int] = {(0, 0, 0, 1): 0, (0, 0, 0, 2): 0}
    for total in range(1, n + 1):
        for q in range(total + 1):
            for i in range(total - q + 1):
                j = total - q - i
                for p in (1, 2):
                    if q == 0:
                        if j == 0:
                            # the opponent just took the last object, so j >= 1
                            continue
                        if config.rule == "case2":
                            g[(i, j, 0, p)] = g[(0, 0, i, p)]
                        else:
                            g[(i, j, 0, p)] = i - g[(0, 0, i, 3 - p)]
                        continue
                    g[(i, j, q, p)] = max(
                        total - g[(j, i + k, q - k, 3 - p)] for k in moves[p] if k <= q
                    )
    kept = g[(0, 0, n, 1)]
    if 2 * kept > n:
        return kept, Outcome.VICTORY
    if 2 * kept == n:
        return kept, Outcome.DRAW
    return kept, Outcome.DEFEAT


@dataclass(frozen=True)
class TreblecrossBoard:
    length: int
    marked: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.length < 3:
            raise ValueError("treblecross boards need at least 3 cells")
        if any(not 1 <= p <= self.length for p in self.marked):
            raise ValueError("marked cell outside the board")


def treblecross_decompose(board: TreblecrossBoard) -> list[int]:
    """Lengths of the maximal runs of cells not within distance 2 of a mark."""
    marks = sorted(board.marked)
    for a, b in zip(marks, marks[1:]):
        if b - a <= 2:
            raise ValueError("immediate win exists / invalid initial board")
    blocked = set()
    for m in marks:
        blocked.update(range(m - 2, m + 3))
    runs = []
    run = 0
    for cell in range(1, board.length + 1):
        if cell in blocked:
            if run:
                runs.append(run)
            run = 0
        else:
            run += 1
    if run:
        runs.append(run)
    return runs


_grundy_memo = [0]
_grundy_lock = threading.Lock()


def treblecross_grundy(q: int) -> int:
    """Grundy value of an empty run of q safe cells (memo shared per process)."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    with _grundy_lock:
        memo = _grundy_memo
        for size in range(len(memo), q + 1):
            memo.append(mex(memo[max(i - 3, 0)] ^ memo[max(size - i - 2, 0)] for i in range(1, size + 1)))
        return memo[q]


def treblecross_board_grundy(board: TreblecrossBoard) -> int:
    g = 0
    for run in treblecross_decompose(board):
        g ^= treblecross_grundy(run)
    return g


def parallel_treblecross(instances) -> bool:
    """First player wins a sum of (board, multiplicity) Treblecross games?"""
    return combined_grundy([(treblecross_board_grundy(b), m) for b, m in instances]) > 0


def treblecross_graph(board: TreblecrossBoard) -> StateGraph:
    """Explicit move graph of one board; state 0 is the given position.

    Positions with three marks in a row are sinks labeled DEFEAT: the player
    facing them has just lost.
    """
    start = 0
    for p in board.marked:
        start |= 1 << (p - 1)
    triples = [0b111 << s for s in range(board.length - 2)]
    ids = {start: 0}
    order = [start]
    edges = []
    terminal = {}
    k = 0
    while k < len(order):
        mask = order[k]
        u = ids[mask]
        k += 1
        if any(mask & t == t for t in triples):
            terminal[u] = Outcome.DEFEAT
            continue
        for cell in range(board.length):
            if mask >> cell & 1:
                continue
            nxt = mask | 1 << cell
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            edges.append((u, ids[nxt]))
    return StateGraph.build(len(order), edges, terminal, labels=tuple(order))
