"""Cops and robbers on graphs, the one-cop elimination test and caterpillar classes."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .board import Tree
from .core import DEFAULT_STATE_CAP, Outcome, StateGraph, solve_cyclic
from .errors import GraphError, StateExplosionError

COPS, ROBBERS = 1, 2
CAPTURED, SAFE = -1, -2


@dataclass(frozen=True)
class PursuitConfig:
    """A pursuit game on a directed graph with vertices ``1..n``.

    ``schedule`` lists ``("c"|"r", index)`` pairs with 1-based indices.
    ``capture`` and ``escape`` are the thresholds B' and B''.
    """

    n: int
    arcs: tuple[tuple[int, int], ...]
    cops: tuple[int, ...]
    robbers: tuple[int, ...]
    schedule: tuple[tuple[str, int], ...]
    capture: int = 1
    escape: int = 1
    safe: tuple[frozenset[int], ...] = ()
    strict: bool = False
    opening: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        for u, v in self.arcs:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"arc ({u}, {v}) leaves the vertex range")
        if not self.robbers:
            raise GraphError("at least one robber is required")
        if not self.opening:
            for p in self.cops + self.robbers:
                if not 1 <= p <= self.n:
                    raise GraphError(f"start vertex {p} out of range")
        if not self.schedule:
            raise GraphError("schedule must be nonempty")
        for kind, idx in self.schedule:
            count = len(self.cops) if kind == "c" else len(self.robbers) if kind == "r" else -1
            if count < 0:
                raise GraphError(f"unknown agent type {kind!r}")
            if not 1 <= idx <= count:
                raise GraphError(f"schedule index {idx} out of range for type {kind}")
        b = len(self.robbers)
        if not (1 <= self.capture <= b and 1 <= self.escape <= b):
            raise GraphError("thresholds must lie in [1, number of robbers]")
        if self.safe and len(self.safe) != b:
            raise GraphError("one safe set per robber is required")

    @property
    def safe_sets(self) -> tuple[frozenset[int], ...]:
        return self.safe or tuple(frozenset() for _ in self.robbers)


@dataclass
class PursuitGraph:
    graph: StateGraph
    states: list = field(repr=False)
    start: int = 0


def _winner(config: PursuitConfig, robbers: tuple[int, ...]) -> int | None:
    if sum(r == CAPTURED for r in robbers) >= config.capture:
        return COPS
    if sum(r == SAFE for r in robbers) >= config.escape:
        return ROBBERS
    return None


def build_pursuit_graph(config: PursuitConfig, cap: int = DEFAULT_STATE_CAP) -> PursuitGraph:
    """Explore the states reachable from the start.

    A play state is ``(cop positions, robber positions or CAPTURED/SAFE, p)``.
    With ``opening`` the cops and then the robbers first pick their vertices,
    one agent per state, encoded as ``("open", placed cops, placed robbers)``.
    """
    out = [[] for _ in range(config.n + 1)]
    for u, v in config.arcs:
        out[u].append(v)
    out = [sorted(set(vs)) for vs in out]
    safe = config.safe_sets
    a, b, k = len(config.cops), len(config.robbers), len(config.schedule)

    def settle(robbers):
        return tuple(SAFE if r > 0 and r in safe[j] else r for j, r in enumerate(robbers))

    def side(state) -> int:
        if state[0] == "open":
            return COPS if len(state[1]) < a else ROBBERS
        return COPS if config.schedule[state[2]][0] == "c" else ROBBERS

    def expand(state):
        if state[0] == "open":
            _, cs, rs = state
            if len(cs) < a:
                return [("open", cs + (v,), rs) for v in range(1, config.n + 1)]
            nxt = []
            for v in range(1, config.n + 1):
                rs2 = rs + (v,)
                nxt.append(("open", cs, rs2) if len(rs2) < b else (cs, settle(rs2), 0))
            return nxt
        cops, robbers, p = state
        kind, idx = config.schedule[p]
        q = (p + 1) % k
        if kind == "c":
            at = cops[idx - 1]
            return [
                (cops[: idx - 1] + (v,) + cops[idx:], tuple(CAPTURED if r == v else r for r in robbers), q)
                for v in out[at]
            ]
        at = robbers[idx - 1]
        if at < 0:
            return [(cops, robbers, q)]  # out of play, the turn passes
        return [(cops, robbers[: idx - 1] + (SAFE if v in safe[idx - 1] else v,) + robbers[idx:], q) for v in out[at]]

    if config.opening:
        start = ("open", (), ())
    else:
        start = (config.cops, settle(config.robbers), 0)
    index = {start: 0}
    states = [start]
    edges: list[tuple[int, int]] = []
    terminal: dict[int, Outcome] = {}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        u = index[s]
        mover = side(s)
        if s[0] != "open":
            won = _winner(config, s[1])
            if won is not None:
                terminal[u] = Outcome.VICTORY if won == mover else Outcome.DEFEAT
                continue
        nxt = expand(s)
        if not nxt:
            terminal[u] = Outcome.DEFEAT if config.strict else Outcome.DRAW
            continue
        for t in nxt:
            if t not in index:
                if len(states) >= cap:
                    raise StateExplosionError(len(states) + 1, cap)
                index[t] = len(states)
                states.append(t)
                queue.append(t)
            edges.append((u, index[t]))
    movers = tuple(side(s) for s in states)
    graph = StateGraph(movers, tuple(edges), terminal, tuple(states))
    return PursuitGraph(graph, states)


def solve_pursuit(config: PursuitConfig, cap: int = DEFAULT_STATE_CAP) -> Outcome:
    """Value of the game for the cops; endless play is a draw."""
    pg = build_pursuit_graph(config, cap)
    values = solve_cyclic(pg.graph, Outcome.DRAW)
    result = values[pg.start]
    return result if pg.graph.movers[pg.start] == COPS else result.flipped()


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge ({u}, {v}) leaves the vertex range")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)

    @property
    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def cop_robber_config(graph: UndirectedGraph) -> PursuitConfig:
    """One cop and one robber who pick their starts and may stay put."""
    arcs = [(u, v) for u, v in graph.edges] + [(v, u) for u, v in graph.edges]
    arcs += [(v, v) for v in range(1, graph.n + 1)]
    return PursuitConfig(graph.n, tuple(arcs), (1,), (1,), (("c", 1), ("r", 1)), opening=True)


def _pick(candidates: list[int], rng: random.Random | None) -> int:
    return candidates[0] if rng is None else rng.choice(candidates)


def _cop_win_naive(graph: UndirectedGraph, rng) -> bool:
    adj = graph.adjacency
    alive = set(range(1, graph.n + 1))
    while len(alive) > 1:
        dominated = [y for y in sorted(alive) if any(adj[y] - {x} <= adj[x] for x in adj[y])]
        if not dominated:
            return False
        y = _pick(dominated if rng else dominated[:1], rng)
        for z in adj[y]:
            adj[z].discard(y)
        adj[y] = set()
        alive.discard(y)
    return True


def _cop_win_fast(graph: UndirectedGraph, rng) -> bool:
    n = graph.n
    a = np.zeros((n, n), dtype=np.int64)
    for u, v in graph.edges:
        a[u - 1, v - 1] = a[v - 1, u - 1] = 1
    common = a @ a
    degree = a.sum(axis=0)
    alive = np.ones(n, dtype=bool)
    left = n
    while left > 1:
        # X dominates Y when they are adjacent and share all of Y's other neighbours
        hits = (a == 1) & (common == degree[None, :] - 1)
        dominated = np.flatnonzero(hits.any(axis=0) & alive)
        if dominated.size == 0:
            return False
        y = int(dominated[0]) if rng is None else int(rng.choice(list(dominated)))
        row = a[y].copy()
        degree -= row
        common -= np.outer(row, row)
        a[y, :] = 0
        a[:, y] = 0
        alive[y] = False
        left -= 1
    return True


def cop_win(graph: UndirectedGraph, mode: str = "fast", rng: random.Random | None = None) -> bool:
    """Whether one cop catches one robber, by removing dominated vertices.

    Without ``rng`` the lowest-numbered dominated vertex goes first.
    """
    if mode == "naive":
        return _cop_win_naive(graph, rng)
    if mode == "fast":
        return _cop_win_fast(graph, rng)
    raise ValueError(f"unknown mode {mode!r}")


def is_caterpillar(tree: Tree) -> bool:
    adj = [set(vs) for vs in tree.adjacency]
    inner = {v for v in range(1, tree.n + 1) if len(adj[v]) > 1}
    return all(len(adj[v] & inner) <= 2 for v in inner)


def _components(graph: UndirectedGraph, adj) -> list[list[int]]:
    seen = [False] * (graph.n + 1)
    comps = []
    for s in range(1, graph.n + 1):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    return comps


def is_extended_caterpillar(graph: UndirectedGraph) -> bool:
    adj = graph.adjacency
    for comp in _components(graph, adj):
        if sum(len(adj[v]) for v in comp) // 2 != len(comp) - 1:
            return False
    leaf = {v for v in range(1, graph.n + 1) if len(adj[v]) <= 1}
    near = {v for v in range(1, graph.n + 1) if v not in leaf and len(adj[v] - leaf) <= 1}
    marked = leaf | near
    return all(len(adj[v] - marked) <= 2 for v in range(1, graph.n + 1) if v not in marked)
