"""Brute-force reference solvers used only by the tests.

These deliberately avoid the package's own code paths: they work on
integer payoffs from player 1's point of view, or enumerate whole game
trees, so agreement with the library is real evidence.
"""

from __future__ import annotations

import random
from functools import lru_cache

from adversolve.core import Outcome, StateGraph

_INT = {Outcome.VICTORY: 1, Outcome.DRAW: 0, Outcome.DEFEAT: -1}
_OUT = {1: Outcome.VICTORY, 0: Outcome.DRAW, -1: Outcome.DEFEAT}


def random_dag(rng: random.Random, n: int, p: float = 0.35, mover=None, terminal_choices=None) -> StateGraph:
    """Random DAG over a shuffled order; sinks get labels from ``terminal_choices``."""
    perm = list(range(n))
    rng.shuffle(perm)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((perm[i], perm[j]))
    has_out = {u for u, _ in edges}
    choices = terminal_choices or [Outcome.DEFEAT]
    terminal = {s: rng.choice(choices) for s in range(n) if s not in has_out}
    if mover == "random":
        movers = tuple(rng.choice((1, 2)) for _ in range(n))
    else:
        movers = (mover,) * n
    return StateGraph(movers, tuple(edges), terminal)


def random_graph(rng: random.Random, n: int, p: float = 0.3, explicit=False) -> StateGraph:
    """Random directed graph, cycles and self-loops allowed."""
    edges = [(u, v) for u in range(n) for v in range(n) if rng.random() < p]
    has_out = {u for u, _ in edges}
    terminal = {s: rng.choice(list(Outcome)) for s in range(n) if s not in has_out}
    movers = tuple(rng.choice((1, 2)) for _ in range(n)) if explicit else (None,) * n
    return StateGraph(movers, tuple(edges), terminal)


def negamax_outcomes(graph: StateGraph) -> dict[int, Outcome]:
    """Recursive integer negamax on an acyclic graph."""
    succ = [[] for _ in range(graph.n)]
    for u, v in graph.edges:
        succ[u].append(v)

    @lru_cache(maxsize=None)
    def value(u: int) -> int:
        if not succ[u]:
            return _INT[graph.terminal[u]]
        best = -2
        for v in succ[u]:
            child = value(v)
            if graph.movers[u] is None or graph.movers[u] != graph.movers[v]:
                child = -child
            best = max(best, child)
        return best

    return {u: _OUT[value(u)] for u in range(graph.n)}


def _explicit(graph: StateGraph):
    """Return (states, movers, successors, terminal P1 values) with explicit players."""
    if not graph.impartial:
        states = list(range(graph.n))
        movers = {u: graph.movers[u] for u in states}
        succ = {u: [] for u in states}
        for u, v in graph.edges:
            succ[u].append(v)
        term = {}
        for u in states:
            if not succ[u]:
                val = _INT[graph.terminal[u]]
                term[u] = val if movers[u] == 1 else -val
        return states, movers, succ, term
    states = [(u, p) for u in range(graph.n) for p in (1, 2)]
    movers = {s: s[1] for s in states}
    succ = {s: [] for s in states}
    for u, v in graph.edges:
        for p in (1, 2):
            succ[(u, p)].append((v, 3 - p))
    term = {}
    for s in states:
        if not succ[s]:
            val = _INT[graph.terminal[s[0]]]
            term[s] = val if s[1] == 1 else -val
    return states, movers, succ, term


def _attractor(player, target, states, movers, succ):
    attr = set(target)
    changed = True
    while changed:
        changed = False
        for s in states:
            if s in attr or not succ[s]:
                continue
            if movers[s] == player:
                ok = any(t in attr for t in succ[s])
            else:
                ok = all(t in attr for t in succ[s])
            if ok:
                attr.add(s)
                changed = True
    return attr


def cyclic_outcomes(graph: StateGraph, infinite) -> dict[int, Outcome]:
    """Exact values of a possibly cyclic game through threshold reachability games.

    ``infinite`` is an Outcome (used for every mover; only DRAW is coherent) or
    a per-player mapping.
    """
    states, movers, succ, term = _explicit(graph)
    if isinstance(infinite, Outcome):
        inf_p1 = _INT[infinite]
    else:
        inf_p1 = _INT[infinite[1]]
    p1_value = {}
    wins = {}
    for t in (1, 0):
        if inf_p1 >= t:
            bad = {s for s, v in term.items() if v < t}
            wins[t] = set(states) - _attractor(2, bad, states, movers, succ)
        else:
            good = {s for s, v in term.items() if v >= t}
            wins[t] = _attractor(1, good, states, movers, succ)
    for s in states:
        p1_value[s] = 1 if s in wins[1] else (0 if s in wins[0] else -1)
    out = {}
    for u in range(graph.n):
        s = (u, 1) if graph.impartial else u
        val = p1_value[s] if movers[s] == 1 else -p1_value[s]
        out[u] = _OUT[val]
    return out


def random_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Uniform-ish random labelled tree on 1..n (random attachment)."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
