import itertools
import random
import time

import pytest

from adversolve.board import Tree
from adversolve.core import Outcome
from adversolve.errors import GraphError, StateExplosionError
from adversolve.pursuit import (
    PursuitConfig,
    UndirectedGraph,
    build_pursuit_graph,
    cop_robber_config,
    cop_win,
    is_caterpillar,
    is_extended_caterpillar,
    solve_pursuit,
)

from oracles import random_tree_edges

ALT = (("c", 1), ("r", 1))


def both_ways(edges):
    return tuple(edges) + tuple((v, u) for u, v in edges)


def with_loops(n, edges):
    return both_ways(edges) + tuple((v, v) for v in range(1, n + 1))


def cycle(n):
    return UndirectedGraph(n, tuple((i, i % n + 1) for i in range(1, n + 1)))


def random_graph(rng, n, p, connected=False):
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    if connected:
        edges += [(v, rng.randint(1, v - 1)) for v in range(2, n + 1)]
    return UndirectedGraph(n, tuple(sorted({(min(e), max(e)) for e in edges})))


class TestPursuitGraph:
    def test_no_interaction_is_draw(self):
        cfg = PursuitConfig(2, ((1, 1), (2, 2)), (1,), (2,), ALT)
        assert solve_pursuit(cfg) is Outcome.DRAW

    def test_one_move_capture(self):
        cfg = PursuitConfig(2, ((1, 2), (2, 1)), (1,), (2,), ALT)
        assert solve_pursuit(cfg) is Outcome.VICTORY

    def test_one_move_escape(self):
        cfg = PursuitConfig(3, ((1, 2), (3, 3), (2, 2)), (3,), (1,), (("r", 1), ("c", 1)), safe=(frozenset({2}),))
        assert solve_pursuit(cfg) is Outcome.DEFEAT

    def test_cycle_is_draw(self):
        c4 = cycle(4)
        cfg = PursuitConfig(4, both_ways(c4.edges), (1,), (3,), ALT)
        assert solve_pursuit(cfg) is Outcome.DRAW

    def test_path_with_staying(self):
        cfg = PursuitConfig(3, with_loops(3, ((1, 2), (2, 3))), (1,), (3,), ALT)
        assert solve_pursuit(cfg) is Outcome.VICTORY

    def test_path_without_staying_is_draw(self):
        # the robber steps onto the cop, which is not a capture, and the cop can never land on it
        cfg = PursuitConfig(3, both_ways(((1, 2), (2, 3))), (1,), (3,), ALT)
        assert solve_pursuit(cfg) is Outcome.DRAW

    def test_robber_move_onto_cop_is_not_capture(self):
        cfg = PursuitConfig(2, ((1, 1), (2, 1)), (1,), (2,), (("r", 1), ("c", 1)))
        pg = build_pursuit_graph(cfg)
        after = pg.states[pg.graph.successors[0][0]]
        assert after[1] == (1,)
        assert solve_pursuit(cfg) is Outcome.VICTORY  # the cop then moves along its loop

    def test_stuck_agent(self):
        cfg = PursuitConfig(2, ((2, 2),), (1,), (2,), ALT)
        assert solve_pursuit(cfg) is Outcome.DRAW
        strict = PursuitConfig(2, ((2, 2),), (1,), (2,), ALT, strict=True)
        assert solve_pursuit(strict) is Outcome.DEFEAT

    def test_thresholds_with_two_robbers(self):
        # a cop on a loop at 2 next to robbers at 1 and 3 that cannot move
        arcs = ((2, 1), (2, 3), (1, 2), (3, 2), (1, 1), (3, 3), (2, 2))
        sched = (("c", 1), ("r", 1), ("r", 2))
        one = PursuitConfig(3, arcs, (2,), (1, 3), sched, capture=1, escape=2)
        assert solve_pursuit(one) is Outcome.VICTORY
        safe = (frozenset(), frozenset({3}))
        # robber 2 starts on its safe vertex, so one escape already ends the game
        early = PursuitConfig(3, arcs, (2,), (1, 3), sched, capture=1, escape=1, safe=safe)
        assert solve_pursuit(early) is Outcome.DEFEAT

    def test_cap(self):
        c = cycle(5)
        with pytest.raises(StateExplosionError):
            build_pursuit_graph(cop_robber_config(c), cap=10)

    def test_validation(self):
        with pytest.raises(GraphError):
            PursuitConfig(2, ((1, 3),), (1,), (2,), ALT)
        with pytest.raises(GraphError):
            PursuitConfig(2, ((1, 2),), (1,), (2,), (("c", 2),))
        with pytest.raises(GraphError):
            PursuitConfig(2, ((1, 2),), (1,), (2,), ())
        with pytest.raises(GraphError):
            PursuitConfig(2, ((1, 2),), (1,), (2,), ALT, capture=2)


class TestCopWin:
    def test_examples(self):
        tri = UndirectedGraph(3, ((1, 2), (2, 3), (1, 3)))
        for mode in ("naive", "fast"):
            assert cop_win(tri, mode)
            assert not cop_win(cycle(4), mode)
            assert cop_win(UndirectedGraph(1, ()), mode)
            assert not cop_win(UndirectedGraph(2, ()), mode)

    def test_trees(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 50)
            g = UndirectedGraph(n, tuple(random_tree_edges(rng, n)))
            assert cop_win(g, "naive") and cop_win(g, "fast")

    def test_modes_agree(self):
        rng = random.Random(11)
        for _ in range(1000):
            n = rng.randint(1, 40)
            g = random_graph(rng, n, rng.choice([0.05, 0.2, 0.5, 0.8]), connected=rng.random() < 0.7)
            assert cop_win(g, "naive") == cop_win(g, "fast")

    def test_order_independence(self):
        rng = random.Random(4)
        for _ in range(8):
            n = rng.randint(3, 20)
            g = random_graph(rng, n, rng.choice([0.2, 0.5, 0.8]), connected=True)
            expected = cop_win(g)
            for _ in range(200):
                assert cop_win(g, rng.choice(["naive", "fast"]), rng) == expected

    def test_matches_game_search(self):
        rng = random.Random(8)
        seen = set()
        for n in range(1, 7):
            for _ in range(40 if n > 3 else 10):
                g = random_graph(rng, n, rng.choice([0.2, 0.4, 0.7]), connected=True)
                if g in seen:
                    continue
                seen.add(g)
                won = solve_pursuit(cop_robber_config(g)) is Outcome.VICTORY
                assert won == cop_win(g), g
        for n in (4, 5, 6):
            assert solve_pursuit(cop_robber_config(cycle(n))) is Outcome.DRAW

    def test_rejects_loops(self):
        with pytest.raises(GraphError):
            UndirectedGraph(2, ((1, 1),))

    def test_fast_scale(self):
        rng = random.Random(0)
        g = random_graph(rng, 500, 0.05, connected=True)
        t = time.perf_counter()
        cop_win(g, "fast")
        assert time.perf_counter() - t < 5


def strip_leaves(adj):
    leaves = {v for v, ns in adj.items() if len(ns) <= 1}
    if len(leaves) == len(adj):
        return {}
    return {v: ns - leaves for v, ns in adj.items() if v not in leaves}


def is_path(adj):
    return all(len(ns) <= 2 for ns in adj.values())


def caterpillar_oracle(n, edges, rounds):
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for _ in range(rounds):
        adj = strip_leaves(adj)
    return is_path(adj)


def spider(legs, length):
    edges, nxt = [], 2
    for _ in range(legs):
        prev = 1
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return nxt - 1, tuple(edges)


class TestCaterpillars:
    def test_examples(self):
        assert is_caterpillar(Tree(5, ((1, 2), (2, 3), (3, 4), (4, 5))))
        assert is_caterpillar(Tree(5, ((1, 2), (1, 3), (1, 4), (1, 5))))
        n, e = spider(3, 2)
        assert not is_caterpillar(Tree(n, e))
        assert is_extended_caterpillar(UndirectedGraph(n, e))
        n, e = spider(3, 3)
        assert not is_extended_caterpillar(UndirectedGraph(n, e))
        assert not is_extended_caterpillar(cycle(5))

    def test_forest(self):
        n1, e1 = spider(3, 2)
        edges = e1 + ((n1 + 1, n1 + 2),)
        assert is_extended_caterpillar(UndirectedGraph(n1 + 3, edges))

    def test_rejects_non_tree(self):
        with pytest.raises(GraphError):
            is_caterpillar(Tree(3, ((1, 2), (2, 3), (1, 3))))

    def test_random_trees_against_pruning(self):
        rng = random.Random(21)
        for _ in range(300):
            n = rng.randint(1, 30)
            edges = tuple(random_tree_edges(rng, n))
            cat = is_caterpillar(Tree(n, edges))
            ext = is_extended_caterpillar(UndirectedGraph(n, edges))
            assert cat == caterpillar_oracle(n, edges, 1)
            assert ext == caterpillar_oracle(n, edges, 2)
            assert not cat or ext
