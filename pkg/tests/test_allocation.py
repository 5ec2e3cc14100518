import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from scipy.optimize import linprog

from adversolve.allocation import (
    LineInstance,
    TreeReallocInstance,
    equalize,
    line_feasible,
    line_maximin,
    tree_realloc_cost,
)
from adversolve.board import Tree
from adversolve.errors import InfeasibleError

from oracles import random_tree_edges


def replay(r, moves):
    r = [Fraction(x) for x in r]
    for src, dst, x in moves:
        assert x > 0
        r[src - 1] -= x
        r[dst - 1] += x
    return r


class TestEqualize:
    def test_examples(self):
        assert equalize([2, 2]) == []
        assert equalize([1, 2, 3]) == [(3, 1, 1)]
        assert replay([0, 0, 6], equalize([0, 0, 6])) == [2, 2, 2]
        assert len(equalize([0, 0, 6])) == 2

    def test_fuzz(self):
        rng = random.Random(2)
        for _ in range(1000):
            n = rng.randint(1, 100)
            r = [Fraction(rng.randint(0, 50), rng.choice([1, 1, 2, 3])) for _ in range(n)]
            moves = equalize(r)
            after = replay(r, moves)
            assert sum(after) == sum(r)
            assert len(set(after)) == 1
            assert len(moves) <= n - 1


def transport_oracle(r, q, x):
    """Feasibility by LP over every choice of direction per segment (flat crossing fee)."""
    n = len(r)
    for dirs in itertools.product((0, 1, -1), repeat=n - 1):
        # variable f_i >= q_i leaves the sending side, f_i - q_i arrives
        a_ub, b_ub = [], []
        for c in range(n):
            row = [0.0] * (n - 1)
            for i, d in enumerate(dirs):
                if d == 0:
                    continue
                sender, receiver = (i, i + 1) if d == 1 else (i + 1, i)
                if c == sender:
                    row[i] += 1
                if c == receiver:
                    row[i] -= 1
            # r_c - out + (in - fees) >= x
            fees = sum(float(q[i]) for i, d in enumerate(dirs) if d and (i + 1 if d == 1 else i) == c)
            a_ub.append(row)
            b_ub.append(float(r[c]) - float(x) - fees)
        bounds = [(float(q[i]), None) if d else (0, 0) for i, d in enumerate(dirs)]
        if n == 1:
            if r[0] >= x:
                return True
            continue
        res = linprog([0.0] * (n - 1), A_ub=a_ub, b_ub=[b + 1e-9 for b in b_ub], bounds=bounds, method="highs")
        if res.status == 0:
            return True
    return False


class TestLine:
    def test_feasible_examples(self):
        inst = LineInstance([5, 1], [1])
        assert line_feasible(inst, 2)
        assert not line_feasible(inst, 3)
        assert line_feasible(LineInstance([4, 4], [5]), 4)

    def test_maximin_examples(self):
        inst = LineInstance([10, 0, 0], [1, 1])
        assert line_maximin(inst) == 2
        x = line_maximin(inst, integer=False, eps=Fraction(1, 10**6))
        assert abs(x - Fraction(8, 3)) <= Fraction(1, 10**6)
        assert line_maximin(LineInstance([7, 7, 7, 7], [3, 0, 9])) == 7

    def test_rational_contract(self):
        rng = random.Random(5)
        eps = Fraction(1, 1000)
        for _ in range(100):
            n = rng.randint(1, 6)
            inst = LineInstance([rng.randint(0, 20) for _ in range(n)], [rng.randint(0, 4) for _ in range(n - 1)])
            x = line_maximin(inst, integer=False, eps=eps)
            assert line_feasible(inst, x) and not line_feasible(inst, x + eps)

    def test_monotone_in_level(self):
        rng = random.Random(6)
        for _ in range(300):
            n = rng.randint(1, 8)
            inst = LineInstance([rng.randint(0, 20) for _ in range(n)], [rng.randint(0, 5) for _ in range(n - 1)])
            verdicts = [line_feasible(inst, Fraction(k, 4)) for k in range(0, 90)]
            assert verdicts == sorted(verdicts, reverse=True)

    def test_integer_mode_matches_scan(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.randint(1, 8)
            inst = LineInstance([rng.randint(0, 20) for _ in range(n)], [rng.randint(0, 5) for _ in range(n - 1)])
            best = max(x for x in range(0, int(max(inst.r)) + 1) if line_feasible(inst, x))
            assert line_maximin(inst) == best

    def test_pass_matches_transport_plans(self):
        rng = random.Random(8)
        for _ in range(60):
            n = rng.randint(1, 4)
            r = [rng.randint(0, 12) for _ in range(n)]
            q = [rng.randint(0, 3) for _ in range(n - 1)]
            inst = LineInstance(r, q)
            for x in range(0, 13):
                assert line_feasible(inst, x) == transport_oracle(r, q, x), (r, q, x)

    def test_requirement_functions(self):
        inst = LineInstance([10, 0], [0], [lambda x: x, lambda x: 2 * x])
        assert line_maximin(inst, integer=False, eps=Fraction(1, 100)) >= Fraction(10, 3) - Fraction(1, 100)
        bad = LineInstance([0], [], [lambda x: x + 1])
        with pytest.raises(InfeasibleError):
            line_maximin(bad)


def flow_oracle(n, edges, b, q, cost):
    g = nx.DiGraph()
    for v in range(1, n + 1):
        g.add_node(v, demand=q[v - 1] - b[v - 1])
    for u, v in edges:
        g.add_edge(u, v, weight=cost[u, v])
        g.add_edge(v, u, weight=cost[v, u])
    return nx.min_cost_flow_cost(g)


class TestTree:
    def test_examples(self):
        t = Tree(2, ((1, 2),))
        assert tree_realloc_cost(TreeReallocInstance(t, [1, 1], [1, 1], {(1, 2): 1, (2, 1): 1}))[0] == 0
        c, moves = tree_realloc_cost(TreeReallocInstance(t, [0, 1], [1, 0], {(1, 2): 7, (2, 1): 3}))
        assert c == 3 and moves == [(2, 1, 1)]
        p = Tree(3, ((1, 2), (2, 3)))
        unit = {(1, 2): 1, (2, 1): 1, (2, 3): 1, (3, 2): 1}
        c, moves = tree_realloc_cost(TreeReallocInstance(p, [2, 0, 0], [0, 1, 1], unit))
        assert c == 3 and moves == [(1, 2, 2), (2, 3, 1)]

    def test_unbalanced(self):
        with pytest.raises(InfeasibleError):
            TreeReallocInstance(Tree(2, ((1, 2),)), [1, 0], [0, 0], {(1, 2): 1, (2, 1): 1})

    def test_matches_min_cost_flow(self):
        rng = random.Random(9)
        for _ in range(300):
            n = rng.randint(1, 6)
            edges = tuple(random_tree_edges(rng, n))
            total = rng.randint(0, 6)
            b, q = [0] * n, [0] * n
            for _ in range(total):
                b[rng.randrange(n)] += 1
                q[rng.randrange(n)] += 1
            cost = {}
            for u, v in edges:
                cost[u, v] = rng.randint(0, 9)
                cost[v, u] = rng.randint(0, 9)
            inst = TreeReallocInstance(Tree(n, edges), b, q, cost)
            expected = flow_oracle(n, edges, b, q, cost)
            for root in range(1, n + 1):
                assert tree_realloc_cost(inst, root)[0] == expected
