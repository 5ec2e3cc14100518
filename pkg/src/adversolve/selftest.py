"""Quick randomized cross-checks between independent code paths."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .allocation import equalize
from .board import board_gather, even_gather
from .core import Outcome, StateGraph, grundy_numbers, solve_cyclic, solve_outcomes, subtraction_game
from .pursuit import UndirectedGraph, cop_win
from .query.coins import coin_run
from .query.hotcold import HotColdOracle, hc_min_questions, hc_play
from .query.powersum import power_sum


class SelftestFailure(AssertionError):
    pass


def _check(ok: bool, what: str) -> None:
    if not ok:
        raise SelftestFailure(what)


def _random_dag(rng: random.Random, n: int) -> StateGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3]
    sinks = set(range(n)) - {u for u, _ in edges}
    return StateGraph.build(n, edges, {s: Outcome.DEFEAT for s in sinks})


def _ends_brute(values) -> Fraction:
    @lru_cache(maxsize=None)
    def best(i: int, j: int) -> Fraction:
        if i > j:
            return Fraction(0)
        return max(values[i] - best(i + 1, j), values[j] - best(i, j - 1))

    return (sum(values) + best(0, len(values) - 1)) / 2


def run_selftest(seed: int = 0, trace: list | None = None) -> int:
    rng = random.Random(seed)
    checks = 0

    def done(name: str, count: int) -> None:
        nonlocal checks
        checks += count
        if trace is not None:
            trace.append(f"check={name} cases={count}")

    for _ in range(30):
        g = _random_dag(rng, rng.randint(1, 9))
        _check(solve_outcomes(g) == solve_cyclic(g), "acyclic and cyclic solvers disagree")
    done("outcomes", 30)

    for pile in range(12):
        for k in range(1, 5):
            _check(grundy_numbers(subtraction_game(pile, k))[0] == pile % (k + 1), "subtraction grundy")
    done("grundy", 48)

    count = 0
    for n in range(1, 40):
        for k in range(1, 5):
            for target in ("even", "odd"):
                _check(even_gather(n, k, target, "dp") == even_gather(n, k, target, "fast"), "parity gathering")
                count += 1
    done("gather-even", count)

    for _ in range(20):
        values = [Fraction(rng.randint(0, 9)) for _ in range(rng.randint(1, 8))]
        _check(board_gather(values).smax == _ends_brute(values), "end gathering")
    done("gather-board", 20)

    count = 0
    for n in range(1, 10):
        q, table = hc_min_questions(n)
        for s in range(1, n + 1):
            found, asked = hc_play(table, HotColdOracle(s))
            _check(found == s and asked <= q, "hotter/colder playout")
            count += 1
    done("hotter-colder", count)

    count = 0
    for idx in range(1, 13):
        for kind in "LH":
            coin, got, asked = coin_run(12, (idx, kind))
            _check((coin, got) == (idx, "lighter" if kind == "L" else "heavier") and asked <= 3, "coin search")
            count += 1
    done("coins", count)

    for _ in range(20):
        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        n = rng.randint(0, 30)
        exact = power_sum(a + b, a * b, n)
        _check(exact == a**n + b**n, "power sum")
        _check(abs(power_sum(a + b, a * b, n, "fast") - exact) <= 1e-9 * max(1, abs(exact)), "fast power sum")
    done("powersum", 20)

    for _ in range(20):
        amounts = [rng.randint(0, 9) for _ in range(rng.randint(1, 7))]
        level = Fraction(sum(amounts), len(amounts))
        bins = [Fraction(x) for x in amounts]
        for src, dst, x in equalize(amounts):
            bins[src - 1] -= x
            bins[dst - 1] += x
        _check(all(b == level for b in bins), "equalisation")
    done("equalize", 20)

    for _ in range(30):
        n = rng.randint(1, 8)
        edges = tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.4)
        g = UndirectedGraph(n, edges)
        _check(cop_win(g, "naive") == cop_win(g, "fast"), "cop-win modes")
    done("copwin", 30)
    return checks
