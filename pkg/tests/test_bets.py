from fractions import Fraction
from functools import lru_cache
from math import comb

import pytest

from adversolve.query.bets import BLACK, RED, bet_pmax


def test_examples():
    assert bet_pmax(0, 3).value == 8
    t = bet_pmax(1, 1)
    assert t.value == 2 and t.policy[1, 1][1] == 0
    t = bet_pmax(2, 1)
    assert t.value == Fraction(8, 3) and t.policy[2, 1] == (BLACK, Fraction(1, 3))


def test_symmetry_and_edges():
    t = bet_pmax(20, 20)
    for i in range(21):
        assert t.pmax[0, i] == t.pmax[i, 0] == 2**i
        for j in range(21):
            if i + j <= 40:
                assert t.pmax[i, j] == t.pmax[j, i]


def test_closed_form_cross_check():
    t = bet_pmax(20, 20)
    for i in range(21):
        for j in range(21 - i):
            got = float(t.pmax[i, j] * comb(i + j, i))
            assert abs(got - 2 ** (i + j)) <= 1e-9 * 2 ** (i + j)


def test_nonincreasing_toward_balance():
    t = bet_pmax(12, 12)
    for total in range(13):
        vals = [t.pmax[i, total - i] for i in range(total // 2 + 1)]
        assert vals == sorted(vals, reverse=True)


def test_float_mode_close():
    exact, approx = bet_pmax(8, 6), bet_pmax(8, 6, exact=False)
    assert abs(approx.value - float(exact.value)) < 1e-9


def worst_final(t, i, j):
    """Adversary picks the draw order against the fixed policy."""

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == j == 0:
            return Fraction(1)
        color, p = t.policy[i, j]
        results = []
        if i:
            results.append((1 + p if color == BLACK else 1 - p) * go(i - 1, j))
        if j:
            results.append((1 + p if color == RED else 1 - p) * go(i, j - 1))
        return min(results)

    return go(i, j)


@pytest.mark.parametrize("blacks,reds", [(0, 0), (1, 1), (2, 1), (3, 5), (7, 4), (6, 6)])
def test_policy_guarantee(blacks, reds):
    t = bet_pmax(blacks, reds)
    assert worst_final(t, blacks, reds) >= t.value - Fraction(1, 10**9)


def test_no_grid_policy_beats_table():
    # a bettor restricted to p on a 1/60 grid cannot guarantee more than pmax
    grid = [Fraction(k, 60) for k in range(61)]

    @lru_cache(maxsize=None)
    def best(i, j):
        if i == 0 or j == 0:
            return Fraction(2) ** (i + j)
        out = Fraction(0)
        for p in grid:
            out = max(out, min((1 + p) * best(i - 1, j), (1 - p) * best(i, j - 1)))
            out = max(out, min((1 - p) * best(i - 1, j), (1 + p) * best(i, j - 1)))
        return out

    t = bet_pmax(3, 3)
    for i in range(4):
        for j in range(4):
            assert best(i, j) <= t.pmax[i, j]
    assert best(2, 1) == Fraction(8, 3)


def test_rejects_negative():
    with pytest.raises(ValueError):
        bet_pmax(-1, 2)
