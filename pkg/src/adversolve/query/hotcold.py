"""Hotter/Colder: find a secret in [1, N] from relative-distance answers.

Asks are stored relative to the surviving interval, which is always
renumbered as ``[1, L]``.  A state is ``(L, offsets)`` where ``offsets``
holds the last ``delay`` asks, oldest first; the next ask is compared with
the oldest one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import InconsistentOracleError

HOTTER, COLDER = "hotter", "colder"
MODES = ("valid", "any")


def closer_part(u: int, v: int) -> tuple[float, float]:
    """Points at least as close to ``u`` as to ``v`` (half-line, ends inclusive)."""
    if u < v:
        return -math.inf, (u + v) // 2
    return -((-(u + v)) // 2), math.inf


def _clip(part, lo: int, hi: int) -> tuple[int, int] | None:
    a = max(lo, part[0])
    b = min(hi, part[1])
    if a > b:
        return None
    return int(a), int(b)


def branches(lo: int, hi: int, prev: int, y: int) -> dict[str, tuple[int, int] | None]:
    """Surviving interval after each answer when ``y`` is compared with ``prev``."""
    if y == prev:
        # every point is equidistant, the answer carries no information
        return {HOTTER: (lo, hi), COLDER: (lo, hi)}
    return {
        HOTTER: _clip(closer_part(y, prev), lo, hi),
        COLDER: _clip(closer_part(prev, y), lo, hi),
    }


def _distance(z: int, length: int) -> int:
    if 1 <= z <= length:
        return 0
    return 1 - z if z < 1 else z - length


class HotterColderSolver:
    """Memoised worst-case question counts for one (delay, mode) pair.

    Values do not depend on N, so one solver serves tables of every size.
    """

    def __init__(self, delay: int = 1, mode: str = "valid"):
        if delay < 1:
            raise ValueError("delay must be at least 1")
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.delay = delay
        self.mode = mode
        self._can: dict[tuple[int, tuple[int, ...], int], bool] = {}
        self._value: dict[tuple[int, tuple[int, ...]], int] = {}

    def candidates(self, length: int, offsets: tuple[int, ...]) -> range | list[int]:
        if self.mode == "valid":
            return range(1, length + 1)
        x = offsets[0]
        d = _distance(x, length)
        # midpoint of x and y inside [1, L], or y strictly nearer than x
        lo, hi = 2 - x, 2 * length - x
        if d > 0:
            lo, hi = min(lo, 2 - d), max(hi, length + d - 1)
        return range(lo, hi + 1) if d == 0 else [y for y in range(lo, hi + 1) if 2 - x <= y <= 2 * length - x or _distance(y, length) < d]

    def children(self, length: int, offsets: tuple[int, ...], y: int):
        seen = set()
        for part in branches(1, length, offsets[0], y).values():
            if part is None or part in seen:
                continue
            seen.add(part)
            c, d = part
            shift = c - 1
            yield d - c + 1, tuple(o - shift for o in offsets[1:]) + (y - shift,)

    def can_finish(self, length: int, offsets: tuple[int, ...], budget: int) -> bool:
        if length == 1:
            return True
        if budget == 0:
            return False
        key = (length, offsets, budget)
        hit = self._can.get(key)
        if hit is not None:
            return hit
        ok = any(
            all(self.can_finish(l2, o2, budget - 1) for l2, o2 in self.children(length, offsets, y))
            for y in self.candidates(length, offsets)
        )
        self._can[key] = ok
        return ok

    def value(self, length: int, offsets: tuple[int, ...]) -> int:
        """Fewest answered questions that always suffice from this state."""
        key = (length, offsets)
        if key not in self._value:
            b = 0
            while not self.can_finish(length, offsets, b):
                b += 1
            self._value[key] = b
        return self._value[key]

    def best_ask(self, length: int, offsets: tuple[int, ...]) -> int:
        """Lowest relative ask that keeps the worst case at ``value``."""
        target = self.value(length, offsets)
        for y in self.candidates(length, offsets):
            if all(self.can_finish(l2, o2, target - 1) for l2, o2 in self.children(length, offsets, y)):
                return y
        raise AssertionError("no ask realises the computed value")


@dataclass
class HotterColderTable:
    n: int
    delay: int
    mode: str
    count: int
    first_asks: tuple[int, ...]
    solver: HotterColderSolver = field(repr=False)

    def value(self, length: int, offsets: tuple[int, ...]) -> int:
        return self.solver.value(length, offsets)

    def best_ask(self, length: int, offsets: tuple[int, ...]) -> int:
        return self.solver.best_ask(length, offsets)


def _opening_asks(n: int, delay: int):
    # the opening asks go unanswered; only in-range values make sense there
    if delay == 1:
        return ((x,) for x in range(1, n + 1))
    import itertools

    return itertools.product(range(1, n + 1), repeat=delay)


def hc_min_questions(n: int, delay: int = 1, mode: str = "valid", solver: HotterColderSolver | None = None):
    """Minimum worst-case number of answered questions to pin down S in [1, n].

    The ``delay`` opening asks that receive no answer are not counted.
    Returns ``(count, table)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if solver is None:
        solver = HotterColderSolver(delay, mode)
    elif (solver.delay, solver.mode) != (delay, mode):
        raise ValueError("solver built for a different delay/mode")
    best = None
    best_first = None
    for first in _opening_asks(n, delay):
        v = solver.value(n, tuple(first))
        if best is None or v < best:
            best, best_first = v, tuple(first)
    table = HotterColderTable(n, delay, mode, best, best_first, solver)
    return best, table


class HotColdOracle:
    """Answers for a hidden ``secret``; ``tie`` picks the reply when both
    asks are equally far (a fixed answer or a callable of the history)."""

    def __init__(self, secret: int, delay: int = 1, tie=HOTTER):
        self.secret = secret
        self.delay = delay
        self.tie = tie
        self.history: list[int] = []

    def ask(self, y: int) -> str | None:
        self.history.append(y)
        if len(self.history) <= self.delay:
            return None
        x = self.history[-1 - self.delay]
        dy, dx = abs(self.secret - y), abs(self.secret - x)
        if dy < dx:
            return HOTTER
        if dy > dx:
            return COLDER
        return self.tie(self.history) if callable(self.tie) else self.tie


def hc_play(table: HotterColderTable, oracle, trace: list | None = None) -> tuple[int, int]:
    """Run the table's policy against ``oracle``; returns (secret, answered questions)."""
    lo, hi = 1, table.n
    asks = list(table.first_asks)
    for y in asks:
        if oracle.ask(y) is not None:
            raise InconsistentOracleError("oracle answered an opening ask")
        if trace is not None:
            trace.append((y, None))
    questions = 0
    while lo < hi:
        offsets = tuple(a - lo + 1 for a in asks[-table.delay :])
        y = table.best_ask(hi - lo + 1, offsets) + lo - 1
        answer = oracle.ask(y)
        if answer not in (HOTTER, COLDER):
            raise InconsistentOracleError(f"unexpected answer {answer!r}")
        questions += 1
        if trace is not None:
            trace.append((y, answer))
        part = branches(lo, hi, asks[-table.delay], y)[answer]
        if part is None:
            raise InconsistentOracleError("answers are inconsistent: no candidate survives")
        lo, hi = part
        asks.append(y)
    return lo, questions
