"""Recovering a hidden string from subsequence queries."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InconsistentOracleError

UNCERTAIN, EMPTY, CERTAIN = 1, 2, 3


def is_subsequence(needle, haystack) -> bool:
    it = iter(haystack)
    return all(any(c == h for h in it) for c in needle)


class SubsequenceOracle:
    """Answers ``ask(candidate)`` for a fixed secret and counts the questions."""

    def __init__(self, secret):
        self.secret = tuple(secret)
        self.questions = 0

    def ask(self, candidate) -> bool:
        self.questions += 1
        return is_subsequence(tuple(candidate), self.secret)


@dataclass
class Zone:
    kind: int
    symbol: int | None = None


@dataclass
class GuessTrace:
    questions: list[tuple[tuple[int, ...], bool]] = field(default_factory=list)
    rounds: list[tuple[int, int]] = field(default_factory=list)  # (cstart, asked)


def guess_secret_string(oracle, k: int, max_length: int | None = None, trace: GuessTrace | None = None):
    """Identify the secret over symbols 0..k-1 with at most (k+1)(L+1) asks.

    Returns ``(secret, questions)`` where ``secret`` is a tuple of ints.
    """
    if k < 1:
        raise ValueError("alphabet needs at least one symbol")
    zones = [Zone(UNCERTAIN)]
    refuted: list[tuple[int, ...]] = []
    asked = 0
    while True:
        idx = next((i for i, z in enumerate(zones) if z.kind == UNCERTAIN), None)
        if idx is None:
            break
        left = zones[idx - 1].symbol if idx > 0 else 0
        right = zones[idx + 1].symbol if idx + 1 < len(zones) else 0
        cstart = max(left, right)
        prefix = tuple(z.symbol for z in zones[:idx] if z.kind == CERTAIN)
        suffix = tuple(z.symbol for z in zones[idx + 1 :] if z.kind == CERTAIN)
        found = None
        in_round = 0
        for c in range(cstart, k):
            candidate = prefix + (c,) + suffix
            answer = bool(oracle.ask(candidate))
            asked += 1
            in_round += 1
            if trace is not None:
                trace.questions.append((candidate, answer))
            if answer:
                if any(is_subsequence(r, candidate) for r in refuted):
                    raise InconsistentOracleError(f"oracle accepted {candidate} after rejecting a subsequence of it")
                found = c
                break
            refuted.append(candidate)
        if trace is not None:
            trace.rounds.append((cstart, in_round))
        if found is None:
            zones[idx] = Zone(EMPTY)
        else:
            zones[idx : idx + 1] = [Zone(UNCERTAIN), Zone(CERTAIN, found), Zone(UNCERTAIN)]
            if max_length is not None and sum(z.kind == CERTAIN for z in zones) > max_length:
                raise InconsistentOracleError("secret grew past the declared maximum length")
    secret = tuple(z.symbol for z in zones if z.kind == CERTAIN)
    return secret, asked
