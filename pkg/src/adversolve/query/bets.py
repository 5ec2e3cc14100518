"""Worst-case betting on draws from a box of black and red objects."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

BLACK, RED = "black", "red"


@dataclass
class BetTable:
    blacks: int
    reds: int
    pmax: dict[tuple[int, int], Fraction | float] = field(default_factory=dict)
    # (color, fraction of the current sum); color is None once the box is empty
    policy: dict[tuple[int, int], tuple[str | None, Fraction | float]] = field(default_factory=dict)

    @property
    def value(self):
        return self.pmax[self.blacks, self.reds]


def bet_pmax(blacks: int, reds: int, exact: bool = True) -> BetTable:
    """Largest factor a bettor can guarantee, with the bet that achieves it."""
    if blacks < 0 or reds < 0:
        raise ValueError("counts must be nonnegative")
    one = Fraction(1) if exact else 1.0
    t = BetTable(blacks, reds)
    pm, pol = t.pmax, t.policy
    for i in range(blacks + 1):
        for j in range(reds + 1):
            if i == 0 or j == 0:
                pm[i, j] = one * 2 ** (i + j)
                pol[i, j] = (None if i == j == 0 else BLACK if j == 0 else RED, one if i + j else 0 * one)
                continue
            right, wrong = pm[i - 1, j], pm[i, j - 1]
            p = (wrong - right) / (right + wrong)
            if p >= 0:
                pm[i, j] = (1 + p) * right
                pol[i, j] = (BLACK, p)
            else:
                pm[i, j] = (1 - p) * wrong
                pol[i, j] = (RED, -p)
    return t
