"""a^N + b^N from P = a+b and Q = ab."""

from __future__ import annotations

import math
from collections import Counter


def _linear(p, q, n: int):
    prev, cur = 2, p
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, cur * p - prev * q
    return cur


def _fast(p, q, n: int, counter: Counter | None):
    disc = p * p - 4 * q
    if disc < 0:
        raise ValueError("complex roots unsupported")
    delta = math.sqrt(disc)
    c1, c2 = (p + delta) / 2, (p - delta) / 2
    d1 = d2 = 1.0
    mults = 0
    for bit in bin(n)[2:] if n else "":
        d1, d2 = d1 * d1, d2 * d2
        mults += 2
        if bit == "1":
            d1, d2 = d1 * c1, d2 * c2
            mults += 2
    if counter is not None:
        counter["mults"] += mults
    # the weights on c1^N and c2^N are both exactly 1
    return d1 + d2


def power_sum(p, q, n: int, mode: str = "linear", counter: Counter | None = None):
    """Exact in ``linear`` mode (ints or Fractions in, same out); float in ``fast`` mode."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    if mode == "linear":
        return _linear(p, q, n)
    if mode == "fast":
        return _fast(p, q, n, counter)
    raise ValueError(f"unknown mode {mode!r}")


def power_sum_batch(triples, mode: str = "linear", counter: Counter | None = None) -> list:
    return [power_sum(p, q, n, mode, counter) for p, q, n in triples]
