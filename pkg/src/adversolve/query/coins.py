"""Counterfeit coin search by uncertainty balancing.

Each coin carries a set of types it may still have.  Only four sets occur:
type 1 {N,L,H}, type 2 {N,L}, type 3 {N,H}, type 4 {N}.  A state is the
count of coins of each type.

Pan layouts:

* phase 1 (types 1 and 4 only): left holds ``x`` type-1 and ``k-x`` type-4
  coins, right holds ``k`` type-1 coins.
* phase 2 (no type 1): left holds ``x`` type-2, ``y`` type-3 and
  ``k-x-y`` type-4 coins, right holds ``z`` type-2 and ``k-z`` type-3 coins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import InconsistentOracleError, InfeasibleError

BALANCED, LEFT_LIGHT, LEFT_HEAVY = "balanced", "left-light", "left-heavy"
OUTCOMES = (BALANCED, LEFT_LIGHT, LEFT_HEAVY)


@dataclass(frozen=True)
class CoinState:
    num: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.num) != 4 or any(c < 0 for c in self.num):
            raise ValueError("coin state needs four nonnegative counts")

    @classmethod
    def initial(cls, n: int) -> "CoinState":
        return cls((n, 0, 0, 0))

    @property
    def n(self) -> int:
        return sum(self.num)

    @property
    def phase(self) -> int:
        n1, n2, n3, _ = self.num
        if n1 and (n2 or n3):
            raise ValueError(f"mixed state {self.num} cannot arise under this policy")
        return 1 if n1 else 2


@dataclass(frozen=True)
class CoinQuestion:
    k: int
    x: int
    y: int | None = None
    z: int | None = None

    @property
    def phase(self) -> int:
        return 1 if self.y is None else 2

    def pans(self) -> tuple[tuple[int, int, int, int], tuple[int, int, int, int]]:
        """Coins of each type on the (left, right) pans."""
        k, x = self.k, self.x
        if self.phase == 1:
            return (x, 0, 0, k - x), (k, 0, 0, 0)
        y, z = self.y, self.z
        return (0, x, y, k - x - y), (0, z, k - z, 0)


def coin_uncertainty(state: CoinState) -> int:
    n1, n2, n3, _ = state.num
    return 2 * n1 + n2 + n3 - 1


def _legal(state: CoinState, q: CoinQuestion) -> bool:
    if q.k < 1 or 2 * q.k > state.n:
        return False
    left, right = q.pans()
    if any(c < 0 for c in left + right):
        return False
    return all(left[i] + right[i] <= state.num[i] for i in range(4))


def coin_apply_answer(state: CoinState, question: CoinQuestion, outcome: str) -> CoinState:
    if outcome not in OUTCOMES:
        raise ValueError(f"unknown outcome {outcome!r}")
    if not _legal(state, question):
        raise ValueError(f"question {question} is not legal in state {state.num}")
    (l1, l2, l3, _), (r1, r2, r3, _) = question.pans()
    n1, n2, n3, _ = state.num
    if outcome == BALANCED:
        new = (n1 - l1 - r1, n2 - l2 - r2, n3 - l3 - r3)
    elif outcome == LEFT_LIGHT:
        # left coins cannot be heavy, right coins cannot be light, the rest are normal
        new = (0, l1 + l2, r1 + r3)
    else:
        new = (0, r1 + r2, l1 + l3)
    out = CoinState(new + (state.n - sum(new),))
    if coin_uncertainty(out) < 0:
        raise InconsistentOracleError(f"outcome {outcome} leaves no suspect coin")
    return out


def decrements(state: CoinState, question: CoinQuestion) -> dict[str, int]:
    """Uncertainty drop for each outcome (an impossible outcome drops by U+1)."""
    u = coin_uncertainty(state)
    (l1, l2, l3, _), (r1, r2, r3, _) = question.pans()
    return {
        BALANCED: 2 * (l1 + r1) + l2 + r2 + l3 + r3,
        LEFT_LIGHT: u + 1 - (l1 + l2 + r1 + r3),
        LEFT_HEAVY: u + 1 - (r1 + r2 + l1 + l3),
    }


def worst_decrement(state: CoinState, question: CoinQuestion) -> int:
    return min(decrements(state, question).values())


def _phase1(state: CoinState) -> CoinQuestion:
    n1, _, _, n4 = state.num
    target = 2 * n1 / 3
    best = None
    for s in range(max(1, math.floor(target) - 2), min(n1, math.ceil(target) + 2) + 1):
        k = (s + 1) // 2
        x = s - k
        q = CoinQuestion(k, x)
        if k - x > n4 or not _legal(state, q):
            continue
        key = (worst_decrement(state, q), -s)
        if best is None or key > best[0]:
            best = (key, q)
    if best is None:
        raise InfeasibleError(f"no useful question in state {state.num}")
    return best[1]


def _clip(poly: list[tuple[Fraction, Fraction]], a: int, b: int, c: int):
    """Keep the part of a convex polygon with a*y + b*z <= c."""
    out = []
    m = len(poly)
    for i in range(m):
        p, q = poly[i], poly[(i + 1) % m]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _half_planes(state: CoinState, k: int, x: int, w: int):
    """Constraints on (y, z) as a*y + b*z <= c for fixed k, x and target W."""
    _, n2, n3, n4 = state.num
    return [
        (-1, 0, 0),  # y >= 0
        (0, -1, 0),  # z >= 0
        (-1, 0, x + k - w),  # x + y + k >= W
        (0, -1, n2 + n3 - x - k - w),  # n2 + n3 - x + z - k >= W
        (1, 1, n2 + n3 - w),  # n2 + n3 - z - y >= W
        (0, 1, n2 - x),  # x + z <= n2
        (1, -1, n3 - k),  # y + k - z <= n3
        (1, 0, k - x),  # x + y <= k
        (0, 1, k),  # z <= k
        (-1, 0, n4 - k + x),  # type-4 coins on the left must exist
    ]


def _polygon(state: CoinState, k: int, x: int, w: int):
    big = Fraction(state.n + 1)
    poly = [(-big, -big), (big, -big), (big, big), (-big, big)]
    for a, b, c in _half_planes(state, k, x, w):
        poly = _clip(poly, a, b, c)
        if not poly:
            return []
    return poly


def _has_integer_vertex(poly) -> bool:
    return any(p[0].denominator == 1 and p[1].denominator == 1 for p in poly)


def _feasible_w(state: CoinState, w: int) -> tuple[int, int] | None:
    n = state.n
    for k in range(1, n // 2 + 1):
        for x in range(0, min(k, state.num[1]) + 1):
            poly = _polygon(state, k, x, w)
            if poly and _has_integer_vertex(poly):
                return k, x
    return None


def _smallest_yz(state: CoinState, k: int, x: int, w: int) -> tuple[int, int] | None:
    for y in range(0, k - x + 1):
        zs = [z for z in range(0, k + 1) if all(a * y + b * z <= c for a, b, c in _half_planes(state, k, x, w))]
        if zs:
            return y, zs[0]
    return None


def _phase2(state: CoinState) -> CoinQuestion:
    lo, hi = 0, coin_uncertainty(state)
    # largest W such that some question drops U by at least W in every outcome
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if _feasible_w(state, mid) is not None:
            lo = mid
        else:
            hi = mid - 1
    if lo < 1:
        raise InfeasibleError(f"no useful question in state {state.num}")
    for k in range(1, state.n // 2 + 1):
        for x in range(0, min(k, state.num[1]) + 1):
            yz = _smallest_yz(state, k, x, lo)
            if yz is not None:
                return CoinQuestion(k, x, *yz)
    raise AssertionError("feasible W without an integer question")


def coin_next_question(state: CoinState) -> CoinQuestion:
    if coin_uncertainty(state) <= 0:
        raise ValueError("state is already solved")
    if state.n < 3:
        raise InfeasibleError("need at least three coins")
    return _phase1(state) if state.phase == 1 else _phase2(state)


def _weigh(types: list[int], q: CoinQuestion, fake: int, heavy: bool) -> tuple[list[int], list[int], str]:
    """Pick concrete coins for the pans (lowest indices first) and weigh them."""
    want_left, want_right = q.pans()
    left: list[int] = []
    right: list[int] = []
    taken = [0, 0, 0, 0]
    for i, t in enumerate(types):
        slot = t - 1
        if taken[slot] < want_left[slot]:
            left.append(i)
        elif taken[slot] < want_left[slot] + want_right[slot]:
            right.append(i)
        else:
            continue
        taken[slot] += 1
    if fake < 0:
        return left, right, ""
    if fake in left:
        return left, right, LEFT_HEAVY if heavy else LEFT_LIGHT
    if fake in right:
        return left, right, LEFT_LIGHT if heavy else LEFT_HEAVY
    return left, right, BALANCED


_REDUCE = {
    # (type, where, outcome) -> new type; where is "L", "R" or "-"
    LEFT_LIGHT: {"L": {1: 2, 2: 2, 3: 4, 4: 4}, "R": {1: 3, 2: 4, 3: 3, 4: 4}},
    LEFT_HEAVY: {"L": {1: 3, 2: 4, 3: 3, 4: 4}, "R": {1: 2, 2: 2, 3: 4, 4: 4}},
}


def coin_run(n: int, adversary=None, trace: list | None = None) -> tuple[int, str, int]:
    """Find the counterfeit among coins 1..n.

    ``adversary`` is ``(index, "L"|"H")`` for a fixed counterfeit or ``None``
    for an adaptive adversary that keeps the uncertainty as high as it can.
    Returns ``(index, "lighter"|"heavier", questions)``.
    """
    if n < 3:
        raise InfeasibleError("need at least three coins")
    if adversary is not None:
        idx, kind = adversary
        if not 1 <= idx <= n or kind not in ("L", "H"):
            raise ValueError(f"bad assignment {adversary!r}")
        fake, heavy = idx - 1, kind == "H"
    else:
        fake, heavy = -1, False
    state = CoinState.initial(n)
    types = [1] * n
    questions = 0
    while coin_uncertainty(state) > 0:
        q = coin_next_question(state)
        left, right, outcome = _weigh(types, q, fake, heavy)
        if adversary is None:
            options = []
            for o in OUTCOMES:
                try:
                    nxt = coin_apply_answer(state, q, o)
                except InconsistentOracleError:
                    continue
                options.append((-coin_uncertainty(nxt), OUTCOMES.index(o), o))
            outcome = min(options)[2]
        state = coin_apply_answer(state, q, outcome)
        on_left, on_right = set(left), set(right)
        for i, t in enumerate(types):
            where = "L" if i in on_left else "R" if i in on_right else "-"
            if outcome == BALANCED:
                types[i] = 4 if where != "-" else t
            else:
                types[i] = _REDUCE[outcome][where][t] if where != "-" else 4
        questions += 1
        if trace is not None:
            trace.append(([i + 1 for i in left], [i + 1 for i in right], outcome))
        assert tuple(types.count(t) for t in (1, 2, 3, 4)) == state.num
    (suspect,) = [i for i, t in enumerate(types) if t != 4]
    return suspect + 1, "lighter" if types[suspect] == 2 else "heavier", questions
