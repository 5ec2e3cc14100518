"""Equalising containers, maximin along a line with transport losses, tree reallocation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .board import Tree
from .errors import InfeasibleError


def equalize(r: Sequence) -> list[tuple[int, int, Fraction]]:
    """Moves ``(from, to, amount)`` (1-based containers) that level every container at the mean."""
    amounts = [Fraction(x) for x in r]
    if any(x < 0 for x in amounts):
        raise ValueError("amounts must be nonnegative")
    if not amounts:
        return []
    target = sum(amounts) / len(amounts)
    order = sorted(range(len(amounts)), key=lambda i: amounts[i])
    left, right = 0, len(order) - 1
    moves = []
    while left < right:
        lo, hi = order[left], order[right]
        if amounts[lo] == target:
            left += 1
        elif amounts[hi] == target:
            right -= 1
        else:
            x = min(target - amounts[lo], amounts[hi] - target)
            amounts[hi] -= x
            amounts[lo] += x
            moves.append((hi + 1, lo + 1, x))
    return moves


@dataclass
class LineInstance:
    r: list[Fraction]
    q: list[Fraction]
    # nondecreasing requirement per container; plain X when omitted
    requirements: list[Callable] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.r = [Fraction(x) for x in self.r]
        self.q = [Fraction(x) for x in self.q]
        if not self.r:
            raise ValueError("need at least one container")
        if len(self.q) != len(self.r) - 1:
            raise ValueError("need one segment cost between each pair of neighbours")
        if any(x < 0 for x in self.q):
            raise ValueError("segment costs must be nonnegative")
        if self.requirements is not None and len(self.requirements) != len(self.r):
            raise ValueError("need one requirement function per container")

    def need(self, i: int, x):
        return x if self.requirements is None else self.requirements[i](x)


def line_feasible(instance: LineInstance, x) -> bool:
    """Can every container end with at least its requirement at level ``x``?

    ``E`` carries the running surplus (or, when negative, the amount still owed
    from the right); crossing a segment costs a flat ``q(i)``.
    """
    e = Fraction(0)
    n = len(instance.r)
    for i in range(n):
        e += instance.r[i] - instance.need(i, x)
        if i < n - 1:
            e = max(e - instance.q[i], Fraction(0)) if e >= 0 else e - instance.q[i]
    return e >= 0


def line_maximin(instance: LineInstance, integer: bool = True, eps=Fraction(1, 10**6), bounds=None):
    """Largest feasible level by binary search.

    Integer mode returns the largest feasible integer; otherwise the result
    ``X`` is feasible and ``X + eps`` is not.  ``bounds`` defaults to
    ``(0, max r)``, which brackets the answer for plain levels.
    """
    lo, hi = bounds if bounds is not None else (Fraction(0), max(instance.r))
    lo, hi = Fraction(lo), Fraction(hi)
    if not line_feasible(instance, lo):
        raise InfeasibleError(f"no feasible level at the lower bound {lo}")
    if integer:
        a, b = -((-lo.numerator) // lo.denominator), hi.numerator // hi.denominator
        if a > b or not line_feasible(instance, a):
            raise InfeasibleError("no feasible integer level in range")
        while a < b:
            mid = (a + b + 1) // 2
            if line_feasible(instance, mid):
                a = mid
            else:
                b = mid - 1
        return a
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if line_feasible(instance, hi):
        return hi
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if line_feasible(instance, mid):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass
class TreeReallocInstance:
    tree: Tree
    b: list[int]
    q: list[int]
    # unit cost of moving one unit along (u, v)
    cost: dict[tuple[int, int], Fraction]

    def __post_init__(self):
        n = self.tree.n
        if len(self.b) != n or len(self.q) != n:
            raise ValueError("need b and q for every vertex")
        if any(x < 0 for x in self.b) or any(x < 0 for x in self.q):
            raise ValueError("amounts must be nonnegative")
        if sum(self.b) != sum(self.q):
            raise InfeasibleError(f"supply {sum(self.b)} differs from demand {sum(self.q)}")
        for u, v in self.tree.edges:
            for key in ((u, v), (v, u)):
                if key not in self.cost:
                    raise ValueError(f"missing cost for {key}")
                if self.cost[key] < 0:
                    raise ValueError("costs must be nonnegative")


def tree_realloc_cost(instance: TreeReallocInstance, root: int = 1):
    """Minimum cost and the moves ``(from, to, amount)`` for every tree edge."""
    parent, order = instance.tree.rooted(root)
    surplus = [0] * (instance.tree.n + 1)
    flow = {}
    total = Fraction(0)
    for v in reversed(order):
        surplus[v] += instance.b[v - 1] - instance.q[v - 1]
        p = parent[v]
        if p > 0:
            s = surplus[v]
            surplus[p] += s
            if s >= 0:
                flow[frozenset((p, v))] = (v, p, s)
                total += s * instance.cost[v, p]
            else:
                flow[frozenset((p, v))] = (p, v, -s)
                total += -s * instance.cost[p, v]
    assert surplus[root] == 0
    moves = []
    for u, v in instance.tree.edges:
        src, dst, amount = flow[frozenset((u, v))]
        moves.append((u, v, 0) if amount == 0 else (src, dst, amount))
    return total, moves
