"""Generic solvers for explicit two-player game graphs.

States are integers ``0..n-1``.  Every state carries a mover tag: ``1`` or
``2`` for explicit-player graphs, or ``None`` for impartial graphs where the
players alternate and the mover index is dropped.  Outcomes are always stated
from the point of view of the player about to move.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from operator import xor

from .errors import GraphError, StateExplosionError

DEFAULT_STATE_CAP = 10**7


class Outcome(enum.Enum):
    VICTORY = "W"
    DRAW = "D"
    DEFEAT = "L"

    def flipped(self) -> Outcome:
        if self is Outcome.VICTORY:
            return Outcome.DEFEAT
        if self is Outcome.DEFEAT:
            return Outcome.VICTORY
        return Outcome.DRAW


_RANK = {Outcome.DEFEAT: 0, Outcome.DRAW: 1, Outcome.VICTORY: 2}


@dataclass(frozen=True)
class StateGraph:
    """Explicit game graph.

    ``labels`` optionally names each state (product graphs store component
    tuples there, time-expanded graphs store ``(state, t)`` pairs).
    """

    movers: tuple[int | None, ...]
    edges: tuple[tuple[int, int], ...]
    terminal: Mapping[int, Outcome] = field(default_factory=dict)
    labels: tuple | None = None

    def __post_init__(self):
        n = len(self.movers)
        kinds = {m is None for m in self.movers}
        if len(kinds) > 1:
            raise GraphError("mixed mover conventions: either every state is impartial or none is")
        for m in self.movers:
            if m not in (None, 1, 2):
                raise GraphError(f"invalid mover tag {m!r}")
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"dangling edge endpoint in edge ({u}, {v})")
        for s in self.terminal:
            if not 0 <= s < n:
                raise GraphError(f"terminal label on undeclared state {s}")
        if self.labels is not None and len(self.labels) != n:
            raise GraphError("labels must name every state")

    @classmethod
    def build(cls, n: int, edges, terminal=None, mover: int | None = None, labels=None) -> StateGraph:
        """Convenience constructor giving every state the same mover tag."""
        return cls((mover,) * n, tuple(tuple(e) for e in edges), dict(terminal or {}), labels)

    @property
    def n(self) -> int:
        return len(self.movers)

    @property
    def impartial(self) -> bool:
        return self.n > 0 and self.movers[0] is None

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            succ[u].append(v)
        return tuple(tuple(s) for s in succ)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        pred: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            pred[v].append(u)
        return tuple(tuple(p) for p in pred)

    def same_mover(self, u: int, v: int) -> bool:
        # impartial graphs always hand the move to the opponent
        return self.movers[u] is not None and self.movers[u] == self.movers[v]


@dataclass(frozen=True)
class ScoredEdge:
    src: int
    dst: int
    mover_gain: Fraction = Fraction(0)
    opponent_gain: Fraction = Fraction(0)


@dataclass(frozen=True)
class ScoredStateGraph:
    """Game graph whose moves change both players' scores.

    ``final`` gives the score difference (mover minus opponent) at every
    state without moves.
    """

    movers: tuple[int | None, ...]
    edges: tuple[ScoredEdge, ...]
    final: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        # reuse StateGraph validation for the shape
        StateGraph(self.movers, tuple((e.src, e.dst) for e in self.edges))
        for s, value in self.final.items():
            if not 0 <= s < self.n:
                raise GraphError(f"final value on undeclared state {s}")
            if not isinstance(value, (int, Fraction)):
                raise GraphError("scores must be exact rationals")
        for e in self.edges:
            if not isinstance(e.mover_gain, (int, Fraction)) or not isinstance(e.opponent_gain, (int, Fraction)):
                raise GraphError("score deltas must be exact rationals")

    @property
    def n(self) -> int:
        return len(self.movers)

    @cached_property
    def out_edges(self) -> tuple[tuple[ScoredEdge, ...], ...]:
        out: list[list[ScoredEdge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            out[e.src].append(e)
        return tuple(tuple(o) for o in out)

    def swapped(self) -> ScoredStateGraph:
        """Same graph with mover and opponent gains exchanged on every edge."""
        edges = tuple(ScoredEdge(e.src, e.dst, e.opponent_gain, e.mover_gain) for e in self.edges)
        return ScoredStateGraph(self.movers, edges, dict(self.final))


def topological_order(successors: Sequence[Sequence[int]]) -> list[int]:
    """Kahn's algorithm; raises GraphError on a cycle."""
    n = len(successors)
    indeg = [0] * n
    for succ in successors:
        for v in succ:
            indeg[v] += 1
    queue = deque(u for u in range(n) if indeg[u] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in successors[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if len(order) != n:
        raise GraphError("graph not acyclic")
    return order


def _as_seen_by(graph: StateGraph, u: int, v: int, outcome: Outcome) -> Outcome:
    """Outcome of child ``v`` from the perspective of the mover at ``u``."""
    return outcome if graph.same_mover(u, v) else outcome.flipped()


def _best(graph: StateGraph, u: int, values: Mapping[int, Outcome]) -> Outcome:
    best = Outcome.DEFEAT
    for v in graph.successors[u]:
        seen = _as_seen_by(graph, u, v, values[v])
        if _RANK[seen] > _RANK[best]:
            best = seen
            if best is Outcome.VICTORY:
                break
    return best


def solve_outcomes(graph: StateGraph) -> dict[int, Outcome]:
    """Retrograde analysis of an acyclic game graph in O(V + E)."""
    order = topological_order(graph.successors)
    result: dict[int, Outcome] = {}
    for u in reversed(order):
        if graph.successors[u]:
            if u in graph.terminal:
                raise GraphError(f"terminal state {u} has outgoing moves")
            result[u] = _best(graph, u, result)
        else:
            try:
                result[u] = graph.terminal[u]
            except KeyError:
                raise GraphError(f"missing terminal label for state {u}") from None
    return result


def best_move(graph: StateGraph, outcomes: Mapping[int, Outcome], state: int) -> int | None:
    """Lowest-numbered successor that realises ``outcomes[state]``."""
    target = outcomes[state]
    for v in sorted(graph.successors[state]):
        if _as_seen_by(graph, state, v, outcomes[v]) is target:
            return v
    return None


def solve_scores(graph: ScoredStateGraph) -> dict[int, Fraction]:
    """Maximum score difference (mover minus opponent) for every state."""
    plain = StateGraph(graph.movers, tuple((e.src, e.dst) for e in graph.edges))
    order = topological_order(plain.successors)
    best: dict[int, Fraction] = {}
    for u in reversed(order):
        out = graph.out_edges[u]
        if not out:
            if u not in graph.final:
                raise GraphError(f"missing terminal value for state {u}")
            best[u] = Fraction(graph.final[u])
            continue
        candidates = []
        for e in out:
            child = best[e.dst]
            if not plain.same_mover(u, e.dst):
                child = -child
            candidates.append(Fraction(e.mover_gain) - Fraction(e.opponent_gain) + child)
        best[u] = max(candidates)
    return best


def last_move_wins(components: tuple[int, ...], games: Sequence[StateGraph]) -> Outcome | None:
    """Default product rule: a tuple with no move left is lost by the mover."""
    if all(not g.successors[q] for q, g in zip(components, games)):
        return Outcome.DEFEAT
    return None


def ends_on_any_sink(components: tuple[int, ...], games: Sequence[StateGraph]) -> Outcome | None:
    """Product rule for games where finishing any one board finishes the match.

    The first component that is a sink decides, using that component's own
    terminal label (``DEFEAT`` when unlabeled).
    """
    for q, g in zip(components, games):
        if not g.successors[q]:
            return g.terminal.get(q, Outcome.DEFEAT)
    return None


TerminalRule = Callable[[tuple[int, ...], Sequence[StateGraph]], "Outcome | None"]


def product_graph(
    games: Sequence[StateGraph],
    terminal_rule: TerminalRule = last_move_wins,
    cap: int = DEFAULT_STATE_CAP,
) -> StateGraph:
    """Combine K impartial games played side by side into one graph.

    Each move advances exactly one component.  The combined state of
    ``(q1, ..., qK)`` has index given by mixed-radix encoding, so the start
    tuple ``(0, ..., 0)`` is state 0.  ``terminal_rule`` decides which tuples
    end the combined game; those tuples get no outgoing edges.
    """
    if not games:
        raise GraphError("product of zero games")
    if not all(g.impartial for g in games):
        raise GraphError("product_graph needs impartial-alternating games")
    sizes = [g.n for g in games]
    total = 1
    for s in sizes:
        total *= s
    if total > cap:
        raise StateExplosionError(total, cap)

    strides = [1] * len(sizes)
    for i in range(len(sizes) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]

    labels = list(itertools.product(*(range(s) for s in sizes)))
    edges = []
    terminal = {}
    for idx, comps in enumerate(labels):
        label = terminal_rule(comps, games)
        if label is not None:
            terminal[idx] = label
            continue
        for j, g in enumerate(games):
            q = comps[j]
            for q2 in g.successors[q]:
                edges.append((idx, idx + (q2 - q) * strides[j]))
    return StateGraph((None,) * total, tuple(edges), terminal, tuple(labels))


def _infinite_for(graph: StateGraph, state: int, rule) -> Outcome:
    if isinstance(rule, Outcome):
        return rule
    mover = graph.movers[state]
    if mover is None:
        raise GraphError("impartial graphs take a single infinite-play outcome")
    return rule[mover]


def _check_infinite_rule(rule) -> None:
    if isinstance(rule, Outcome):
        return
    a, b = rule[1], rule[2]
    if a is not b.flipped():
        raise GraphError("per-player infinite-play outcomes must be complementary")


def time_expand(graph: StateGraph, tmax: int, horizon) -> StateGraph:
    """Layer the graph over move counter t = 0..tmax.

    ``horizon`` labels the non-terminal states of layer ``tmax``: a single
    Outcome (mover-relative), a mapping from original state id to Outcome, or
    a callable taking the original state id.  State ``(q, t)`` has index
    ``t * n + q``.
    """
    if tmax < 0:
        raise GraphError("tmax must be nonnegative")
    n = graph.n

    def horizon_label(q: int) -> Outcome:
        if isinstance(horizon, Outcome):
            return horizon
        if callable(horizon):
            return horizon(q)
        try:
            return horizon[q]
        except KeyError:
            raise GraphError(f"horizon does not cover state {q}") from None

    edges = []
    terminal: dict[int, Outcome] = {}
    for t in range(tmax + 1):
        for q in range(n):
            idx = t * n + q
            if not graph.successors[q]:
                if q in graph.terminal:
                    terminal[idx] = graph.terminal[q]
                continue
            if q in graph.terminal:
                raise GraphError(f"terminal state {q} has outgoing moves")
            if t == tmax:
                terminal[idx] = horizon_label(q)
            else:
                for q2 in graph.successors[q]:
                    edges.append((idx, (t + 1) * n + q2))
    labels = tuple((q, t) for t in range(tmax + 1) for q in range(n))
    return StateGraph(graph.movers * (tmax + 1), tuple(edges), terminal, labels)


def solve_cyclic(graph: StateGraph, infinite_outcome=Outcome.DRAW) -> dict[int, Outcome]:
    """Iterative solver for graphs that may contain cycles.

    Stage one labels every state whose value is forced by finite play: a
    winning move exists, or every successor is already labeled.  Stage two
    lets a mover who would lose an endless game bail out into a drawn
    successor, and keeps propagating the consequences.  Whatever remains
    unlabeled can be kept in play forever and gets ``infinite_outcome``.
    """
    _check_infinite_rule(infinite_outcome)
    n = graph.n
    values: dict[int, Outcome] = {}
    for u in range(n):
        if graph.successors[u]:
            continue
        if u not in graph.terminal:
            raise GraphError(f"missing terminal label for state {u}")
        values[u] = graph.terminal[u]
    for u in graph.terminal:
        if graph.successors[u]:
            raise GraphError(f"terminal state {u} has outgoing moves")

    def sweep(allow_draw_escape: bool) -> bool:
        changed = False
        for u in range(n):
            if u in values:
                continue
            all_known = True
            verdict = None
            for v in graph.successors[u]:
                if v not in values:
                    all_known = False
                    continue
                if _as_seen_by(graph, u, v, values[v]) is Outcome.VICTORY:
                    verdict = Outcome.VICTORY
                    break
            if verdict is None and all_known:
                verdict = _best(graph, u, values)
            if (
                verdict is None
                and allow_draw_escape
                and _infinite_for(graph, u, infinite_outcome) is Outcome.DEFEAT
                and any(values.get(v) is Outcome.DRAW for v in graph.successors[u])
            ):
                verdict = Outcome.DRAW
            if verdict is not None:
                values[u] = verdict
                changed = True
        return changed

    while sweep(False):
        pass
    while sweep(True):
        pass
    for u in range(n):
        if u not in values:
            values[u] = _infinite_for(graph, u, infinite_outcome)
    return values


def mex(values) -> int:
    seen = set(values)
    g = 0
    while g in seen:
        g += 1
    return g


def grundy_numbers(graph: StateGraph) -> dict[int, int]:
    """Sprague-Grundy value of every state of an impartial last-move-wins DAG."""
    if not graph.impartial:
        raise GraphError("grundy_numbers needs an impartial-alternating graph")
    for s, label in graph.terminal.items():
        if label is not Outcome.DEFEAT:
            raise GraphError(f"state {s} is labeled {label.name}; Grundy analysis assumes last-move-wins")
    order = topological_order(graph.successors)
    g: dict[int, int] = {}
    for u in reversed(order):
        g[u] = mex(g[v] for v in graph.successors[u])
    return g


def combined_grundy(components: Sequence[tuple[int, int]]) -> int:
    """Grundy value of a sum of games given as (grundy, multiplicity) pairs.

    Only the parity of each multiplicity matters, so huge counts are fine.
    """
    return reduce(xor, (g for g, mult in components if mult % 2 == 1), 0)


def subtraction_game(pile: int, take: int) -> StateGraph:
    """Single pile, remove 1..take objects; state i holds pile - i objects."""
    edges = []
    for i in range(pile + 1):
        left = pile - i
        for k in range(1, min(take, left) + 1):
            edges.append((i, i + k))
    return StateGraph.build(pile + 1, edges, {pile: Outcome.DEFEAT})
