"""Batch command line: ``adversolve <subcommand> [input]`` (stdin when no path)."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import formats
from .allocation import LineInstance, TreeReallocInstance, equalize, line_maximin, tree_realloc_cost
from .board import (
    board_gather,
    board_gather_move,
    even_gather,
    lex_game,
    multi_round_gather,
    parallel_treblecross,
    path_game_all_starts,
    treblecross_board_grundy,
)
from .core import (
    DEFAULT_STATE_CAP,
    Outcome,
    best_move,
    combined_grundy,
    ends_on_any_sink,
    grundy_numbers,
    last_move_wins,
    product_graph,
    solve_cyclic,
    solve_outcomes,
    solve_scores,
    subtraction_game,
    time_expand,
    topological_order,
)
from .errors import AdversolveError, GraphError
from .pursuit import COPS, build_pursuit_graph, cop_win, is_caterpillar, is_extended_caterpillar
from .query.bets import bet_pmax
from .query.coins import coin_run
from .query.hotcold import COLDER, HOTTER, HotColdOracle, hc_min_questions, hc_play
from .query.powersum import power_sum
from .query.strings import GuessTrace, SubsequenceOracle, guess_secret_string

RESULT = {Outcome.VICTORY: "WIN", Outcome.DRAW: "DRAW", Outcome.DEFEAT: "LOSE"}
CODE = {Outcome.VICTORY: "W", Outcome.DRAW: "D", Outcome.DEFEAT: "L"}


def _win(flag: bool) -> str:
    return "WIN" if flag else "LOSE"


def _is_acyclic(graph) -> bool:
    try:
        topological_order(graph.successors)
    except GraphError:
        return False
    return True


def cmd_solve_graph(text, args, trace):
    graph = formats.parse_state_graph(text)
    infinite = formats.OUTCOME_CODES[args.infinite]
    mode = args.mode
    if mode == "auto":
        mode = "acyclic" if _is_acyclic(graph) else "cyclic"
    if mode == "acyclic":
        values = solve_outcomes(graph)
    elif mode == "cyclic":
        values = solve_cyclic(graph, infinite)
    elif mode == "expand":
        tmax = graph.n + 1 if args.tmax is None else args.tmax
        expanded = time_expand(graph, tmax, infinite)
        layered = solve_outcomes(expanded)
        values = {q: layered[q] for q in range(graph.n)}
    else:
        raise ValueError(f"unknown mode {args.mode!r}")
    for s in range(graph.n):
        move = best_move(graph, values, s)
        trace.append(f"state={s + 1} outcome={CODE[values[s]]} best={'-' if move is None else move + 1}")
    return [f"result={RESULT[values[0]]}"]


def cmd_solve_scores(text, args, trace):
    graph = formats.parse_scored_graph(text)
    values = solve_scores(graph)
    for s in range(graph.n):
        trace.append(f"state={s + 1} value={values[s]}")
    return [f"value={values[0]}"]


def _games(text):
    """Component games: subtraction lines or state-graph blocks split by ``---``."""
    if formats.is_subtraction(text):
        games = formats.parse_subtraction(text)
        return [(subtraction_game(s.pile, s.take), s.mult) for s in games]
    return [(formats.shift_errors(start, formats.parse_state_graph, block), 1) for start, block in formats.split_blocks(text)]


def cmd_product(text, args, trace):
    games = []
    for g, mult in _games(text):
        games += [g] * mult
    if not games:
        raise ValueError("no component games")
    rule = last_move_wins if args.rule == "last-move" else ends_on_any_sink
    prod = product_graph(games, rule, cap=args.cap)
    values = solve_outcomes(prod)
    move = best_move(prod, values, 0)
    if move is not None:
        trace.append(f"best={','.join(str(c) for c in prod.labels[move])}")
    return [f"result={RESULT[values[0]]} states={prod.n}"]


def cmd_grundy(text, args, trace):
    parts = []
    for i, (g, mult) in enumerate(_games(text), 1):
        value = grundy_numbers(g)[0]
        trace.append(f"component={i} grundy={value} mult={mult}")
        parts.append((value, mult))
    return [f"grundy={combined_grundy(parts)}"]


def cmd_treblecross(text, args, trace):
    instances = formats.parse_treblecross(text)
    parts = []
    for board, mult in instances:
        g = treblecross_board_grundy(board)
        trace.append(f"board={board.length} marked={','.join(map(str, sorted(board.marked))) or '-'} grundy={g} mult={mult}")
        parts.append((g, mult))
    won = parallel_treblecross(instances)
    return [f"result={_win(won)} grundy={combined_grundy(parts)}"]


def cmd_tree_path(text, args, trace):
    tree = formats.parse_tree(text)
    wins = path_game_all_starts(tree)
    if args.root is not None:
        if not 1 <= args.root <= tree.n:
            raise GraphError(f"invalid root {args.root}")
        return [f"result={_win(wins[args.root - 1])}"]
    return ["winning_starts=" + ",".join(str(v) for v in range(1, tree.n + 1) if wins[v - 1])]


def cmd_gather_even(text, args, trace):
    return [f"result={_win(even_gather(s.n, s.k, s.target, args.mode))}" for s in formats.parse_gather_even(text)]


def cmd_gather_board(text, args, trace):
    values = formats.parse_board(text)
    if isinstance(values, str):
        raise formats.ParseError("gather-board needs numeric values; use gather-lex for strings", 2)
    res = board_gather(values)
    i, j, turn = 0, len(values) - 1, 1
    while i <= j:
        side = board_gather_move(values, res.table, i, j)
        taken = values[i] if side == "L" else values[j]
        trace.append(f"player={turn} take={side} value={taken}")
        i, j = (i + 1, j) if side == "L" else (i, j - 1)
        turn = 3 - turn
    return [f"smax={res.smax} diff={res.diff} parity={res.parity_guarantee}"]


def cmd_gather_lex(text, args, trace):
    board = formats.parse_board(text)
    if not isinstance(board, str):
        raise formats.ParseError("gather-lex needs a quoted character string", 2)
    return [f'value="{lex_game(board)}"']


def cmd_gather_rounds(text, args, trace):
    kept, outcome = multi_round_gather(formats.parse_multiround(text))
    return [f"kept={kept} result={RESULT[outcome]}"]


def cmd_guess_string(text, args, trace):
    secret, k = formats.parse_secret(text)
    log = GuessTrace()
    found, asked = guess_secret_string(SubsequenceOracle(secret), k, trace=log)
    show = lambda s: '"' + "".join(formats.SYMBOLS[c] for c in s) + '"'
    for cand, answer in log.questions:
        trace.append(f"ask={show(cand)} answer={'yes' if answer else 'no'}")
    return [f"secret={show(found)} questions={asked}"]


def cmd_hotter_colder(text, args, trace):
    inst = formats.parse_hc(text)
    count, table = hc_min_questions(inst.n, inst.delay, inst.mode)
    if inst.secret is None:
        return [f"questions={count} total_asks={count + inst.delay}"]
    log = []
    found, asked = hc_play(table, HotColdOracle(inst.secret, inst.delay, args.tie), log)
    for y, answer in log:
        trace.append(f"ask={y} answer={answer or '-'}")
    return [f"found={found} questions={asked} total_asks={asked + inst.delay}"]


def cmd_coins(text, args, trace):
    n, assign = formats.parse_coins(text)
    log = []
    coin, kind, asked = coin_run(n, assign, log)
    for left, right, outcome in log:
        trace.append(f"left={','.join(map(str, left))} right={','.join(map(str, right))} outcome={outcome}")
    return [f"coin={coin} type={kind} questions={asked}"]


def cmd_bets(text, args, trace):
    n, r = formats.parse_bets(text)
    table = bet_pmax(n, r, exact=not args.float)
    for (i, j), value in sorted(table.pmax.items()):
        color, p = table.policy[i, j]
        trace.append(f"i={i} j={j} pmax={value} color={color or '-'} p={p}")
    color, p = table.policy[n, r]
    return [f"value={table.value} color={color or '-'} p={p}"]


def cmd_powersum(text, args, trace):
    return [str(power_sum(p, q, n, args.mode)) for p, q, n in formats.parse_powersum(text)]


def cmd_pursuit(text, args, trace):
    config = formats.parse_pursuit(text, strict=args.strict, opening=args.opening)
    pg = build_pursuit_graph(config, cap=args.cap)
    values = solve_cyclic(pg.graph, Outcome.DRAW)
    cops_view = values[0] if pg.graph.movers[0] == COPS else values[0].flipped()
    label = {Outcome.VICTORY: "COPS_WIN", Outcome.DRAW: "DRAW", Outcome.DEFEAT: "ROBBERS_WIN"}[cops_view]
    return [f"result={label} states={pg.graph.n}"]


def cmd_copwin(text, args, trace):
    graph = formats.parse_undirected(text)
    return ["result=" + ("COP_WINS" if cop_win(graph, args.mode) else "ROBBER_ESCAPES")]


def cmd_caterpillar(text, args, trace):
    lines = formats.tokenize(text)
    if lines and lines[0][0].text == "tree":
        tree = formats.parse_tree(text)
        graph = formats.UndirectedGraph(tree.n, tree.edges)
        cat = is_caterpillar(tree)
    else:
        graph = formats.parse_undirected(text)
        try:
            cat = is_caterpillar(formats.Tree(graph.n, graph.edges))
        except GraphError:
            cat = False
    yes = lambda b: "yes" if b else "no"
    return [f"caterpillar={yes(cat)} extended={yes(is_extended_caterpillar(graph))}"]


def cmd_alloc_equalize(text, args, trace):
    amounts = formats.parse_amounts(text)
    moves = equalize(amounts)
    for src, dst, x in moves:
        trace.append(f"from={src} to={dst} amount={x}")
    return [f"moves={len(moves)} level={sum(amounts) / len(amounts)}"]


def cmd_alloc_line(text, args, trace):
    r, q = formats.parse_line_instance(text)
    eps = Fraction(args.eps)
    return [f"value={line_maximin(LineInstance(r, q), integer=args.integer, eps=eps)}"]


def cmd_alloc_tree(text, args, trace):
    tree, b, q, cost = formats.parse_tree_realloc(text)
    total, moves = tree_realloc_cost(TreeReallocInstance(tree, b, q, cost), root=args.root)
    for src, dst, amount in moves:
        trace.append(f"from={src} to={dst} amount={amount}")
    return [f"cost={total}"]


def cmd_selftest(text, args, trace):
    from .selftest import run_selftest

    checks = run_selftest(args.seed, trace)
    return [f"selftest=PASS checks={checks}"]


def _rational(value: str) -> Fraction:
    try:
        out = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {value!r}") from None
    if out <= 0:
        raise argparse.ArgumentTypeError("eps must be positive")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adversolve", description="Game solving and adversarial decision toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def add(name, func, help_text, takes_input=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if takes_input:
            p.add_argument("input", nargs="?", default="-", help="input file (default: stdin)")
        p.add_argument("--trace", action="store_true", help="print a transcript after the result")
        p.set_defaults(func=func, takes_input=takes_input)
        return p

    p = add("solve-graph", cmd_solve_graph, "win/draw/loss for a state graph (value of state 1)")
    p.add_argument("--mode", choices=["auto", "acyclic", "cyclic", "expand"], default="auto")
    p.add_argument("--infinite", choices=["W", "D", "L"], default="D", help="value of endless play for its mover")
    p.add_argument("--tmax", type=int, help="horizon for --mode expand (default: states + 1)")
    add("solve-scores", cmd_solve_scores, "best score difference for a scored state graph")
    p = add("product", cmd_product, "solve games played side by side")
    p.add_argument("--rule", choices=["last-move", "any-sink"], default="last-move")
    p.add_argument("--cap", type=int, default=DEFAULT_STATE_CAP)
    add("grundy", cmd_grundy, "combined Grundy value of impartial games")
    add("treblecross", cmd_treblecross, "parallel Treblecross boards")
    p = add("tree-path", cmd_tree_path, "path-marking game on a tree")
    p.add_argument("--root", type=int)
    p = add("gather-even", cmd_gather_even, "parity gathering from a single pile")
    p.add_argument("--mode", choices=["dp", "fast", "pattern"], default="fast")
    add("gather-board", cmd_gather_board, "take-from-either-end value gathering")
    add("gather-lex", cmd_gather_lex, "take-from-either-end string building")
    add("gather-rounds", cmd_gather_rounds, "multi-round pile gathering")
    add("guess-string", cmd_guess_string, "recover a secret string from subsequence questions")
    p = add("hotter-colder", cmd_hotter_colder, "Hotter/Colder question counts and playouts")
    p.add_argument("--tie", choices=[HOTTER, COLDER], default=HOTTER, help="reply used when both asks are equally far")
    add("coins", cmd_coins, "find the counterfeit coin")
    p = add("bets", cmd_bets, "worst-case betting factor")
    p.add_argument("--float", action="store_true", help="use floating point instead of exact rationals")
    p = add("powersum", cmd_powersum, "a^N + b^N from a+b and ab, one triple per line")
    p.add_argument("--mode", choices=["linear", "fast"], default="linear")
    p = add("pursuit", cmd_pursuit, "cops and robbers on a directed graph")
    p.add_argument("--strict", action="store_true", help="an agent that cannot move loses")
    p.add_argument("--opening", action="store_true", help="agents choose their start vertices first")
    p.add_argument("--cap", type=int, default=DEFAULT_STATE_CAP)
    p = add("copwin", cmd_copwin, "one cop against one robber on an undirected graph")
    p.add_argument("--mode", choices=["naive", "fast"], default="fast")
    add("caterpillar", cmd_caterpillar, "caterpillar and extended caterpillar recognition")
    add("alloc-equalize", cmd_alloc_equalize, "equalise container amounts")
    p = add("alloc-line", cmd_alloc_line, "maximin level along a line with transport losses")
    p.add_argument("--integer", action="store_true", help="search integer levels only")
    p.add_argument("--eps", type=_rational, default=Fraction(1, 10**6))
    p = add("alloc-tree", cmd_alloc_tree, "minimum-cost reallocation on a tree")
    p.add_argument("--root", type=int, default=1)
    p = add("selftest", cmd_selftest, "run the small-instance oracle checks", takes_input=False)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _read(args.input) if args.takes_input else ""
        trace: list[str] = []
        lines = args.func(text, args, trace)
    except AdversolveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return AdversolveError.exit_code
    for line in lines:
        print(line)
    if args.trace:
        for line in trace:
            print(f"trace {line}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
