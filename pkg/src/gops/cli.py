"""``gops`` command line: solve, verify, query, export, play, serve, bench.

Machine-readable results go to stdout (one JSON object per invocation,
except ``export`` which writes CSV and ``play`` which is an interactive
prompt loop); progress and diagnostics go to stderr. Exit status: 0 on
success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .cards import CardSet, GameState
from .engine import (
    DIRECT_EVAL_MAX_HAND,
    EngineError,
    SolveConfig,
    ValueTable,
    direct_solution,
    direct_value,
    solve_all,
    strategy_for,
    subgame_count,
    verify_table,
)
from .matgame import GameSolution
from .play import EquilibriumPolicy, PlayError, final_result, new_session, submit_bid
from .storage import GvtError, load_table, save_table


def _eprint(*args) -> None:
    print(*args, file=sys.stderr)


def _emit(payload: dict) -> None:
    print(json.dumps(payload))


def _parse_cards(raw: str, flag: str) -> CardSet:
    try:
        return CardSet.from_iterable(int(tok) for tok in raw.split(",") if tok != "")
    except ValueError as exc:
        raise SystemExit(f"error: bad card list {flag} {raw!r}: {exc}") from exc


def _state_from_args(args, n: int) -> GameState:
    if args.start:
        full = CardSet.full_deck(n)
        return GameState(full, full, full)
    if not (args.v and args.y and args.p):
        _eprint("error: give --start or all of --v/--y/--p")
        raise SystemExit(2)
    return GameState(_parse_cards(args.v, "--v"), _parse_cards(args.y, "--y"), _parse_cards(args.p, "--p"))


def _table_value(table: ValueTable, state: GameState) -> float:
    if table.covers(state):
        return float(table.value_of(state))
    if state.hand_size <= DIRECT_EVAL_MAX_HAND:
        return float(direct_value(state))
    raise EngineError(
        f"the {table.n}-card table does not cover this state and hand size "
        f"{state.hand_size} is too large for direct evaluation"
    )


def _table_strategy(table: ValueTable, state: GameState, upcard: int) -> GameSolution:
    if table.covers(state, for_strategy=True):
        return strategy_for(table, state, upcard)
    if state.hand_size <= DIRECT_EVAL_MAX_HAND:
        return direct_solution(state, upcard)
    raise EngineError(
        f"the {table.n}-card table does not cover this state and hand size "
        f"{state.hand_size} is too large for direct evaluation"
    )


# --------------------------------------------------------------------------
# subcommands


def _cmd_solve(args) -> int:
    arithmetic = "rational" if args.exact else "float64"
    if args.exact and args.out:
        _eprint("error: rational tables cannot be written to GVT files")
        return 1
    config = SolveConfig(
        n=args.n,
        arithmetic=arithmetic,
        workers=args.workers,
        keep_all_layers=bool(args.keep_all or args.out),
        use_symmetry=not args.no_symmetry,
        spill_dir=args.spill_dir,
        progress=lambda p: _eprint(
            f"layer {p['layer']}/{args.n}: {p['states']} states, "
            f"{p['stage_solves']} stage solves so far, {p['seconds']}s"
        ),
    )
    table = solve_all(config)
    if args.out:
        save_table(table, args.out)
    payload = {
        "n": args.n,
        "arithmetic": arithmetic,
        "stage_solves": table.stage_solves,
        "stage_solves_unhalved": subgame_count(args.n),
        "elapsed_seconds": table.stats.get("elapsed"),
        "out": args.out,
    }
    if args.exact:
        full = CardSet.full_deck(args.n)
        payload["full_game_value"] = str(table.value_of(GameState(full, full, full)))
    _emit(payload)
    return 0


def _cmd_verify(args) -> int:
    table = load_table(args.table)
    report = verify_table(table, samples=args.samples, seed=args.seed)
    _emit(
        {
            "n": report.n,
            "ok": report.ok,
            "entries_checked": report.entries_checked,
            "games_sampled": report.games_sampled,
            "violations": len(report.violations),
            "first_violations": [
                {"kind": v.kind, "layer": v.layer, "index": list(v.index), "detail": v.detail}
                for v in report.violations[:10]
            ],
        }
    )
    return 0 if report.ok else 1


def _cmd_value(args) -> int:
    table = load_table(args.table)
    state = _state_from_args(args, table.n)
    _emit({"value": _table_value(table, state)})
    return 0


def _cmd_strategy(args) -> int:
    table = load_table(args.table)
    state = _state_from_args(args, table.n)
    solution = _table_strategy(table, state, args.upcard)
    _emit(
        {
            "upcard": args.upcard,
            "probs": [
                {"card": c, "p": float(p)} for c, p in zip(state.one.cards(), solution.row)
            ],
            "value": float(solution.value),
        }
    )
    return 0


def _cmd_export(args) -> int:
    table = load_table(args.table)
    n = table.n
    full = CardSet.full_deck(n)
    start = GameState(full, full, full)
    columns = {}
    for upcard in range(1, n + 1):
        columns[upcard] = strategy_for(table, start, upcard).row

    def fmt(p: float) -> str:
        return "0" if p == 0 else f"{p:.4f}"

    lines = ["card," + ",".join(str(u) for u in range(1, n + 1))]
    for i, card in enumerate(range(1, n + 1)):
        lines.append(f"{card}," + ",".join(fmt(float(columns[u][i])) for u in range(1, n + 1)))
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    _emit({"n": n, "out": args.out, "rows": n})
    return 0


def _cmd_play(args) -> int:
    table = load_table(args.table)
    seed = args.seed if args.seed is not None else time.time_ns() & (2**63 - 1)
    session = new_session(table.n, seed, EquilibriumPolicy(table))
    print(f"GOPS, {table.n} cards. Cards are worth their face value; highest bid takes the upcard.")
    while not session.finished:
        you, bot = session.scores()
        print(
            f"\nround {session.round}/{session.n}  upcard {session.upcard}  "
            f"score you {you} bot {bot}"
        )
        print(f"your hand: {' '.join(map(str, session.human_hand.cards()))}")
        try:
            raw = input("your bid> ").strip()
        except EOFError:
            print("\nabandoned.")
            return 1
        if raw in ("q", "quit"):
            print("abandoned.")
            return 1
        try:
            card = int(raw)
        except ValueError:
            print("enter a card value from your hand")
            continue
        try:
            record = submit_bid(session, card)
        except PlayError as exc:
            print(f"cannot bid: {exc}")
            continue
        print(f"you {record.human_bid} vs bot {record.bot_bid} -> {record.points_to} (+{record.upcard})")
    result = final_result(session)
    print(
        f"\nfinal: you {result.scores[0]}, bot {result.scores[1]} -> {result.winner}"
        f" (zero-sum margin {result.zero_sum_margin:+d})"
    )
    return 0


def _cmd_serve(args) -> int:
    from .api import make_server

    table = load_table(args.table)
    server = make_server(
        table,
        args.port,
        args.bind,
        static_dir=args.static,
        ttl_seconds=args.ttl,
        verbose=args.verbose,
    )
    host, port = server.server_address[:2]
    _eprint(f"serving n={table.n} table on http://{host}:{port}/ (Ctrl+C stops)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        _eprint("shutting down")
    finally:
        server.server_close()
    return 0


def _cmd_bench(args) -> int:
    config = SolveConfig(n=args.n, workers=args.workers)
    started = time.monotonic()
    table = solve_all(config)
    elapsed = time.monotonic() - started
    _emit(
        {
            "n": args.n,
            "workers": args.workers,
            "elapsed_seconds": round(elapsed, 3),
            "stage_solves": table.stage_solves,
            "solves_per_second": round(table.stage_solves / elapsed) if elapsed else None,
            "methods": {
                "saddle": table.stats.get("saddle"),
                "closed2x2": table.stats.get("closed2x2"),
                "simplex": table.stats.get("simplex"),
            },
            "layer_seconds": table.stats.get("layer_seconds"),
        }
    )
    return 0


# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gops", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve all subgames bottom-up")
    p.add_argument("--n", type=int, required=True, metavar="1..13")
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic (small n)")
    p.add_argument("--workers", type=int, default=1, metavar="K")
    p.add_argument("--keep-all", dest="keep_all", action="store_true", help="retain every layer")
    p.add_argument("--no-symmetry", dest="no_symmetry", action="store_true", help="solve mirrored pairs too")
    p.add_argument("--spill-dir", dest="spill_dir", default=None, help="back layers with files here")
    p.add_argument("--out", default=None, help="write a GVT table (implies --keep-all)")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("verify", help="audit a table's invariants")
    p.add_argument("--table", required=True)
    p.add_argument("--samples", type=int, default=1000, metavar="M")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("value", help="value of a subgame")
    p.add_argument("--table", required=True)
    p.add_argument("--start", action="store_true", help="the full opening position")
    p.add_argument("--v", help="player one's cards, e.g. 2,4")
    p.add_argument("--y", help="player two's cards")
    p.add_argument("--p", help="deck cards")
    p.set_defaults(fn=_cmd_value)

    p = sub.add_parser("strategy", help="equilibrium mixture for one upcard")
    p.add_argument("--table", required=True)
    p.add_argument("--start", action="store_true")
    p.add_argument("--v")
    p.add_argument("--y")
    p.add_argument("--p")
    p.add_argument("--upcard", type=int, required=True, metavar="K")
    p.set_defaults(fn=_cmd_strategy)

    p = sub.add_parser("export", help="first-move strategy table as CSV")
    p.add_argument("--table", required=True)
    p.add_argument("--start", action="store_true", help="export the opening position (default)")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_export)

    p = sub.add_parser("play", help="play against the bot in the terminal")
    p.add_argument("--table", required=True)
    p.add_argument("--seed", type=int, default=None, metavar="S")
    p.set_defaults(fn=_cmd_play)

    p = sub.add_parser("serve", help="HTTP/JSON service for the web client")
    p.add_argument("--table", required=True)
    p.add_argument("--port", type=int, required=True, metavar="P")
    p.add_argument("--bind", default="127.0.0.1", metavar="ADDR")
    p.add_argument("--static", default=None, help="also serve this directory at /")
    p.add_argument("--ttl", type=float, default=3600.0, help="idle session expiry seconds")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(fn=_cmd_serve)

    p = sub.add_parser("bench", help="time a full solve (nothing persisted)")
    p.add_argument("--n", type=int, required=True, metavar="K")
    p.add_argument("--workers", type=int, default=1, metavar="K")
    p.set_defaults(fn=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (GvtError, EngineError, PlayError, ValueError, OSError) as exc:
        _eprint(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
