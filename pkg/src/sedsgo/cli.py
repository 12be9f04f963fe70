"""Command-line front door.

Subcommands wrap library calls one-to-one; no arithmetic lives here.

    eval <sgf> [--move N]        evaluate the position after N moves
    rank <sgf> [--move N --top K]  rank the next player's legal moves
    bench <dir> [...]            prediction statistics over a corpus
    timing <dir> --moves a,b,c   wall-clock profile at given move numbers
    oracle-check [...]           worklist solver vs dense reference
    serve [--port P]             run the HTTP evaluation service

Exit codes: 0 success, 1 input error (including usage), 2 internal
failure.  SEDS_STOP_VALUE and SEDS_MAX_ITER environment variables
override the solver defaults; explicit flags win over both.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from .analysis import instability_map, percentile_of, rank_moves, score
from .bench import (
    EmptyCorpus,
    run_corpus,
    timing_profile,
    write_histogram_csv,
    write_survival_csv,
    write_timing_csv,
)
from .goboard import (
    BadCoord,
    Board,
    Color,
    Coord,
    IllegalMove,
    OverlappingStones,
    ZeroLibertyBlock,
    random_position,
)
from .seds import (
    AtariAdjustment,
    NoConvergence,
    SolverConfig,
    init_state,
    solve,
    solve_dense_oracle,
)
from .sgf import IllegalRecordedMove, SgfSyntaxError, UnsupportedSize, parse_sgf, replay

__all__ = ["dispatch", "main"]

# column letters skip I, as on printed boards
_COLS = "ABCDEFGHJKLMNOPQRST"

_INPUT_ERRORS = (
    BadCoord,
    OverlappingStones,
    ZeroLibertyBlock,
    IllegalMove,
    SgfSyntaxError,
    UnsupportedSize,
    IllegalRecordedMove,
    EmptyCorpus,
    FileNotFoundError,
    NotADirectoryError,
    ValueError,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # input errors exit 1, not argparse's default 2
    def error(self, message: str):
        self.print_help(sys.stderr)
        raise _UsageError(message)


def _coord_label(coord: Coord, size: int) -> str:
    return f"{_COLS[coord.col]}{size - coord.row}"


def _config_flags(sub: argparse.ArgumentParser) -> None:
    defaults = SolverConfig()
    stop_env = os.environ.get("SEDS_STOP_VALUE")
    iter_env = os.environ.get("SEDS_MAX_ITER")
    sub.add_argument(
        "--stop-value",
        type=float,
        default=float(stop_env) if stop_env else defaults.stop_value,
        help="worklist re-enqueue threshold",
    )
    sub.add_argument(
        "--max-iter",
        type=int,
        default=int(iter_env) if iter_env else defaults.max_iter,
        help="per-unit iteration budget",
    )
    sub.add_argument(
        "--atari-adjustment",
        choices=[a.value for a in AtariAdjustment],
        default=defaults.atari_adjustment.value,
        help="liberty adjustment for blocks in atari",
    )


def _config_from(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        stop_value=args.stop_value,
        max_iter=args.max_iter,
        atari_adjustment=AtariAdjustment(args.atari_adjustment),
    )


def _move_numbers(text: str) -> tuple[int, ...]:
    try:
        numbers = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"bad --moves list: {text!r}") from None
    if any(n < 1 for n in numbers):
        raise ValueError("move numbers start at 1")
    return numbers


def _load_position(path: str, move: int | None) -> tuple[Board, Color, int]:
    record = parse_sgf(Path(path).read_bytes())
    upto = len(record.moves) if move is None else move
    if upto > len(record.moves):
        raise ValueError(f"record has only {len(record.moves)} moves")
    board = replay(record, upto)
    if upto < len(record.moves):
        mover = record.moves[upto][0]
    elif record.moves:
        mover = record.moves[-1][0].opposite
    else:
        mover = Color.BLACK
    return board, mover, upto


def _cmd_eval(args: argparse.Namespace) -> int:
    board, _, upto = _load_position(args.sgf, args.move)
    config = _config_from(args)
    state, stats = solve(board, init_state(board), config)
    size = board.size
    print(f"size {size}, after {upto} moves")
    print("white-ownership w per empty point:")
    for row in range(size):
        cells = []
        for col in range(size):
            p = row * size + col
            if board.grid[p] == -1:
                cells.append(f"{state.w[p]:5.3f}")
            else:
                blk = board.blocks[board.grid[p]]
                cells.append("  B  " if blk.color is Color.BLACK else "  W  ")
        print(f"{size - row:>2} " + " ".join(cells))
    print("   " + "  ".join(f" {c} " for c in _COLS[:size]))
    if board.blocks:
        print("block survival s:")
    for blk in sorted(board.blocks.values(), key=lambda b: b.id):
        color = "black" if blk.color is Color.BLACK else "white"
        stones = " ".join(
            _coord_label(board.coord(p), size) for p in sorted(blk.stones)
        )
        alive = " statically-alive" if blk.statically_alive else ""
        print(f"  {color} s={state.s[blk.id]:.3f}{alive}  [{stones}]")
    sc = score(board, state)
    print(
        f"score: black {sc.black_total:.2f}  white {sc.white_total:.2f}"
        f"  net {sc.net:+.2f}"
    )
    print(f"converged: {stats.converged}")
    return 0


def _cmd_rank(args: argparse.Namespace) -> int:
    board, mover, upto = _load_position(args.sgf, args.move)
    config = _config_from(args)
    ranking = rank_moves(board, mover, config)
    name = "black" if mover is Color.BLACK else "white"
    print(f"after {upto} moves, {name} to play, {len(ranking)} legal moves")
    shown = ranking.entries if args.top is None else ranking.entries[: args.top]
    for i, (coord, value) in enumerate(shown, start=1):
        label = _coord_label(coord, board.size)
        pct = percentile_of(ranking, coord)
        print(f"{i:>3}. {label:<4} {value:+8.3f}  p{pct}")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    config = _config_from(args)
    numbers = _move_numbers(args.moves) if args.moves else None
    stats = run_corpus(args.corpus, config, move_numbers=numbers, jobs=args.jobs)
    print(
        f"games {stats.games}, positions {stats.positions}, "
        f"passes skipped {stats.skipped_passes}, "
        f"illegal skipped {stats.skipped_illegal}, "
        f"unparseable files {len(stats.failed_files)}"
    )
    for n in sorted(stats.survivals):
        hist = stats.histograms[n]
        curve = stats.survivals[n]
        print(
            f"move {n:>3}: {hist.positions_counted} positions, "
            f"R(80) = {curve.values[80]:.1f}%"
        )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_histogram_csv(stats, out / "histogram.csv")
        write_survival_csv(stats, out / "survival.csv")
        print(f"wrote {out / 'histogram.csv'} and {out / 'survival.csv'}")
    return 0


def _cmd_timing(args: argparse.Namespace) -> int:
    config = _config_from(args)
    numbers = _move_numbers(args.moves)
    profile = timing_profile(args.corpus, config, move_numbers=numbers)
    print("move_number,eval_us,rank_ms")
    for row in profile.rows:
        print(
            f"{row.move_number},{row.eval_seconds * 1e6!r},"
            f"{row.rank_seconds * 1e3!r}"
        )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        write_timing_csv(profile, out / "timing.csv")
        print(f"wrote {out / 'timing.csv'}")
    return 0


def _cmd_oracle_check(args: argparse.Namespace) -> int:
    config = _config_from(args)
    rng = random.Random(args.seed)
    worst = 0.0
    for _ in range(args.positions):
        board = random_position(args.size, rng.randint(10, 40), rng)
        state, _ = solve(board, init_state(board), config)
        oracle = solve_dense_oracle(board, init_state(board), config)
        for p in state.w:
            worst = max(worst, abs(state.w[p] - oracle.w[p]))
        for j in state.s:
            worst = max(worst, abs(state.s[j] - oracle.s[j]))
    print(
        f"max deviation {worst:.3e} over {args.positions} random "
        f"{args.size}x{args.size} positions (seed {args.seed})"
    )
    return 0 if worst < 1e-3 else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("sedsgo.service:app", host=args.host, port=args.port)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="sedsgo", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a position from an SGF file")
    p.add_argument("sgf")
    p.add_argument("--move", type=int, default=None, help="evaluate after N moves")
    _config_flags(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("rank", help="rank the next player's legal moves")
    p.add_argument("sgf")
    p.add_argument("--move", type=int, default=None)
    p.add_argument("--top", type=int, default=None, help="show only the best K")
    _config_flags(p)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("bench", help="move-prediction statistics over a corpus")
    p.add_argument("corpus")
    p.add_argument("--moves", default=None, help="comma-separated move numbers")
    p.add_argument("--out", default=None, help="directory for CSV output")
    p.add_argument("--jobs", type=int, default=1, help="parallel games")
    _config_flags(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("timing", help="evaluation/ranking wall-clock profile")
    p.add_argument("corpus")
    p.add_argument("--moves", required=True, help="comma-separated move numbers")
    p.add_argument("--out", default=None, help="directory for timing.csv")
    _config_flags(p)
    p.set_defaults(func=_cmd_timing)

    p = sub.add_parser(
        "oracle-check",
        help="compare the worklist solver against the dense reference",
    )
    p.add_argument("--positions", type=int, default=50)
    p.add_argument("--size", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    _config_flags(p)
    # the equivalence protocol runs much tighter than interactive defaults
    p.set_defaults(func=_cmd_oracle_check, stop_value=1e-5, max_iter=1000)

    p = sub.add_parser("serve", help="run the HTTP evaluation service")
    p.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("SEDS_PORT", "8642")),
    )
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=_cmd_serve)

    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as e:
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as e:
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return 1
    except NoConvergence as e:
        print(f"{parser.prog}: internal: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001  anything else is a bug
        print(f"{parser.prog}: internal: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())
