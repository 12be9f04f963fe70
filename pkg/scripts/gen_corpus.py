"""Generate the bundled SGF corpora.

Two corpora, both synthetic self-play (see data/README.md):

  data/corpus/  games for the move-prediction benchmark: the engine picks
                noisily from its own top-ranked moves, so recorded moves
                are strong but not deterministic argmax replays.
  data/timing/  long uniform-random games reaching move 300+, used only
                for wall-clock profiling at late move numbers.

Deterministic for a given seed.  Regenerate with:

    python3 scripts/gen_corpus.py --out data
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sedsgo.analysis import rank_moves
from sedsgo.goboard import Color, apply_move, build_position, legal_moves
from sedsgo.seds import SolverConfig
from sedsgo.sgf import GameRecord, emit_sgf

TOP_K = 6
TOP_WEIGHTS = [6, 5, 4, 3, 2, 1]
RANDOM_MOVE_PROB = 0.25


def selfplay_game(size: int, n_moves: int, rng: random.Random,
                  config: SolverConfig) -> GameRecord:
    board = build_position(size, [], [])
    color = Color.BLACK
    moves = []
    for _ in range(n_moves):
        legal = legal_moves(board, color)
        if not legal:
            break
        if rng.random() < RANDOM_MOVE_PROB:
            mv = rng.choice(legal)
        else:
            ranking = rank_moves(board, color, config)
            top = ranking.entries[:TOP_K]
            mv = rng.choices(
                [c for c, _ in top], weights=TOP_WEIGHTS[: len(top)]
            )[0]
        board, _ = apply_move(board, mv, color)
        moves.append((color, mv))
        color = color.opposite
    return GameRecord(board_size=size, setup_black=(), setup_white=(),
                      moves=tuple(moves), metadata={})


def random_game(size: int, n_moves: int, rng: random.Random) -> GameRecord:
    board = build_position(size, [], [])
    color = Color.BLACK
    moves = []
    while len(moves) < n_moves:
        legal = legal_moves(board, color)
        if not legal:
            break
        mv = rng.choice(legal)
        board, _ = apply_move(board, mv, color)
        moves.append((color, mv))
        color = color.opposite
    return GameRecord(board_size=size, setup_black=(), setup_white=(),
                      moves=tuple(moves), metadata={})


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data")
    ap.add_argument("--games", type=int, default=22)
    ap.add_argument("--moves", type=int, default=112)
    ap.add_argument("--timing-games", type=int, default=4)
    ap.add_argument("--timing-moves", type=int, default=310)
    ap.add_argument("--size", type=int, default=19)
    ap.add_argument("--seed", type=int, default=20060801)
    args = ap.parse_args()

    config = SolverConfig()
    corpus = Path(args.out) / "corpus"
    timing = Path(args.out) / "timing"
    corpus.mkdir(parents=True, exist_ok=True)
    timing.mkdir(parents=True, exist_ok=True)

    for i in range(args.games):
        t0 = time.perf_counter()
        rng = random.Random(args.seed + i)
        rec = selfplay_game(args.size, args.moves, rng, config)
        meta = {"GN": (f"selfplay-{i:02d}".encode(),),
                "PB": (b"sedsgo",), "PW": (b"sedsgo",)}
        rec = GameRecord(rec.board_size, rec.setup_black, rec.setup_white,
                         rec.moves, meta)
        (corpus / f"selfplay_{i:02d}.sgf").write_bytes(emit_sgf(rec))
        print(f"corpus {i + 1}/{args.games}: {len(rec.moves)} moves "
              f"in {time.perf_counter() - t0:.1f}s", flush=True)

    for i in range(args.timing_games):
        rng = random.Random(args.seed + 1000 + i)
        rec = random_game(args.size, args.timing_moves, rng)
        meta = {"GN": (f"randomplay-{i:02d}".encode(),),
                "PB": (b"random",), "PW": (b"random",)}
        rec = GameRecord(rec.board_size, rec.setup_black, rec.setup_white,
                         rec.moves, meta)
        (timing / f"random_{i:02d}.sgf").write_bytes(emit_sgf(rec))
        print(f"timing {i + 1}/{args.timing_games}: {len(rec.moves)} moves",
              flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
