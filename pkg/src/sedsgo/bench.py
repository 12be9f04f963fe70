"""Move-prediction statistics and timing over an SGF corpus.

For every position in every game the recorded move is looked up in the
engine's full ranking and its percentile bucket (0..99, 99 best) is
recorded, separately per move number.  From the per-bucket counts the
survival curve R(x) = share of recorded moves at percentile x or better
is derived; R is computed from integer tail sums over one division, so
R(0) is exactly 100 and recomputing R from the counts reproduces the
emitted values bit for bit.

Timing follows the two-column protocol: mean wall-clock time for
applying one move plus the incremental re-solve, and for ranking all
legal moves, at requested move numbers.
"""

from __future__ import annotations

import csv
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .analysis import UnknownMove, percentile_of, rank_moves
from .goboard import apply_move
from .seds import SolverConfig, init_state, resolve_incremental, solve
from .sgf import GameRecord, IllegalRecordedMove, parse_sgf, replay

__all__ = [
    "PredictionHistogram",
    "SurvivalCurve",
    "CorpusStats",
    "TimingRow",
    "TimingProfile",
    "ProMoveIllegal",
    "EmptyCorpus",
    "predict_rank",
    "run_corpus",
    "random_baseline",
    "timing_profile",
    "write_histogram_csv",
    "write_survival_csv",
    "write_timing_csv",
]


class ProMoveIllegal(Exception):
    """The recorded move is not legal under our rules (rare SGF defect)."""

    def __init__(self, index: int):
        super().__init__(f"recorded move {index} not in the legal move set")
        self.index = index


class EmptyCorpus(Exception):
    pass


@dataclass(frozen=True)
class PredictionHistogram:
    """Bucket counts for one move number; bucket x holds recorded moves
    that landed in percentile x..x+1 of the ranking."""

    move_number: int
    buckets: tuple[int, ...]  # 100 counters
    positions_counted: int

    def density(self) -> tuple[float, ...]:
        if self.positions_counted == 0:
            return (0.0,) * 100
        return tuple(c / self.positions_counted for c in self.buckets)


@dataclass(frozen=True)
class SurvivalCurve:
    """R(x) in percent for x = 0..99; non-increasing, R(0) = 100."""

    values: tuple[float, ...]


def survival_from_buckets(buckets: Sequence[int]) -> SurvivalCurve:
    total = sum(buckets)
    if total == 0:
        return SurvivalCurve(values=(0.0,) * 100)
    tail = 0
    rev: list[float] = []
    for count in reversed(buckets):
        tail += count
        rev.append(100.0 * tail / total)
    return SurvivalCurve(values=tuple(reversed(rev)))


@dataclass(frozen=True)
class CorpusStats:
    histograms: dict[int, PredictionHistogram]
    survivals: dict[int, SurvivalCurve]
    games: int
    positions: int
    skipped_passes: int
    skipped_illegal: int
    failed_files: tuple[str, ...]


@dataclass(frozen=True)
class TimingRow:
    move_number: int
    eval_seconds: float  # mean: apply one move + incremental re-solve
    rank_seconds: float  # mean: full ranking of all legal moves
    samples: int


@dataclass(frozen=True)
class TimingProfile:
    rows: tuple[TimingRow, ...]


def predict_rank(
    record: GameRecord, move_index: int, config: SolverConfig = SolverConfig()
) -> int:
    """Percentile bucket of the recorded move at move_index.

    The position before the move is ranked for the recorded mover; the
    caller is expected to filter out passes beforehand.
    """
    color, coord = record.moves[move_index]
    if coord is None:
        raise ValueError("recorded move is a pass")
    board = replay(record, move_index)
    ranking = rank_moves(board, color, config)
    try:
        return percentile_of(ranking, coord)
    except UnknownMove:
        raise ProMoveIllegal(move_index) from None


def _game_buckets(
    path: str,
    config: SolverConfig,
    move_numbers: Optional[frozenset[int]],
) -> tuple[list[tuple[int, int]], int, int, Optional[str]]:
    """(move_number, bucket) pairs for one file, plus skip counts.

    Returns (pairs, skipped_passes, skipped_illegal, parse_error)."""
    try:
        record = parse_sgf(Path(path).read_bytes())
    except ValueError as e:
        return [], 0, 0, f"{path}: {e}"
    pairs: list[tuple[int, int]] = []
    passes = 0
    illegal = 0
    for index in range(len(record.moves)):
        number = index + 1
        if move_numbers is not None and number not in move_numbers:
            continue
        if record.moves[index][1] is None:
            passes += 1
            continue
        try:
            pairs.append((number, predict_rank(record, index, config)))
        except ProMoveIllegal:
            illegal += 1
        except IllegalRecordedMove:
            break  # an unreplayable recorded move invalidates the rest
    return pairs, passes, illegal, None


def run_corpus(
    directory: str | Path,
    config: SolverConfig = SolverConfig(),
    move_numbers: Optional[Iterable[int]] = None,
    jobs: int = 1,
) -> CorpusStats:
    """Prediction statistics over every .sgf file in a directory.

    Files are processed in sorted-name order and merged by summing
    integer bucket counts, so results are deterministic regardless of
    parallelism.  Files that fail to parse are skipped and listed; only
    an entirely unusable directory is an error.
    """
    files = sorted(str(p) for p in Path(directory).glob("*.sgf"))
    if not files:
        raise EmptyCorpus(f"no .sgf files in {directory}")
    wanted = frozenset(move_numbers) if move_numbers is not None else None

    task = partial(_game_buckets, config=config, move_numbers=wanted)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(task, files))
    else:
        results = [task(f) for f in files]

    counts: dict[int, list[int]] = {}
    passes = 0
    illegal = 0
    failed: list[str] = []
    games = 0
    positions = 0
    for pairs, p, il, err in results:
        if err is not None:
            failed.append(err)
            continue
        games += 1
        passes += p
        illegal += il
        for number, bucket in pairs:
            counts.setdefault(number, [0] * 100)[bucket] += 1
            positions += 1
    if games == 0:
        raise EmptyCorpus(f"no parseable games in {directory}")

    histograms = {
        n: PredictionHistogram(
            move_number=n, buckets=tuple(c), positions_counted=sum(c)
        )
        for n, c in sorted(counts.items())
    }
    survivals = {n: survival_from_buckets(h.buckets) for n, h in histograms.items()}
    return CorpusStats(
        histograms=histograms,
        survivals=survivals,
        games=games,
        positions=positions,
        skipped_passes=passes,
        skipped_illegal=illegal,
        failed_files=tuple(failed),
    )


def random_baseline(legal_counts: Sequence[int], seed: int = 0) -> SurvivalCurve:
    """Survival curve of a random mover: for each position the recorded
    move is placed uniformly in a shuffled ranking of the given size.
    Runs through the same bucket aggregation as the real pipeline."""
    rng = random.Random(seed)
    buckets = [0] * 100
    for n_legal in legal_counts:
        worse = rng.randrange(n_legal)
        buckets[(100 * worse) // n_legal] += 1
    return survival_from_buckets(buckets)


def timing_profile(
    directory: str | Path,
    config: SolverConfig = SolverConfig(),
    move_numbers: Sequence[int] = (10, 30, 100, 130, 200, 300),
) -> TimingProfile:
    """Mean evaluation and ranking wall-clock times at given move numbers.

    Measurements are single-threaded; each sample replays the game to
    the position before the move, solves it (untimed), then times one
    apply+incremental evaluation and one full ranking.
    """
    files = sorted(str(p) for p in Path(directory).glob("*.sgf"))
    if not files:
        raise EmptyCorpus(f"no .sgf files in {directory}")
    sums: dict[int, list[float]] = {m: [0.0, 0.0, 0] for m in move_numbers}
    parsed = 0
    for path in files:
        try:
            record = parse_sgf(Path(path).read_bytes())
        except ValueError:
            continue
        parsed += 1
        for m in move_numbers:
            if m < 1 or m > len(record.moves):
                continue
            color, coord = record.moves[m - 1]
            if coord is None:
                continue
            try:
                board = replay(record, m - 1)
            except ValueError:
                break
            parent, _ = solve(board, init_state(board), config)

            t0 = time.perf_counter()
            after, delta = apply_move(board, coord, color)
            resolve_incremental(after, parent, delta, config)
            t1 = time.perf_counter()
            rank_moves(board, color, config)
            t2 = time.perf_counter()

            acc = sums[m]
            acc[0] += t1 - t0
            acc[1] += t2 - t1
            acc[2] += 1
    if parsed == 0:
        raise EmptyCorpus(f"no parseable games in {directory}")
    rows = tuple(
        TimingRow(
            move_number=m,
            eval_seconds=acc[0] / acc[2],
            rank_seconds=acc[1] / acc[2],
            samples=int(acc[2]),
        )
        for m, acc in sorted(sums.items())
        if acc[2] > 0
    )
    return TimingProfile(rows=rows)


# ---------------------------------------------------------------------------
# CSV emission; numbers use shortest-roundtrip decimal so parsing a file
# back yields bit-equal values

def write_histogram_csv(stats: CorpusStats, path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        out = csv.writer(f)
        out.writerow(["move_number", "bucket", "count"])
        for n, hist in sorted(stats.histograms.items()):
            for bucket, count in enumerate(hist.buckets):
                out.writerow([n, bucket, count])


def write_survival_csv(stats: CorpusStats, path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        out = csv.writer(f)
        out.writerow(["move_number", "x", "R"])
        for n, curve in sorted(stats.survivals.items()):
            for x, r in enumerate(curve.values):
                out.writerow([n, x, repr(r)])


def write_timing_csv(profile: TimingProfile, path: str | Path) -> None:
    with open(path, "w", newline="") as f:
        out = csv.writer(f)
        out.writerow(["move_number", "eval_us", "rank_ms"])
        for row in profile.rows:
            out.writerow(
                [
                    row.move_number,
                    repr(row.eval_seconds * 1e6),
                    repr(row.rank_seconds * 1e3),
                ]
            )
