"""Decision layer on top of solved states.

Turns the raw ownership/survival numbers into things a player (or a UI)
can act on: a full-board score, a 1-ply ranking of all legal moves with
percentile buckets, an instability map highlighting contested areas, and
local field indicators (dipole and quadrupole) around an empty point.

Scoring is area-style: every intersection's expectation is split between
the sides, so black_total + white_total always equals size².
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .goboard import Board, Color, Coord, apply_move, legal_moves
from .seds import (
    SedsState,
    SolveStats,
    SolverConfig,
    init_state,
    resolve_incremental,
    solve,
)

__all__ = [
    "Score",
    "MoveRanking",
    "InstabilityMap",
    "UnknownMove",
    "score",
    "rank_moves",
    "percentile_of",
    "instability_map",
    "quadrupole_indicator",
    "dipole_indicator",
]


class UnknownMove(KeyError):
    """Raised when a coord is not among the ranked moves."""


@dataclass(frozen=True)
class Score:
    """Expected points for each side; the pair always sums to size²."""

    black_total: float
    white_total: float

    @property
    def net(self) -> float:
        return self.black_total - self.white_total


@dataclass(frozen=True)
class MoveRanking:
    """All legal moves for one side, best first.

    entries holds (coord, score-from-the-mover's-perspective) sorted by
    descending score with row-major ties.  Percentile buckets count the
    moves ordered after a given one (equal scores fall on the tie-break,
    keeping histograms reproducible), so the best move of 100 lands in
    bucket 99 and the worst in bucket 0.
    """

    mover: Color
    entries: tuple[tuple[Coord, float], ...]
    percentiles: dict[Coord, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class InstabilityMap:
    """Where the solver had to work: per-unit iteration counts plus a
    per-empty-point aggregate (max over the point and its adjacent
    blocks).  Zero everywhere the worklist never revisited."""

    counts: dict[int, int]
    aggregate: dict[int, int]


def score(board: Board, state: SedsState) -> Score:
    """Area score of a solved state.

    Empty points split by ownership; a block's area goes to its owner
    in proportion to survival, the rest accrues to the opponent.
    """
    black = 0.0
    white = 0.0
    for w in state.w.values():
        black += 1.0 - w
        white += w
    for blk in board.blocks.values():
        s = state.s[blk.id]
        n = len(blk.stones)
        if blk.color is Color.BLACK:
            black += s * n
            white += (1.0 - s) * n
        else:
            white += s * n
            black += (1.0 - s) * n
    return Score(black_total=black, white_total=white)


def _percentile_buckets(
    entries: list[tuple[Coord, float]],
) -> dict[Coord, int]:
    total = len(entries)
    return {
        c: (100 * (total - 1 - k)) // total
        for k, (c, _) in enumerate(entries)
    }


def rank_moves(
    board: Board,
    mover: Color,
    config: SolverConfig = SolverConfig(),
    workers: int = 1,
) -> MoveRanking:
    """Rank every legal move by the score it leads to.

    Solves the parent position once, then evaluates each move with an
    incremental re-solve from the parent state.  Scores are from the
    mover's perspective.  workers > 1 fans candidate moves out over a
    thread pool; the merge is a deterministic sort, so the result is
    bit-identical to the sequential one.
    """
    parent, _ = solve(board, init_state(board), config)
    moves = legal_moves(board, mover)

    def eval_move(coord: Coord) -> tuple[Coord, float]:
        after, delta = apply_move(board, coord, mover)
        state, _ = resolve_incremental(after, parent, delta, config)
        net = score(after, state).net
        return coord, net if mover is Color.BLACK else -net

    if workers > 1 and len(moves) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(eval_move, moves))
    else:
        results = [eval_move(c) for c in moves]

    results.sort(key=lambda e: (-e[1], e[0].row, e[0].col))
    return MoveRanking(
        mover=mover,
        entries=tuple(results),
        percentiles=_percentile_buckets(results),
    )


def percentile_of(ranking: MoveRanking, coord: Coord) -> int:
    """Percentile bucket 0..99 of a ranked move; 99 is best."""
    try:
        return ranking.percentiles[coord]
    except KeyError:
        raise UnknownMove(coord) from None


def instability_map(board: Board, stats: SolveStats) -> InstabilityMap:
    counts = dict(stats.iterations)
    aggregate: dict[int, int] = {}
    for p, units in board.point_units.items():
        m = counts.get(p, 0)
        for u in units:
            if u >= board.npts:
                m = max(m, counts.get(u, 0))
        aggregate[p] = m
    return InstabilityMap(counts=counts, aggregate=aggregate)


def _black_ownership(board: Board, state: SedsState, idx: Optional[int]) -> float:
    # off-board neighbours count as neutral
    if idx is None:
        return 0.5
    if board.grid[idx] == -1:
        return 1.0 - state.w[idx]
    blk = board.blocks[board.grid[idx]]
    s = state.s[blk.id]
    return s if blk.color is Color.BLACK else 1.0 - s


def _compass_values(
    board: Board, state: SedsState, point: Coord
) -> tuple[float, float, float, float]:
    """Black-ownership of the four orthogonal neighbours as (N, S, W, E)."""
    col, row = point
    idx = board.index(point)
    if board.grid[idx] != -1:
        raise ValueError(f"point {point} is not empty")
    size = board.size
    north = idx - size if row > 0 else None
    south = idx + size if row < size - 1 else None
    west = idx - 1 if col > 0 else None
    east = idx + 1 if col < size - 1 else None
    return (
        _black_ownership(board, state, north),
        _black_ownership(board, state, south),
        _black_ownership(board, state, west),
        _black_ownership(board, state, east),
    )


def quadrupole_indicator(board: Board, state: SedsState, point: Coord) -> float:
    """|N+S−W−E| of black ownership around an empty point, in [0, 2].

    Large values mark cut points between opposing vertical and
    horizontal influences.
    """
    n, s, w, e = _compass_values(board, state, point)
    return abs(n + s - w - e)


def dipole_indicator(
    board: Board, state: SedsState, point: Coord
) -> tuple[float, float]:
    """(east−west, north−south) gradient of black ownership at an empty
    point; points in the direction of fastest increase of Black's
    influence."""
    n, s, w, e = _compass_values(board, state, point)
    return (e - w, n - s)
