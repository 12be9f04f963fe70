"""Fixed-point evaluation of a rest position.

The state holds one number per unit: for every empty point the
probability w that it ends up in White's hands (Black's side is 1-w,
never stored), and for every block the probability s that it survives.
Unconditionally alive blocks are clamped at s = 1 and never updated.

A point update first combines its neighbouring units into two "at least
one final neighbour of that colour" probabilities,

    w_bar = 1 - prod(1 - wc(n)),   b_bar = 1 - prod(1 - bc(n)),

where an empty neighbour contributes wc = w, bc = 1 - w, a white block
wc = s, bc = 1 - s, and a black block wc = 1 - s, bc = s (a dead block's
ground goes to the opponent).  The point then relaxes to

    w = w_bar / (w_bar + b_bar).

A block dies when every adjacent opponent block survives and every
liberty falls to the opponent:

    s = 1 - prod_k s_k * prod_i opp_i,

with opp_i = w_i for a black block and 1 - w_i for a white one.  Because
taking a last liberty can never be suicide for the capturer, the single
smallest opp_i factor is raised to 1.0 before multiplying; the
AtariAdjustment enum controls when that kicks in.

Both solvers run the same update rules.  `solve` is an in-place worklist
(Gauss-Seidel); `solve_dense_oracle` runs synchronous sweeps from a
snapshot (Jacobi) and exists as an independent cross-check.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Union

from .goboard import Block, Board, Color, Coord, MoveDelta


class AtariAdjustment(Enum):
    MULTI_LIBERTY_ONLY = "multi_liberty_only"  # only when the block has >= 2 liberties
    ALWAYS = "always"
    OFF = "off"


class NoConvergence(Exception):
    pass


class DegenerateBars(ValueError):
    """Both bar values are zero; the point update is undefined."""


@dataclass(frozen=True)
class SolverConfig:
    stop_value: float = 1e-3
    max_iter: int = 5
    atari_adjustment: AtariAdjustment = AtariAdjustment.MULTI_LIBERTY_ONLY

    def __post_init__(self) -> None:
        if not (self.stop_value > 0.0):
            raise ValueError(f"stop_value must be positive, got {self.stop_value}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if not isinstance(self.atari_adjustment, AtariAdjustment):
            raise ValueError(f"bad atari_adjustment {self.atari_adjustment!r}")


class BarValues(NamedTuple):
    w_bar: float
    b_bar: float


@dataclass
class SolveStats:
    iterations: dict[int, int]  # unit -> number of updates applied
    sweeps: int
    converged: bool


@dataclass
class SedsState:
    """w keyed by empty-point index, s keyed by block id."""

    w: dict[int, float]
    s: dict[int, float]
    clamped: frozenset[int]

    def copy(self) -> "SedsState":
        return SedsState(dict(self.w), dict(self.s), self.clamped)

    def black(self, point: int) -> float:
        return 1.0 - self.w[point]


def init_state(board: Board) -> SedsState:
    """Neutral start: every point at 0.5, every block at 1.0."""
    w = {p: 0.5 for p in range(board.npts) if board.grid[p] == -1}
    s = {j: 1.0 for j in board.blocks}
    clamped = frozenset(j for j, b in board.blocks.items() if b.statically_alive)
    return SedsState(w=w, s=s, clamped=clamped)


def _unit_index(board: Board, point: Union[Coord, int]) -> int:
    return point if isinstance(point, int) else board.index(point)


def bar_values(board: Board, state: SedsState, point: Union[Coord, int]) -> BarValues:
    """Combined neighbour pull toward White and Black for one empty point."""
    p = _unit_index(board, point)
    npts = board.npts
    w = state.w
    s = state.s
    blocks = board.blocks
    pw = 1.0
    pb = 1.0
    for u in board.point_units[p]:
        if u < npts:
            x = w[u]
            pw *= 1.0 - x
            pb *= x
        else:
            j = u - npts
            sv = s[j]
            if blocks[j].color is Color.WHITE:
                pw *= 1.0 - sv
                pb *= sv
            else:
                pw *= sv
                pb *= 1.0 - sv
    return BarValues(1.0 - pw, 1.0 - pb)


def update_point(bars: BarValues) -> float:
    denom = bars.w_bar + bars.b_bar
    if denom == 0.0:
        raise DegenerateBars("both bar values are zero")
    return bars.w_bar / denom


def update_block(
    board: Board,
    state: SedsState,
    block_id: int,
    adjustment: AtariAdjustment = AtariAdjustment.MULTI_LIBERTY_ONLY,
) -> float:
    """One survival update; does not apply clamping."""
    blk = board.blocks[block_id]
    s = state.s
    w = state.w
    prod = 1.0
    for k in blk.adjacent_blocks:
        prod *= s[k]
    if blk.color is Color.WHITE:
        vals = [1.0 - w[q] for q in blk.liberties]
    else:
        vals = [w[q] for q in blk.liberties]
    if vals and (
        adjustment is AtariAdjustment.ALWAYS
        or (adjustment is AtariAdjustment.MULTI_LIBERTY_ONLY and len(vals) > 1)
    ):
        lowest = min(vals)
        skipped = False
        for v in vals:
            if not skipped and v == lowest:
                skipped = True
                continue
            prod *= v
    else:
        for v in vals:
            prod *= v
    return 1.0 - prod


def _run_worklist(
    board: Board,
    w: dict[int, float],
    s: dict[int, float],
    clamped: frozenset[int],
    config: SolverConfig,
    seed_units: Iterable[int],
) -> SolveStats:
    """Gauss-Seidel propagation over `w`/`s` in place.

    Pops a unit, recomputes it, and when the change reaches stop_value
    re-enqueues its neighbours.  A unit is updated at most max_iter times;
    convergence is clean only if no propagation was ever suppressed by
    that cap while a change of at least stop_value was pending.
    """
    npts = board.npts
    blocks = board.blocks
    point_units = board.point_units
    stop = config.stop_value
    cap = config.max_iter
    adj_always = config.atari_adjustment is AtariAdjustment.ALWAYS
    adj_multi = config.atari_adjustment is AtariAdjustment.MULTI_LIBERTY_ONLY
    clamped_units = frozenset(npts + j for j in clamped)

    queue: deque[int] = deque(seed_units)
    inq = set(queue)
    counts: dict[int, int] = {}
    converged = True
    sweeps = 0

    while queue:
        u = queue.popleft()
        inq.discard(u)
        sweeps += 1
        if u < npts:
            pw = 1.0
            pb = 1.0
            for v in point_units[u]:
                if v < npts:
                    x = w[v]
                    pw *= 1.0 - x
                    pb *= x
                else:
                    j = v - npts
                    sv = s[j]
                    if blocks[j].color is Color.WHITE:
                        pw *= 1.0 - sv
                        pb *= sv
                    else:
                        pw *= sv
                        pb *= 1.0 - sv
            wbar = 1.0 - pw
            bbar = 1.0 - pb
            new = wbar / (wbar + bbar)
            old = w[u]
            w[u] = new
        else:
            j = u - npts
            blk = blocks[j]
            prod = 1.0
            for k in blk.adjacent_blocks:
                prod *= s[k]
            if blk.color is Color.WHITE:
                vals = [1.0 - w[q] for q in blk.liberties]
            else:
                vals = [w[q] for q in blk.liberties]
            if vals and (adj_always or (adj_multi and len(vals) > 1)):
                lowest = min(vals)
                skipped = False
                for v in vals:
                    if not skipped and v == lowest:
                        skipped = True
                        continue
                    prod *= v
            else:
                for v in vals:
                    prod *= v
            new = 1.0 - prod
            old = s[j]
            s[j] = new

        cnt = counts.get(u, 0) + 1
        counts[u] = cnt
        delta = new - old
        if delta < 0.0:
            delta = -delta
        if delta >= stop:
            if cnt >= cap:
                converged = False
                continue
            if u < npts:
                targets = point_units[u]
            else:
                blk = blocks[u - npts]
                targets = list(blk.liberties) + [npts + k for k in blk.adjacent_blocks]
            for v in targets:
                if v in clamped_units or v in inq:
                    continue
                if counts.get(v, 0) >= cap:
                    converged = False
                else:
                    inq.add(v)
                    queue.append(v)

    return SolveStats(iterations=counts, sweeps=sweeps, converged=converged)


def solve(
    board: Board, state: SedsState, config: SolverConfig = SolverConfig()
) -> tuple[SedsState, SolveStats]:
    """Worklist solve from `state`; returns a new state, input untouched.

    All non-clamped units are seeded in row-major-points-then-blocks
    order, so the result is deterministic for a given board and config.
    """
    w = dict(state.w)
    s = dict(state.s)
    clamped = state.clamped
    npts = board.npts
    seed = sorted(w) + [npts + j for j in sorted(s) if j not in clamped]
    stats = _run_worklist(board, w, s, clamped, config, seed)
    return SedsState(w=w, s=s, clamped=clamped), stats


def solve_dense_oracle(
    board: Board,
    state: SedsState,
    config: SolverConfig = SolverConfig(),
    sweep_cap: int = 10_000,
) -> SedsState:
    """Synchronous Jacobi sweeps until max per-unit change < stop_value/10.

    Every sweep recomputes all units from a frozen snapshot.  Slow on
    purpose; raises NoConvergence after sweep_cap sweeps.
    """
    w = dict(state.w)
    s = dict(state.s)
    clamped = state.clamped
    target = config.stop_value / 10.0
    probe = SedsState(w=w, s=s, clamped=clamped)
    for _ in range(sweep_cap):
        max_delta = 0.0
        new_w = {}
        for p in w:
            nv = update_point(bar_values(board, probe, p))
            d = abs(nv - w[p])
            if d > max_delta:
                max_delta = d
            new_w[p] = nv
        new_s = {}
        for j in s:
            if j in clamped:
                new_s[j] = s[j]
                continue
            nv = update_block(board, probe, j, config.atari_adjustment)
            d = abs(nv - s[j])
            if d > max_delta:
                max_delta = d
            new_s[j] = nv
        w = new_w
        s = new_s
        probe = SedsState(w=w, s=s, clamped=clamped)
        if max_delta < target:
            return probe
    raise NoConvergence(f"no fixed point after {sweep_cap} synchronous sweeps")


def resolve_incremental(
    board_after: Board,
    prev_state: SedsState,
    delta: Optional[MoveDelta],
    config: SolverConfig = SolverConfig(),
) -> tuple[SedsState, SolveStats]:
    """Re-solve after one move, starting from the previous fixed point.

    The state is re-dimensioned (played point dropped, captured points
    re-enter at 0.5, a merged block inherits the minimum predecessor s)
    and the worklist is seeded with the delta's changed units plus their
    neighbours.  With no delta the previous state comes straight back.
    """
    if delta is None or not delta.changed_units:
        return prev_state, SolveStats(iterations={}, sweeps=0, converged=True)

    npts = board_after.npts
    w = dict(prev_state.w)
    s = dict(prev_state.s)
    w.pop(delta.played, None)
    for q in delta.captured_points:
        w[q] = 0.5
    for j in delta.captured:
        s.pop(j, None)
    merged_s = [s.pop(m) for m in delta.merged if m in s]
    s[delta.new_block] = min(merged_s) if merged_s else 1.0

    clamped = frozenset(
        j for j, b in board_after.blocks.items() if b.statically_alive
    )
    for j in clamped:
        s[j] = 1.0

    seed_set = set()
    for u in delta.changed_units:
        seed_set.add(u)
        if u < npts:
            seed_set.update(board_after.point_units[u])
        else:
            blk = board_after.blocks[u - npts]
            seed_set.update(blk.liberties)
            seed_set.update(npts + k for k in blk.adjacent_blocks)
    clamped_units = {npts + j for j in clamped}
    seed = sorted(seed_set - clamped_units)

    stats = _run_worklist(board_after, w, s, clamped, config, seed)
    return SedsState(w=w, s=s, clamped=clamped), stats
