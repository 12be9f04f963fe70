"""Go board with incremental block and adjacency bookkeeping.

Intersections are indexed 0..size*size-1 in row-major order: index =
row*size + col, row 0 at the top (matching the SGF coordinate scheme).
Occupied intersections belong to exactly one block.  Block ids are stable
across moves; a merge allocates a fresh id, so an id never changes meaning.

The evaluator iterates over *units*: an empty point is the unit equal to
its own index, a block is the unit size*size + block_id.  Every empty
point keeps the tuple of its adjacent units with duplicate blocks removed
(a point touching the same block twice lists it once).  Edge and corner
points simply have fewer neighbours; there is no border padding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import IntEnum
from typing import Iterable, NamedTuple, Optional, Sequence


class Color(IntEnum):
    BLACK = 0
    WHITE = 1

    @property
    def opposite(self) -> "Color":
        return Color(1 - self.value)


class Coord(NamedTuple):
    col: int
    row: int


# reasons carried by IllegalMove
OCCUPIED = "occupied"
SUICIDE = "suicide"
KO = "ko"


class IllegalMove(Exception):
    def __init__(self, reason: str, coord: Optional[Coord] = None):
        self.reason = reason
        self.coord = coord
        msg = f"illegal move ({reason})"
        if coord is not None:
            msg += f" at {coord}"
        super().__init__(msg)


class BadCoord(ValueError):
    pass


class OverlappingStones(ValueError):
    pass


class ZeroLibertyBlock(ValueError):
    pass


MIN_SIZE = 2
MAX_SIZE = 25

_NBR_CACHE: dict[int, tuple[tuple[int, ...], ...]] = {}


def neighbors_table(size: int) -> tuple[tuple[int, ...], ...]:
    """Per point, the indices of orthogonally adjacent points (up, left, right, down)."""
    tbl = _NBR_CACHE.get(size)
    if tbl is None:
        rows = []
        for row in range(size):
            for col in range(size):
                i = row * size + col
                ns = []
                if row > 0:
                    ns.append(i - size)
                if col > 0:
                    ns.append(i - 1)
                if col < size - 1:
                    ns.append(i + 1)
                if row < size - 1:
                    ns.append(i + size)
                rows.append(tuple(ns))
        tbl = tuple(rows)
        _NBR_CACHE[size] = tbl
    return tbl


@dataclass(frozen=True)
class Block:
    id: int
    color: Color
    stones: frozenset[int]
    liberties: frozenset[int]
    adjacent_blocks: frozenset[int]  # touching blocks; always opponent-coloured
    statically_alive: bool = False


@dataclass(frozen=True)
class MoveDelta:
    """What a move changed, in terms the incremental re-solve consumes.

    changed_units is a superset of every unit whose adjacency, liberty set
    or statically_alive flag differs between the pre- and post-move board;
    it only names units that exist on the post-move board.
    """

    played: int
    color: Color
    new_block: int
    merged: tuple[int, ...]
    captured: tuple[int, ...]
    captured_points: tuple[int, ...]
    changed_units: frozenset[int]


@dataclass
class Board:
    """A rest position.  Treated as immutable by readers; apply_move copies.

    grid[i] is -1 for empty, else the block id occupying intersection i.
    point_units maps every empty point to its adjacent units (deduplicated,
    in up/left/right/down discovery order).
    """

    size: int
    grid: list[int]
    blocks: dict[int, Block]
    point_units: dict[int, tuple[int, ...]]
    ko_point: Optional[int] = None
    ko_color: Optional[Color] = None
    next_block_id: int = 0

    @property
    def npts(self) -> int:
        return self.size * self.size

    def index(self, coord: Coord) -> int:
        col, row = coord
        if not (0 <= col < self.size and 0 <= row < self.size):
            raise BadCoord(f"{coord!r} outside a {self.size}x{self.size} board")
        return row * self.size + col

    def coord(self, idx: int) -> Coord:
        return Coord(idx % self.size, idx // self.size)

    def block_unit(self, block_id: int) -> int:
        return self.npts + block_id

    def is_point_unit(self, unit: int) -> bool:
        return unit < self.npts

    def block_at(self, coord: Coord) -> Optional[Block]:
        j = self.grid[self.index(coord)]
        return None if j == -1 else self.blocks[j]

    def empty_indices(self) -> list[int]:
        return [i for i, j in enumerate(self.grid) if j == -1]

    def stones(self, color: Color) -> set[Coord]:
        out: set[Coord] = set()
        for blk in self.blocks.values():
            if blk.color is color:
                out.update(self.coord(i) for i in blk.stones)
        return out

    @property
    def ko_coord(self) -> Optional[Coord]:
        return None if self.ko_point is None else self.coord(self.ko_point)


def _point_units_at(grid: list[int], nbrs: Sequence[int], npts: int) -> tuple[int, ...]:
    units: list[int] = []
    for t in nbrs:
        j = grid[t]
        u = t if j == -1 else npts + j
        if u not in units:
            units.append(u)
    return tuple(units)


def build_position(
    size: int,
    black_stones: Iterable[Coord] = (),
    white_stones: Iterable[Coord] = (),
) -> Board:
    """Build a rest position from scratch.

    Raises BadCoord for coordinates off the board or an unsupported size,
    OverlappingStones for duplicates, ZeroLibertyBlock if any block would
    have no liberty (not a rest position).
    """
    if not (MIN_SIZE <= size <= MAX_SIZE):
        raise BadCoord(f"board size {size} not in {MIN_SIZE}..{MAX_SIZE}")
    npts = size * size
    colors: list[int] = [-1] * npts
    for color, coords in ((Color.BLACK, black_stones), (Color.WHITE, white_stones)):
        for c in coords:
            col, row = c
            if not (0 <= col < size and 0 <= row < size):
                raise BadCoord(f"{tuple(c)!r} outside a {size}x{size} board")
            i = row * size + col
            if colors[i] != -1:
                raise OverlappingStones(f"two stones on {tuple(c)!r}")
            colors[i] = int(color)

    nbr = neighbors_table(size)
    grid = [-1] * npts
    blocks: dict[int, Block] = {}
    next_id = 0
    for start in range(npts):
        if colors[start] == -1 or grid[start] != -1:
            continue
        color = Color(colors[start])
        stack = [start]
        grid[start] = next_id
        stones: list[int] = []
        while stack:
            q = stack.pop()
            stones.append(q)
            for t in nbr[q]:
                if colors[t] == colors[q] and grid[t] == -1:
                    grid[t] = next_id
                    stack.append(t)
        blocks[next_id] = Block(
            id=next_id,
            color=color,
            stones=frozenset(stones),
            liberties=frozenset(),
            adjacent_blocks=frozenset(),
        )
        next_id += 1

    # second pass: liberties and block adjacency
    libs: dict[int, set[int]] = {j: set() for j in blocks}
    adj: dict[int, set[int]] = {j: set() for j in blocks}
    for i in range(npts):
        j = grid[i]
        if j == -1:
            continue
        for t in nbr[i]:
            tj = grid[t]
            if tj == -1:
                libs[j].add(t)
            elif tj != j:
                adj[j].add(tj)
    for j in blocks:
        if not libs[j]:
            ex = blocks[j]
            raise ZeroLibertyBlock(
                f"block on {sorted(Coord(i % size, i // size) for i in ex.stones)} has no liberty"
            )
        blocks[j] = replace(blocks[j], liberties=frozenset(libs[j]), adjacent_blocks=frozenset(adj[j]))

    point_units = {
        i: _point_units_at(grid, nbr[i], npts) for i in range(npts) if grid[i] == -1
    }
    board = Board(
        size=size,
        grid=grid,
        blocks=blocks,
        point_units=point_units,
        next_block_id=next_id,
    )
    benson_alive(board)
    return board


def _pass_alive_ids(board: Board, color: Color) -> set[int]:
    """Blocks of `color` that are unconditionally alive (vital-region fixpoint)."""
    size = board.size
    npts = board.npts
    grid = board.grid
    nbr = neighbors_table(size)
    blocks = board.blocks

    # maximal connected regions of points not occupied by `color`
    region_id = [-1] * npts
    regions: list[tuple[list[int], set[int]]] = []  # (empty points, bordering color blocks)
    for start in range(npts):
        if region_id[start] != -1:
            continue
        j = grid[start]
        if j != -1 and blocks[j].color is color:
            continue
        rid = len(regions)
        empties: list[int] = []
        border: set[int] = set()
        region_id[start] = rid
        stack = [start]
        while stack:
            q = stack.pop()
            if grid[q] == -1:
                empties.append(q)
            for t in nbr[q]:
                tj = grid[t]
                if tj != -1 and blocks[tj].color is color:
                    border.add(tj)
                elif region_id[t] == -1:
                    region_id[t] = rid
                    stack.append(t)
        regions.append((empties, border))

    candidates = {j for j, b in blocks.items() if b.color is color}
    vital_to: dict[int, set[int]] = {j: set() for j in candidates}
    for rid, (empties, border) in enumerate(regions):
        for j in border:
            lib = blocks[j].liberties
            if all(q in lib for q in empties):
                vital_to[j].add(rid)

    live_regions = set(range(len(regions)))
    while True:
        changed = False
        for j in list(candidates):
            if len(vital_to[j] & live_regions) < 2:
                candidates.discard(j)
                changed = True
        if not candidates:
            return candidates
        for rid in list(live_regions):
            if any(b not in candidates for b in regions[rid][1]):
                live_regions.discard(rid)
                changed = True
        if not changed:
            return candidates


def benson_alive(board: Board) -> set[int]:
    """Ids of all unconditionally alive blocks; marks statically_alive flags."""
    alive = _pass_alive_ids(board, Color.BLACK) | _pass_alive_ids(board, Color.WHITE)
    for j, blk in board.blocks.items():
        flag = j in alive
        if blk.statically_alive != flag:
            board.blocks[j] = replace(blk, statically_alive=flag)
    return alive


def _is_legal(board: Board, p: int, color: Color) -> bool:
    if board.ko_point == p and board.ko_color == color:
        return False
    grid = board.grid
    blocks = board.blocks
    capture = False
    escape = False
    for t in neighbors_table(board.size)[p]:
        j = grid[t]
        if j == -1:
            return True
        blk = blocks[j]
        if blk.color is color:
            if len(blk.liberties) > 1:
                escape = True
        elif len(blk.liberties) == 1:
            capture = True
    return capture or escape


def legal_moves(board: Board, color: Color) -> list[Coord]:
    """All legal placements for `color`, in row-major order.  Pass excluded."""
    out = []
    grid = board.grid
    for p in range(board.npts):
        if grid[p] == -1 and _is_legal(board, p, color):
            out.append(board.coord(p))
    return out


def apply_move(board: Board, coord: Coord, color: Color) -> tuple[Board, MoveDelta]:
    """Play a stone; returns the successor position and what changed.

    The input board is untouched.  Captures are removed before the played
    block's liberties are judged, so a capturing move is never suicide.
    Simple ko: ko_point is set when the move captures exactly one stone and
    the played block ends with one stone and one liberty.
    """
    size = board.size
    npts = board.npts
    p = board.index(coord)
    if board.grid[p] != -1:
        raise IllegalMove(OCCUPIED, coord)
    if board.ko_point == p and board.ko_color == color:
        raise IllegalMove(KO, coord)

    nbr = neighbors_table(size)
    friends: list[int] = []
    enemies: list[int] = []
    empty_nbrs: list[int] = []
    for t in nbr[p]:
        j = board.grid[t]
        if j == -1:
            empty_nbrs.append(t)
        elif board.blocks[j].color is color:
            if j not in friends:
                friends.append(j)
        elif j not in enemies:
            enemies.append(j)

    captured = [j for j in enemies if len(board.blocks[j].liberties) == 1]
    if not captured and not empty_nbrs and all(
        len(board.blocks[j].liberties) == 1 for j in friends
    ):
        raise IllegalMove(SUICIDE, coord)

    grid = list(board.grid)
    blocks = dict(board.blocks)
    point_units = dict(board.point_units)
    changed: set[int] = set()
    captured_set = set(captured)
    merged_set = set(friends)

    captured_points: list[int] = []
    for j in captured:
        blk = blocks.pop(j)
        for q in blk.stones:
            grid[q] = -1
            captured_points.append(q)

    saved_friends = [board.blocks[m] for m in friends]
    new_id = board.next_block_id
    stones: set[int] = {p}
    libs: set[int] = set(empty_nbrs)
    adjacent: set[int] = set()
    for fb in saved_friends:
        stones |= fb.stones
        libs |= fb.liberties
        adjacent |= fb.adjacent_blocks
        blocks.pop(fb.id)
    libs.discard(p)
    adjacent -= captured_set
    for j in enemies:
        if j not in captured_set:
            adjacent.add(j)
    for q in captured_points:
        for t in nbr[q]:
            if t in stones:
                libs.add(q)
                break
    for q in stones:
        grid[q] = new_id
    blocks[new_id] = Block(
        id=new_id,
        color=color,
        stones=frozenset(stones),
        liberties=frozenset(libs),
        adjacent_blocks=frozenset(adjacent),
    )
    changed.add(npts + new_id)

    # enemy blocks touching the played stone or a merged predecessor
    touched = {j for j in enemies if j not in captured_set}
    for fb in saved_friends:
        touched |= set(fb.adjacent_blocks) - captured_set
    for j in touched:
        b = blocks[j]
        blocks[j] = replace(
            b,
            liberties=b.liberties - {p},
            adjacent_blocks=frozenset((b.adjacent_blocks - merged_set) | {new_id}),
        )
        changed.add(npts + j)

    # own-colour blocks next to a capture regain liberties, forget the dead id
    if captured_points:
        gained: dict[int, set[int]] = {}
        for q in captured_points:
            for t in nbr[q]:
                tj = grid[t]
                if tj != -1 and tj != new_id:
                    gained.setdefault(tj, set()).add(q)
        for j, pts in gained.items():
            b = blocks[j]
            blocks[j] = replace(
                b,
                liberties=frozenset(b.liberties | pts),
                adjacent_blocks=b.adjacent_blocks - captured_set,
            )
            changed.add(npts + j)

    # adjacency tuples that need rebuilding
    dirty = {t for t in nbr[p] if grid[t] == -1}
    for fb in saved_friends:
        dirty |= {q for q in fb.liberties if grid[q] == -1}
    dirty.update(captured_points)
    for q in captured_points:
        dirty.update(t for t in nbr[q] if grid[t] == -1)
    dirty.discard(p)
    point_units.pop(p)
    for q in dirty:
        point_units[q] = _point_units_at(grid, nbr[q], npts)
    changed |= dirty

    ko_point: Optional[int] = None
    ko_color: Optional[Color] = None
    if len(captured_points) == 1 and len(stones) == 1 and len(libs) == 1:
        ko_point = captured_points[0]
        ko_color = color.opposite

    new_board = Board(
        size=size,
        grid=grid,
        blocks=blocks,
        point_units=point_units,
        ko_point=ko_point,
        ko_color=ko_color,
        next_block_id=new_id + 1,
    )
    pre_flags = {j: b.statically_alive for j, b in board.blocks.items()}
    benson_alive(new_board)
    for j, b in new_board.blocks.items():
        if b.statically_alive != pre_flags.get(j, False):
            changed.add(npts + j)

    delta = MoveDelta(
        played=p,
        color=color,
        new_block=new_id,
        merged=tuple(friends),
        captured=tuple(captured),
        captured_points=tuple(captured_points),
        changed_units=frozenset(changed),
    )
    return new_board, delta


def random_position(size: int, n_stones: int, rng: random.Random) -> Board:
    """Board reached by random legal play until n_stones stones remain.

    Moves alternate starting with Black; captures can lower the count, so
    play continues until the board holds at least n_stones stones.  Stops
    early if the mover has no legal move.  Deterministic in rng.
    """
    board = build_position(size, [], [])
    color = Color.BLACK
    while board.npts - len(board.point_units) < n_stones:
        legal = legal_moves(board, color)
        if not legal:
            break
        board, _ = apply_move(board, rng.choice(legal), color)
        color = color.opposite
    return board
