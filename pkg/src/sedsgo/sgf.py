"""SGF reading, writing, and replay.

Covers the subset the benchmark harness needs: the main line of the
first game tree, board size, setup stones, and moves.  Everything else
in the root node is kept as raw bytes in GameRecord.metadata.  Only
FF[3]/FF[4] files are considered; variations are ignored.

Coordinates use the two-letter scheme with "aa" as the top-left corner,
which matches the board's internal row order directly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .goboard import (
    MAX_SIZE,
    MIN_SIZE,
    Board,
    Color,
    Coord,
    IllegalMove,
    apply_move,
    build_position,
)

__all__ = [
    "GameRecord",
    "SgfSyntaxError",
    "UnsupportedSize",
    "IllegalRecordedMove",
    "parse_sgf",
    "emit_sgf",
    "replay",
]

# A move is (color, coord) or (color, None) for a pass.
Move = tuple[Color, Optional[Coord]]


class SgfSyntaxError(ValueError):
    """Malformed SGF input; offset is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class UnsupportedSize(ValueError):
    def __init__(self, size: int):
        super().__init__(f"board size {size} not supported")
        self.size = size


class IllegalRecordedMove(ValueError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"move {index} is illegal: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class GameRecord:
    """One game: size, setup stones, main-line moves, raw root metadata.

    Move colors need not alternate (handicap games start with several
    Black moves in a row in some collections).
    """

    board_size: int
    setup_black: tuple[Coord, ...]
    setup_white: tuple[Coord, ...]
    moves: tuple[Move, ...]
    metadata: dict[str, tuple[bytes, ...]]


# ---------------------------------------------------------------------------
# parsing

_HANDLED = {"SZ", "AB", "AW", "B", "W"}


class _Cursor:
    def __init__(self, data: bytes):
        self.data = data
        self.i = 0

    def skip_ws(self) -> None:
        while self.i < len(self.data) and self.data[self.i] in b" \t\r\n":
            self.i += 1

    def peek(self) -> int:
        if self.i >= len(self.data):
            raise SgfSyntaxError("unexpected end of input", self.i)
        return self.data[self.i]


def _read_prop_ident(cur: _Cursor) -> str:
    start = cur.i
    while cur.i < len(cur.data) and (
        65 <= cur.data[cur.i] <= 90 or 97 <= cur.data[cur.i] <= 122
    ):
        cur.i += 1
    if cur.i == start:
        raise SgfSyntaxError("expected property identifier", start)
    # lowercase letters in idents are an FF[3] relic (e.g. "AddBlack")
    return bytes(c for c in cur.data[start : cur.i] if 65 <= c <= 90).decode()


def _read_value(cur: _Cursor) -> bytes:
    # cur.i is on '['
    cur.i += 1
    out = bytearray()
    while True:
        if cur.i >= len(cur.data):
            raise SgfSyntaxError("unterminated property value", cur.i)
        c = cur.data[cur.i]
        if c == 0x5C:  # backslash escape
            cur.i += 1
            if cur.i >= len(cur.data):
                raise SgfSyntaxError("dangling escape", cur.i)
            out.append(cur.data[cur.i])
            cur.i += 1
        elif c == 0x5D:  # ]
            cur.i += 1
            return bytes(out)
        else:
            out.append(c)
            cur.i += 1


def _read_node(cur: _Cursor) -> list[tuple[str, list[bytes], int]]:
    """Properties of one node as (ident, values, offset-of-ident)."""
    props: list[tuple[str, list[bytes], int]] = []
    while True:
        cur.skip_ws()
        if cur.i >= len(cur.data):
            return props
        c = cur.data[cur.i]
        if c in b";()":
            return props
        offset = cur.i
        ident = _read_prop_ident(cur)
        values: list[bytes] = []
        cur.skip_ws()
        if cur.i >= len(cur.data) or cur.data[cur.i] != 0x5B:
            raise SgfSyntaxError(f"property {ident} has no value", cur.i)
        while cur.i < len(cur.data) and cur.data[cur.i] == 0x5B:
            values.append(_read_value(cur))
            cur.skip_ws()
        props.append((ident, values, offset))


def _decode_coord(value: bytes, size: int, offset: int) -> Optional[Coord]:
    if value == b"":
        return None
    if value == b"tt" and size <= 19:
        return None
    if len(value) != 2:
        raise SgfSyntaxError(f"bad coordinate {value!r}", offset)
    col = value[0] - 0x61
    row = value[1] - 0x61
    if not (0 <= col < size and 0 <= row < size):
        raise SgfSyntaxError(f"coordinate {value!r} outside board", offset)
    return Coord(col, row)


def _decode_point_list(values: list[bytes], size: int, offset: int) -> list[Coord]:
    """AB/AW values; a value "aa:cc" is a compressed rectangle."""
    points: list[Coord] = []
    for v in values:
        if b":" in v:
            a, _, b = v.partition(b":")
            c1 = _decode_coord(a, size, offset)
            c2 = _decode_coord(b, size, offset)
            if c1 is None or c2 is None:
                raise SgfSyntaxError(f"bad point rectangle {v!r}", offset)
            for col in range(min(c1.col, c2.col), max(c1.col, c2.col) + 1):
                for row in range(min(c1.row, c2.row), max(c1.row, c2.row) + 1):
                    points.append(Coord(col, row))
        else:
            c = _decode_coord(v, size, offset)
            if c is None:
                raise SgfSyntaxError("empty value in point list", offset)
            points.append(c)
    return points


def parse_sgf(data: bytes) -> GameRecord:
    """Read the main line of the first game tree.

    The main line is the leftmost path: every '(' before the first ')'
    descends into the continuation, and the first ')' ends the game.
    """
    cur = _Cursor(data)
    cur.skip_ws()
    if cur.i >= len(cur.data) or cur.data[cur.i] != 0x28:
        raise SgfSyntaxError("expected '('", cur.i)
    cur.i += 1

    nodes: list[list[tuple[str, list[bytes], int]]] = []
    while True:
        cur.skip_ws()
        c = cur.peek()
        if c == 0x3B:  # ;
            cur.i += 1
            nodes.append(_read_node(cur))
        elif c == 0x28:  # ( continue along the first variation
            cur.i += 1
        elif c == 0x29:  # ) main line ends here
            break
        else:
            raise SgfSyntaxError(f"unexpected byte {chr(c)!r}", cur.i)
    if not nodes:
        raise SgfSyntaxError("empty game tree", cur.i)

    size = 19
    setup_black: list[Coord] = []
    setup_white: list[Coord] = []
    metadata: dict[str, tuple[bytes, ...]] = {}

    for ident, values, offset in nodes[0]:
        if ident == "SZ":
            try:
                size = int(values[0])
            except ValueError:
                raise SgfSyntaxError(f"bad SZ value {values[0]!r}", offset) from None
            if not MIN_SIZE <= size <= MAX_SIZE:
                raise UnsupportedSize(size)
        elif ident not in _HANDLED:
            metadata[ident] = metadata.get(ident, ()) + tuple(values)

    moves: list[Move] = []
    for node in nodes:
        for ident, values, offset in node:
            if ident == "AB":
                setup_black.extend(_decode_point_list(values, size, offset))
            elif ident == "AW":
                setup_white.extend(_decode_point_list(values, size, offset))
            elif ident in ("B", "W"):
                color = Color.BLACK if ident == "B" else Color.WHITE
                moves.append((color, _decode_coord(values[0], size, offset)))

    return GameRecord(
        board_size=size,
        setup_black=tuple(setup_black),
        setup_white=tuple(setup_white),
        moves=tuple(moves),
        metadata=metadata,
    )


# ---------------------------------------------------------------------------
# emission

def _encode_coord(coord: Optional[Coord]) -> bytes:
    if coord is None:
        return b""
    return bytes((0x61 + coord.col, 0x61 + coord.row))


def _escape(value: bytes) -> bytes:
    return value.replace(b"\\", b"\\\\").replace(b"]", b"\\]")


def emit_sgf(record: GameRecord) -> bytes:
    out = bytearray(b"(;FF[4]GM[1]")
    out += b"SZ[%d]" % record.board_size
    for ident in sorted(record.metadata):
        if ident in ("FF", "GM"):
            continue
        out += ident.encode()
        for v in record.metadata[ident]:
            out += b"[" + _escape(v) + b"]"
    for ident, stones in (("AB", record.setup_black), ("AW", record.setup_white)):
        if stones:
            out += ident.encode()
            for c in stones:
                out += b"[" + _encode_coord(c) + b"]"
    for color, coord in record.moves:
        out += b";B[" if color is Color.BLACK else b";W["
        out += _encode_coord(coord) + b"]"
    out += b")"
    return bytes(out)


# ---------------------------------------------------------------------------
# replay

def replay(record: GameRecord, upto: int) -> Board:
    """Board after the setup stones and the first `upto` moves.

    A pass only clears any ko restriction.  An illegal recorded move
    aborts with its index; setup-stone problems raise the underlying
    position errors unchanged.
    """
    if not 0 <= upto <= len(record.moves):
        raise ValueError(f"upto {upto} out of range 0..{len(record.moves)}")
    board = build_position(
        record.board_size, record.setup_black, record.setup_white
    )
    for i in range(upto):
        color, coord = record.moves[i]
        if coord is None:
            if board.ko_point is not None:
                board = replace(board, ko_point=None, ko_color=None)
            continue
        try:
            board, _ = apply_move(board, coord, color)
        except IllegalMove as e:
            raise IllegalRecordedMove(i, e.reason) from None
    return board
