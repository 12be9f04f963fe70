// Just enough Go rules to derive the stone set after a click: captures,
// suicide, simple ko.  All evaluation stays on the server; this file only
// decides which stones remain on the board so the next request can be built.

import type { Coord, StoneColor } from "./types.js";

export interface BoardPosition {
  size: number;
  black: Coord[];
  white: Coord[];
  /** point the given color may not retake this turn */
  ko: { point: Coord; color: StoneColor } | null;
}

export class RulesError extends Error {
  constructor(readonly reason: "occupied" | "suicide" | "ko") {
    super(`illegal move: ${reason}`);
  }
}

export function emptyPosition(size: number): BoardPosition {
  return { size, black: [], white: [], ko: null };
}

export function opposite(color: StoneColor): StoneColor {
  return color === "black" ? "white" : "black";
}

const idx = (size: number, c: Coord): number => c.row * size + c.col;
const coord = (size: number, i: number): Coord => ({
  col: i % size,
  row: Math.floor(i / size),
});

function neighbors(size: number, i: number): number[] {
  const c = coord(size, i);
  const out: number[] = [];
  if (c.col > 0) out.push(i - 1);
  if (c.col < size - 1) out.push(i + 1);
  if (c.row > 0) out.push(i - size);
  if (c.row < size - 1) out.push(i + size);
  return out;
}

/** Flood-fill the group containing start; returns its stones and liberties. */
function group(
  size: number,
  own: Set<number>,
  other: Set<number>,
  start: number,
): { stones: Set<number>; liberties: Set<number> } {
  const stones = new Set<number>([start]);
  const liberties = new Set<number>();
  const queue = [start];
  while (queue.length > 0) {
    const i = queue.pop()!;
    for (const n of neighbors(size, i)) {
      if (own.has(n)) {
        if (!stones.has(n)) {
          stones.add(n);
          queue.push(n);
        }
      } else if (!other.has(n)) {
        liberties.add(n);
      }
    }
  }
  return { stones, liberties };
}

export interface MoveResult {
  position: BoardPosition;
  captured: Coord[];
}

/** Apply one move, removing captured opponent groups.  Throws RulesError. */
export function applyMove(
  position: BoardPosition,
  move: Coord,
  color: StoneColor,
): MoveResult {
  const { size } = position;
  const p = idx(size, move);
  const own = new Set(
    (color === "black" ? position.black : position.white).map((c) => idx(size, c)),
  );
  const other = new Set(
    (color === "black" ? position.white : position.black).map((c) => idx(size, c)),
  );
  if (own.has(p) || other.has(p)) throw new RulesError("occupied");
  if (
    position.ko !== null &&
    position.ko.color === color &&
    idx(size, position.ko.point) === p
  ) {
    throw new RulesError("ko");
  }

  own.add(p);
  const captured = new Set<number>();
  for (const n of neighbors(size, p)) {
    if (other.has(n) && !captured.has(n)) {
      const g = group(size, other, own, n);
      if (g.liberties.size === 0) g.stones.forEach((s) => captured.add(s));
    }
  }
  captured.forEach((s) => other.delete(s));

  const placed = group(size, own, other, p);
  if (placed.liberties.size === 0) throw new RulesError("suicide");

  // simple ko: single-stone capture leaving the new stone alone in atari
  let ko: BoardPosition["ko"] = null;
  if (captured.size === 1 && placed.stones.size === 1 && placed.liberties.size === 1) {
    const [only] = captured;
    ko = { point: coord(size, only), color: opposite(color) };
  }

  const toCoords = (s: Set<number>): Coord[] =>
    [...s].sort((a, b) => a - b).map((i) => coord(size, i));
  return {
    position: {
      size,
      black: toCoords(color === "black" ? own : other),
      white: toCoords(color === "black" ? other : own),
      ko,
    },
    captured: [...captured].sort((a, b) => a - b).map((i) => coord(size, i)),
  };
}
