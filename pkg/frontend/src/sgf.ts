// Reader for pasted SGF text: setup stones, main-line moves, board size.
// Captures during replay are resolved locally (rules.ts); everything else
// about the record is ignored.

import { applyMove, emptyPosition, opposite, RulesError } from "./rules.js";
import type { BoardPosition } from "./rules.js";
import type { Coord, StoneColor } from "./types.js";

export class SgfError extends Error {
  constructor(message: string, readonly offset: number) {
    super(`${message} (at offset ${offset})`);
  }
}

interface SgfNode {
  props: Map<string, string[]>;
}

/** Main-line nodes of the first game tree in the text. */
function parseNodes(text: string): SgfNode[] {
  let i = 0;
  const skipWs = () => {
    while (i < text.length && /\s/.test(text[i])) i++;
  };
  skipWs();
  if (text[i] !== "(") throw new SgfError("expected '('", i);

  const nodes: SgfNode[] = [];
  let depth = 0;
  let mainLine = true; // false once we are inside a sibling variation
  let closedSubtree = false; // previous token at this level was ')'
  while (i < text.length) {
    skipWs();
    const ch = text[i];
    if (ch === "(") {
      // only the first subtree at each branch contributes to the main line
      if (depth > 0 && closedSubtree) mainLine = false;
      closedSubtree = false;
      depth++;
      i++;
    } else if (ch === ")") {
      depth--;
      i++;
      if (depth === 0) return nodes;
      closedSubtree = true;
    } else if (ch === ";") {
      i++;
      const node: SgfNode = { props: new Map() };
      skipWs();
      while (i < text.length && /[A-Z]/.test(text[i])) {
        const start = i;
        while (i < text.length && /[A-Za-z]/.test(text[i])) i++;
        const ident = text.slice(start, i).replace(/[a-z]/g, "");
        skipWs();
        if (text[i] !== "[") throw new SgfError(`property ${ident} has no value`, i);
        const values: string[] = [];
        while (text[i] === "[") {
          i++;
          let value = "";
          while (i < text.length && text[i] !== "]") {
            if (text[i] === "\\" && i + 1 < text.length) i++;
            value += text[i];
            i++;
          }
          if (i >= text.length) throw new SgfError("unterminated value", start);
          i++; // closing ]
          values.push(value);
          skipWs();
        }
        const prev = node.props.get(ident) ?? [];
        node.props.set(ident, prev.concat(values));
        skipWs();
      }
      if (mainLine) nodes.push(node);
    } else if (ch === undefined) {
      break;
    } else {
      throw new SgfError(`unexpected character '${ch}'`, i);
    }
  }
  throw new SgfError("unterminated game tree", text.length);
}

function decodePoint(value: string, size: number, at: number): Coord | null {
  if (value === "") return null; // pass
  if (value.length !== 2) throw new SgfError(`bad point '${value}'`, at);
  const col = value.charCodeAt(0) - 97;
  const row = value.charCodeAt(1) - 97;
  if (value === "tt" && size <= 19) return null; // legacy pass
  if (col < 0 || col >= size || row < 0 || row >= size) {
    throw new SgfError(`point '${value}' outside ${size}x${size} board`, at);
  }
  return { col, row };
}

/** AB/AW values, expanding 'aa:cd' rectangles. */
function decodeStones(values: string[], size: number): Coord[] {
  const out: Coord[] = [];
  for (const v of values) {
    const sep = v.indexOf(":");
    if (sep < 0) {
      const c = decodePoint(v, size, 0);
      if (c !== null) out.push(c);
      continue;
    }
    const a = decodePoint(v.slice(0, sep), size, 0);
    const b = decodePoint(v.slice(sep + 1), size, 0);
    if (a === null || b === null) throw new SgfError(`bad rectangle '${v}'`, 0);
    for (let row = a.row; row <= b.row; row++) {
      for (let col = a.col; col <= b.col; col++) out.push({ col, row });
    }
  }
  return out;
}

export interface SgfGame {
  size: number;
  setupBlack: Coord[];
  setupWhite: Coord[];
  moves: { color: StoneColor; coord: Coord | null }[];
}

export function parseSgf(text: string): SgfGame {
  const nodes = parseNodes(text);
  if (nodes.length === 0) throw new SgfError("no nodes", 0);
  const root = nodes[0].props;
  const size = root.has("SZ") ? parseInt(root.get("SZ")![0], 10) : 19;
  if (!Number.isFinite(size) || size < 2 || size > 25) {
    throw new SgfError(`unsupported board size ${root.get("SZ")?.[0]}`, 0);
  }
  const moves: SgfGame["moves"] = [];
  for (const node of nodes) {
    for (const [ident, color] of [
      ["B", "black"],
      ["W", "white"],
    ] as const) {
      if (node.props.has(ident)) {
        moves.push({ color, coord: decodePoint(node.props.get(ident)![0], size, 0) });
      }
    }
  }
  return {
    size,
    setupBlack: decodeStones(root.get("AB") ?? [], size),
    setupWhite: decodeStones(root.get("AW") ?? [], size),
    moves,
  };
}

export interface ReplayedGame {
  position: BoardPosition;
  /** whose turn it is after the last move */
  mover: StoneColor;
}

/** Play the record out move by move, resolving captures locally. */
export function replaySgf(game: SgfGame): ReplayedGame {
  let position: BoardPosition = {
    ...emptyPosition(game.size),
    black: game.setupBlack,
    white: game.setupWhite,
  };
  let mover: StoneColor = "black";
  for (const [n, move] of game.moves.entries()) {
    mover = opposite(move.color);
    if (move.coord === null) {
      position = { ...position, ko: null }; // pass lifts the ko ban
      continue;
    }
    try {
      position = applyMove(position, move.coord, move.color).position;
    } catch (e) {
      if (e instanceof RulesError) {
        throw new SgfError(`move ${n + 1} is ${e.reason}`, 0);
      }
      throw e;
    }
  }
  return { position, mover };
}
