// View-model helpers: turn server payloads into drawable primitives.
// Everything here is a pure function of the latest response, so the
// overlays can be unit-tested without a DOM.

import type {
  BlockEval,
  Coord,
  EvaluationPayload,
  MoveEval,
  RankingPayload,
} from "./types.js";

/** Heatmap shade for a point: the server's w drawn as a white-black axis. */
export function heatColor(w: number): string {
  const v = Math.round(255 * w);
  return `rgb(${v},${v},${v})`;
}

export interface StrengthLabel {
  at: Coord;
  text: string;
  block: BlockEval;
}

/** One survival label per block, anchored at its first stone. */
export function strengthLabels(evaluation: EvaluationPayload): StrengthLabel[] {
  return evaluation.blocks.map((block) => ({
    at: block.stones[0],
    text: block.statically_alive ? "1.00*" : block.s.toFixed(2),
    block,
  }));
}

export interface InstabilityMark {
  at: Coord;
  /** 0..1, relative to the busiest point of this evaluation */
  weight: number;
}

export function instabilityMarks(evaluation: EvaluationPayload): InstabilityMark[] {
  const max = Math.max(0, ...evaluation.points.map((p) => p.instability));
  if (max === 0) return [];
  return evaluation.points
    .filter((p) => p.instability > 0)
    .map((p) => ({ at: { col: p.col, row: p.row }, weight: p.instability / max }));
}

/** Best moves of the latest ranking, already server-ordered. */
export function topMoves(ranking: RankingPayload, k: number): MoveEval[] {
  return ranking.moves.slice(0, k);
}

// Quadrupole overlay.  The server does not ship this indicator, so it is
// derived here from the served w and s values: each point's four compass
// neighbours contribute their black share (empty point 1-w, black block s,
// white block 1-s, off-board 1/2), and the quadrupole is |n+s-w-e|.
export interface QuadrupoleMark {
  at: Coord;
  value: number;
}

export function quadrupoleMarks(evaluation: EvaluationPayload): QuadrupoleMark[] {
  const size = evaluation.size;
  const share = new Map<number, number>();
  for (const p of evaluation.points) share.set(p.row * size + p.col, 1 - p.w);
  for (const b of evaluation.blocks) {
    const s = b.color === "black" ? b.s : 1 - b.s;
    for (const st of b.stones) share.set(st.row * size + st.col, s);
  }
  const at = (col: number, row: number): number => {
    if (col < 0 || col >= size || row < 0 || row >= size) return 0.5;
    return share.get(row * size + col)!;
  };
  return evaluation.points.map((p) => ({
    at: { col: p.col, row: p.row },
    value: Math.abs(
      at(p.col, p.row - 1) + at(p.col, p.row + 1) - at(p.col - 1, p.row) - at(p.col + 1, p.row),
    ),
  }));
}

export function scoreLine(evaluation: EvaluationPayload): string {
  const s = evaluation.score;
  const sign = s.net >= 0 ? "+" : "";
  return `black ${s.black_total.toFixed(1)} / white ${s.white_total.toFixed(1)}, net ${sign}${s.net.toFixed(1)}`;
}
