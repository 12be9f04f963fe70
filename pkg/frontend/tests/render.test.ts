import { describe, expect, it } from "vitest";

import {
  heatColor,
  instabilityMarks,
  quadrupoleMarks,
  scoreLine,
  strengthLabels,
  topMoves,
} from "../src/render.js";
import type {
  BlockEval,
  EvaluationPayload,
  PointEval,
  RankingPayload,
} from "../src/types.js";

const CONFIG = {
  stop_value: 1e-3,
  max_iter: 5,
  atari_adjustment: "multi_liberty_only",
} as const;

const point = (col: number, row: number, w: number, instability = 0): PointEval => ({
  col,
  row,
  w,
  iterations: 3,
  instability,
});

const payload = (points: PointEval[], blocks: BlockEval[]): EvaluationPayload => ({
  size: 3,
  points,
  blocks,
  score: { black_total: 5.2, white_total: 3.2, net: 2.0 },
  converged: true,
  config: CONFIG,
});

describe("heatColor", () => {
  it("maps w onto a black-white axis", () => {
    expect(heatColor(0)).toBe("rgb(0,0,0)");
    expect(heatColor(1)).toBe("rgb(255,255,255)");
    expect(heatColor(0.5)).toBe("rgb(128,128,128)");
    expect(heatColor(0.2)).toBe("rgb(51,51,51)");
  });
});

describe("strengthLabels", () => {
  it("emits one label per block, starred when statically alive", () => {
    const ev = payload(
      [],
      [
        {
          id: 0,
          color: "black",
          s: 0.8,
          statically_alive: false,
          iterations: 2,
          stones: [{ col: 1, row: 0 }],
        },
        {
          id: 1,
          color: "white",
          s: 1.0,
          statically_alive: true,
          iterations: 0,
          stones: [{ col: 2, row: 1 }, { col: 2, row: 2 }],
        },
      ],
    );
    const labels = strengthLabels(ev);
    expect(labels).toHaveLength(2);
    expect(labels[0].text).toBe("0.80");
    expect(labels[0].at).toEqual({ col: 1, row: 0 });
    expect(labels[1].text).toBe("1.00*");
    expect(labels[1].at).toEqual({ col: 2, row: 1 });
  });
});

describe("instabilityMarks", () => {
  it("is empty when the board is settled", () => {
    expect(instabilityMarks(payload([point(0, 0, 0.5)], []))).toEqual([]);
  });

  it("normalises weights by the busiest point", () => {
    const marks = instabilityMarks(
      payload([point(0, 0, 0.5, 4), point(1, 0, 0.5, 1), point(2, 0, 0.5, 0)], []),
    );
    expect(marks).toHaveLength(2);
    expect(marks[0]).toEqual({ at: { col: 0, row: 0 }, weight: 1 });
    expect(marks[1].weight).toBeCloseTo(0.25, 12);
  });
});

describe("quadrupoleMarks", () => {
  // 3x3 with a black stone north of centre, a white stone east of it,
  // and uneven ownership south and west.
  const ev = payload(
    [
      point(0, 0, 0.5),
      point(2, 0, 0.5),
      point(0, 1, 0.7),
      point(1, 1, 0.5),
      point(0, 2, 0.5),
      point(1, 2, 0.4),
      point(2, 2, 0.5),
    ],
    [
      {
        id: 0,
        color: "black",
        s: 0.8,
        statically_alive: false,
        iterations: 1,
        stones: [{ col: 1, row: 0 }],
      },
      {
        id: 1,
        color: "white",
        s: 0.9,
        statically_alive: false,
        iterations: 1,
        stones: [{ col: 2, row: 1 }],
      },
    ],
  );
  const marks = quadrupoleMarks(ev);
  const markAt = (col: number, row: number) =>
    marks.find((m) => m.at.col === col && m.at.row === row)!;

  it("covers every empty point", () => {
    expect(marks).toHaveLength(7);
  });

  it("sums the four neighbouring black shares with compass signs", () => {
    // north 0.8 (black block), south 0.6 (1-w), west 0.3, east 0.1 (white block)
    expect(markAt(1, 1).value).toBeCloseTo(1.0, 12);
  });

  it("treats off-board neighbours as an even 1/2 share", () => {
    // north/west off board, south 0.3, east 0.8
    expect(markAt(0, 0).value).toBeCloseTo(0.5, 12);
  });
});

describe("topMoves", () => {
  const ranking: RankingPayload = {
    size: 3,
    mover: "black",
    moves: [
      { col: 0, row: 0, score: 3.0, percentile: 66, instability: 0 },
      { col: 1, row: 1, score: 2.0, percentile: 33, instability: 0 },
      { col: 2, row: 2, score: 1.0, percentile: 0, instability: 0 },
    ],
    score: { black_total: 1, white_total: 1, net: 0 },
    config: CONFIG,
  };

  it("keeps the server order and truncates at k", () => {
    expect(topMoves(ranking, 2).map((m) => m.score)).toEqual([3.0, 2.0]);
    expect(topMoves(ranking, 10)).toHaveLength(3);
  });
});

describe("scoreLine", () => {
  it("formats both totals and a signed net", () => {
    expect(scoreLine(payload([], []))).toBe("black 5.2 / white 3.2, net +2.0");
    const losing = {
      ...payload([], []),
      score: { black_total: 1.0, white_total: 2.5, net: -1.5 },
    };
    expect(scoreLine(losing)).toBe("black 1.0 / white 2.5, net -1.5");
  });
});
