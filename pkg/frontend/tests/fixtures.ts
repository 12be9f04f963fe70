// Board fixtures shared across suites.

import type { BoardPosition } from "../src/rules.js";
import type { Coord } from "../src/types.js";

// corner capture race: three-stone white group and the black wall around it
export const RACE: BoardPosition = {
  size: 7,
  black: [
    { col: 1, row: 6 }, { col: 1, row: 5 }, { col: 1, row: 4 },
    { col: 2, row: 4 }, { col: 3, row: 5 }, { col: 4, row: 5 }, { col: 4, row: 6 },
  ],
  white: [
    { col: 2, row: 6 }, { col: 2, row: 5 }, { col: 3, row: 4 },
    { col: 4, row: 4 }, { col: 5, row: 4 }, { col: 5, row: 5 }, { col: 5, row: 6 },
  ],
  ko: null,
};
export const RACE_POINT: Coord = { col: 3, row: 6 };

// 5x5 ko shape: black c4 captures white b4 and must not be retaken at once
export const KO_BOARD: BoardPosition = {
  size: 5,
  black: [{ col: 1, row: 0 }, { col: 0, row: 1 }, { col: 1, row: 2 }],
  white: [
    { col: 2, row: 0 }, { col: 1, row: 1 }, { col: 3, row: 1 }, { col: 2, row: 2 },
  ],
  ko: null,
};
export const KO_CAPTURE: Coord = { col: 2, row: 1 };
export const KO_POINT: Coord = { col: 1, row: 1 };
