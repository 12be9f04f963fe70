import { describe, expect, it } from "vitest";

import { applyMove, emptyPosition, RulesError } from "../src/rules.js";
import type { BoardPosition } from "../src/rules.js";
import type { Coord } from "../src/types.js";
import { KO_BOARD, KO_CAPTURE, KO_POINT, RACE, RACE_POINT } from "./fixtures.js";

const has = (stones: Coord[], c: Coord): boolean =>
  stones.some((s) => s.col === c.col && s.row === c.row);

describe("applyMove", () => {
  it("captures the dead group when its last liberty is filled", () => {
    const { position, captured } = applyMove(RACE, RACE_POINT, "black");
    expect(captured).toEqual([{ col: 2, row: 5 }, { col: 2, row: 6 }]);
    expect(position.white).toHaveLength(5);
    expect(has(position.white, { col: 2, row: 6 })).toBe(false);
    expect(has(position.black, RACE_POINT)).toBe(true);
    expect(position.ko).toBeNull(); // two stones died, no ko
  });

  it("rejects occupied points", () => {
    expect(() => applyMove(RACE, { col: 1, row: 6 }, "black")).toThrowError(
      RulesError,
    );
    expect(() => applyMove(RACE, { col: 1, row: 6 }, "white")).toThrow("occupied");
  });

  it("rejects suicide", () => {
    const pos: BoardPosition = {
      ...emptyPosition(2),
      black: [{ col: 1, row: 0 }, { col: 0, row: 1 }],
    };
    expect(() => applyMove(pos, { col: 0, row: 0 }, "white")).toThrow("suicide");
  });

  it("arms the simple ko after a single-stone snapback shape", () => {
    const { position, captured } = applyMove(KO_BOARD, KO_CAPTURE, "black");
    expect(captured).toEqual([KO_POINT]);
    expect(position.ko).toEqual({ point: KO_POINT, color: "white" });
    expect(() => applyMove(position, KO_POINT, "white")).toThrow("ko");
  });

  it("clears the ko once the banned player goes elsewhere", () => {
    const afterCapture = applyMove(KO_BOARD, KO_CAPTURE, "black").position;
    const elsewhere = applyMove(afterCapture, { col: 4, row: 4 }, "white").position;
    expect(elsewhere.ko).toBeNull();
    expect(() => applyMove(elsewhere, KO_POINT, "white")).not.toThrow();
  });

  it("does not arm a ko for multi-stone or multi-liberty results", () => {
    const { position } = applyMove(RACE, RACE_POINT, "black");
    expect(position.ko).toBeNull();
  });
});
