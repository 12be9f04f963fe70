// End-to-end suite: a real service process answers every request, so these
// tests exercise the exact JSON contract the browser build runs against.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn } from "node:child_process";
import type { ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";

import { ApiClient, ApiError } from "../src/api.js";
import { heatColor } from "../src/render.js";
import { Session } from "../src/session.js";
import { SgfError } from "../src/sgf.js";
import type { Position, StoneColor } from "../src/types.js";
import { KO_BOARD, KO_CAPTURE, KO_POINT, RACE, RACE_POINT } from "./fixtures.js";

const PORT = 8961;
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess;

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "sedsgo.service:app", "--host", "127.0.0.1", "--port", String(PORT), "--log-level", "warning"],
    { stdio: "ignore" },
  );
  for (let i = 0; i < 120; i++) {
    try {
      const r = await fetch(`${BASE}/api/health`);
      if (r.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error(`service did not come up on port ${PORT}`);
});

afterAll(() => {
  server.kill();
});

interface SessionRig {
  session: Session;
  toasts: string[];
}

function rig(options: { topK?: number } = {}): SessionRig {
  const toasts: string[] = [];
  const session = new Session(new ApiClient(BASE), {
    ...options,
    onToast: (m) => toasts.push(m),
  });
  return { session, toasts };
}

const bare = (p: { size: number; black: Position["black"]; white: Position["white"] }): Position => ({
  size: p.size,
  black: p.black,
  white: p.white,
});

/** Deep JSON snapshot of everything a redraw reads. */
const stateOf = (s: Session): unknown =>
  JSON.parse(
    JSON.stringify({
      position: s.position,
      mover: s.mover,
      evaluation: s.evaluation,
      ranking: s.ranking,
    }),
  );

describe("Session against a live service", () => {
  it("renders an empty board as a uniform mid-gray heatmap", async () => {
    const { session } = rig();
    await session.loadPosition({ size: 9, black: [], white: [] });
    const ev = session.evaluation!;
    expect(ev.points).toHaveLength(81);
    expect(ev.blocks).toHaveLength(0);
    for (const p of ev.points) expect(p.w).toBe(0.5);
    const shades = new Set(ev.points.map((p) => heatColor(p.w)));
    expect([...shades]).toEqual(["rgb(128,128,128)"]);
    expect(session.ranking!.moves).toHaveLength(81);
    expect(session.ranking!.mover).toBe("black");
  });

  it("loads a full-board SGF and labels every block", async () => {
    const text = readFileSync(
      new URL("./fixtures/fullboard.sgf", import.meta.url),
      "utf8",
    );
    const { session } = rig();
    await session.loadPosition(text);
    expect(session.position.size).toBe(19);
    expect(session.evaluation!.blocks).toHaveLength(55);
    expect(session.evaluation!.points).toHaveLength(217);
  });

  it("keeps its state when a load fails", async () => {
    const { session } = rig();
    await session.loadPosition(bare(RACE));
    const before = stateOf(session);

    await expect(session.loadPosition("(;SZ[9]")).rejects.toThrowError(SgfError);
    expect(stateOf(session)).toEqual(before);

    // stones on top of each other: the service refuses the position
    await expect(
      session.loadPosition({
        size: 9,
        black: [{ col: 0, row: 0 }],
        white: [{ col: 0, row: 0 }],
      }),
    ).rejects.toThrowError(ApiError);
    expect(stateOf(session)).toEqual(before);

    // the queue survives a failed task
    await session.loadPosition({ size: 5, black: [], white: [] });
    expect(session.position.size).toBe(5);
  });

  it("removes captured stones after a click, in step with the server", async () => {
    const { session } = rig();
    await session.loadPosition({ ...bare(RACE), mover: "black" });
    expect(await session.play(RACE_POINT)).toBe(true);

    const white = session.position.white;
    expect(white).toHaveLength(5);
    expect(white).not.toContainEqual({ col: 2, row: 6 });
    expect(white).not.toContainEqual({ col: 2, row: 5 });
    expect(session.mover).toBe("white");
    expect(session.historyLength).toBe(1);

    // the server's block decomposition must agree stone for stone
    const served: Record<StoneColor, string[]> = { black: [], white: [] };
    for (const b of session.evaluation!.blocks) {
      for (const st of b.stones) served[b.color].push(`${st.col},${st.row}`);
    }
    const local = (cs: typeof white) => cs.map((c) => `${c.col},${c.row}`).sort();
    expect(served.black.sort()).toEqual(local(session.position.black));
    expect(served.white.sort()).toEqual(local(session.position.white));
  });

  it("holds the served evaluation verbatim", async () => {
    const { session } = rig();
    await session.loadPosition(bare(RACE));
    const response = await fetch(`${BASE}/api/evaluate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(bare(RACE)),
    });
    expect(response.ok).toBe(true);
    expect(session.evaluation).toEqual(await response.json());
  });

  it("undo restores the exact previous state", async () => {
    const { session } = rig();
    await session.loadPosition({ ...bare(RACE), mover: "black" });
    const before = stateOf(session);

    await session.play(session.topMoves()[0]);
    expect(stateOf(session)).not.toEqual(before);

    expect(await session.undo()).toBe(true);
    expect(stateOf(session)).toEqual(before);
    expect(session.historyLength).toBe(0);
    expect(session.replayLog().clicks).toEqual([]);

    expect(await session.undo()).toBe(false); // nothing left
  });

  it("refuses illegal clicks with a toast and no state change", async () => {
    const { session, toasts } = rig();
    await session.loadPosition({ ...bare(RACE), mover: "black" });
    const before = stateOf(session);

    expect(await session.play({ col: 1, row: 6 })).toBe(false); // occupied
    expect(toasts).toHaveLength(1);
    expect(toasts[0]).toContain("illegal");
    expect(stateOf(session)).toEqual(before);
    expect(session.historyLength).toBe(0);
  });

  it("withholds the ko recapture until the ko clears", async () => {
    const { session, toasts } = rig();
    await session.loadPosition({ ...bare(KO_BOARD), mover: "black" });
    expect(await session.play(KO_CAPTURE)).toBe(true);

    expect(session.position.ko).toEqual({ point: KO_POINT, color: "white" });
    expect(session.mover).toBe("white");
    const banned = session.ranking!.moves.some(
      (m) => m.col === KO_POINT.col && m.row === KO_POINT.row,
    );
    expect(banned).toBe(false);
    expect(await session.play(KO_POINT)).toBe(false);
    expect(toasts).toHaveLength(1);

    expect(await session.play({ col: 4, row: 4 })).toBe(true); // elsewhere
    expect(session.position.ko).toBeNull();
    const lifted = session.ranking!.moves.some(
      (m) => m.col === KO_POINT.col && m.row === KO_POINT.row,
    );
    expect(lifted).toBe(true); // black may fill its own point again
  });

  it("queues rapid clicks in order", async () => {
    const { session } = rig();
    await session.loadPosition({ size: 9, black: [], white: [] });
    const p1 = session.play({ col: 2, row: 2 });
    const p2 = session.play({ col: 6, row: 6 });
    expect(await p1).toBe(true);
    expect(await p2).toBe(true);
    expect(session.position.black).toContainEqual({ col: 2, row: 2 });
    expect(session.position.white).toContainEqual({ col: 6, row: 6 });
    expect(session.historyLength).toBe(2);

    const sequential = rig().session;
    await sequential.loadPosition({ size: 9, black: [], white: [] });
    await sequential.play({ col: 2, row: 2 });
    await sequential.play({ col: 6, row: 6 });
    expect(stateOf(session)).toEqual(stateOf(sequential));
  });

  it("shows the ten best moves by default", async () => {
    const { session } = rig();
    await session.loadPosition({ size: 9, black: [], white: [] });
    expect(session.topK).toBe(10);
    expect(session.topMoves()).toHaveLength(10);
    expect(session.topMoves()).toEqual(session.ranking!.moves.slice(0, 10));

    const small = rig({ topK: 3 }).session;
    await small.loadPosition({ size: 9, black: [], white: [] });
    expect(small.topMoves()).toHaveLength(3);
  });

  it("re-ranks for the other colour without touching the evaluation", async () => {
    const { session } = rig();
    await session.loadPosition({ ...bare(RACE), mover: "black" });
    const evaluation = session.evaluation;
    const blackRanking = session.ranking!;
    expect(blackRanking.mover).toBe("black");

    await session.setMover("white");
    expect(session.mover).toBe("white");
    expect(session.ranking!.mover).toBe("white");
    expect(session.evaluation).toBe(evaluation); // same object, no refetch
    expect(session.ranking!.moves).not.toEqual(blackRanking.moves);
  });

  it("can rebuild itself from its replay log", async () => {
    const { session } = rig();
    await session.loadPosition({ ...bare(RACE), mover: "black" });
    await session.play(RACE_POINT);
    await session.play({ col: 0, row: 0 }); // white elsewhere
    expect(session.historyLength).toBe(2);

    const log = session.replayLog();
    expect(log.clicks).toEqual([RACE_POINT, { col: 0, row: 0 }]);

    const rebuilt = rig().session;
    await rebuilt.loadPosition({ ...log.initial.position, mover: log.initial.mover });
    for (const click of log.clicks) {
      expect(await rebuilt.play(click)).toBe(true);
    }
    expect(stateOf(rebuilt)).toEqual(stateOf(session));
  });
});
