// Explorer session: current position, history, latest server payloads,
// overlay toggles.  The engine stays on the server; every board change
// round-trips through /api/evaluate and /api/rank, and overlays only ever
// draw the most recent responses.

import { ApiClient, ApiError } from "./api.js";
import { applyMove, emptyPosition, opposite } from "./rules.js";
import type { BoardPosition } from "./rules.js";
import { parseSgf, replaySgf } from "./sgf.js";
import { topMoves } from "./render.js";
import type {
  Coord,
  EvaluationPayload,
  MoveEval,
  Position,
  RankingPayload,
  StoneColor,
} from "./types.js";

export interface Overlays {
  heatmap: boolean;
  strengths: boolean;
  instability: boolean;
  topMoves: boolean;
  quadrupole: boolean;
}

export interface SessionOptions {
  /** size of the what-if move overlay */
  topK?: number;
  /** non-blocking notice (illegal click, transient server error) */
  onToast?: (message: string) => void;
  /** fired after every committed state change */
  onChange?: () => void;
}

interface HistoryEntry {
  position: BoardPosition;
  mover: StoneColor;
}

interface LoadInput extends Position {
  mover?: StoneColor;
}

export class Session {
  position: BoardPosition = emptyPosition(9);
  mover: StoneColor = "black";
  evaluation: EvaluationPayload | null = null;
  ranking: RankingPayload | null = null;
  overlays: Overlays = {
    heatmap: true,
    strengths: true,
    instability: false,
    topMoves: true,
    quadrupole: false,
  };
  readonly topK: number;

  private history: HistoryEntry[] = [];
  private initial: HistoryEntry = { position: this.position, mover: this.mover };
  private clicks: Coord[] = [];
  private chain: Promise<unknown> = Promise.resolve();
  private readonly onToast: (message: string) => void;
  private readonly onChange: () => void;

  constructor(
    private readonly api: ApiClient,
    options: SessionOptions = {},
  ) {
    this.topK = options.topK ?? 10;
    this.onToast = options.onToast ?? (() => undefined);
    this.onChange = options.onChange ?? (() => undefined);
  }

  /** Serialize server-touching operations: one request pair in flight. */
  private enqueue<T>(task: () => Promise<T>): Promise<T> {
    const run = this.chain.then(task, task);
    this.chain = run.then(
      () => undefined,
      () => undefined,
    );
    return run;
  }

  /** Load stones or SGF text; on any failure the session is unchanged. */
  loadPosition(input: LoadInput | string): Promise<void> {
    return this.enqueue(async () => {
      let position: BoardPosition;
      let mover: StoneColor;
      if (typeof input === "string") {
        const replayed = replaySgf(parseSgf(input)); // throws SgfError
        position = replayed.position;
        mover = replayed.mover;
      } else {
        position = {
          size: input.size,
          black: input.black,
          white: input.white,
          ko: null,
        };
        mover = input.mover ?? "black";
      }
      const { evaluation, ranking } = await this.refresh(position, mover);
      this.position = position;
      this.mover = mover;
      this.evaluation = evaluation;
      this.ranking = ranking;
      this.history = [];
      this.clicks = [];
      this.initial = { position, mover };
      this.onChange();
    });
  }

  /**
   * Play at a board point for the current mover.  Legality is the
   * server's call: the click must appear in the latest ranking.
   * Resolves true if the move was committed.
   */
  play(coord: Coord): Promise<boolean> {
    return this.enqueue(async () => {
      const ranking = this.ranking;
      const legal =
        ranking !== null &&
        ranking.moves.some((m) => m.col === coord.col && m.row === coord.row);
      if (!legal) {
        this.onToast(`illegal move at (${coord.col}, ${coord.row})`);
        return false;
      }
      const next = applyMove(this.position, coord, this.mover).position;
      const nextMover = opposite(this.mover);
      try {
        const { evaluation, ranking } = await this.refresh(next, nextMover);
        this.history.push({ position: this.position, mover: this.mover });
        this.clicks.push(coord);
        this.position = next;
        this.mover = nextMover;
        this.evaluation = evaluation;
        this.ranking = ranking;
        this.onChange();
        return true;
      } catch (e) {
        this.onToast(e instanceof ApiError ? e.message : String(e));
        return false;
      }
    });
  }

  /** Pop one move off the history.  Resolves true if something was undone. */
  undo(): Promise<boolean> {
    return this.enqueue(async () => {
      const entry = this.history[this.history.length - 1];
      if (entry === undefined) return false;
      const { evaluation, ranking } = await this.refresh(entry.position, entry.mover);
      this.history.pop();
      this.clicks.pop();
      this.position = entry.position;
      this.mover = entry.mover;
      this.evaluation = evaluation;
      this.ranking = ranking;
      this.onChange();
      return true;
    });
  }

  /** Re-rank the same position for the other player. */
  setMover(mover: StoneColor): Promise<void> {
    return this.enqueue(async () => {
      if (mover === this.mover) return;
      const ranking = await this.api.rank(
        this.bare(this.position),
        mover,
        this.koFor(this.position, mover),
      );
      this.mover = mover;
      this.ranking = ranking;
      this.onChange();
    });
  }

  toggleOverlay(name: keyof Overlays, on?: boolean): void {
    this.overlays[name] = on ?? !this.overlays[name];
    this.onChange();
  }

  /** Best K moves of the latest ranking (server order). */
  topMoves(): MoveEval[] {
    return this.ranking === null ? [] : topMoves(this.ranking, this.topK);
  }

  get historyLength(): number {
    return this.history.length;
  }

  /** Everything needed to rebuild this state: where we started, what was clicked. */
  replayLog(): { initial: { position: Position; mover: StoneColor }; clicks: Coord[] } {
    return {
      initial: {
        position: this.bare(this.initial.position),
        mover: this.initial.mover,
      },
      clicks: [...this.clicks],
    };
  }

  private bare(position: BoardPosition): Position {
    return { size: position.size, black: position.black, white: position.white };
  }

  private koFor(position: BoardPosition, mover: StoneColor): Coord | null {
    if (position.ko !== null && position.ko.color === mover) return position.ko.point;
    return null;
  }

  private async refresh(
    position: BoardPosition,
    mover: StoneColor,
  ): Promise<{ evaluation: EvaluationPayload; ranking: RankingPayload }> {
    const bare = this.bare(position);
    const [evaluation, ranking] = await Promise.all([
      this.api.evaluate(bare),
      this.api.rank(bare, mover, this.koFor(position, mover)),
    ]);
    return { evaluation, ranking };
  }
}
