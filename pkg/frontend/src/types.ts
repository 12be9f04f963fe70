// JSON shapes of the evaluation service, mirrored field for field.

export interface Coord {
  col: number;
  row: number;
}

export type StoneColor = "black" | "white";

export interface SolverConfigJson {
  stop_value: number;
  max_iter: number;
  atari_adjustment: "multi_liberty_only" | "always" | "off";
}

export interface PointEval extends Coord {
  w: number;
  iterations: number;
  instability: number;
}

export interface BlockEval {
  id: number;
  color: StoneColor;
  s: number;
  statically_alive: boolean;
  iterations: number;
  stones: Coord[];
}

export interface ScoreJson {
  black_total: number;
  white_total: number;
  net: number;
}

export interface EvaluationPayload {
  size: number;
  points: PointEval[];
  blocks: BlockEval[];
  score: ScoreJson;
  converged: boolean;
  config: SolverConfigJson;
}

export interface MoveEval extends Coord {
  score: number;
  percentile: number;
  instability: number;
}

export interface RankingPayload {
  size: number;
  mover: StoneColor;
  moves: MoveEval[];
  score: ScoreJson;
  config: SolverConfigJson;
}

export interface ErrorBody {
  error: string;
  detail: string;
}

// A bare position as the service accepts it.
export interface Position {
  size: number;
  black: Coord[];
  white: Coord[];
}
