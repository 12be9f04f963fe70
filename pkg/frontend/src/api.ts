// Thin fetch wrapper around the evaluation service.  No retries, no
// caching: responses are used verbatim as the single source of numbers.

import type {
  Coord,
  EvaluationPayload,
  Position,
  RankingPayload,
  StoneColor,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    detail: string,
  ) {
    super(detail);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  async evaluate(position: Position): Promise<EvaluationPayload> {
    return this.post<EvaluationPayload>("/api/evaluate", { ...position });
  }

  async rank(
    position: Position,
    mover: StoneColor,
    ko: Coord | null = null,
  ): Promise<RankingPayload> {
    const body: Record<string, unknown> = { ...position, mover };
    if (ko !== null) body.ko = ko;
    return this.post<RankingPayload>("/api/rank", body);
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (e) {
      throw new ApiError(0, "Unreachable", `service unreachable: ${e}`);
    }
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      if (payload && typeof payload.error === "string") {
        throw new ApiError(response.status, payload.error, payload.detail ?? "");
      }
      // validation errors arrive as {detail: [{msg, loc, ...}]}
      const detail = Array.isArray(payload?.detail)
        ? payload.detail.map((d: { msg?: string }) => d.msg ?? "").join("; ")
        : JSON.stringify(payload);
      throw new ApiError(response.status, "ValidationError", detail);
    }
    return payload as T;
  }
}
