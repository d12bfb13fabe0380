// Thin typed client for the preview API. Failures never throw raw; they
// come back as tagged results so the editors can surface them without
// losing session state.

import type {
  AggregateResponse,
  ConfigDoc,
  ConsistencyViolation,
  RankingPayload,
  ScaleJudgements,
  ScaleResponse,
  WeightsResponse,
} from "./types.js";

export type ApiResult<T> =
  | { ok: true; data: T }
  | { ok: false; status: number; violations: unknown[]; message: string };

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class PreviewClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(
    path: string,
    init?: RequestInit,
  ): Promise<ApiResult<T>> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      return {
        ok: false,
        status: 0,
        violations: [],
        message: err instanceof Error ? err.message : "network failure",
      };
    }
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      // non-JSON body; keep null
    }
    if (!response.ok) {
      const violations =
        body && typeof body === "object" && "violations" in body
          ? ((body as { violations: unknown[] }).violations ?? [])
          : [];
      return {
        ok: false,
        status: response.status,
        violations,
        message: `request failed with status ${response.status}`,
      };
    }
    return { ok: true, data: body as T };
  }

  private post<T>(path: string, payload: unknown): Promise<ApiResult<T>> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  previewScale(payload: ScaleJudgements): Promise<ApiResult<ScaleResponse>> {
    return this.post("/preview/scale", payload);
  }

  previewWeights(payload: RankingPayload): Promise<ApiResult<WeightsResponse>> {
    return this.post("/preview/weights", payload);
  }

  previewAggregate(x: number[]): Promise<ApiResult<AggregateResponse>> {
    return this.post("/preview/aggregate", { x });
  }

  getConfig(): Promise<ApiResult<ConfigDoc>> {
    return this.request("/config");
  }

  putConfig(doc: ConfigDoc): Promise<ApiResult<{ ok: boolean; digest: string }>> {
    return this.request("/config", {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
  }
}

export function isConsistencyViolation(v: unknown): v is ConsistencyViolation {
  return (
    typeof v === "object" &&
    v !== null &&
    "pair" in v &&
    "residual" in v &&
    Array.isArray((v as ConsistencyViolation).pair)
  );
}
