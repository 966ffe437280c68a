// Typed client for the configuration service.  Expected domain outcomes
// (conflicts, incompleteness) come back as tagged results; anything else
// unexpected becomes an ApiError.

import type {
  AnswerOutcome,
  AnswerState,
  ConfigurationOutcome,
  Conflict,
  DerivationResult,
  DeriveOutcome,
  ModelInfo,
  SessionState,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function errorFrom(response: Response): Promise<ApiError> {
  let code = "UNEXPECTED";
  let message = `request failed with status ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body === "object" && "error" in body) {
      const err = (body as { error: { code?: string; message?: string } }).error;
      code = err.code ?? code;
      message = err.message ?? message;
    }
  } catch {
    // body was not JSON; keep the generic message
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly baseUrl: string,
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private async requestJson(path: string, init?: RequestInit): Promise<Response> {
    return this.fetchImpl(this.url(path), init);
  }

  async listModels(): Promise<ModelInfo[]> {
    const response = await this.requestJson("/models");
    if (!response.ok) throw await errorFrom(response);
    const body = (await response.json()) as { models: ModelInfo[] };
    return body.models;
  }

  async uploadModel(xml: string): Promise<ModelInfo> {
    const response = await this.requestJson("/models", {
      method: "POST",
      headers: { "content-type": "application/xml" },
      body: xml,
    });
    if (!response.ok) throw await errorFrom(response);
    return (await response.json()) as ModelInfo;
  }

  async modelAreas(modelId: string): Promise<string[]> {
    const response = await this.requestJson(`/models/${encodeURIComponent(modelId)}/areas`);
    if (!response.ok) throw await errorFrom(response);
    const body = (await response.json()) as { areas: string[] };
    return body.areas;
  }

  async createSession(modelId: string, area: string): Promise<SessionState> {
    const response = await this.requestJson("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ model_id: modelId, area }),
    });
    if (!response.ok) throw await errorFrom(response);
    return (await response.json()) as SessionState;
  }

  async getSession(sessionId: string): Promise<SessionState> {
    const response = await this.requestJson(`/sessions/${encodeURIComponent(sessionId)}`);
    if (!response.ok) throw await errorFrom(response);
    return (await response.json()) as SessionState;
  }

  async answer(sessionId: string, variant: string, values: string[]): Promise<AnswerOutcome> {
    const response = await this.requestJson(
      `/sessions/${encodeURIComponent(sessionId)}/answers`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ variant, values }),
      },
    );
    if (response.status === 409) {
      const body = (await response.json()) as { conflicts: Conflict[] };
      return { kind: "conflict", conflicts: body.conflicts };
    }
    if (!response.ok) throw await errorFrom(response);
    return { kind: "ok", state: (await response.json()) as AnswerState };
  }

  async retract(sessionId: string, variant: string): Promise<AnswerState> {
    const response = await this.requestJson(
      `/sessions/${encodeURIComponent(sessionId)}/answers/${encodeURIComponent(variant)}`,
      { method: "DELETE" },
    );
    if (!response.ok) throw await errorFrom(response);
    return (await response.json()) as AnswerState;
  }

  async configuration(sessionId: string): Promise<ConfigurationOutcome> {
    const response = await this.requestJson(
      `/sessions/${encodeURIComponent(sessionId)}/configuration`,
    );
    if (response.status === 409) {
      const body = (await response.json()) as { undecided: string[] };
      return { kind: "incomplete", undecided: body.undecided };
    }
    if (!response.ok) throw await errorFrom(response);
    const body = (await response.json()) as {
      area: string;
      selections: Record<string, string[]>;
    };
    return { kind: "complete", area: body.area, selections: body.selections };
  }

  async derive(sessionId: string, productXml: string, force = false): Promise<DeriveOutcome> {
    const query = force ? "?force=1" : "";
    const response = await this.requestJson(
      `/sessions/${encodeURIComponent(sessionId)}/product${query}`,
      {
        method: "POST",
        headers: { "content-type": "application/xml" },
        body: productXml,
      },
    );
    if (response.status === 409) {
      const body = (await response.json()) as { undecided: string[] };
      return { kind: "incomplete", undecided: body.undecided };
    }
    if (!response.ok) throw await errorFrom(response);
    return { kind: "ok", result: (await response.json()) as DerivationResult };
  }
}
