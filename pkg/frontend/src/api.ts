// Thin typed client over the forecasting service. All writes funnel through
// here; the UI owns no state the API has not acknowledged.

import type {
  AcceptedForecastDoc,
  ApiErrorDoc,
  EventFeedDoc,
  FrameworkDoc,
  RationalityDoc,
  SessionDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(public readonly body: ApiErrorDoc) {
    super(body.message);
  }

  get code(): string {
    return this.body.code;
  }
}

export type ForecastOutcome =
  | { kind: "accepted"; verdict: AcceptedForecastDoc["verdict"] }
  | { kind: "blocked"; body: ApiErrorDoc }
  | { kind: "pending_votes" };

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    public agentId: string,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: {
        "Content-Type": "application/json",
        Authorization: `Bearer ${this.agentId}`,
      },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const parsed = (await response.json()) as T | ApiErrorDoc;
    if (!response.ok) {
      throw new ApiError(parsed as ApiErrorDoc);
    }
    return parsed as T;
  }

  getSession(sessionId: string): Promise<SessionDoc> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  getFramework(frameworkId: string): Promise<FrameworkDoc> {
    return this.request("GET", `/frameworks/${frameworkId}`);
  }

  getRationality(frameworkId: string, agentId = this.agentId): Promise<RationalityDoc> {
    return this.request("GET", `/frameworks/${frameworkId}/agents/${agentId}/rationality`);
  }

  getEvents(frameworkId: string, since: number): Promise<EventFeedDoc> {
    return this.request("GET", `/frameworks/${frameworkId}/events?since=${since}`);
  }

  castVote(frameworkId: string, argumentId: string, value: number): Promise<FrameworkDoc> {
    return this.request("POST", `/frameworks/${frameworkId}/votes`, {
      argument_id: argumentId,
      value,
    });
  }

  addArgument(
    frameworkId: string,
    argument: Record<string, unknown>,
    edges: [string, string][] = [],
  ): Promise<FrameworkDoc> {
    return this.request("POST", `/frameworks/${frameworkId}/arguments`, { argument, edges });
  }

  /** Submit a forecast; a 409 verdict comes back as a structured outcome
   * rather than an exception so the flow can guide a revision. */
  async submitForecast(frameworkId: string, value: number): Promise<ForecastOutcome> {
    try {
      const accepted = await this.request<AcceptedForecastDoc>(
        "POST",
        `/frameworks/${frameworkId}/forecasts`,
        { value },
      );
      return { kind: "accepted", verdict: accepted.verdict };
    } catch (error) {
      if (error instanceof ApiError && error.code === "forecast_blocked") {
        return { kind: "blocked", body: error.body };
      }
      if (error instanceof ApiError && error.code === "pending_obligations") {
        return { kind: "pending_votes" };
      }
      throw error;
    }
  }
}
