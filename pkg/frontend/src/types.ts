// Wire types: the canonical JSON shapes served by the forecasting API.

export interface ProposalDoc {
  id: string;
  forecast: number;
  evidence: string | null;
}

export interface AmendmentDoc {
  id: string;
  direction: "increase" | "decrease";
  text: string | null;
}

export interface ProConDoc {
  id: string;
  polarity: "pro" | "con";
  text: string | null;
}

export interface ObligationDoc {
  agent: string;
  argument_id: string;
}

export interface FrameworkDoc {
  id: string;
  proposal: ProposalDoc;
  amendments: AmendmentDoc[];
  pros_cons: ProConDoc[];
  probabilistic_relation: [string, string][];
  argumentative_relation: [string, string][];
  agents: string[];
  votes: Record<string, Record<string, number>>;
  forecasts: Record<string, number>;
  status: "open" | "stable" | "resolved";
  opened_at: string | null;
  round_deadline: string | null;
  group_forecast: number | null;
  /** present on GET /frameworks/{id}; session payloads omit it */
  pending_obligations?: ObligationDoc[];
}

export interface SessionDoc {
  id: string;
  question: { id: string; text: string; outcome: boolean | null };
  base_forecast: number;
  frameworks: FrameworkDoc[];
  overall_deadline: string | null;
  per_round_deadline: number | null;
}

export interface VerdictDoc {
  accepted: boolean;
  violations: string[];
  rational_interval: [number, number] | null;
  suggestion: number | null;
  confidence_score: number;
  proposal_forecast: number;
  proposed: number;
}

export interface RationalityDoc {
  agent_id: string;
  framework_id: string;
  confidence_score: number;
  proposal_forecast: number;
  rational_interval: [number, number] | null;
  current_forecast: number | null;
  current_verdict: VerdictDoc | null;
  pending_votes: string[];
}

export interface EventDoc {
  seq: number;
  at: string;
  kind: string;
  payload: Record<string, unknown>;
}

export interface EventFeedDoc {
  events: EventDoc[];
  last_seq: number;
}

/** Error body every non-2xx response carries; blocked forecasts extend it. */
export interface ApiErrorDoc {
  status: number;
  code: string;
  message: string;
  violations?: string[];
  suggestion?: number | null;
  rational_interval?: [number, number] | null;
  confidence_score?: number;
}

export interface AcceptedForecastDoc {
  accepted: true;
  verdict: VerdictDoc;
}
