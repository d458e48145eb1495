// View models derived purely from API responses. The client never
// recomputes argument strengths or confidence scores itself.

import type {
  ApiErrorDoc,
  FrameworkDoc,
  RationalityDoc,
} from "./types.js";

export interface ArgumentNode {
  id: string;
  kind: "proposal" | "increase" | "decrease" | "pro" | "con";
  text: string | null;
  /** the current user's explicit vote, if any (pro/con nodes only) */
  myVote: number | null;
  /** true while the current user still owes an explicit vote */
  pendingVote: boolean;
  votable: boolean;
  children: ArgumentNode[];
}

export interface DebateViewModel {
  frameworkId: string;
  status: "open" | "stable" | "resolved";
  proposalForecast: number;
  groupForecast: number | null;
  tree: ArgumentNode;
  myConfidence: number;
  rationalInterval: [number, number] | null;
  myForecast: number | null;
  pendingVotes: string[];
  agents: string[];
}

function nodeKind(fw: FrameworkDoc, id: string): ArgumentNode["kind"] {
  const amendment = fw.amendments.find((a) => a.id === id);
  if (amendment) return amendment.direction;
  const proCon = fw.pros_cons.find((a) => a.id === id);
  if (proCon) return proCon.polarity;
  return "proposal";
}

function nodeText(fw: FrameworkDoc, id: string): string | null {
  if (id === fw.proposal.id) return fw.proposal.evidence;
  return (
    fw.amendments.find((a) => a.id === id)?.text ??
    fw.pros_cons.find((a) => a.id === id)?.text ??
    null
  );
}

/** Children of a node: amendments hang off the proposal via the
 * probabilistic relation, pro/con arguments off their targets via the
 * argumentative relation. Sorted for a stable layout. */
function childIds(fw: FrameworkDoc, id: string): string[] {
  const fromAmendments = fw.probabilistic_relation
    .filter(([, dst]) => dst === id)
    .map(([src]) => src);
  const fromProsCons = fw.argumentative_relation
    .filter(([, dst]) => dst === id)
    .map(([src]) => src);
  return [...fromAmendments, ...fromProsCons].sort();
}

export function buildTree(fw: FrameworkDoc, agentId: string): ArgumentNode {
  const pending = new Set(
    (fw.pending_obligations ?? [])
      .filter((o) => o.agent === agentId)
      .map((o) => o.argument_id),
  );
  const myVotes = fw.votes[agentId] ?? {};

  const build = (id: string): ArgumentNode => {
    const kind = nodeKind(fw, id);
    const votable = kind === "pro" || kind === "con";
    return {
      id,
      kind,
      text: nodeText(fw, id),
      myVote: votable && id in myVotes ? (myVotes[id] as number) : null,
      pendingVote: pending.has(id),
      votable,
      children: childIds(fw, id).map(build),
    };
  };
  return build(fw.proposal.id);
}

export function buildDebateViewModel(
  fw: FrameworkDoc,
  rationality: RationalityDoc,
): DebateViewModel {
  return {
    frameworkId: fw.id,
    status: fw.status,
    proposalForecast: fw.proposal.forecast,
    groupForecast: fw.group_forecast,
    tree: buildTree(fw, rationality.agent_id),
    myConfidence: rationality.confidence_score,
    rationalInterval: rationality.rational_interval,
    myForecast: rationality.current_forecast,
    pendingVotes: rationality.pending_votes,
    agents: fw.agents,
  };
}

// ---------------------------------------------------------------------------
// Blocked-forecast modal

export interface BlockedModalViewModel {
  /** violation names exactly as served, e.g. "irrational_increase" */
  violations: string[];
  interval: [number, number] | null;
  suggestion: number | null;
  confidence: number | null;
  proposed: number;
  /** display lines shown verbatim in the modal body */
  lines: string[];
}

export function buildBlockedModal(proposed: number, body: ApiErrorDoc): BlockedModalViewModel {
  const violations = body.violations ?? [];
  const interval = body.rational_interval ?? null;
  const suggestion = body.suggestion ?? null;
  const lines = [
    `Your forecast ${formatProbability(proposed)} was blocked:`,
    ...violations.map((name) => `violates: ${name}`),
    interval
      ? `rational interval: [${formatProbability(interval[0])}, ${formatProbability(interval[1])}]`
      : "no rational forecast exists for your current votes",
  ];
  if (suggestion !== null) {
    lines.push(`nearest rational forecast: ${formatProbability(suggestion)}`);
  }
  return {
    violations,
    interval,
    suggestion,
    confidence: body.confidence_score ?? null,
    proposed,
    lines,
  };
}

export function formatProbability(value: number): string {
  return value.toFixed(2);
}

/** Quantize a raw slider position onto the vote granularity in [0, 1]. */
export function quantizeVote(raw: number, granularity = 0.01): number {
  const clamped = Math.min(1, Math.max(0, raw));
  const steps = Math.round(clamped / granularity);
  return Math.min(1, Math.max(0, steps * granularity));
}
