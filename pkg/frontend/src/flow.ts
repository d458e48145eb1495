// The interaction loop: poll the event feed, refresh the view model, vote,
// and walk forecasts through the accept/block/revise cycle.

import { ApiClient } from "./api.js";
import {
  buildBlockedModal,
  buildDebateViewModel,
  type BlockedModalViewModel,
  type DebateViewModel,
} from "./viewmodel.js";

export type ForecastFlowResult =
  | { kind: "accepted"; value: number; view: DebateViewModel }
  | { kind: "blocked"; modal: BlockedModalViewModel }
  | { kind: "vote_first"; pendingVotes: string[] };

export class DebateController {
  private lastSeq = 0;
  view: DebateViewModel | null = null;

  constructor(
    private readonly api: ApiClient,
    readonly frameworkId: string,
  ) {}

  /** Fetch framework + rationality state and rebuild the view model. */
  async refresh(): Promise<DebateViewModel> {
    const [framework, rationality] = await Promise.all([
      this.api.getFramework(this.frameworkId),
      this.api.getRationality(this.frameworkId),
    ]);
    this.view = buildDebateViewModel(framework, rationality);
    return this.view;
  }

  /** One polling step: true when new events arrived (view was refreshed). */
  async poll(): Promise<boolean> {
    const feed = await this.api.getEvents(this.frameworkId, this.lastSeq);
    if (feed.last_seq <= this.lastSeq && feed.events.length === 0) {
      this.lastSeq = feed.last_seq;
      return false;
    }
    this.lastSeq = feed.last_seq;
    if (feed.events.length === 0) {
      return false;
    }
    await this.refresh();
    return true;
  }

  async castVote(argumentId: string, value: number): Promise<DebateViewModel> {
    await this.api.castVote(this.frameworkId, argumentId, value);
    return this.refresh();
  }

  /** Submit a forecast. Outstanding vote obligations route the user to the
   * unvoted arguments; a block yields the guided-revision modal. */
  async submitForecast(value: number): Promise<ForecastFlowResult> {
    const view = this.view ?? (await this.refresh());
    if (view.pendingVotes.length > 0) {
      return { kind: "vote_first", pendingVotes: view.pendingVotes };
    }
    const outcome = await this.api.submitForecast(this.frameworkId, value);
    switch (outcome.kind) {
      case "accepted":
        return { kind: "accepted", value, view: await this.refresh() };
      case "pending_votes":
        return { kind: "vote_first", pendingVotes: (await this.refresh()).pendingVotes };
      case "blocked":
        return { kind: "blocked", modal: buildBlockedModal(value, outcome.body) };
    }
  }

  /** The modal's one-click adoption of the server's nearest rational value. */
  async adoptSuggestion(modal: BlockedModalViewModel): Promise<ForecastFlowResult> {
    if (modal.suggestion === null) {
      return { kind: "vote_first", pendingVotes: [] };
    }
    return this.submitForecast(modal.suggestion);
  }
}
