// Client flows against a live seeded service: tree derivation, pending-vote
// badges, the blocked-forecast modal, and suggestion adoption.

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { DebateController } from "../src/flow.js";
import { buildBlockedModal, buildTree, quantizeVote } from "../src/viewmodel.js";
import { seedTokyoDebate, startServer, type LiveServer } from "./helpers.js";

let server: LiveServer;

beforeAll(async () => {
  server = await startServer();
  await seedTokyoDebate(server.baseUrl);
}, 30_000);

afterAll(() => {
  server.stop();
});

function clientFor(agent: string): ApiClient {
  return new ApiClient(server.baseUrl, agent);
}

describe("debate view model", () => {
  it("renders the argument tree: proposal root, amendments, pro/con leaves", async () => {
    const controller = new DebateController(clientFor("alice"), "u1");
    const view = await controller.refresh();

    expect(view.tree.kind).toBe("proposal");
    expect(view.tree.children.map((c) => c.id)).toEqual(["d1", "d2", "i1"]);
    const byId = Object.fromEntries(view.tree.children.map((c) => [c.id, c]));
    expect(byId["d1"]!.children.map((c) => c.id)).toEqual(["a1", "a2"]);
    expect(byId["d2"]!.children.map((c) => c.id)).toEqual(["s1"]);
    expect(byId["i1"]!.children.map((c) => c.id)).toEqual(["a3", "s2"]);
    expect(byId["d1"]!.kind).toBe("decrease");
    expect(byId["i1"]!.kind).toBe("increase");
  });

  it("overlays the agent's own votes and confidence from the API", async () => {
    const controller = new DebateController(clientFor("alice"), "u1");
    const view = await controller.refresh();

    const d1 = view.tree.children.find((c) => c.id === "d1")!;
    const a1 = d1.children.find((c) => c.id === "a1")!;
    expect(a1.myVote).toBe(1.0);
    expect(a1.votable).toBe(true);
    expect(view.myConfidence).toBeCloseTo(-0.125, 9);
    expect(view.rationalInterval).toEqual([0.66, 0.74]);
    expect(view.pendingVotes).toEqual([]);
    expect(view.status).toBe("open");
  });

  it("never recomputes strengths client-side: the view carries only served values", async () => {
    const bob = new DebateController(clientFor("bob"), "u1");
    const view = await bob.refresh();
    expect(view.myConfidence).toBeCloseTo(-0.0625, 9);
    expect(view.rationalInterval).toEqual([0.71, 0.74]);
  });
});

describe("vote widget contract", () => {
  it("quantizes slider values onto the granularity within [0,1]", () => {
    expect(quantizeVote(0.333)).toBeCloseTo(0.33, 12);
    expect(quantizeVote(-3)).toBe(0);
    expect(quantizeVote(7)).toBe(1);
    expect(quantizeVote(0.5)).toBe(0.5);
    expect(quantizeVote(0.62, 0.25)).toBe(0.5);
  });
});

describe("blocked forecast flow", () => {
  it("shows the exact violation names and interval served by the API, and adopting the suggestion is accepted", async () => {
    const controller = new DebateController(clientFor("bob"), "u1");
    await controller.refresh();

    const result = await controller.submitForecast(0.8);
    expect(result.kind).toBe("blocked");
    if (result.kind !== "blocked") return;

    // exactly what the rationality endpoint serves for bob right now
    const rationality = await clientFor("bob").getRationality("u1");
    expect(result.modal.violations).toEqual(["irrational_increase", "irrational_scale"]);
    expect(result.modal.interval).toEqual(rationality.rational_interval);
    expect(result.modal.interval).toEqual([0.71, 0.74]);
    expect(result.modal.suggestion).toBe(0.74);
    expect(result.modal.lines).toContain("violates: irrational_increase");
    expect(result.modal.lines).toContain("violates: irrational_scale");
    expect(result.modal.lines).toContain("rational interval: [0.71, 0.74]");

    const adopted = await controller.adoptSuggestion(result.modal);
    expect(adopted.kind).toBe("accepted");
    if (adopted.kind !== "accepted") return;
    expect(adopted.value).toBe(0.74);
    expect(adopted.view.myForecast).toBe(0.74);
  });

  it("accepts an in-range forecast directly", async () => {
    const controller = new DebateController(clientFor("alice"), "u1");
    await controller.refresh();
    const result = await controller.submitForecast(0.7);
    expect(result.kind).toBe("accepted");
  });
});

describe("event feed and obligations", () => {
  it("a new argument arriving via the feed creates a pending-vote badge", async () => {
    const controller = new DebateController(clientFor("charlie"), "u1");
    await controller.refresh();
    await controller.poll(); // drain the seed events

    await clientFor("moderator").addArgument(
      "u1",
      { id: "a4", polarity: "con", text: "late-breaking objection" },
      [["a4", "d2"]],
    );

    const changed = await controller.poll();
    expect(changed).toBe(true);
    const view = controller.view!;
    expect(view.pendingVotes).toContain("a4");
    const d2 = view.tree.children.find((c) => c.id === "d2")!;
    const a4 = d2.children.find((c) => c.id === "a4")!;
    expect(a4.pendingVote).toBe(true);
    expect(a4.myVote).toBeNull();
  });

  it("forecasting is routed to voting first while obligations remain", async () => {
    const controller = new DebateController(clientFor("charlie"), "u1");
    await controller.refresh();
    const result = await controller.submitForecast(0.76);
    expect(result.kind).toBe("vote_first");
    if (result.kind !== "vote_first") return;
    expect(result.pendingVotes).toContain("a4");

    await controller.castVote("a4", 0.5);
    const after = await controller.submitForecast(0.76);
    expect(after.kind).toBe("accepted");
  });

  it("modal text builder handles the no-interval edge", () => {
    const modal = buildBlockedModal(0.9, {
      status: 409,
      code: "forecast_blocked",
      message: "blocked",
      violations: ["irrational_increase"],
      rational_interval: null,
      suggestion: null,
    });
    expect(modal.lines).toContain("no rational forecast exists for your current votes");
    expect(modal.suggestion).toBeNull();
  });

  it("tree builder works for a viewer with no votes of their own", async () => {
    const fw = await clientFor("alice").getFramework("u1");
    const tree = buildTree(fw, "nobody");
    expect(tree.children.length).toBe(3);
  });
});
