// Spawn the real forecasting service and seed the Tokyo fixture debate.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface LiveServer {
  baseUrl: string;
  process: ChildProcess;
  stop(): void;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const server = createServer();
    server.listen(0, "127.0.0.1", () => {
      const address = server.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port"));
        return;
      }
      server.close(() => resolve(address.port));
    });
  });
}

export async function startServer(): Promise<LiveServer> {
  const port = await freePort();
  const storeRoot = mkdtempSync(join(tmpdir(), "faf-ui-test-"));
  const child = spawn(
    "python3",
    ["-m", "faf.cli", "serve", "--port", String(port), "--store", storeRoot],
    { stdio: "ignore" },
  );
  const baseUrl = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const response = await fetch(`${baseUrl}/docs`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      child.kill("SIGKILL");
      throw new Error("service did not come up");
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  return { baseUrl, process: child, stop: () => child.kill("SIGKILL") };
}

async function post(
  baseUrl: string,
  path: string,
  body: unknown,
  agent?: string,
): Promise<Response> {
  const headers: Record<string, string> = { "Content-Type": "application/json" };
  if (agent) headers["Authorization"] = `Bearer ${agent}`;
  const response = await fetch(`${baseUrl}${path}`, {
    method: "POST",
    headers,
    body: JSON.stringify(body),
  });
  return response;
}

async function must(promise: Promise<Response>): Promise<void> {
  const response = await promise;
  if (!response.ok) {
    throw new Error(`seed step failed ${response.status}: ${await response.text()}`);
  }
}

/** The Olympics debate: proposal 0.75, amendments d1/d2 (down) and i1 (up),
 * cons a1/a2/a3, pros s1/s2, plus the example three-valued votes. After
 * seeding: alice C=-0.125 range [0.66,0.74]; bob C=-0.0625 range
 * [0.71,0.74]; charlie C=+0.0625 range [0.76,0.79]. */
export async function seedTokyoDebate(baseUrl: string): Promise<string> {
  await must(
    post(baseUrl, "/sessions", {
      id: "tokyo",
      question: { id: "q-tokyo", text: "Cancelled or postponed?" },
      base_forecast: 0.15,
    }),
  );
  await must(
    post(baseUrl, "/sessions/tokyo/frameworks", {
      id: "u1",
      proposal: { id: "p", forecast: 0.75, evidence: "the poll" },
      agents: ["alice", "bob", "charlie"],
    }),
  );
  const args: [Record<string, unknown>, [string, string][]][] = [
    [{ id: "d1", kind: "amendment", direction: "decrease", text: "officials will ignore it" }, []],
    [{ id: "d2", kind: "amendment", direction: "decrease", text: "unreliable pollster" }, []],
    [{ id: "i1", kind: "amendment", direction: "increase", text: "opposition pressure" }, []],
    [{ id: "a1", polarity: "con", text: "they will not risk deaths" }, [["a1", "d1"]]],
    [{ id: "a2", polarity: "con", text: "government can block it" }, [["a2", "d1"]]],
    [{ id: "a3", polarity: "con", text: "approval is strong" }, [["a3", "i1"]]],
    [{ id: "s1", polarity: "pro", text: "pollster failed before" }, [["s1", "d2"]]],
    [{ id: "s2", polarity: "pro", text: "online sentiment agrees" }, [["s2", "i1"]]],
  ];
  for (const [argument, edges] of args) {
    await must(post(baseUrl, "/frameworks/u1/arguments", { argument, edges }));
  }
  const votes: Record<string, Record<string, number>> = {
    alice: { a1: 1.0, a2: 0.5, a3: 0.5, s1: 0.5, s2: 0.0 },
    bob: { a1: 0.5, a2: 0.5, a3: 1.0, s1: 0.0, s2: 0.5 },
    charlie: { a1: 0.5, a2: 0.5, a3: 0.5, s1: 0.5, s2: 0.5 },
  };
  for (const [agent, perAgent] of Object.entries(votes)) {
    for (const [argumentId, value] of Object.entries(perAgent)) {
      await must(
        post(baseUrl, "/frameworks/u1/votes", { argument_id: argumentId, value }, agent),
      );
    }
  }
  return "u1";
}
