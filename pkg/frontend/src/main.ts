// Bootstrap: ?api=http://127.0.0.1:8040&framework=u1&agent=alice

import { ApiClient } from "./api.js";
import { DebateController } from "./flow.js";
import { renderDebate } from "./render.js";

const POLL_INTERVAL_MS = 2000;

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const api = params.get("api") ?? "";
  const frameworkId = params.get("framework");
  const agentId = params.get("agent");
  const root = document.getElementById("debate");
  if (!root) return;
  if (!frameworkId || !agentId) {
    root.textContent = "missing ?framework= and ?agent= query parameters";
    return;
  }

  const controller = new DebateController(new ApiClient(api, agentId), frameworkId);
  const redraw = (view = controller.view) => {
    if (view) renderDebate(root, view, controller);
  };

  try {
    redraw(await controller.refresh());
  } catch (error) {
    root.textContent = `cannot load framework: ${String(error)}`;
    return;
  }

  window.setInterval(() => {
    void controller
      .poll()
      .then((changed) => {
        if (changed) redraw();
      })
      .catch(() => undefined); // transient polling errors surface on next tick
  }, POLL_INTERVAL_MS);

  // votes and forecasts re-render through controller.refresh(); keep the view
  // fresh after any user action settles
  root.addEventListener("click", () => {
    window.setTimeout(() => redraw(), 150);
  });
}

void start();
