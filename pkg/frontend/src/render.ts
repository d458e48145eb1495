// DOM layer: view models in, elements out. No business logic here.

import type { DebateController, ForecastFlowResult } from "./flow.js";
import {
  formatProbability,
  quantizeVote,
  type ArgumentNode,
  type BlockedModalViewModel,
  type DebateViewModel,
} from "./viewmodel.js";

const KIND_BADGES: Record<ArgumentNode["kind"], string> = {
  proposal: "P",
  increase: "↑",
  decrease: "↓",
  pro: "+",
  con: "−",
};

export function renderDebate(
  root: HTMLElement,
  view: DebateViewModel,
  controller: DebateController,
): void {
  root.replaceChildren(
    renderStatusBar(view),
    renderNode(view.tree, controller),
    renderForecastForm(view, controller),
  );
}

function renderStatusBar(view: DebateViewModel): HTMLElement {
  const bar = el("div", "status-bar");
  bar.append(
    el("span", "badge", `round ${view.frameworkId}: ${view.status}`),
    el("span", "", `proposal ${formatProbability(view.proposalForecast)}`),
    el(
      "span",
      "",
      `my confidence ${view.myConfidence.toFixed(4)}`,
    ),
    el(
      "span",
      "",
      view.rationalInterval
        ? `rational range [${formatProbability(view.rationalInterval[0])}, ${formatProbability(view.rationalInterval[1])}]`
        : "no rational range",
    ),
  );
  if (view.groupForecast !== null) {
    bar.append(el("span", "badge", `group ${formatProbability(view.groupForecast)}`));
  }
  if (view.pendingVotes.length > 0) {
    bar.append(el("span", "badge pending", `${view.pendingVotes.length} votes owed`));
  }
  return bar;
}

function renderNode(node: ArgumentNode, controller: DebateController): HTMLElement {
  const item = el("div", `node kind-${node.kind}`);
  const head = el("div", "node-head");
  head.append(el("span", "kind-badge", KIND_BADGES[node.kind]), el("span", "node-id", node.id));
  if (node.pendingVote) {
    head.append(el("span", "badge pending", "vote needed"));
  }
  item.append(head);
  if (node.text) {
    item.append(el("p", "node-text", node.text));
  }
  if (node.votable) {
    item.append(renderVoteSlider(node, controller));
  }
  if (node.children.length > 0) {
    const children = el("div", "children");
    for (const child of node.children) {
      children.append(renderNode(child, controller));
    }
    item.append(children);
  }
  return item;
}

function renderVoteSlider(node: ArgumentNode, controller: DebateController): HTMLElement {
  const wrap = el("div", "vote");
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0";
  slider.max = "1";
  slider.step = "0.01";
  slider.value = String(node.myVote ?? 0.5);
  const detents = document.createElement("datalist");
  detents.id = `detents-${node.id}`;
  for (const v of [0, 0.5, 1]) {
    const option = document.createElement("option");
    option.value = String(v);
    detents.append(option);
  }
  slider.setAttribute("list", detents.id);
  const label = el("span", "vote-value", node.myVote === null ? "unvoted (0.50)" : formatProbability(node.myVote));
  slider.addEventListener("input", () => {
    label.textContent = formatProbability(quantizeVote(Number(slider.value)));
  });
  const commit = document.createElement("button");
  commit.textContent = "vote";
  commit.addEventListener("click", () => {
    void controller.castVote(node.id, quantizeVote(Number(slider.value)));
  });
  wrap.append(slider, detents, label, commit);
  return wrap;
}

function renderForecastForm(view: DebateViewModel, controller: DebateController): HTMLElement {
  const form = el("div", "forecast-form");
  const input = document.createElement("input");
  input.type = "number";
  input.min = "0";
  input.max = "1";
  input.step = "0.01";
  input.value = view.myForecast === null ? "" : String(view.myForecast);
  const submit = document.createElement("button");
  submit.textContent = view.myForecast === null ? "submit forecast" : "revise forecast";
  const feedback = el("div", "feedback");
  submit.addEventListener("click", () => {
    void controller
      .submitForecast(quantizeVote(Number(input.value)))
      .then((result) => handleForecastResult(result, feedback, controller));
  });
  form.append(
    el("span", "", view.myForecast === null ? "no forecast yet" : `my forecast ${formatProbability(view.myForecast)}`),
    input,
    submit,
    feedback,
  );
  return form;
}

function handleForecastResult(
  result: ForecastFlowResult,
  feedback: HTMLElement,
  controller: DebateController,
): void {
  feedback.replaceChildren();
  switch (result.kind) {
    case "accepted":
      feedback.append(el("div", "toast ok", `forecast ${formatProbability(result.value)} accepted`));
      break;
    case "vote_first":
      feedback.append(
        el(
          "div",
          "toast pending",
          `vote on ${result.pendingVotes.join(", ")} before forecasting`,
        ),
      );
      break;
    case "blocked":
      feedback.append(renderBlockedModal(result.modal, controller, feedback));
      break;
  }
}

export function renderBlockedModal(
  modal: BlockedModalViewModel,
  controller: DebateController,
  feedback: HTMLElement,
): HTMLElement {
  const dialog = el("div", "modal blocked");
  for (const line of modal.lines) {
    dialog.append(el("p", "", line));
  }
  if (modal.suggestion !== null) {
    const adopt = document.createElement("button");
    adopt.textContent = `adopt ${formatProbability(modal.suggestion)}`;
    adopt.addEventListener("click", () => {
      void controller
        .adoptSuggestion(modal)
        .then((result) => handleForecastResult(result, feedback, controller));
    });
    dialog.append(adopt);
  }
  return dialog;
}

function el(tag: string, className = "", text = ""): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}
