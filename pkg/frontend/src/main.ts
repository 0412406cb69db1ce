// DOM bootstrap and event wiring. All rendering logic lives in ranking.ts
// and scatter.ts as pure string producers; this file owns the document, the
// single in-flight request, and nothing else.

import { fetchModels, fetchScenario, ScenarioServiceError } from "./api";
import { formatTau } from "./format";
import { renderErrorBanner, renderRankingView } from "./ranking";
import { renderFrontierScatter } from "./scatter";
import {
  applyError,
  applyResponse,
  beginRequest,
  buildRequest,
  createState,
} from "./state";
import {
  SLIDER_STEPS,
  TAU_DETENTS_MS,
  tauAtPosition,
  tauToPosition,
} from "./slider";
import type { SpaceName } from "./types";
import { ALL_SPACES } from "./types";

const state = createState();
let inFlightController: AbortController | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node as T;
}

function render(): void {
  const content = el<HTMLDivElement>("content");
  const banner = el<HTMLDivElement>("banner");
  content.classList.toggle("stale", state.inFlight);
  banner.innerHTML =
    state.lastError === null
      ? ""
      : renderErrorBanner(state.lastError.field, state.lastError.message);
  if (state.lastResponse === null) {
    return;
  }
  el<HTMLDivElement>("ranking").innerHTML = renderRankingView(
    state.lastResponse,
    state.previousRanks
  );
  el<HTMLDivElement>("scatter").innerHTML = renderFrontierScatter(
    state.lastResponse,
    state.projection
  );
  el<HTMLSpanElement>("snapshot-date").textContent =
    state.lastResponse.snapshot_date;
}

function issueRequest(): void {
  // newer interactions supersede the pending request: abort, then reissue
  if (inFlightController !== null) {
    inFlightController.abort();
  }
  const controller = new AbortController();
  inFlightController = controller;
  const token = beginRequest(state);
  render();
  fetchScenario(buildRequest(state), fetch, controller.signal)
    .then((response) => {
      if (applyResponse(state, token, response)) render();
    })
    .catch((err: unknown) => {
      if (controller.signal.aborted) return; // superseded, newer request owns the UI
      if (err instanceof ScenarioServiceError) {
        if (applyError(state, token, err.field, err.message)) render();
      } else {
        if (applyError(state, token, "$", String(err))) render();
      }
    });
}

function wireTauSlider(): void {
  const slider = el<HTMLInputElement>("tau-slider");
  const readout = el<HTMLSpanElement>("tau-readout");
  slider.min = "0";
  slider.max = String(SLIDER_STEPS);
  slider.value = String(tauToPosition(state.tauMs));
  readout.textContent = formatTau(state.tauMs);
  // drag updates only the readout; release issues exactly one request
  slider.addEventListener("input", () => {
    readout.textContent = formatTau(tauAtPosition(Number(slider.value)));
  });
  slider.addEventListener("change", () => {
    state.tauMs = tauAtPosition(Number(slider.value));
    slider.value = String(tauToPosition(state.tauMs));
    readout.textContent = formatTau(state.tauMs);
    issueRequest();
  });
  const detents = el<HTMLSpanElement>("tau-detents");
  for (const tau of TAU_DETENTS_MS) {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = `${tau}`;
    button.addEventListener("click", () => {
      state.tauMs = tau;
      slider.value = String(tauToPosition(tau));
      readout.textContent = formatTau(tau);
      issueRequest();
    });
    detents.appendChild(button);
  }
}

function wireOverrideForm(llmModels: string[]): void {
  const form = el<HTMLDivElement>("override-form");
  for (const model of llmModels) {
    state.overrideForm[model] = { inputPrice: "", outputPrice: "" };
    const row = document.createElement("div");
    row.className = "override-row";
    const name = document.createElement("span");
    name.textContent = model;
    row.appendChild(name);
    for (const side of ["input", "output"] as const) {
      const field = document.createElement("input");
      field.type = "number";
      field.min = "0";
      field.step = "0.01";
      field.placeholder = `${side} $/1M tok`;
      field.addEventListener("change", () => {
        const entry = state.overrideForm[model];
        if (entry === undefined) return;
        if (side === "input") entry.inputPrice = field.value;
        else entry.outputPrice = field.value;
        issueRequest();
      });
      row.appendChild(field);
    }
    form.appendChild(row);
  }
}

async function bootstrap(): Promise<void> {
  const models = await fetchModels();
  const datasetSelect = el<HTMLSelectElement>("dataset-select");
  for (const dataset of models.datasets) {
    const option = document.createElement("option");
    option.value = dataset;
    option.textContent = dataset;
    datasetSelect.appendChild(option);
  }
  if (!models.datasets.includes(state.datasetId)) {
    state.datasetId = models.datasets[0] ?? state.datasetId;
  }
  datasetSelect.value = state.datasetId;
  datasetSelect.addEventListener("change", () => {
    state.datasetId = datasetSelect.value;
    issueRequest();
  });

  const projectionSelect = el<HTMLSelectElement>("projection-select");
  for (const space of ALL_SPACES) {
    const option = document.createElement("option");
    option.value = space;
    option.textContent = space.replace(/_/g, " ");
    projectionSelect.appendChild(option);
  }
  projectionSelect.value = state.projection;
  projectionSelect.addEventListener("change", () => {
    state.projection = projectionSelect.value as SpaceName;
    render(); // projection is client-side; all spaces arrive in each response
  });

  wireTauSlider();
  const llmModels = [
    ...new Set(
      models.models
        .filter((m) => m.paradigm !== "fine_tuned")
        .map((m) => m.model_id)
    ),
  ].sort();
  wireOverrideForm(llmModels);
  issueRequest();
}

bootstrap().catch((err: unknown) => {
  el<HTMLDivElement>("banner").innerHTML = renderErrorBanner("$", String(err));
});
