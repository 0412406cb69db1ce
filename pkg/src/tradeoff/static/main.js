// src/types.ts
var ALL_SPACES = [
  "f1_latency_cost_3d",
  "f1_vs_cost",
  "cost_vs_latency",
  "f1_vs_latency"
];
function isServiceErrorBody(value) {
  if (typeof value !== "object" || value === null) return false;
  const err = value.error;
  return typeof err === "object" && err !== null && typeof err.field === "string" && typeof err.message === "string";
}

// src/api.ts
var ScenarioServiceError = class extends Error {
  field;
  constructor(field, message) {
    super(message);
    this.name = "ScenarioServiceError";
    this.field = field;
  }
};
async function parseError(response) {
  let body = null;
  try {
    body = await response.json();
  } catch {
  }
  if (isServiceErrorBody(body)) {
    return new ScenarioServiceError(body.error.field, body.error.message);
  }
  return new ScenarioServiceError("$", `service returned HTTP ${response.status}`);
}
async function fetchScenario(request, fetchImpl = fetch, signal) {
  const response = await fetchImpl("/api/scenario", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
    signal
  });
  if (!response.ok) {
    throw await parseError(response);
  }
  return await response.json();
}
async function fetchModels(fetchImpl = fetch) {
  const response = await fetchImpl("/api/models");
  if (!response.ok) {
    throw await parseError(response);
  }
  return await response.json();
}

// src/format.ts
function formatDisplay(displayValue) {
  return displayValue.toFixed(2);
}
function formatUtilityCell(row) {
  return `${formatDisplay(row.display_value)} (${row.rank})`;
}
function formatUsd(usdPerMillion) {
  return usdPerMillion.toFixed(2);
}
function formatMs(ms) {
  return `${ms.toFixed(1)} ms`;
}
function formatTau(tauMs) {
  return Number.isInteger(tauMs) ? `${tauMs} ms` : `${tauMs.toFixed(1)} ms`;
}
var ESCAPES = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;"
};
function escapeHtml(text) {
  return text.replace(/[&<>"]/g, (ch) => ESCAPES[ch] ?? ch);
}

// src/ranking.ts
function renderErrorBanner(field, message) {
  return `<div class="error-banner" role="alert"><strong>${escapeHtml(field)}</strong>: ${escapeHtml(message)}</div>`;
}
function rankMarker(label, rank, previous) {
  const before = previous.get(label);
  if (before === void 0 || before === rank) {
    return `<td class="rank-move"></td>`;
  }
  if (rank < before) {
    return `<td class="rank-move rank-up" title="was rank ${before}">&#9650;</td>`;
  }
  return `<td class="rank-move rank-down" title="was rank ${before}">&#9660;</td>`;
}
function renderRankingView(response, previousRanks = /* @__PURE__ */ new Map()) {
  if (response.utilities.length === 0) {
    return `<p class="empty-state">no models in this dataset</p>`;
  }
  const rows = [...response.utilities].sort((a, b) => a.rank - b.rank);
  const body = rows.map((row) => {
    return `<tr data-label="${escapeHtml(row.label)}"><td class="model">${escapeHtml(row.label)}</td><td class="utility">${formatUtilityCell(row)}</td>` + rankMarker(row.label, row.rank, previousRanks) + `<td class="cost">${formatUsd(row.cost_usd_per_million)}</td><td class="latency">${formatMs(row.p50_latency_ms)}</td></tr>`;
  }).join("");
  return `<table class="ranking"><thead><tr><th>model</th><th>100&#215;U (rank)</th><th></th><th>USD / 1M req</th><th>p50</th></tr></thead><tbody>${body}</tbody></table>`;
}

// src/scatter.ts
var WIDTH = 460;
var HEIGHT = 330;
var MARGIN = { top: 16, right: 18, bottom: 44, left: 62 };
var COST_AXIS = {
  pick: (r) => r.cost_usd_per_million,
  label: "cost, USD / 1M req (log)",
  log: true
};
var F1_AXIS = { pick: (r) => r.f1, label: "macro F1, fraction", log: false };
var LATENCY_AXIS = { pick: (r) => r.p50_latency_ms, label: "p50 latency, ms", log: false };
var AXES = {
  f1_vs_cost: { x: COST_AXIS, y: F1_AXIS },
  cost_vs_latency: { x: LATENCY_AXIS, y: COST_AXIS },
  f1_vs_latency: { x: LATENCY_AXIS, y: F1_AXIS },
  f1_latency_cost_3d: {
    x: COST_AXIS,
    y: F1_AXIS,
    note: "3-D frontier drawn on the F1 / cost plane"
  }
};
function scale(value, lo, hi, log) {
  const t = log ? Math.log(value) : value;
  const tlo = log ? Math.log(lo) : lo;
  const thi = log ? Math.log(hi) : hi;
  if (thi === tlo) return 0.5;
  return (t - tlo) / (thi - tlo);
}
function extent(values) {
  return [Math.min(...values), Math.max(...values)];
}
function renderMissingProjection(projection) {
  return `<p class="missing-projection">projection "${escapeHtml(projection)}" is not in the last response; include it in the request's spaces list</p>`;
}
function renderFrontierScatter(response, projection) {
  const space = response.pareto[projection];
  if (space === void 0) {
    return renderMissingProjection(projection);
  }
  const axes = AXES[projection];
  const rows = response.utilities;
  if (rows.length === 0) {
    return `<p class="empty-state">no models in this dataset</p>`;
  }
  const witness = new Map(space.dominated.map((d) => [d.label, d.dominated_by]));
  const [xlo, xhi] = extent(rows.map(axes.x.pick));
  const [ylo, yhi] = extent(rows.map(axes.y.pick));
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const points = rows.map((row) => {
    const px = MARGIN.left + scale(axes.x.pick(row), xlo, xhi, axes.x.log) * plotW;
    const py = MARGIN.top + (1 - scale(axes.y.pick(row), ylo, yhi, axes.y.log)) * plotH;
    const dominatedBy = witness.get(row.label);
    const cls = dominatedBy === void 0 ? "frontier" : "dominated";
    const tip = `${row.label}: F1 ${row.f1}, ${formatUsd(row.cost_usd_per_million)} USD/1M, ${formatMs(row.p50_latency_ms)}` + (dominatedBy === void 0 ? "" : `; dominated by ${dominatedBy}`);
    return `<circle class="${cls}" cx="${px.toFixed(1)}" cy="${py.toFixed(1)}" r="6" data-label="${escapeHtml(row.label)}"><title>${escapeHtml(tip)}</title></circle>`;
  }).join("");
  const note = axes.note === void 0 ? "" : `<text class="axis-note" x="${MARGIN.left}" y="${MARGIN.top - 4}">${axes.note}</text>`;
  return `<svg class="scatter" viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img"><rect class="plot-bg" x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}"/>` + note + points + `<text class="axis-label x" x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 10}">${escapeHtml(axes.x.label)}</text><text class="axis-label y" transform="rotate(-90 14 ${MARGIN.top + plotH / 2})" x="14" y="${MARGIN.top + plotH / 2}">${escapeHtml(axes.y.label)}</text></svg>`;
}

// src/state.ts
function createState() {
  return {
    datasetId: "imdb",
    tauMs: 500,
    overrideForm: {},
    projection: "f1_vs_cost",
    lastResponse: null,
    previousRanks: /* @__PURE__ */ new Map(),
    lastError: null,
    requestSeq: 0,
    appliedSeq: 0,
    inFlight: false
  };
}
function overridesFromForm(form) {
  const tokenPrices = {};
  let any = false;
  for (const [model, entry] of Object.entries(form)) {
    const out = {};
    const input = entry.inputPrice.trim();
    const output = entry.outputPrice.trim();
    if (input !== "" && Number.isFinite(Number(input))) {
      out.input_usd_per_million_tokens = Number(input);
    }
    if (output !== "" && Number.isFinite(Number(output))) {
      out.output_usd_per_million_tokens = Number(output);
    }
    if (Object.keys(out).length > 0) {
      tokenPrices[model] = out;
      any = true;
    }
  }
  return any ? { token_prices: tokenPrices } : void 0;
}
function buildRequest(state2) {
  const request = {
    dataset_id: state2.datasetId,
    tau_ms: state2.tauMs
  };
  const overrides = overridesFromForm(state2.overrideForm);
  if (overrides !== void 0) {
    request.pricing_overrides = overrides;
  }
  return request;
}
function beginRequest(state2) {
  state2.requestSeq += 1;
  state2.inFlight = true;
  return state2.requestSeq;
}
function applyResponse(state2, token, response) {
  if (token <= state2.appliedSeq) {
    return false;
  }
  const previous = /* @__PURE__ */ new Map();
  if (state2.lastResponse !== null) {
    for (const row of state2.lastResponse.utilities) {
      previous.set(row.label, row.rank);
    }
  }
  state2.previousRanks = previous;
  state2.lastResponse = response;
  state2.lastError = null;
  state2.appliedSeq = token;
  if (token === state2.requestSeq) {
    state2.inFlight = false;
  }
  return true;
}
function applyError(state2, token, field, message) {
  if (token <= state2.appliedSeq) {
    return false;
  }
  state2.lastError = { field, message };
  state2.appliedSeq = token;
  if (token === state2.requestSeq) {
    state2.inFlight = false;
  }
  return true;
}

// src/slider.ts
var TAU_MIN_MS = 50;
var TAU_MAX_MS = 5e3;
var TAU_DETENTS_MS = [250, 500, 1e3];
var SLIDER_STEPS = 1e3;
var LOG_MIN = Math.log(TAU_MIN_MS);
var LOG_MAX = Math.log(TAU_MAX_MS);
var DETENT_RADIUS = 18;
function positionToTau(position) {
  const clamped = Math.min(Math.max(position, 0), SLIDER_STEPS);
  return Math.exp(LOG_MIN + clamped / SLIDER_STEPS * (LOG_MAX - LOG_MIN));
}
function tauToPosition(tauMs) {
  const clamped = Math.min(Math.max(tauMs, TAU_MIN_MS), TAU_MAX_MS);
  return Math.round(
    SLIDER_STEPS * (Math.log(clamped) - LOG_MIN) / (LOG_MAX - LOG_MIN)
  );
}
function tauAtPosition(position) {
  for (const detent of TAU_DETENTS_MS) {
    if (Math.abs(position - tauToPosition(detent)) <= DETENT_RADIUS) {
      return detent;
    }
  }
  return Math.round(positionToTau(position) * 10) / 10;
}

// src/main.ts
var state = createState();
var inFlightController = null;
function el(id) {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node;
}
function render() {
  const content = el("content");
  const banner = el("banner");
  content.classList.toggle("stale", state.inFlight);
  banner.innerHTML = state.lastError === null ? "" : renderErrorBanner(state.lastError.field, state.lastError.message);
  if (state.lastResponse === null) {
    return;
  }
  el("ranking").innerHTML = renderRankingView(
    state.lastResponse,
    state.previousRanks
  );
  el("scatter").innerHTML = renderFrontierScatter(
    state.lastResponse,
    state.projection
  );
  el("snapshot-date").textContent = state.lastResponse.snapshot_date;
}
function issueRequest() {
  if (inFlightController !== null) {
    inFlightController.abort();
  }
  const controller = new AbortController();
  inFlightController = controller;
  const token = beginRequest(state);
  render();
  fetchScenario(buildRequest(state), fetch, controller.signal).then((response) => {
    if (applyResponse(state, token, response)) render();
  }).catch((err) => {
    if (controller.signal.aborted) return;
    if (err instanceof ScenarioServiceError) {
      if (applyError(state, token, err.field, err.message)) render();
    } else {
      if (applyError(state, token, "$", String(err))) render();
    }
  });
}
function wireTauSlider() {
  const slider = el("tau-slider");
  const readout = el("tau-readout");
  slider.min = "0";
  slider.max = String(SLIDER_STEPS);
  slider.value = String(tauToPosition(state.tauMs));
  readout.textContent = formatTau(state.tauMs);
  slider.addEventListener("input", () => {
    readout.textContent = formatTau(tauAtPosition(Number(slider.value)));
  });
  slider.addEventListener("change", () => {
    state.tauMs = tauAtPosition(Number(slider.value));
    slider.value = String(tauToPosition(state.tauMs));
    readout.textContent = formatTau(state.tauMs);
    issueRequest();
  });
  const detents = el("tau-detents");
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
function wireOverrideForm(llmModels) {
  const form = el("override-form");
  for (const model of llmModels) {
    state.overrideForm[model] = { inputPrice: "", outputPrice: "" };
    const row = document.createElement("div");
    row.className = "override-row";
    const name = document.createElement("span");
    name.textContent = model;
    row.appendChild(name);
    for (const side of ["input", "output"]) {
      const field = document.createElement("input");
      field.type = "number";
      field.min = "0";
      field.step = "0.01";
      field.placeholder = `${side} $/1M tok`;
      field.addEventListener("change", () => {
        const entry = state.overrideForm[model];
        if (entry === void 0) return;
        if (side === "input") entry.inputPrice = field.value;
        else entry.outputPrice = field.value;
        issueRequest();
      });
      row.appendChild(field);
    }
    form.appendChild(row);
  }
}
async function bootstrap() {
  const models = await fetchModels();
  const datasetSelect = el("dataset-select");
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
  const projectionSelect = el("projection-select");
  for (const space of ALL_SPACES) {
    const option = document.createElement("option");
    option.value = space;
    option.textContent = space.replace(/_/g, " ");
    projectionSelect.appendChild(option);
  }
  projectionSelect.value = state.projection;
  projectionSelect.addEventListener("change", () => {
    state.projection = projectionSelect.value;
    render();
  });
  wireTauSlider();
  const llmModels = [
    ...new Set(
      models.models.filter((m) => m.paradigm !== "fine_tuned").map((m) => m.model_id)
    )
  ].sort();
  wireOverrideForm(llmModels);
  issueRequest();
}
bootstrap().catch((err) => {
  el("banner").innerHTML = renderErrorBanner("$", String(err));
});
