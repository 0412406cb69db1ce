// Explorer state and the request sequencing rules.
//
// Two invariants live here, both test-pinned:
//  - the rendered tables always reflect the last successfully received
//    response; while a request is in flight the old render stays up, flagged
//    stale, and is never torn down early;
//  - every request carries a fresh token, and a response is applied only if
//    its token is newer than the newest already applied, so an out-of-order
//    arrival can never overwrite a newer response.

import type {
  PricingOverrides,
  ScenarioRequest,
  ScenarioResponse,
  SpaceName,
} from "./types";

export interface OverrideFormEntry {
  inputPrice: string;
  outputPrice: string;
}

export interface ExplorerState {
  datasetId: string;
  tauMs: number;
  /** per model family, raw form text; empty string means "no override" */
  overrideForm: Record<string, OverrideFormEntry>;
  projection: SpaceName;
  lastResponse: ScenarioResponse | null;
  /** label -> rank from the response before lastResponse */
  previousRanks: ReadonlyMap<string, number>;
  lastError: { field: string; message: string } | null;
  /** token of the newest request issued */
  requestSeq: number;
  /** token of the newest response applied */
  appliedSeq: number;
  inFlight: boolean;
}

export function createState(): ExplorerState {
  return {
    datasetId: "imdb",
    tauMs: 500,
    overrideForm: {},
    projection: "f1_vs_cost",
    lastResponse: null,
    previousRanks: new Map(),
    lastError: null,
    requestSeq: 0,
    appliedSeq: 0,
    inFlight: false,
  };
}

/** Parse the override form into a request payload; empty form -> undefined. */
export function overridesFromForm(
  form: Record<string, OverrideFormEntry>
): PricingOverrides | undefined {
  const tokenPrices: Record<
    string,
    { input_usd_per_million_tokens?: number; output_usd_per_million_tokens?: number }
  > = {};
  let any = false;
  for (const [model, entry] of Object.entries(form)) {
    const out: (typeof tokenPrices)[string] = {};
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
  return any ? { token_prices: tokenPrices } : undefined;
}

export function buildRequest(state: ExplorerState): ScenarioRequest {
  const request: ScenarioRequest = {
    dataset_id: state.datasetId,
    tau_ms: state.tauMs,
  };
  const overrides = overridesFromForm(state.overrideForm);
  if (overrides !== undefined) {
    request.pricing_overrides = overrides;
  }
  return request;
}

/** Mark a new request issued and return its sequencing token. */
export function beginRequest(state: ExplorerState): number {
  state.requestSeq += 1;
  state.inFlight = true;
  return state.requestSeq;
}

/**
 * Apply a response for the given token. Returns true if the state changed.
 * Stale tokens (a newer response already applied) are dropped whole.
 */
export function applyResponse(
  state: ExplorerState,
  token: number,
  response: ScenarioResponse
): boolean {
  if (token <= state.appliedSeq) {
    return false;
  }
  const previous = new Map<string, number>();
  if (state.lastResponse !== null) {
    for (const row of state.lastResponse.utilities) {
      previous.set(row.label, row.rank);
    }
  }
  state.previousRanks = previous;
  state.lastResponse = response;
  state.lastError = null;
  state.appliedSeq = token;
  if (token === state.requestSeq) {
    state.inFlight = false;
  }
  return true;
}

/** Apply a service error for the given token; same staleness rule. */
export function applyError(
  state: ExplorerState,
  token: number,
  field: string,
  message: string
): boolean {
  if (token <= state.appliedSeq) {
    return false;
  }
  state.lastError = { field, message };
  state.appliedSeq = token;
  if (token === state.requestSeq) {
    state.inFlight = false;
  }
  return true;
}
