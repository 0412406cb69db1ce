// Thin fetch wrappers. fetchImpl is injectable so tests run without a
// server; AbortSignal pass-through lets the UI supersede a pending request.

import type { ModelsResponse, ScenarioRequest, ScenarioResponse } from "./types";
import { isServiceErrorBody } from "./types";

export class ScenarioServiceError extends Error {
  readonly field: string;

  constructor(field: string, message: string) {
    super(message);
    this.name = "ScenarioServiceError";
    this.field = field;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseError(response: Response): Promise<ScenarioServiceError> {
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // non-JSON error body, fall through to the generic message
  }
  if (isServiceErrorBody(body)) {
    return new ScenarioServiceError(body.error.field, body.error.message);
  }
  return new ScenarioServiceError("$", `service returned HTTP ${response.status}`);
}

export async function fetchScenario(
  request: ScenarioRequest,
  fetchImpl: FetchLike = fetch,
  signal?: AbortSignal
): Promise<ScenarioResponse> {
  const response = await fetchImpl("/api/scenario", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
    signal,
  });
  if (!response.ok) {
    throw await parseError(response);
  }
  return (await response.json()) as ScenarioResponse;
}

export async function fetchModels(
  fetchImpl: FetchLike = fetch
): Promise<ModelsResponse> {
  const response = await fetchImpl("/api/models");
  if (!response.ok) {
    throw await parseError(response);
  }
  return (await response.json()) as ModelsResponse;
}
