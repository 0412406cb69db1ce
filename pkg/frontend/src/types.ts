// Wire types for the scenario service. Field names mirror the JSON exactly;
// the UI never recomputes utility or cost, it renders what the service sent.

export type Paradigm = "fine_tuned" | "zero_shot" | "few_shot";

export type SpaceName =
  | "f1_latency_cost_3d"
  | "f1_vs_cost"
  | "cost_vs_latency"
  | "f1_vs_latency";

export const ALL_SPACES: readonly SpaceName[] = [
  "f1_latency_cost_3d",
  "f1_vs_cost",
  "cost_vs_latency",
  "f1_vs_latency",
];

export interface CostRow {
  model_id: string;
  paradigm: Paradigm;
  label: string;
  usd_per_million_requests: number;
  cost_basis: "serverless_compute" | "token_usage";
}

export interface UtilityRow {
  model_id: string;
  paradigm: Paradigm;
  label: string;
  f1: number;
  cost_usd_per_million: number;
  p50_latency_ms: number;
  utility: number;
  display_value: number;
  rank: number;
}

export interface DominatedEntry {
  label: string;
  dominated_by: string;
}

export interface SpaceResult {
  frontier: string[];
  dominated: DominatedEntry[];
}

export interface TokenPriceOverride {
  input_usd_per_million_tokens?: number;
  output_usd_per_million_tokens?: number;
}

export interface PricingOverrides {
  token_prices?: Record<string, TokenPriceOverride>;
}

export interface ScenarioRequest {
  dataset_id: string;
  tau_ms: number;
  pricing_overrides?: PricingOverrides;
  spaces?: SpaceName[];
}

export interface ScenarioResponse {
  dataset_id: string;
  tau_ms: number;
  snapshot_date: string;
  pricing_overrides: PricingOverrides | null;
  costs: CostRow[];
  utilities: UtilityRow[];
  pareto: Partial<Record<SpaceName, SpaceResult>>;
  warnings: string[];
}

export interface ModelRow {
  model_id: string;
  dataset_id: string;
  paradigm: Paradigm;
  label: string;
  f1: number;
  p50_latency_ms: number;
  p95_latency_ms: number;
  p99_latency_ms: number;
  n_runs: number;
}

export interface ModelsResponse {
  models: ModelRow[];
  datasets: string[];
  snapshot_date: string;
  warnings: string[];
}

export interface ServiceErrorBody {
  error: {
    field: string;
    message: string;
  };
}

export function isServiceErrorBody(value: unknown): value is ServiceErrorBody {
  if (typeof value !== "object" || value === null) return false;
  const err = (value as { error?: unknown }).error;
  return (
    typeof err === "object" &&
    err !== null &&
    typeof (err as { field?: unknown }).field === "string" &&
    typeof (err as { message?: unknown }).message === "string"
  );
}
