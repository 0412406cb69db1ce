// Text formatting only. The service already applied the display rounding
// rule (half away from zero, two decimals) before serializing, so every
// incoming display_value has at most two fraction digits; toFixed(2) just
// pads. Nothing here re-derives a number from f1/cost/latency.

import type { UtilityRow } from "./types";

export function formatDisplay(displayValue: number): string {
  return displayValue.toFixed(2);
}

/** "4.66 (1)" -- the table cell format, value then parenthesized rank. */
export function formatUtilityCell(row: UtilityRow): string {
  return `${formatDisplay(row.display_value)} (${row.rank})`;
}

export function formatUsd(usdPerMillion: number): string {
  return usdPerMillion.toFixed(2);
}

export function formatMs(ms: number): string {
  return `${ms.toFixed(1)} ms`;
}

export function formatTau(tauMs: number): string {
  // detent values read as integers, anything else to one decimal
  return Number.isInteger(tauMs) ? `${tauMs} ms` : `${tauMs.toFixed(1)} ms`;
}

const ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
};

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"]/g, (ch) => ESCAPES[ch] ?? ch);
}
