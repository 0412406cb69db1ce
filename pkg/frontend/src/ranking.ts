// Ranking table renderer. Produces markup from a ScenarioResponse; all
// numbers come straight off the response (see format.ts), rows are laid out
// by the service-assigned rank. Rank movement against the previous response
// is marked per row so a what-if edit reads at a glance.

import { escapeHtml, formatMs, formatUsd, formatUtilityCell } from "./format";
import type { ScenarioResponse } from "./types";

export function renderErrorBanner(field: string, message: string): string {
  return (
    `<div class="error-banner" role="alert">` +
    `<strong>${escapeHtml(field)}</strong>: ${escapeHtml(message)}</div>`
  );
}

function rankMarker(label: string, rank: number, previous: ReadonlyMap<string, number>): string {
  const before = previous.get(label);
  if (before === undefined || before === rank) {
    return `<td class="rank-move"></td>`;
  }
  if (rank < before) {
    return `<td class="rank-move rank-up" title="was rank ${before}">&#9650;</td>`;
  }
  return `<td class="rank-move rank-down" title="was rank ${before}">&#9660;</td>`;
}

export function renderRankingView(
  response: ScenarioResponse,
  previousRanks: ReadonlyMap<string, number> = new Map()
): string {
  if (response.utilities.length === 0) {
    return `<p class="empty-state">no models in this dataset</p>`;
  }
  const rows = [...response.utilities].sort((a, b) => a.rank - b.rank);
  const body = rows
    .map((row) => {
      return (
        `<tr data-label="${escapeHtml(row.label)}">` +
        `<td class="model">${escapeHtml(row.label)}</td>` +
        `<td class="utility">${formatUtilityCell(row)}</td>` +
        rankMarker(row.label, row.rank, previousRanks) +
        `<td class="cost">${formatUsd(row.cost_usd_per_million)}</td>` +
        `<td class="latency">${formatMs(row.p50_latency_ms)}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<table class="ranking">` +
    `<thead><tr>` +
    `<th>model</th><th>100&#215;U (rank)</th><th></th>` +
    `<th>USD / 1M req</th><th>p50</th>` +
    `</tr></thead>` +
    `<tbody>${body}</tbody>` +
    `</table>`
  );
}
