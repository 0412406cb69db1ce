// Frontier scatter as an inline SVG string. One point per candidate;
// frontier members are filled, dominated points hollow with the witness in
// the tooltip. Cost axes are log-scaled; the 3-D space is drawn as its
// F1-versus-cost projection with latency in the tooltips.

import { escapeHtml, formatMs, formatUsd } from "./format";
import type { ScenarioResponse, SpaceName, UtilityRow } from "./types";

const WIDTH = 460;
const HEIGHT = 330;
const MARGIN = { top: 16, right: 18, bottom: 44, left: 62 };

interface Axis {
  pick: (row: UtilityRow) => number;
  label: string;
  log: boolean;
}

const COST_AXIS: Axis = {
  pick: (r) => r.cost_usd_per_million,
  label: "cost, USD / 1M req (log)",
  log: true,
};
const F1_AXIS: Axis = { pick: (r) => r.f1, label: "macro F1, fraction", log: false };
const LATENCY_AXIS: Axis = { pick: (r) => r.p50_latency_ms, label: "p50 latency, ms", log: false };

const AXES: Record<SpaceName, { x: Axis; y: Axis; note?: string }> = {
  f1_vs_cost: { x: COST_AXIS, y: F1_AXIS },
  cost_vs_latency: { x: LATENCY_AXIS, y: COST_AXIS },
  f1_vs_latency: { x: LATENCY_AXIS, y: F1_AXIS },
  f1_latency_cost_3d: {
    x: COST_AXIS,
    y: F1_AXIS,
    note: "3-D frontier drawn on the F1 / cost plane",
  },
};

function scale(value: number, lo: number, hi: number, log: boolean): number {
  const t = log ? Math.log(value) : value;
  const tlo = log ? Math.log(lo) : lo;
  const thi = log ? Math.log(hi) : hi;
  if (thi === tlo) return 0.5;
  return (t - tlo) / (thi - tlo);
}

function extent(values: number[]): [number, number] {
  return [Math.min(...values), Math.max(...values)];
}

export function renderMissingProjection(projection: SpaceName): string {
  return (
    `<p class="missing-projection">projection "${escapeHtml(projection)}" ` +
    `is not in the last response; include it in the request's spaces list</p>`
  );
}

export function renderFrontierScatter(
  response: ScenarioResponse,
  projection: SpaceName
): string {
  const space = response.pareto[projection];
  if (space === undefined) {
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

  const points = rows
    .map((row) => {
      const px = MARGIN.left + scale(axes.x.pick(row), xlo, xhi, axes.x.log) * plotW;
      const py = MARGIN.top + (1 - scale(axes.y.pick(row), ylo, yhi, axes.y.log)) * plotH;
      const dominatedBy = witness.get(row.label);
      const cls = dominatedBy === undefined ? "frontier" : "dominated";
      const tip =
        `${row.label}: F1 ${row.f1}, ${formatUsd(row.cost_usd_per_million)} USD/1M, ` +
        `${formatMs(row.p50_latency_ms)}` +
        (dominatedBy === undefined ? "" : `; dominated by ${dominatedBy}`);
      return (
        `<circle class="${cls}" cx="${px.toFixed(1)}" cy="${py.toFixed(1)}" r="6" ` +
        `data-label="${escapeHtml(row.label)}">` +
        `<title>${escapeHtml(tip)}</title></circle>`
      );
    })
    .join("");

  const note =
    axes.note === undefined
      ? ""
      : `<text class="axis-note" x="${MARGIN.left}" y="${MARGIN.top - 4}">${axes.note}</text>`;

  return (
    `<svg class="scatter" viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img">` +
    `<rect class="plot-bg" x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}"/>` +
    note +
    points +
    `<text class="axis-label x" x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 10}">` +
    `${escapeHtml(axes.x.label)}</text>` +
    `<text class="axis-label y" transform="rotate(-90 14 ${MARGIN.top + plotH / 2})" ` +
    `x="14" y="${MARGIN.top + plotH / 2}">${escapeHtml(axes.y.label)}</text>` +
    `</svg>`
  );
}
