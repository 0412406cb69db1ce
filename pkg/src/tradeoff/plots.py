"""Scatter output for frontier reports: CSV of points plus a small SVG.

Data first: the CSV carries one row per candidate with a frontier flag and
witness, so any plotting tool can reproduce the view. The SVG renderer is a
thin convenience with fixed styling; cost axes use a log scale because costs
span two orders of magnitude between self-hosted and API serving.
"""

from __future__ import annotations

import csv
import io
import math
from typing import Sequence

from .decision import Candidate, ObjectiveSpace, ParetoResult

SCATTER_COLUMNS = [
    "model_id",
    "paradigm",
    "label",
    "dataset_id",
    "f1",
    "cost_usd_per_million",
    "p50_latency_ms",
    "on_frontier",
    "dominated_by",
]


def scatter_rows(result: ParetoResult, candidates: Sequence[Candidate]) -> list[dict]:
    """One row per candidate, in input order."""
    frontier = set(result.frontier)
    rows = []
    for c in candidates:
        witness = result.dominated.get(c)
        rows.append(
            {
                "model_id": c.model_id,
                "paradigm": c.paradigm.value,
                "label": c.label,
                "dataset_id": c.dataset_id,
                "f1": c.f1,
                "cost_usd_per_million": c.cost_usd_per_million,
                "p50_latency_ms": c.p50_latency_ms,
                "on_frontier": c in frontier,
                "dominated_by": "" if witness is None else witness.label,
            }
        )
    return rows


def scatter_csv(result: ParetoResult, candidates: Sequence[Candidate]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SCATTER_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in scatter_rows(result, candidates):
        row = dict(row)
        row["on_frontier"] = "true" if row["on_frontier"] else "false"
        writer.writerow(row)
    return buf.getvalue()


# Axis picks per space: (x metric, x log?, y metric, y log?).
_AXES = {
    ObjectiveSpace.F1_VS_COST: ("cost_usd_per_million", True, "f1", False),
    ObjectiveSpace.COST_VS_LATENCY: ("p50_latency_ms", False, "cost_usd_per_million", True),
    ObjectiveSpace.F1_VS_LATENCY: ("p50_latency_ms", False, "f1", False),
    # The 3-D space is drawn as its f1-vs-cost projection with latency as dot size.
    ObjectiveSpace.F1_LATENCY_COST_3D: ("cost_usd_per_million", True, "f1", False),
}

_AXIS_TITLES = {
    "cost_usd_per_million": "cost (USD / 1M req, log)",
    "p50_latency_ms": "p50 latency (ms)",
    "f1": "macro-F1",
}


def _scale(value: float, lo: float, hi: float, log: bool, out_lo: float, out_hi: float) -> float:
    if log:
        value, lo, hi = math.log10(value), math.log10(lo), math.log10(hi)
    if hi == lo:
        return (out_lo + out_hi) / 2
    return out_lo + (value - lo) / (hi - lo) * (out_hi - out_lo)


def scatter_svg(
    result: ParetoResult,
    candidates: Sequence[Candidate],
    width: int = 640,
    height: int = 420,
) -> str:
    """Self-contained SVG scatter of the chosen space; frontier points filled."""
    rows = scatter_rows(result, candidates)
    x_key, x_log, y_key, y_log = _AXES[result.objective_space]
    xs = [r[x_key] for r in rows]
    ys = [r[y_key] for r in rows]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    pad_l, pad_r, pad_t, pad_b = 60, 16, 28, 46

    def px(value):
        return _scale(value, x_lo, x_hi, x_log, pad_l + 12, width - pad_r - 12)

    def py(value):
        return _scale(value, y_lo, y_hi, y_log, height - pad_b - 12, pad_t + 12)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="16" text-anchor="middle" font-size="13">'
        f"{result.objective_space.value}</text>",
        f'<line x1="{pad_l}" y1="{height - pad_b}" x2="{width - pad_r}" '
        f'y2="{height - pad_b}" stroke="black"/>',
        f'<line x1="{pad_l}" y1="{pad_t}" x2="{pad_l}" y2="{height - pad_b}" stroke="black"/>',
        f'<text x="{(pad_l + width - pad_r) / 2:.0f}" y="{height - 10}" text-anchor="middle">'
        f"{_AXIS_TITLES[x_key]}</text>",
        f'<text x="14" y="{(pad_t + height - pad_b) / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {(pad_t + height - pad_b) / 2:.0f})">'
        f"{_AXIS_TITLES[y_key]}</text>",
    ]
    for row in rows:
        x, y = px(row[x_key]), py(row[y_key])
        fill = "#1f77b4" if row["on_frontier"] else "none"
        stroke = "#1f77b4" if row["on_frontier"] else "#d62728"
        title = f"{row['label']}: f1={row['f1']:.4f}, cost={row['cost_usd_per_million']:.2f}, p50={row['p50_latency_ms']:.2f}ms"
        if row["dominated_by"]:
            title += f" (dominated by {row['dominated_by']})"
        parts.append(
            f'<circle cx="{x:.1f}" cy="{y:.1f}" r="5" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="1.5"><title>{title}</title></circle>'
        )
        parts.append(
            f'<text x="{x + 7:.1f}" y="{y - 6:.1f}" font-size="10">{row["label"]}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
