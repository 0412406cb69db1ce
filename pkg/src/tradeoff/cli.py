"""Command-line interface: cost, rank, pareto, verify-paper, serve.

Pricing resolution order: --pricing flag, then the TRADEOFF_PRICING
environment variable, then the bundled snapshot. Records default to the
bundled benchmark measurements so every subcommand works out of the box.

Output formats: 'table' is for humans and carries a generation timestamp;
'csv' and 'json' are machine formats and are byte-stable across runs on
identical inputs (no timestamps, deterministic ordering).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from . import fixtures
from .analysis import (
    AggregationError,
    candidates_for_dataset,
    dataset_ids,
    summarize_records,
)
from .costing import PricingError, PricingSnapshot, load_pricing
from .decision import (
    DEFAULT_TAUS_MS,
    ObjectiveSpace,
    display_round,
    pareto_frontier,
    tau_sweep,
)
from .plots import scatter_csv, scatter_svg
from .records import RecordError, load_records, validate_consistency
from .service import ServiceState, serve_forever
from .verify import verify_bundled

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFY_MISMATCH = 2

PRICING_ENV_VAR = "TRADEOFF_PRICING"


class CliError(Exception):
    """Fatal input problem; message goes to stderr, exit status 1."""


def _load_inputs(args) -> tuple[list, PricingSnapshot]:
    try:
        if args.records is None:
            records = fixtures.benchmark_records()
        else:
            records = load_records(args.records)
    except FileNotFoundError:
        raise CliError(f"records file not found: {args.records}") from None
    except RecordError as exc:
        raise CliError(f"records file {args.records}: {exc}") from None
    # The bundled records are cross-run aggregates; run-count checks do not
    # apply to them. User files get the full consistency pass.
    args._records_bundled = args.records is None

    pricing_path = args.pricing or os.environ.get(PRICING_ENV_VAR)
    try:
        if pricing_path is None:
            snapshot = fixtures.pricing_snapshot()
        else:
            snapshot = load_pricing(pricing_path)
    except FileNotFoundError:
        raise CliError(f"pricing file not found: {pricing_path}") from None
    except PricingError as exc:
        raise CliError(f"pricing file {pricing_path}: {exc}") from None
    return records, snapshot


def _parse_taus(text: str) -> list[float]:
    try:
        taus = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise CliError(f"--tau must be a comma-separated list of numbers, got {text!r}") from None
    if not taus:
        raise CliError("--tau must name at least one value")
    if any(t <= 0 for t in taus):
        raise CliError(f"--tau values must be > 0, got {text!r}")
    return taus


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _timestamp() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _filter_datasets(summaries, dataset: Optional[str]) -> list[str]:
    available = dataset_ids(summaries)
    if dataset is None:
        return available
    if dataset not in available:
        print(f"warning: dataset filter {dataset!r} matches nothing "
              f"(loaded: {available or 'none'})", file=sys.stderr)
        return []
    return [dataset]


def _print_warnings(args, records) -> None:
    if getattr(args, "_records_bundled", False):
        return
    for warning in validate_consistency(records):
        print(f"warning: {warning.message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# cost
# ---------------------------------------------------------------------------


def cmd_cost(args) -> int:
    records, snapshot = _load_inputs(args)
    _print_warnings(args, records)
    summaries = summarize_records(records)
    datasets = _filter_datasets(summaries, args.dataset)

    rows = []
    for ds in datasets:
        candidates, estimates = candidates_for_dataset(summaries, ds, snapshot)
        for cand, est in zip(candidates, estimates):
            rows.append(
                {
                    "dataset_id": ds,
                    "model_id": cand.model_id,
                    "paradigm": cand.paradigm.value,
                    "label": cand.label,
                    "cost_basis": est.cost_basis.value,
                    "usd_per_million_requests": est.usd_per_million_requests,
                }
            )

    if args.format == "json":
        _emit(args, json.dumps(
            {"snapshot_date": snapshot.snapshot_date, "costs": rows},
            sort_keys=True, indent=2) + "\n")
    elif args.format == "csv":
        lines = ["dataset_id,model_id,paradigm,cost_basis,usd_per_million_requests"]
        for r in rows:
            lines.append(
                f"{r['dataset_id']},{r['model_id']},{r['paradigm']},"
                f"{r['cost_basis']},{r['usd_per_million_requests']!r}"
            )
        _emit(args, "\n".join(lines) + "\n")
    else:
        out = [f"estimated cost (USD / 1M requests)  [pricing snapshot {snapshot.snapshot_date}, generated {_timestamp()}]"]
        for ds in datasets:
            out.append(f"\ndataset: {ds}")
            out.append(f"  {'model':<26} {'basis':<20} {'USD / 1M req':>14}")
            for r in rows:
                if r["dataset_id"] != ds:
                    continue
                out.append(
                    f"  {r['label']:<26} {r['cost_basis']:<20} "
                    f"{display_round(r['usd_per_million_requests']):>14.2f}"
                )
        _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# rank
# ---------------------------------------------------------------------------


def cmd_rank(args) -> int:
    records, snapshot = _load_inputs(args)
    _print_warnings(args, records)
    taus = _parse_taus(args.tau)
    summaries = summarize_records(records)
    datasets = _filter_datasets(summaries, args.dataset)

    tables = []
    for ds in datasets:
        candidates, _ = candidates_for_dataset(summaries, ds, snapshot)
        if not candidates:
            continue
        sweep = tau_sweep(candidates, taus)
        for tau in taus:
            ranked = sorted(sweep[tau], key=lambda s: s.rank)
            tables.append(
                {
                    "dataset_id": ds,
                    "tau_ms": tau,
                    "rows": [
                        {
                            "rank": s.rank,
                            "model_id": s.candidate.model_id,
                            "paradigm": s.candidate.paradigm.value,
                            "label": s.candidate.label,
                            "display_value": s.display_value,
                            "utility": s.utility,
                        }
                        for s in ranked
                    ],
                }
            )

    if args.format == "json":
        _emit(args, json.dumps(
            {"snapshot_date": snapshot.snapshot_date, "tables": tables},
            sort_keys=True, indent=2) + "\n")
    elif args.format == "csv":
        lines = ["dataset_id,tau_ms,rank,model_id,paradigm,display_value"]
        for table in tables:
            for r in table["rows"]:
                lines.append(
                    f"{table['dataset_id']},{table['tau_ms']!r},{r['rank']},"
                    f"{r['model_id']},{r['paradigm']},{r['display_value']!r}"
                )
        _emit(args, "\n".join(lines) + "\n")
    else:
        out = [f"utility ranking, display values are 100 x utility  [pricing snapshot {snapshot.snapshot_date}, generated {_timestamp()}]"]
        for table in tables:
            out.append(f"\ndataset: {table['dataset_id']}   tau = {table['tau_ms']:g} ms")
            out.append(f"  {'rank':<5} {'model':<26} {'100xU':>8}")
            for r in table["rows"]:
                out.append(f"  {r['rank']:<5} {r['label']:<26} {r['display_value']:>8.2f}")
        _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# pareto
# ---------------------------------------------------------------------------


def cmd_pareto(args) -> int:
    records, snapshot = _load_inputs(args)
    _print_warnings(args, records)
    try:
        space = ObjectiveSpace(args.space)
    except ValueError:
        raise CliError(
            f"unknown objective space {args.space!r}; valid: "
            f"{[s.value for s in ObjectiveSpace]}"
        ) from None
    summaries = summarize_records(records)
    datasets = _filter_datasets(summaries, args.dataset)

    reports = []
    for ds in datasets:
        candidates, _ = candidates_for_dataset(summaries, ds, snapshot)
        if not candidates:
            continue
        result = pareto_frontier(candidates, space)
        reports.append((ds, candidates, result))
        if args.scatter_out:
            suffix = f".{ds}" if len(datasets) > 1 else ""
            path = Path(_suffixed(args.scatter_out, suffix))
            path.write_text(scatter_csv(result, candidates), encoding="utf-8")
        if args.svg_out:
            suffix = f".{ds}" if len(datasets) > 1 else ""
            path = Path(_suffixed(args.svg_out, suffix))
            path.write_text(scatter_svg(result, candidates), encoding="utf-8")

    if args.format == "json":
        payload = {
            "snapshot_date": snapshot.snapshot_date,
            "objective_space": space.value,
            "datasets": [
                {
                    "dataset_id": ds,
                    "frontier": [c.label for c in candidates if c in set(result.frontier)],
                    "dominated": [
                        {"label": c.label, "dominated_by": result.dominated[c].label}
                        for c in candidates
                        if c in result.dominated
                    ],
                }
                for ds, candidates, result in reports
            ],
        }
        _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif args.format == "csv":
        chunks = []
        for ds, candidates, result in reports:
            chunks.append(scatter_csv(result, candidates))
        header, body = "", []
        for chunk in chunks:
            lines = chunk.splitlines()
            header = lines[0]
            body.extend(lines[1:])
        _emit(args, (header + "\n" + "\n".join(body) + "\n") if body else header + "\n")
    else:
        out = [f"pareto frontier in space {space.value}  [pricing snapshot {snapshot.snapshot_date}, generated {_timestamp()}]"]
        for ds, candidates, result in reports:
            frontier = set(result.frontier)
            out.append(f"\ndataset: {ds}")
            for c in candidates:
                if c in frontier:
                    out.append(f"  frontier   {c.label}")
                else:
                    out.append(
                        f"  dominated  {c.label}  (by {result.dominated[c].label})"
                    )
        _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def _suffixed(path: str, suffix: str) -> str:
    if not suffix:
        return path
    p = Path(path)
    return str(p.with_name(p.stem + suffix + p.suffix))


# ---------------------------------------------------------------------------
# verify-paper
# ---------------------------------------------------------------------------


def cmd_verify_paper(args) -> int:
    report = verify_bundled()
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    counts = report.counts()
    for kind in ("cost", "utility", "rank"):
        passed, total = counts.get(kind, (0, 0))
        print(f"{kind}: {passed}/{total} cells match")
    for failure in report.failures:
        print(failure.describe())
    if not report.ok:
        print(f"FAIL: {len(report.failures)} cell(s) mismatch")
        return EXIT_VERIFY_MISMATCH
    print("PASS: all cells reproduce within tolerance")
    return EXIT_OK


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------


def cmd_serve(args) -> int:
    records, snapshot = _load_inputs(args)
    state = ServiceState.load(
        records, snapshot, check_consistency=not getattr(args, "_records_bundled", False)
    )
    for warning in state.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    serve_forever(state, args.host, args.port)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--records", help="records file (.jsonl or .csv); bundled benchmark data if omitted")
    p.add_argument("--pricing", help=f"pricing snapshot JSON; ${PRICING_ENV_VAR} or the bundled snapshot if omitted")
    p.add_argument("--dataset", help="restrict to one dataset id")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--out", help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tradeoff",
        description="Cost, utility, and Pareto analysis over model benchmark records.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cost", help="estimated USD per 1M requests per model")
    _add_common(p)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("rank", help="utility ranking under latency tolerances")
    _add_common(p)
    p.add_argument("--tau", default="250,500,1000", help="comma list of tolerances in ms")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("pareto", help="Pareto frontier membership and witnesses")
    _add_common(p)
    p.add_argument(
        "--space",
        default=ObjectiveSpace.F1_LATENCY_COST_3D.value,
        help=f"objective space, one of {[s.value for s in ObjectiveSpace]}",
    )
    p.add_argument("--scatter-out", help="also write scatter points CSV here")
    p.add_argument("--svg-out", help="also write an SVG scatter here")
    p.set_defaults(func=cmd_pareto)

    p = sub.add_parser(
        "verify-paper",
        help="check recomputed cost/utility/rank cells against the bundled expected values",
    )
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("serve", help="run the scenario HTTP service")
    p.add_argument("--records", help="records file (.jsonl or .csv); bundled benchmark data if omitted")
    p.add_argument("--pricing", help=f"pricing snapshot JSON; ${PRICING_ENV_VAR} or the bundled snapshot if omitted")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (RecordError, PricingError, AggregationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
