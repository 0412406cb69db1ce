"""Aggregation pipeline: raw records -> per-model summaries -> candidates.

Grouping key is (dataset_id, model_id, paradigm). Within a group:

* quality metrics are averaged across runs (mean +- std, n-1 denominator),
* latency percentiles are computed per run first (trimming any warm-up
  prefix), then the median is taken across runs,
* token counts are averaged across runs,
* the resource allocation must be identical across runs, since it describes
  the serving configuration rather than a measurement.

The resulting summary carries everything costing and ranking need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import stats
from .costing import CostEstimate, PricingSnapshot, estimate_cost
from .decision import Candidate
from .records import (
    LatencyPercentiles,
    LatencyTrace,
    MeasurementRecord,
    Paradigm,
    ResourceAllocation,
    TokenUsage,
    group_key,
)


class AggregationError(ValueError):
    """Records within one group disagree in a way averaging cannot fix."""


def percentiles_of_record(record: MeasurementRecord) -> LatencyPercentiles:
    """One run's p50/p95/p99, computing them from the trace when raw."""
    lat = record.latency
    if isinstance(lat, LatencyPercentiles):
        return lat
    kept = stats.trim_warmup(lat)
    return LatencyPercentiles(
        p50_ms=stats.percentile(kept, 0.50),
        p95_ms=stats.percentile(kept, 0.95),
        p99_ms=stats.percentile(kept, 0.99),
    )


@dataclass(frozen=True)
class ModelSummary:
    """Cross-run aggregate for one model x dataset x paradigm group."""

    model_id: str
    dataset_id: str
    paradigm: Paradigm
    n_runs: int
    f1: stats.RunSummary
    accuracy: stats.RunSummary
    latency: LatencyPercentiles
    tokens: Optional[TokenUsage]
    resources: Optional[ResourceAllocation]

    @property
    def label(self) -> str:
        if self.paradigm is Paradigm.FINE_TUNED:
            return self.model_id
        return f"{self.model_id} ({self.paradigm.short})"


def summarize_group(records: Sequence[MeasurementRecord]) -> ModelSummary:
    """Aggregate one group's runs; records must share the grouping key."""
    if not records:
        raise AggregationError("empty record group")
    keys = {group_key(r) for r in records}
    if len(keys) > 1:
        raise AggregationError(f"records mix groups: {sorted(keys)}")
    head = records[0]

    per_run = [percentiles_of_record(r) for r in records]
    latency = LatencyPercentiles(
        p50_ms=stats.aggregate_percentile_across_runs([p.p50_ms for p in per_run]),
        p95_ms=stats.aggregate_percentile_across_runs([p.p95_ms for p in per_run]),
        p99_ms=stats.aggregate_percentile_across_runs([p.p99_ms for p in per_run]),
    )

    tokens = None
    if head.paradigm is not Paradigm.FINE_TUNED:
        tokens = TokenUsage(
            avg_input_tokens_per_request=stats.summarize_mean_std(
                [r.tokens.avg_input_tokens_per_request for r in records]
            ).mean,
            avg_output_tokens_per_request=stats.summarize_mean_std(
                [r.tokens.avg_output_tokens_per_request for r in records]
            ).mean,
        )

    resources = None
    if head.paradigm is Paradigm.FINE_TUNED:
        allocations = {r.resources for r in records}
        if len(allocations) > 1:
            raise AggregationError(
                f"{head.model_id} on {head.dataset_id}: runs disagree on resource "
                f"allocation; a serving configuration cannot be averaged"
            )
        resources = head.resources

    return ModelSummary(
        model_id=head.model_id,
        dataset_id=head.dataset_id,
        paradigm=head.paradigm,
        n_runs=len(records),
        f1=stats.summarize_mean_std([r.quality.f1_macro for r in records], "f1_macro"),
        accuracy=stats.summarize_mean_std(
            [r.quality.accuracy for r in records], "accuracy"
        ),
        latency=latency,
        tokens=tokens,
        resources=resources,
    )


def summarize_records(records: Sequence[MeasurementRecord]) -> list[ModelSummary]:
    """Group and aggregate, ordered by (dataset_id, model_id, paradigm)."""
    groups: dict[tuple, list[MeasurementRecord]] = {}
    for record in records:
        groups.setdefault(group_key(record), []).append(record)
    return [summarize_group(groups[key]) for key in sorted(groups)]


def cost_of_summary(summary: ModelSummary, snapshot: PricingSnapshot) -> CostEstimate:
    """Price a summary: compute-billed if fine-tuned, token-billed otherwise."""
    # estimate_cost dispatches on a record; feed it the summary's fields.
    proxy = _SummaryProxy(summary)
    return estimate_cost(proxy, summary.latency.p50_ms, snapshot)


class _SummaryProxy:
    """Duck-typed stand-in exposing the record fields estimate_cost reads."""

    def __init__(self, summary: ModelSummary):
        self.model_id = summary.model_id
        self.dataset_id = summary.dataset_id
        self.paradigm = summary.paradigm
        self.tokens = summary.tokens
        self.resources = summary.resources


def candidate_of_summary(
    summary: ModelSummary, snapshot: PricingSnapshot
) -> tuple[Candidate, CostEstimate]:
    estimate = cost_of_summary(summary, snapshot)
    candidate = Candidate(
        model_id=summary.model_id,
        dataset_id=summary.dataset_id,
        paradigm=summary.paradigm,
        f1=summary.f1.mean,
        cost_usd_per_million=estimate.usd_per_million_requests,
        p50_latency_ms=summary.latency.p50_ms,
    )
    return candidate, estimate


def candidates_for_dataset(
    summaries: Sequence[ModelSummary], dataset_id: str, snapshot: PricingSnapshot
) -> tuple[list[Candidate], list[CostEstimate]]:
    """Candidates for one dataset in summary order, with their cost estimates."""
    candidates, estimates = [], []
    for summary in summaries:
        if summary.dataset_id != dataset_id:
            continue
        candidate, estimate = candidate_of_summary(summary, snapshot)
        candidates.append(candidate)
        estimates.append(estimate)
    return candidates, estimates


def dataset_ids(summaries: Sequence[ModelSummary]) -> list[str]:
    return sorted({s.dataset_id for s in summaries})
