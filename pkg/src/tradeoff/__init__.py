"""Cost-aware model selection for text classification benchmarks.

Ingest measurement records, price them under a dated snapshot, score them
with a latency-tolerance utility, and filter them by Pareto dominance.
"""

from .analysis import (
    AggregationError,
    ModelSummary,
    candidate_of_summary,
    candidates_for_dataset,
    dataset_ids,
    summarize_group,
    summarize_records,
)
from .costing import (
    CostBasis,
    CostEstimate,
    PricingError,
    PricingSnapshot,
    ServingPrices,
    TokenPrices,
    apply_pricing_overrides,
    encoder_cost_per_million,
    estimate_cost,
    llm_cost_per_million,
    load_pricing,
    parse_pricing,
)
from .decision import (
    DEFAULT_TAUS_MS,
    Candidate,
    EpochRecord,
    ObjectiveSpace,
    ParetoResult,
    UtilityScore,
    display_round,
    dominates,
    gap_penalized_score,
    pareto_frontier,
    rank_by_utility,
    select_best_epoch,
    tau_sweep,
    utility_score,
)
from .records import (
    DecodingConfig,
    InvariantViolation,
    LatencyPercentiles,
    LatencyTrace,
    MeasurementRecord,
    Paradigm,
    QualityMetrics,
    RecordError,
    RecordSchemaError,
    RecordSyntaxError,
    ResourceAllocation,
    TokenUsage,
    load_records,
    parse_records,
    parse_records_csv,
    record_from_dict,
    record_to_dict,
    records_to_jsonl,
    validate_consistency,
)
from .stats import (
    RunSummary,
    aggregate_percentile_across_runs,
    median,
    percentile,
    summarize_mean_std,
    trim_warmup,
)

__version__ = "0.1.0"
