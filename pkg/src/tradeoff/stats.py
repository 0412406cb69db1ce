"""Latency statistics: warm-up trimming, percentiles, cross-run aggregation.

All percentile math uses linear interpolation between order statistics: for
n sorted values and quantile q, the rank is h = (n - 1) * q and the result
interpolates between positions floor(h) and ceil(h). Aggregation across
repeated runs computes each run's percentile first, then takes the median of
those per-run values, so one long run cannot dominate the summary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .records import LatencyTrace


def trim_warmup(trace: Union[LatencyTrace, Sequence[float]], warmup_count: int = None) -> list[float]:
    """Drop the leading warm-up samples; the remainder must be non-empty.

    Accepts a LatencyTrace (using its own warmup_count unless overridden) or
    a plain sequence with an explicit warmup_count.
    """
    if isinstance(trace, LatencyTrace):
        samples = trace.samples_ms
        if warmup_count is None:
            warmup_count = trace.warmup_count
    else:
        samples = trace
        if warmup_count is None:
            raise ValueError("warmup_count is required for a plain sample list")
    if warmup_count < 0:
        raise ValueError(f"warmup_count must be >= 0, got {warmup_count}")
    if warmup_count >= len(samples):
        raise ValueError(
            f"warmup_count {warmup_count} leaves no samples out of {len(samples)}"
        )
    return list(samples[warmup_count:])


def percentile(values: Sequence[float], q: float) -> float:
    """Quantile q in [0, 1] by linear interpolation on the sorted values."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must be in [0, 1], got {q}")
    if len(values) == 0:
        raise ValueError("percentile of an empty sequence")
    # np.quantile's 'linear' method is exactly h = (n - 1) * q.
    return float(np.quantile(np.asarray(values, dtype=float), q, method="linear"))


def median(values: Sequence[float]) -> float:
    return percentile(values, 0.5)


def aggregate_percentile_across_runs(per_run_values: Sequence[float]) -> float:
    """Median of per-run percentile values, same interpolation rule."""
    if len(per_run_values) == 0:
        raise ValueError("no per-run values to aggregate")
    return median(per_run_values)


@dataclass(frozen=True)
class RunSummary:
    """Mean and spread of one metric across repeated runs.

    std uses the unbiased n-1 denominator. A single run leaves the sample
    standard deviation undefined; it is reported as 0.0 with std_undefined
    set so reports can annotate instead of erroring.
    """

    metric_name: str
    mean: float
    std: float
    n_runs: int
    std_undefined: bool

    def format(self, digits: int = 2) -> str:
        if self.std_undefined:
            return f"{self.mean:.{digits}f} (single run)"
        return f"{self.mean:.{digits}f} ± {self.std:.{digits}f}"


def summarize_mean_std(per_run_values: Sequence[float], metric_name: str = "") -> RunSummary:
    if len(per_run_values) == 0:
        raise ValueError("no values to summarize")
    arr = np.asarray(per_run_values, dtype=float)
    n = len(arr)
    return RunSummary(
        metric_name=metric_name,
        mean=float(np.mean(arr)),
        std=0.0 if n == 1 else float(np.std(arr, ddof=1)),
        n_runs=n,
        std_undefined=n == 1,
    )
