"""Selection engine: utility scoring, ranking, Pareto filtering, epoch choice.

The utility of a candidate is (f1 / cost) * exp(-latency / tau), with f1 a
fraction, cost in USD per 1M requests, latency the p50 in ms, and tau the
latency tolerance in ms. Reported tables show 100x the utility rounded to
two decimals, but every comparison (ranking, ties) runs on full precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Optional, Sequence

from .records import Paradigm

DEFAULT_TAUS_MS = (250.0, 500.0, 1000.0)


def display_round(value: float, digits: int = 2) -> float:
    """Round half away from zero at the given number of decimals."""
    exp = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(exp, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class Candidate:
    """One deployable option: quality, price, and speed on a dataset."""

    model_id: str
    dataset_id: str
    paradigm: Paradigm
    f1: float
    cost_usd_per_million: float
    p50_latency_ms: float

    def __post_init__(self):
        if not (0.0 <= self.f1 <= 1.0):
            raise ValueError(f"f1 must be in [0, 1], got {self.f1}")
        if self.cost_usd_per_million <= 0:
            raise ValueError(
                f"cost_usd_per_million must be > 0, got {self.cost_usd_per_million}"
            )
        if self.p50_latency_ms < 0:
            raise ValueError(f"p50_latency_ms must be >= 0, got {self.p50_latency_ms}")

    @property
    def label(self) -> str:
        if self.paradigm is Paradigm.FINE_TUNED:
            return self.model_id
        return f"{self.model_id} ({self.paradigm.short})"


@dataclass(frozen=True)
class UtilityScore:
    """A candidate's utility at one tau, with its within-group rank."""

    candidate: Candidate
    tau_ms: float
    utility: float
    display_value: float
    rank: Optional[int] = None


def utility_score(candidate: Candidate, tau_ms: float) -> UtilityScore:
    """Score one candidate; rank is left unassigned."""
    if tau_ms <= 0:
        raise ValueError(f"tau_ms must be > 0, got {tau_ms}")
    utility = (candidate.f1 / candidate.cost_usd_per_million) * math.exp(
        -candidate.p50_latency_ms / tau_ms
    )
    return UtilityScore(
        candidate=candidate,
        tau_ms=tau_ms,
        utility=utility,
        display_value=display_round(100.0 * utility),
    )


def _rank_sort_key(score: UtilityScore):
    c = score.candidate
    # Descending utility; ties fall to cheaper, then faster, then name order.
    return (
        -score.utility,
        c.cost_usd_per_million,
        c.p50_latency_ms,
        c.model_id,
        c.paradigm.value,
    )


def rank_by_utility(scores: Sequence[UtilityScore]) -> list[UtilityScore]:
    """Assign ranks 1..n on full-precision utility; input order preserved."""
    if not scores:
        return []
    datasets = {s.candidate.dataset_id for s in scores}
    taus = {s.tau_ms for s in scores}
    if len(datasets) > 1:
        raise ValueError(f"scores mix datasets: {sorted(datasets)}")
    if len(taus) > 1:
        raise ValueError(f"scores mix tau values: {sorted(taus)}")
    order = sorted(scores, key=_rank_sort_key)
    ranks = {id(score): position for position, score in enumerate(order, start=1)}
    return [replace(score, rank=ranks[id(score)]) for score in scores]


def tau_sweep(
    candidates: Sequence[Candidate], taus: Sequence[float] = DEFAULT_TAUS_MS
) -> dict[float, list[UtilityScore]]:
    """Ranked utility table per tau over one dataset's candidates."""
    if not candidates:
        raise ValueError("no candidates to score")
    if not taus:
        raise ValueError("no tau values given")
    datasets = {c.dataset_id for c in candidates}
    if len(datasets) > 1:
        raise ValueError(f"candidates mix datasets: {sorted(datasets)}")
    return {
        tau: rank_by_utility([utility_score(c, tau) for c in candidates])
        for tau in taus
    }


# ---------------------------------------------------------------------------
# Pareto dominance
# ---------------------------------------------------------------------------


class ObjectiveSpace(str, Enum):
    F1_LATENCY_COST_3D = "f1_latency_cost_3d"
    F1_VS_COST = "f1_vs_cost"
    COST_VS_LATENCY = "cost_vs_latency"
    F1_VS_LATENCY = "f1_vs_latency"


# Objective extractors oriented so that lower is always better.
_OBJECTIVES = {
    ObjectiveSpace.F1_LATENCY_COST_3D: (
        lambda c: -c.f1,
        lambda c: c.p50_latency_ms,
        lambda c: c.cost_usd_per_million,
    ),
    ObjectiveSpace.F1_VS_COST: (
        lambda c: -c.f1,
        lambda c: c.cost_usd_per_million,
    ),
    ObjectiveSpace.COST_VS_LATENCY: (
        lambda c: c.cost_usd_per_million,
        lambda c: c.p50_latency_ms,
    ),
    ObjectiveSpace.F1_VS_LATENCY: (
        lambda c: -c.f1,
        lambda c: c.p50_latency_ms,
    ),
}


@dataclass(frozen=True)
class ParetoResult:
    """Frontier plus, for each dominated candidate, one dominating witness."""

    objective_space: ObjectiveSpace
    frontier: tuple[Candidate, ...]
    dominated: dict[Candidate, Candidate]


def dominates(a: Candidate, b: Candidate, space: ObjectiveSpace) -> bool:
    """True iff a is no worse than b on every objective and better on one."""
    objectives = _OBJECTIVES[space]
    no_worse = all(f(a) <= f(b) for f in objectives)
    strictly_better = any(f(a) < f(b) for f in objectives)
    return no_worse and strictly_better


def pareto_frontier(
    candidates: Sequence[Candidate], space: ObjectiveSpace
) -> ParetoResult:
    """Split candidates into non-dominated frontier and witnessed dominated set.

    The witness for a dominated candidate is its first dominator in input
    order, so results are reproducible for a fixed candidate list.
    """
    if not candidates:
        raise ValueError("no candidates for frontier computation")
    frontier: list[Candidate] = []
    dominated: dict[Candidate, Candidate] = {}
    for b in candidates:
        witness = next((a for a in candidates if a is not b and dominates(a, b, space)), None)
        if witness is None:
            frontier.append(b)
        else:
            dominated[b] = witness
    return ParetoResult(objective_space=space, frontier=tuple(frontier), dominated=dominated)


# ---------------------------------------------------------------------------
# Checkpoint selection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EpochRecord:
    epoch_index: int
    f1_train: float
    f1_val: float

    def __post_init__(self):
        if self.epoch_index < 1:
            raise ValueError(f"epoch_index must be >= 1, got {self.epoch_index}")
        for name in ("f1_train", "f1_val"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"{name} must be in [0, 1], got {value}")


def gap_penalized_score(epoch: EpochRecord) -> float:
    """Validation F1 minus the train/val gap; punishes fitting in either direction."""
    return epoch.f1_val - abs(epoch.f1_val - epoch.f1_train)


def select_best_epoch(epochs: Sequence[EpochRecord]) -> EpochRecord:
    """Highest gap-penalized score; ties go to the earliest epoch."""
    if not epochs:
        raise ValueError("no epochs to select from")
    return max(epochs, key=lambda e: (gap_penalized_score(e), -e.epoch_index))
